#include "kpz/exact.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace kpz {

namespace {

long finite_at(const InitialData& x0, long label)
{
    long v = x0.at(label);
    if (v >= kPlusInf || v <= kMinusInf)
        throw std::out_of_range("initial data has no finite position at label " + std::to_string(label));
    return v;
}

// Circle around 0 with the radius chosen to minimize the peak of |f(w) w| (the
// integrand can be large where it cancels), tolerance scaled by that peak.
template <class LogF>
double origin_contour(LogF logf, double rmax)
{
    double best_r = 0.5 * rmax, best_m = 1e300;
    for (int i = 0; i < 48; ++i) {
        double r = rmax * std::pow(0.01, 1.0 - i / 47.0) * 0.98;
        double m = -1e300;
        for (int a = 0; a < 16; ++a) {
            cplx w = std::polar(r, 2.0 * std::numbers::pi * a / 16.0);
            m = std::max(m, logf(w).real() + std::log(r));
        }
        if (m < best_m) {
            best_m = m;
            best_r = r;
        }
    }
    ContourSpec c;
    c.radius = best_r;
    c.nodes = 64;
    c.tolerance = 1e-13 * std::max(1.0, std::exp(best_m));
    c.max_nodes = 1 << 16;
    return circle_quadrature([&](cplx w) { return std::exp(logf(w)); }, c).value.real();
}

}  // namespace

double q_pow(long m, long x, long y)
{
    if (m == 0)
        return x == y ? 1.0 : 0.0;
    if (m > 0) {
        long d = x - y;
        return d >= m ? std::ldexp(gen_binomial_d(d - 1, m - 1), int(-d)) : 0.0;
    }
    long k = -m, j = y - x;
    if (j < 0 || j > k)
        return 0.0;
    double v = std::ldexp(gen_binomial_d(k, j), int(j));
    return ((k - j) % 2 == 0) ? v : -v;
}

Rational qbar(long n, long y1, long y2)
{
    if (n < 1)
        throw std::invalid_argument("qbar: need n >= 1");
    return pow2(-(y1 - y2)) * gen_binomial(y1 - y2 - 1, n - 1);
}

std::vector<HitOutcome> hitting_walk(const InitialData& x0, int n, long z1)
{
    if (n < 1)
        throw std::invalid_argument("hitting_walk: need n >= 1");
    if (z1 > finite_at(x0, 1))
        return {{0, z1, 1.0}};
    const long floor_ = finite_at(x0, n);  // states at or below X_0(n) can never hit before n
    std::map<long, double> dist{{z1, 1.0}};
    std::vector<HitOutcome> out;
    for (int m = 1; m < n && !dist.empty(); ++m) {
        std::map<long, double> next;
        for (auto [p, pr] : dist)
            for (long q = floor_ + 1; q < p; ++q)
                next[q] += pr * std::ldexp(1.0, int(-(p - q)));
        dist.clear();
        const long bar = finite_at(x0, m + 1);
        for (auto [q, pr] : next) {
            if (q > bar)
                out.push_back({m, q, pr});
            else
                dist[q] = pr;
        }
    }
    return out;
}

Rational hit_probability_star(const InitialData& x0, int n, int k, int l, long z)
{
    if (l > k || k >= n || l < 0)
        return Rational(0);
    // not-yet-hit mass of B*_{m} over positions
    std::map<long, Rational> dist{{z, Rational(1)}};
    for (int m = l; m <= k; ++m) {
        const long bar = finite_at(x0, n - m);
        if (m == k) {
            Rational hit = 0;
            for (auto& [p, pr] : dist)
                hit += pr * (p < bar ? pow2(-(bar - p)) : Rational(1));
            return hit;
        }
        std::map<long, Rational> next;
        for (auto& [p, pr] : dist)
            for (long q = p + 1; q <= bar; ++q)
                next[q] += pr * pow2(-(q - p));
        dist = std::move(next);
    }
    return Rational(0);
}

double g0n(const InitialData& x0, int n, long z1, long z2)
{
    double s = 0.0;
    for (const auto& h : hitting_walk(x0, n, z1))
        s += h.p * qbar(n - h.m, h.b, z2).convert_to<double>();
    return s;
}

double g0n_reversed(const InitialData& x0, int n, long z1, long z2)
{
    if (z2 > finite_at(x0, n))
        throw std::invalid_argument("g0n_reversed: needs z2 <= X_0(n)");
    if (z1 <= z2)
        return 0.0;
    // B* from time -1 at z2; index by position, separate not-hit and hit mass
    const long width = z1 - z2;
    std::vector<double> free(size_t(width + 1), 0.0), hit(size_t(width + 1), 0.0);
    free[0] = 1.0;
    for (int m = 0; m < n; ++m) {
        std::vector<double> nf(free.size(), 0.0), nh(hit.size(), 0.0);
        const long bar = finite_at(x0, n - m);
        for (long p = 0; p <= width; ++p) {
            double fp = free[size_t(p)], hp = hit[size_t(p)];
            if (fp == 0.0 && hp == 0.0)
                continue;
            for (long q = p + 1; q <= width; ++q) {
                double w = std::ldexp(1.0, int(-(q - p)));
                nh[size_t(q)] += hp * w;
                if (z2 + q > bar)
                    nh[size_t(q)] += fp * w;
                else
                    nf[size_t(q)] += fp * w;
            }
        }
        free = std::move(nf);
        hit = std::move(nh);
    }
    return hit[size_t(width)];
}

double s_m(double t, long n, long z1, long z2)
{
    long d = z2 - z1;
    auto f = [&](cplx w) {
        return double(n) * std::log(1.0 - w) - double(n + 1 + d) * std::log(w) - double(d) * std::log(2.0) +
               t * (w - 0.5);
    };
    return origin_contour(f, 4.0);
}

double s_n(double t, long n, long z1, long z2)
{
    long d = z2 - z1;
    auto f = [&](cplx w) {
        return double(d + n - 1) * std::log(1.0 - w) - double(n) * std::log(w) + double(d) * std::log(2.0) +
               t * (w - 0.5);
    };
    return origin_contour(f, d + n - 1 >= 0 ? 4.0 : 1.0);
}

double s_m_residue(double t, long n, long z1, long z2)
{
    if (n < 0)
        throw std::invalid_argument("s_m_residue: needs n >= 0");
    long d = n + z2 - z1;
    if (d < 0)
        return 0.0;
    double s = 0.0;
    for (long j = 0; j <= std::min(n, d); ++j) {
        double term = gen_binomial_d(n, j) * std::pow(t, double(d - j)) / std::tgamma(double(d - j + 1));
        s += (j % 2 == 0) ? term : -term;
    }
    return std::ldexp(s * std::exp(-t / 2), int(z1 - z2));
}

double s_n_residue(double t, long n, long z1, long z2)
{
    if (n < 1)
        return 0.0;
    long e = z2 - z1 + n - 1;
    double s = 0.0;
    for (long j = 0; j <= n - 1; ++j) {
        double term = gen_binomial_d(e, j) * std::pow(t, double(n - 1 - j)) / std::tgamma(double(n - j));
        s += (j % 2 == 0) ? term : -term;
    }
    return std::ldexp(s * std::exp(-t / 2), int(z2 - z1));
}

TransferValues transfer_kernels(const InitialData& x0, double t, int n, long z1, long z2)
{
    if (!(t > 0))
        throw std::invalid_argument("transfer_kernels: needs t > 0");
    TransferValues v{s_m(t, n, z1, z2), s_n(t, n, z1, z2), 0.0};
    for (const auto& h : hitting_walk(x0, n, z1))
        v.sepi += h.p * s_n(t, n - h.m, h.b, z2);
    return v;
}

}  // namespace kpz
