#include "kpz/continuum.hpp"
#include "kpz/exact.hpp"
#include "kpz/tasep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace kpz {

namespace {

// LC barrier restricted to one finite linear piece; +∞ pieces never get hit
struct Piece {
    double s0, s1;
    bool finite;
    double g0, g1;
    double at(double s) const { return g0 + (g1 - g0) * (s - s0) / (s1 - s0); }
};

// probability that a variance-2 Brownian bridge from (s0,b0) to (s1,b1) touches the line
double bridge_cross(const Piece& p, double s0, double b0, double s1, double b1)
{
    double d0 = p.at(s0) - b0, d1 = p.at(s1) - b1;
    if (d0 <= 0 || d1 <= 0)
        return 1.0;
    return std::exp(-d0 * d1 / (s1 - s0));
}

// first touching time inside [s0, s1] given that the bridge does touch
double refine_crossing(const Piece& p, double s0, double b0, double s1, double b1, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    while (s1 - s0 > 1e-8) {
        double sm = 0.5 * (s0 + s1);
        double sd = std::sqrt((s1 - s0) / 2);
        for (;;) {
            double bm = 0.5 * (b0 + b1) + sd * gauss(rng);
            double pl = bridge_cross(p, s0, b0, sm, bm);
            double pr = bridge_cross(p, sm, bm, s1, b1);
            double pc = pl + (1 - pl) * pr;
            if (unif(rng) >= pc)
                continue;
            if (unif(rng) * pc < pl) {
                s1 = sm;
                b1 = bm;
            } else {
                s0 = sm;
                b0 = bm;
            }
            break;
        }
    }
    return 0.5 * (s0 + s1);
}

std::vector<Piece> barrier_pieces(const Profile& g, double horizon, double dt)
{
    std::vector<double> cuts{0.0};
    for (double b : g.xs)
        if (b > 0 && b < horizon)
            cuts.push_back(b);
    cuts.push_back(horizon);
    std::vector<Piece> out;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        double a = cuts[i], b = cuts[i + 1];
        int steps = std::max(1, int(std::ceil((b - a) / dt)));
        double mid = 0.5 * (a + b);
        bool fin = std::isfinite(g(mid));
        for (int k = 0; k < steps; ++k) {
            double s0 = a + (b - a) * k / steps, s1 = a + (b - a) * (k + 1) / steps;
            Piece p{s0, s1, fin, 0.0, 0.0};
            if (fin) {
                // endpoint values along the open piece, so breakpoint jumps do not leak in
                double e = 1e-12 * (b - a);
                double l0 = k == 0 ? a + e : s0, l1 = k == steps - 1 ? b - e : s1;
                double gl0 = g(l0), gl1 = g(l1);
                double slope = (gl1 - gl0) / (l1 - l0);
                p.g0 = gl0 + slope * (s0 - l0);
                p.g1 = gl0 + slope * (s1 - l0);
            }
            out.push_back(p);
        }
    }
    return out;
}

}  // namespace

McEstimate hit_epi_mc(const Profile& g, double t, double x, double v, double u, long samples, std::uint64_t seed,
                      double dt)
{
    if (g.kind != Profile::Kind::lc || !g.valid())
        throw std::invalid_argument("hit_epi_mc: needs a valid LC barrier");
    if (t == 0 || !(dt > 0) || samples < 2)
        throw std::invalid_argument("hit_epi_mc: needs t != 0, dt > 0, samples >= 2");
    if (v >= g(0.0))
        return {t_kernel(t, x, v - u), 0.0, samples};
    // beyond the horizon T_{t,x-τ} is below e^{-60}
    const double horizon = x + std::cbrt(90 * t * t) + 2;  // t < 0 decays the same way
    if (horizon <= 0)
        return {0.0, 0.0, samples};
    const std::vector<Piece> pieces = barrier_pieces(g, horizon, dt);

    double sum = 0.0, sum2 = 0.0;
    for (long k = 0; k < samples; ++k) {
        std::mt19937_64 rng(splitmix64(seed ^ std::uint64_t(k)));
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        double b = v, val = 0.0;
        for (const auto& p : pieces) {
            double b1 = b + std::sqrt(2 * (p.s1 - p.s0)) * gauss(rng);
            if (!p.finite) {
                b = b1;
                continue;
            }
            double tau = -1;
            if (b >= p.g0)
                tau = p.s0;
            else if (b1 >= p.g1 || unif(rng) < bridge_cross(p, p.s0, b, p.s1, b1))
                tau = refine_crossing(p, p.s0, b, p.s1, b1, rng);
            if (tau >= 0) {
                val = t_kernel(t, x - tau, p.at(tau) - u);
                break;
            }
            b = b1;
        }
        sum += val;
        sum2 += val * val;
    }
    double mean = sum / double(samples);
    double var = std::max(0.0, (sum2 - double(samples) * mean * mean) / double(samples - 1));
    return {mean, std::sqrt(var / double(samples)), samples};
}

SkewReport skew_identity_check(const Profile& h, double t, const std::vector<double>& grid)
{
    if (!(t > 0))
        throw std::invalid_argument("skew_identity_check: needs t > 0");
    const ClosedClass cls = classify(h).cls;
    double lowest = 0.0;
    for (double u : grid)
        lowest = std::min(lowest, u);
    const double span = 30 * std::cbrt(t) + 2 * std::abs(lowest) + 5;
    const double panel = std::min(0.5, std::cbrt(t) / 2);
    const int panels = int(std::ceil(span / panel));
    QuadRule neg = composite_rule(-span, 0.0, panels, 20), pos = composite_rule(0.0, span, panels, 20);
    QuadRule line = composite_rule(-span, span, 2 * panels, 20);
    auto T = [](double s, double z) { return t_kernel(s, 0.0, z); };

    // hypo side with T_t on the left, epi side with T_{-t} evaluated at (-u2, -u1)
    auto hypo = [&](double u1, double u2) {
        double s = 0.0;
        if (cls == ClosedClass::flat) {
            for (size_t k = 0; k < line.size(); ++k)
                s += line.w[k] * T(t, line.x[k] - u1) * T(t, -line.x[k] - u2);
            return s;
        }
        for (size_t k = 0; k < neg.size(); ++k) {
            double l = neg.x[k];
            double left = T(t, l - u1) + (cls == ClosedClass::half_flat ? T(t, -l - u1) : 0.0);
            s += neg.w[k] * left * T(t, l - u2);
        }
        return s;
    };
    auto epi = [&](double v1, double v2) {
        double s = 0.0;
        if (cls == ClosedClass::flat) {
            for (size_t k = 0; k < line.size(); ++k)
                s += line.w[k] * T(-t, line.x[k] - v1) * T(-t, -line.x[k] - v2);
            return s;
        }
        for (size_t k = 0; k < pos.size(); ++k)
            s += pos.w[k] * T(-t, pos.x[k] - v1) * T(-t, pos.x[k] - v2);
        if (cls == ClosedClass::half_flat)
            for (size_t k = 0; k < neg.size(); ++k)
                s += neg.w[k] * T(-t, -neg.x[k] - v1) * T(-t, neg.x[k] - v2);
        return s;
    };

    SkewReport r{0.0, 0};
    for (double u1 : grid)
        for (double u2 : grid) {
            r.max_deviation = std::max(r.max_deviation, std::abs(hypo(u1, u2) - epi(-u2, -u1)));
            ++r.points;
        }
    return r;
}

SymmetryReport symmetry_checks(double t, double alpha, const std::vector<double>& grid)
{
    if (!(t > 0) || !(alpha > 0))
        throw std::invalid_argument("symmetry_checks: needs t > 0 and alpha > 0");
    const Profile nw = Profile::narrow_wedge(0.0), flat = Profile::flat();
    const double shift = 0.7;
    const Profile nw_shifted = Profile::narrow_wedge(shift);
    auto prob = [](const Profile& h, std::vector<SpacePoint> pts, double s) {
        return fixed_point_prob(h, std::move(pts), s, 1e-11).value;
    };
    SymmetryReport r{0, 0, 0, 0, 0};
    for (double a : grid) {
        const double x1 = -0.5, x2 = 0.7, a2 = a + 0.3;
        double base = prob(nw, {{x1, a}, {x2, a2}}, t);
        double scaled = prob(nw, {{x1 / (alpha * alpha), a / alpha}, {x2 / (alpha * alpha), a2 / alpha}},
                             t / (alpha * alpha * alpha));
        r.scaling_123 = std::max(r.scaling_123, std::abs(base - scaled));
        double moved = prob(nw_shifted, {{x1 + shift, a}, {x2 + shift, a2}}, t);
        r.shift = std::max(r.shift, std::abs(base - moved));
        double mirrored = prob(nw, {{-x1, a}, {-x2, a2}}, t);
        r.reflection_nw = std::max(r.reflection_nw, std::abs(base - mirrored));
        double fb = prob(flat, {{x1, a}, {x2, a2}}, t), fm = prob(flat, {{-x1, a}, {-x2, a2}}, t);
        r.reflection_flat = std::max(r.reflection_flat, std::abs(fb - fm));
    }
    r.skew = skew_identity_check(nw, t, grid).max_deviation;
    return r;
}

ScalingParams ScalingParams::make(double eps, double t, std::vector<double> xs, std::vector<double> as)
{
    if (!(eps > 0) || !(t > 0) || xs.size() != as.size() || xs.empty())
        throw std::invalid_argument("ScalingParams: needs eps > 0, t > 0 and matching nonempty x, a lists");
    ScalingParams p;
    p.eps = eps;
    p.t = t;
    p.xs = std::move(xs);
    p.as = std::move(as);
    const double e32 = std::pow(eps, -1.5), s = std::sqrt(eps);
    p.t_micro = 2 * e32 * t;
    for (size_t i = 0; i < p.xs.size(); ++i) {
        double exact_n = 0.5 * e32 * t - p.xs[i] / eps - 0.5 * p.as[i] / s + 1;
        long n = std::lround(exact_n);
        if (n < 1)
            throw std::invalid_argument("ScalingParams: label below 1; decrease eps or x, a");
        p.n.push_back(n);
        p.a_micro.push_back(std::lround(2 * p.xs[i] / eps - 2));
        double a_eff = 2 * s * (0.5 * e32 * t - p.xs[i] / eps + 1 - double(n));
        p.rounding.push_back(a_eff - p.as[i]);
    }
    return p;
}

std::vector<KernelLimitRow> kernel_limit_residual(const std::vector<double>& eps_ladder, double t, double x, double a,
                                                  double box)
{
    std::vector<KernelLimitRow> rows;
    for (double eps : eps_ladder) {
        if (!(eps > 0 && eps <= 1))
            throw std::invalid_argument("kernel_limit_residual: eps must lie in (0, 1]");
        ScalingParams p = ScalingParams::make(eps, t, {x}, {a});
        const double s = std::sqrt(eps);
        const long n = p.n[0];
        const double a_eff = a + p.rounding[0];
        KernelLimitRow row{eps, n, a_eff, 0.0, 0.0, 0};
        // v = ε^{1/2} y', u = ε^{1/2}(z - 2x/ε + 2) - a
        const long ylim = long(std::floor(box / s));
        const double zc = 2 * x / eps - 2;
        const long zlo = long(std::ceil(zc + (a_eff - box) / s)), zhi = long(std::floor(zc + (a_eff + box) / s));
        for (long y = -ylim; y <= ylim; ++y)
            for (long z = zlo; z <= zhi; ++z) {
                double v = s * double(y), u = s * (double(z) - zc) - a_eff;
                double rm = std::abs(s_m(p.t_micro, n, y, z) / s - t_kernel(t, x, u - v));
                double rn = std::abs(s_n(p.t_micro, n, y, z) / s - t_kernel(t, -x, u - v));
                row.residual_sm = std::max(row.residual_sm, rm);
                row.residual_sn = std::max(row.residual_sn, rn);
                ++row.points;
            }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace kpz
