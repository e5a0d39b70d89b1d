#include "kpz/exact.hpp"

#include <cmath>
#include <stdexcept>

namespace kpz {

Rational pow2(long e)
{
    BigInt one = 1;
    if (e >= 0)
        return Rational(one << unsigned(e));
    return Rational(one, one << unsigned(-e));
}

Rational NewtonPoly::operator()(long x) const
{
    Rational s = 0;
    for (size_t j = 0; j < d_.size(); ++j)
        if (d_[j] != 0)
            s += d_[j] * gen_binomial(x - base_, long(j));
    return s;
}

std::vector<Rational> NewtonPoly::diffs_at(long z, int count) const
{
    std::vector<Rational> vals;
    for (int i = 0; i < count; ++i)
        vals.push_back((*this)(z + i));
    std::vector<Rational> out;
    for (int j = 0; j < count; ++j) {
        out.push_back(vals[0]);
        for (size_t i = 0; i + 1 < vals.size(); ++i)
            vals[i] = vals[i + 1] - vals[i];
        vals.pop_back();
    }
    return out;
}

NewtonPoly NewtonPoly::rebase(long c) const
{
    return NewtonPoly(c, diffs_at(c, int(d_.size())));
}

NewtonPoly NewtonPoly::neg_sum_from(long c) const
{
    // with p(c+s) = Σ d_j C(s,j): Σ_{y=c+1}^{c+s} p(y) = Σ d_j [C(s+1,j+1) - C(1,j+1)]
    // and C(s+1,j+1) = C(s,j+1) + C(s,j)
    NewtonPoly q = rebase(c);
    std::vector<Rational> e(q.d_.size() + 1, Rational(0));
    for (size_t j = 0; j < q.d_.size(); ++j) {
        e[j + 1] -= q.d_[j];
        e[j] -= q.d_[j];
    }
    if (!q.d_.empty())
        e[0] += q.d_[0];
    return NewtonPoly(c, std::move(e));
}

int NewtonPoly::degree() const
{
    for (int j = int(d_.size()) - 1; j >= 0; --j)
        if (d_[size_t(j)] != 0)
            return j;
    return -1;
}

BiorthoSystem::BiorthoSystem(InitialData x0, double t, int n_max) : x0_(std::move(x0)), t_(t), n_max_(n_max)
{
    if (n_max < 1 || n_max > 8)
        throw std::invalid_argument("BiorthoSystem: need 1 <= n_max <= 8");
    if (t < 0)
        throw std::invalid_argument("BiorthoSystem: negative time");
    for (int k = 1; k <= n_max; ++k) {
        long v = x0_.at(k);
        if (v >= kPlusInf || v <= kMinusInf)
            throw std::invalid_argument("BiorthoSystem: initial data needs finite X_0(1..n_max)");
    }
}

const NewtonPoly& BiorthoSystem::h_tilde(int n, int k, int l) const
{
    if (n < 1 || n > n_max_ || k < 0 || k >= n || l < 0 || l > k)
        throw std::out_of_range("h_tilde: index out of range");
    std::lock_guard lock(*mu_);
    auto key = std::make_pair(n, k);
    auto it = h_.find(key);
    if (it == h_.end()) {
        std::vector<NewtonPoly> ht(size_t(k + 1));
        ht[size_t(k)] = NewtonPoly(0, {pow2(-x0_.at(n - k))});
        for (int m = k; m >= 1; --m)
            ht[size_t(m - 1)] = ht[size_t(m)].neg_sum_from(x0_.at(n - m + 1));
        it = h_.emplace(key, std::move(ht)).first;
    }
    return it->second[size_t(l)];
}

Rational BiorthoSystem::h(int n, int k, int l, long z) const
{
    return pow2(z) * h_tilde(n, k, l)(z);
}

Rational BiorthoSystem::q_star_inverse_h(int n, int k, int l, long z) const
{
    // (Q*)^{-1} = 2S - I with S f(x) = f(x-1) in the adjoint direction
    Rational s = 0;
    for (long j = 0; j <= l; ++j) {
        Rational term = gen_binomial(l, j) * pow2(j) * h(n, k, 0, z - j);
        s += ((l - j) % 2 == 0) ? term : Rational(-term);
    }
    return s;
}

double BiorthoSystem::phi(int n, int k, long x) const
{
    auto key = std::make_tuple(n, k, x);
    {
        std::lock_guard lock(*mu_);
        auto it = phi_cache_.find(key);
        if (it != phi_cache_.end())
            return it->second;
    }
    const NewtonPoly& p = h_tilde(n, k, 0);
    auto dd = p.diffs_at(x, p.degree() + 1);
    double s = 0.0, c = 1.0;
    for (size_t j = 0; j < dd.size(); ++j) {
        s += dd[j].convert_to<double>() * c;
        c *= -t_ / double(j + 1);
    }
    double v = std::ldexp(s, int(x));
    std::lock_guard lock(*mu_);
    phi_cache_.emplace(key, v);
    return v;
}

double BiorthoSystem::kernel(int n, long x1, long x2) const
{
    double s = 0.0;
    for (int k = 0; k < n; ++k)
        s += psi(n, k, x1) * phi(n, k, x2);
    return s;
}

double BiorthoSystem::kernel_ext(int ni, long x1, int nj, long x2) const
{
    double s = (ni < nj) ? -q_pow(nj - ni, x1, x2) : 0.0;
    for (int k = 1; k <= nj; ++k)
        s += psi(ni, ni - k, x1) * phi(nj, nj - k, x2);
    return s;
}

double BiorthoSystem::biortho_defect(int n, long lo, long hi) const
{
    double worst = 0.0;
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            double s = 0.0;
            for (long x = lo; x <= hi; ++x)
                s += psi(n, k, x) * phi(n, l, x);
            worst = std::max(worst, std::abs(s - (k == l ? 1.0 : 0.0)));
        }
    return worst;
}

std::pair<long, long> BiorthoSystem::default_window(int n) const
{
    return {x0_.at(n) - n - 2, x0_.at(1) + 30 + long(std::ceil(10 * t_))};
}

BiorthoSystem build_biortho(const InitialData& x0, double t, int n_max, std::pair<long, long> window)
{
    BiorthoSystem b(x0, t, n_max);
    for (int n = 1; n <= n_max; ++n) {
        double defect = b.biortho_defect(n, window.first, window.second);
        if (!(defect <= 1e-8)) {
            auto w = b.default_window(n_max);
            throw std::runtime_error("build_biortho: biorthogonality defect " + std::to_string(defect) +
                                     " at n=" + std::to_string(n) + "; try window [" + std::to_string(w.first) +
                                     ", " + std::to_string(w.second) + "]");
        }
    }
    return b;
}

double phi_closed_form_step(int n, int k, long x, double t)
{
    if (n < 1 || k < 0 || k >= n)
        throw std::invalid_argument("phi_closed_form_step: need 0 <= k < n");
    auto f = [&](cplx v) { return std::pow(1.0 - v, double(x + n)) / std::pow(v, double(k + 1)) * std::exp(t * v); };
    ContourSpec c;
    c.radius = 0.5;
    c.max_nodes = 1 << 14;
    double res = circle_quadrature(f, c).value.real();
    return std::ldexp(res, int(x + (n - k)));
}

double phi_closed_form_periodic(int d, int n, int k, long x, double t)
{
    if (d < 2 || n < 1 || k < 0 || k >= n)
        throw std::invalid_argument("phi_closed_form_periodic: need d >= 2 and 0 <= k < n");
    auto f = [&](cplx v) {
        cplx base = std::pow(2.0, double(d)) * std::pow(1.0 - v, double(d - 1)) * v;
        return (1.0 - double(d) * v) * std::pow(2.0 * (1.0 - v), double(x + long(d) * n - 1)) /
               (v * std::pow(base, double(k))) * std::exp(t * v);
    };
    ContourSpec c;
    c.radius = 0.5;
    c.max_nodes = 1 << 14;
    // normalized so that Σ_x Ψ Φ = 1 with X_0(i) = -d i
    return 2.0 * circle_quadrature(f, c).value.real();
}

}  // namespace kpz
