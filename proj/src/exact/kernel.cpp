#include "kpz/exact.hpp"

#include <cmath>
#include <stdexcept>

namespace kpz {

HitKernel::HitKernel(InitialData x0, double t) : x0_(std::move(x0)), t_(t)
{
    if (!(t > 0))
        throw std::invalid_argument("HitKernel: needs t > 0");
}

double HitKernel::sm(int n, long d)
{
    auto key = std::make_pair(n, d);
    auto it = sm_.find(key);
    if (it != sm_.end())
        return it->second;
    double v = s_m(t_, n, 0, d);
    sm_.emplace(key, v);
    return v;
}

double HitKernel::sn(int n, long d)
{
    auto key = std::make_pair(n, d);
    auto it = sn_.find(key);
    if (it != sn_.end())
        return it->second;
    double v = s_n(t_, n, 0, d);
    sn_.emplace(key, v);
    return v;
}

double HitKernel::sepi(int n, long z1, long z2)
{
    auto key = std::make_pair(n, z1);
    auto it = hits_.find(key);
    if (it == hits_.end())
        it = hits_.emplace(key, hitting_walk(x0_, n, z1)).first;
    double s = 0.0;
    for (const auto& h : it->second)
        s += h.p * sn(n - h.m, z2 - h.b);
    return s;
}

double HitKernel::operator()(int ni, long x1, int nj, long x2)
{
    if (ni < 1 || nj < 1)
        throw std::invalid_argument("kt_kernel: needs n_i, n_j >= 1");
    double v = (ni < nj) ? -q_pow(nj - ni, x1, x2) : 0.0;
    // S_{-t,-ni}(z, x1) vanishes for z > x1 + ni and the epigraph kernel for z <= X_0(nj),
    // so the composition is a finite sum
    const long lo = x0_.at(nj) + 1;
    for (long z = lo; z <= x1 + ni; ++z)
        v += sm(ni, x1 - z) * sepi(nj, z, x2);
    return v;
}

double kt_kernel(double t, const InitialData& x0, int ni, int nj, long x1, long x2)
{
    HitKernel k(x0, t);
    return k(ni, x1, nj, x2);
}

double kernel_step_double_contour(double t, int ni, int nj, long z1, long z2)
{
    ContourSpec cw;
    cw.radius = 0.4;
    cw.tolerance = 1e-12;
    cw.max_nodes = 1 << 12;
    ContourSpec cv = cw;
    auto outer = [&](cplx w) {
        auto inner = [&](cplx v) {
            return std::exp(double(ni) * std::log(1.0 - w) + double(nj + z2) * std::log(1.0 - v) -
                            double(z1 - z2) * std::log(2.0) - double(ni + z1 + 1) * std::log(w) -
                            double(nj) * std::log(v) + t * (w + v - 1.0)) /
                   (1.0 - v - w);
        };
        return circle_quadrature(inner, cv).value;
    };
    double v = circle_quadrature(outer, cw).value.real();
    if (ni < nj)
        v -= q_pow(nj - ni, z1, z2);
    return v;
}

double kernel_periodic_contour(double t, int n, long z1, long z2)
{
    ContourSpec c;
    c.center = 1.0;
    c.radius = 0.5;
    c.tolerance = 1e-13;
    c.max_nodes = 1 << 14;
    auto f = [&](cplx v) {
        return std::exp(double(z2 + 2 * n) * std::log(v) - double(z1 - z2) * std::log(2.0) -
                        double(z1 + 2 * n + 1) * std::log(1.0 - v) + t * (1.0 - 2.0 * v));
    };
    return -circle_quadrature(f, c).value.real();
}

}  // namespace kpz
