#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace kpz {

using cplx = std::complex<double>;
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

struct ContourSpec {
    cplx center{0.0, 0.0};
    double radius = 0.5;
    int nodes = 64;          // starting level
    double tolerance = 1e-13;
    int max_nodes = 4096;
};

struct QuadratureResult {
    cplx value;
    double estimated_error = 0.0;
    int nodes_used = 0;
};

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, cplx coarse, cplx fine)
        : std::runtime_error(what), coarse_(coarse), fine_(fine) {}
    cplx coarse() const { return coarse_; }
    cplx fine() const { return fine_; }

private:
    cplx coarse_, fine_;
};

// (1/2πi)∮ f(w) dw on a circle, trapezoid rule with node doubling. Each level
// reuses the previous sum and only evaluates the new midpoints.
template <class F>
QuadratureResult circle_quadrature(F&& f, const ContourSpec& c)
{
    if (c.radius <= 0 || c.nodes < 2)
        throw std::invalid_argument("circle_quadrature: bad contour");
    auto term = [&](double theta) {
        cplx e = std::polar(1.0, theta);
        cplx w = c.center + c.radius * e;
        return f(w) * (c.radius * e);  // dw/(2πi dθ) = r e^{iθ}/(2π)
    };
    int n = c.nodes;
    cplx sum = 0.0;
    for (int j = 0; j < n; ++j)
        sum += term(2.0 * std::numbers::pi * j / n);
    cplx prev = sum / double(n);
    while (true) {
        cplx add = 0.0;
        for (int j = 0; j < n; ++j)
            add += term(2.0 * std::numbers::pi * (j + 0.5) / n);
        sum += add;
        n *= 2;
        cplx cur = sum / double(n);
        double diff = std::abs(cur - prev);
        if (diff < c.tolerance * std::max(1.0, std::abs(cur)))
            return {cur, diff, n};
        if (n >= c.max_nodes)
            throw QuadratureError("circle_quadrature: no convergence at " + std::to_string(n) + " nodes",
                                  prev, cur);
        prev = cur;
    }
}

// F_n(x,t) of the Schütz determinant. n <= 0 by exact residue, n > 0 by quadrature.
double schuetz_F(int n, long x, double t);

// Ai on [-30, 30]; throws outside.
double airy_ai(double z);
double airy_ai_prime(double z);
// Kernel-side helper: no range limit; asymptotic expansion below -30, zero beyond 30 (|Ai| < 1e-48 there).
double airy_ai_tail(double z);

// log Ai(z) for z > 0, any size.
double airy_ai_log(double z);

Rational gen_binomial(long m, long j);
double gen_binomial_d(long m, long j);

// t^k/k! e^{-t} without overflow; zero for k < 0.
double poisson_pmf(long k, double t);

}  // namespace kpz
