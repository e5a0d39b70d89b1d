#include "kpz/continuum.hpp"
#include "kpz/special.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kpz {

double heat_kernel(double x, double z)
{
    if (!(x > 0))
        throw std::domain_error("heat_kernel: needs x > 0");
    return std::exp(-z * z / (4 * x)) / std::sqrt(4 * std::numbers::pi * x);
}

double t_kernel(double t, double x, double z)
{
    if (t == 0) {
        if (x > 0)
            return heat_kernel(x, z);
        throw std::domain_error("t_kernel: t = 0 needs x > 0");
    }
    if (t < 0)
        return t_kernel(-t, x, -z);
    const double c = std::cbrt(t);
    const double arg = -z / c + x * x / (c * c * c * c);
    const double expo = 2 * x * x * x / (3 * t * t) - z * x / t;
    // the exponential factor can be huge where Ai is tiny; combine in log space there
    if (arg > 20)
        return std::exp(expo + airy_ai_log(arg)) / c;
    return std::exp(expo) * airy_ai_tail(arg) / c;
}

AiryFamily parse_airy_family(const std::string& s)
{
    if (s == "airy2")
        return AiryFamily::airy2;
    if (s == "airy1")
        return AiryFamily::airy1;
    if (s == "airy21")
        return AiryFamily::airy21;
    throw std::invalid_argument("unknown Airy family: " + s);
}

Ensemble parse_ensemble(const std::string& s)
{
    if (s == "gue")
        return Ensemble::gue;
    if (s == "goe")
        return Ensemble::goe;
    throw std::invalid_argument("unknown ensemble: " + s);
}

double airy_kernel(double x, double y)
{
    if (x > 30 || y > 30)
        return 0.0;
    if (x == y) {
        double a = airy_ai_tail(x), ap = airy_ai_prime(x);
        return ap * ap - x * a * a;
    }
    return (airy_ai_tail(x) * airy_ai_prime(y) - airy_ai_prime(x) * airy_ai_tail(y)) / (x - y);
}

namespace {

// ∫_0^∞ e^{-λΔ} Ai(u+λ) Ai(u'+λ) dλ, any sign of Δ
double airy_product_half(double delta, double u, double up)
{
    double top = std::max(32.0, 4 * delta * delta + 10) - std::min(std::min(u, up), 0.0);
    QuadRule q = composite_rule(0.0, top, int(std::ceil(top)), 20);
    double s = 0.0;
    for (size_t i = 0; i < q.size(); ++i) {
        double l = q.x[i];
        s += q.w[i] * std::exp(-l * delta) * airy_ai_tail(u + l) * airy_ai_tail(up + l);
    }
    return s;
}

}  // namespace

double airy2_negative_direct(double x, double u, double xp, double up)
{
    double d = xp - x;
    if (!(d > 0))
        throw std::invalid_argument("airy2_negative_direct: needs x < x'");
    double span = 36.0 / d + 10;
    QuadRule q = composite_rule(-span, 0.0, int(std::ceil(span / 0.25)), 20);
    double s = 0.0;
    for (size_t i = 0; i < q.size(); ++i) {
        double l = q.x[i];
        s += q.w[i] * std::exp(l * d) * airy_ai_tail(u + l) * airy_ai_tail(up + l);
    }
    return -s;
}

double airy_process_kernel(AiryFamily f, double x, double u, double xp, double up)
{
    switch (f) {
    case AiryFamily::airy2: {
        if (x >= xp)
            return airy_product_half(x - xp, u, up);
        // -∫_{λ<0} = ∫_{λ>0} - ∫_R, and the full-line integral is Gaussian
        double d = xp - x;
        double full = std::exp(d * d * d / 12 - (u + up) * d / 2 - (u - up) * (u - up) / (4 * d)) /
                      std::sqrt(4 * std::numbers::pi * d);
        return airy_product_half(-d, u, up) - full;
    }
    case AiryFamily::airy1: {
        double d = xp - x;
        double v = airy_ai_tail(u + up + d * d) * std::exp(d * (u + up) + 2.0 / 3.0 * d * d * d);
        if (d > 0)
            v -= heat_kernel(d, up - u);
        return v;
    }
    case AiryFamily::airy21:
        return fixed_point_kernel({ClosedClass::half_flat, 0.0, 0.0}, 1.0, x, u, xp, up);
    }
    return 0.0;
}

double tracy_widom_at_order(Ensemble e, double r, int order)
{
    NystromProblem p;
    if (e == Ensemble::gue) {
        p.kernel = airy_kernel;
        p.domain = Domain::right_of(r);
    } else {
        p.kernel = [r](double x, double y) { return airy_ai_tail(x + y + r); };
        p.domain = Domain::right_of(0.0);
    }
    return nystrom_value(p, order);
}

TwValue tracy_widom(Ensemble e, double r, int order)
{
    if (!(r >= -10 && r <= 6))
        throw std::domain_error("tracy_widom: r outside [-10, 6]");
    int prev = 0;
    for (int o : kOrderLadder)
        if (o < order)
            prev = o;
    if (prev == 0)
        throw std::invalid_argument("tracy_widom: order must be above the lowest ladder value");
    double v = tracy_widom_at_order(e, r, order);
    double w = tracy_widom_at_order(e, r, prev);
    return {v, std::abs(v - w), order};
}

double f_gue_second_form(double r, int order)
{
    // det(I - K χ_r K) = det(I - B) on λ < 0 with B(λ,μ) = ∫_r^∞ Ai(x-λ) Ai(x-μ) dx
    QuadRule lam = mapped_rule(Domain::left_of(0.0), order);
    double top = std::max(r, 0.0) + 32;
    QuadRule xs = composite_rule(r, top, int(std::ceil((top - r) / 0.5)), 20);
    const int n = int(lam.size()), m = int(xs.size());
    Eigen::MatrixXd A(m, n);
    for (int k = 0; k < m; ++k)
        for (int i = 0; i < n; ++i)
            A(k, i) = std::sqrt(xs.w[size_t(k)] * lam.w[size_t(i)]) * airy_ai_tail(xs.x[size_t(k)] - lam.x[size_t(i)]);
    return det_window(A.transpose() * A);
}

double f_goe_reflection_form(double r, int order)
{
    // det(I - K ϱ_r K) = det(I - B) on λ < 0 with B(λ,μ) = ∫ Ai(x-λ) Ai(2r-x-μ) dx
    QuadRule lam = mapped_rule(Domain::left_of(0.0), order);
    double lo = 2 * r - 32, hi = 32;
    QuadRule xs = composite_rule(lo, hi, int(std::ceil((hi - lo) / 0.5)), 20);
    const int n = int(lam.size()), m = int(xs.size());
    Eigen::MatrixXd A1(m, n), A2(m, n);
    for (int k = 0; k < m; ++k)
        for (int i = 0; i < n; ++i) {
            double sw = std::sqrt(xs.w[size_t(k)] * lam.w[size_t(i)]);
            A1(k, i) = sw * airy_ai_tail(xs.x[size_t(k)] - lam.x[size_t(i)]);
            A2(k, i) = sw * airy_ai_tail(2 * r - xs.x[size_t(k)] - lam.x[size_t(i)]);
        }
    return det_window(A1.transpose() * A2);
}

double group_law_deviation(double s, double x, double t, double y, const std::vector<double>& zs)
{
    if (!(s > 0 && t > 0))
        throw std::invalid_argument("group_law_deviation: needs s, t > 0");
    double worst = 0.0;
    for (double z : zs) {
        QuadRule q = composite_rule(z - 40, z + 40, 320, 20);
        double v = 0.0;
        for (size_t i = 0; i < q.size(); ++i)
            v += q.w[i] * t_kernel(s, x, z - q.x[i]) * t_kernel(t, y, q.x[i]);
        worst = std::max(worst, std::abs(v - t_kernel(s + t, x + y, z)));
    }
    return worst;
}

}  // namespace kpz
