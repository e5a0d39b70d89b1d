#include "kpz/continuum.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kpz {

namespace {

// λ nodes on [-Λ, 0] where T_{t,±x}(λ - u) is still felt for u >= lowest
QuadRule lambda_rule(double t, double lowest)
{
    double c = std::cbrt(t);
    double span = 30 * c + std::max(0.0, -lowest) + 5;
    double panel = std::min(1.0, c);
    return composite_rule(-span, 0.0, int(std::ceil(span / panel)), 20);
}

double nw_term(double t, double xi, double u, double xj, double v)
{
    QuadRule q = lambda_rule(t, std::min(u, v));
    double s = 0.0;
    for (size_t k = 0; k < q.size(); ++k)
        s += q.w[k] * t_kernel(t, -xi, q.x[k] - u) * t_kernel(t, xj, q.x[k] - v);
    return s;
}

// The reflected factor carries e^{-λ(x_i+x_j)/t}, so the λ < 0 display form is
// only well conditioned for x_i + x_j <= 0. Otherwise use flat minus its z < 0 part.
double half_flat_term(double t, double xi, double u, double xj, double v)
{
    QuadRule q = lambda_rule(t, std::min(u, v));
    double s = 0.0;
    if (xi + xj <= 0) {
        for (size_t k = 0; k < q.size(); ++k) {
            double l = q.x[k];
            s += q.w[k] * (t_kernel(t, -xi, l - u) + t_kernel(t, -xi, -l - u)) * t_kernel(t, xj, l - v);
        }
        return s;
    }
    for (size_t k = 0; k < q.size(); ++k) {
        double l = q.x[k];
        s += q.w[k] * t_kernel(t, -xi, l - u) * (t_kernel(t, xj, l - v) - t_kernel(t, xj, -l - v));
    }
    return s + t_kernel(2 * t, xj - xi, -u - v);
}

double heat_term(double xi, double u, double xj, double v)
{
    return xi < xj ? heat_kernel(xj - xi, v - u) : 0.0;
}

void check_points(const std::vector<SpacePoint>& points, double t)
{
    if (points.empty() || points.size() > 4)
        throw std::invalid_argument("fixed_point_prob: need 1 to 4 points");
    if (!(t > 0))
        throw std::invalid_argument("fixed_point_prob: needs t > 0");
    for (const auto& p : points)
        if (!std::isfinite(p.x) || !std::isfinite(p.a))
            throw std::invalid_argument("fixed_point_prob: points must be finite");
}

}  // namespace

double fixed_point_kernel(const ClosedProfile& c, double t, double xi, double u, double xj, double v)
{
    if (!(t > 0))
        throw std::invalid_argument("fixed_point_kernel: needs t > 0");
    xi -= c.center;
    xj -= c.center;
    double second = 0.0;
    switch (c.cls) {
    case ClosedClass::narrow_wedge:
        second = nw_term(t, xi, u, xj, v);
        break;
    case ClosedClass::flat:
        second = t_kernel(2 * t, xj - xi, -u - v);
        break;
    case ClosedClass::half_flat:
        second = half_flat_term(t, xi, u, xj, v);
        break;
    }
    return second - heat_term(xi, u, xj, v);
}

double flat_kernel_quadrature(double t, double xi, double u, double xj, double v)
{
    double c = std::cbrt(t);
    double reach = 30 * c + 5;
    double lo = std::min(u, -v) - reach, hi = std::max(u, -v) + reach;
    double panel = std::min(0.5, c / 2);
    QuadRule q = composite_rule(lo, hi, int(std::ceil((hi - lo) / panel)), 20);
    double s = 0.0;
    for (size_t k = 0; k < q.size(); ++k)
        s += q.w[k] * t_kernel(t, -xi, q.x[k] - u) * t_kernel(t, xj, -q.x[k] - v);
    return s - heat_term(xi, u, xj, v);
}

double half_flat_kernel_alt(double t, double xi, double u, double xj, double v)
{
    // z < 0 part of the flat integral, which the half-line profile removes
    double c = std::cbrt(t);
    double span = 30 * c + std::max(0.0, -std::min(u, v)) + 5;
    double panel = std::min(0.5, c / 2);
    QuadRule q = composite_rule(-span, 0.0, int(std::ceil(span / panel)), 20);
    double cut = 0.0;
    for (size_t k = 0; k < q.size(); ++k)
        cut += q.w[k] * t_kernel(t, -xi, q.x[k] - u) * t_kernel(t, xj, -q.x[k] - v);
    return nw_term(t, xi, u, xj, v) + t_kernel(2 * t, xj - xi, -u - v) - cut - heat_term(xi, u, xj, v);
}

double fixed_point_prob_at_order(const Profile& h0, std::vector<SpacePoint> points, double t, int order)
{
    check_points(points, t);
    const ClosedProfile c = classify(h0);
    const size_t m = points.size();
    std::vector<QuadRule> rules;
    std::vector<Eigen::Index> offset;
    Eigen::Index n = 0;
    double lowest = 0.0;
    for (auto& p : points) {
        p.x -= c.center;
        p.a -= c.shift;
        rules.push_back(mapped_rule(Domain::right_of(p.a), order));
        offset.push_back(n);
        n += Eigen::Index(rules.back().size());
        lowest = std::min(lowest, p.a);
    }

    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n);
    if (c.cls == ClosedClass::flat) {
        for (size_t bi = 0; bi < m; ++bi)
            for (size_t bj = 0; bj < m; ++bj)
                for (size_t i = 0; i < rules[bi].size(); ++i)
                    for (size_t j = 0; j < rules[bj].size(); ++j)
                        K(offset[bi] + Eigen::Index(i), offset[bj] + Eigen::Index(j)) =
                            t_kernel(2 * t, points[bj].x - points[bi].x, -rules[bi].x[i] - rules[bj].x[j]);
    } else {
        // second term is a λ-integral: tabulate the factors once per block and multiply.
        // a = T_{t,-x_i}(λ-u), b = T_{t,x_j}(λ-v), and their reflections λ -> -λ
        QuadRule lam = lambda_rule(t, lowest);
        const Eigen::Index nl = Eigen::Index(lam.size());
        Eigen::Map<const Eigen::VectorXd> wl(lam.w.data(), nl);
        const bool hf = c.cls == ClosedClass::half_flat;
        std::vector<Eigen::MatrixXd> a(m), ar(m), b(m), br(m);
        for (size_t k = 0; k < m; ++k) {
            const auto& r = rules[k];
            const Eigen::Index nr = Eigen::Index(r.size());
            a[k].resize(nr, nl);
            b[k].resize(nr, nl);
            if (hf) {
                ar[k].resize(nr, nl);
                br[k].resize(nr, nl);
            }
            for (Eigen::Index i = 0; i < nr; ++i)
                for (Eigen::Index l = 0; l < nl; ++l) {
                    double lv = lam.x[size_t(l)], u = r.x[size_t(i)];
                    a[k](i, l) = t_kernel(t, -points[k].x, lv - u);
                    b[k](i, l) = t_kernel(t, points[k].x, lv - u);
                    if (hf) {
                        ar[k](i, l) = t_kernel(t, -points[k].x, -lv - u);
                        br[k](i, l) = t_kernel(t, points[k].x, -lv - u);
                    }
                }
            a[k] = a[k] * wl.asDiagonal();
            if (hf)
                ar[k] = ar[k] * wl.asDiagonal();
        }
        for (size_t bi = 0; bi < m; ++bi)
            for (size_t bj = 0; bj < m; ++bj) {
                auto blk = K.block(offset[bi], offset[bj], Eigen::Index(rules[bi].size()),
                                   Eigen::Index(rules[bj].size()));
                if (!hf) {
                    blk = a[bi] * b[bj].transpose();
                } else if (points[bi].x + points[bj].x <= 0) {
                    blk = (a[bi] + ar[bi]) * b[bj].transpose();
                } else {
                    blk = a[bi] * (b[bj] - br[bj]).transpose();
                    for (size_t i = 0; i < rules[bi].size(); ++i)
                        for (size_t j = 0; j < rules[bj].size(); ++j)
                            blk(Eigen::Index(i), Eigen::Index(j)) +=
                                t_kernel(2 * t, points[bj].x - points[bi].x, -rules[bi].x[i] - rules[bj].x[j]);
                }
            }
    }

    for (size_t bi = 0; bi < m; ++bi)
        for (size_t bj = 0; bj < m; ++bj)
            for (size_t i = 0; i < rules[bi].size(); ++i)
                for (size_t j = 0; j < rules[bj].size(); ++j) {
                    auto& e = K(offset[bi] + Eigen::Index(i), offset[bj] + Eigen::Index(j));
                    e -= heat_term(points[bi].x, rules[bi].x[i], points[bj].x, rules[bj].x[j]);
                    e *= std::sqrt(rules[bi].w[i] * rules[bj].w[j]);
                }
    return det_window(K);
}

FixedPointResult fixed_point_prob(const Profile& h0, std::vector<SpacePoint> points, double t, double tol)
{
    double prev = fixed_point_prob_at_order(h0, points, t, kOrderLadder[0]);
    for (size_t i = 1; i < kOrderLadder.size(); ++i) {
        double v = fixed_point_prob_at_order(h0, points, t, kOrderLadder[i]);
        if (std::abs(v - prev) < tol)
            return {v, std::abs(v - prev), kOrderLadder[i]};
        prev = v;
    }
    throw LadderError("fixed_point_prob: ladder exhausted without meeting tolerance");
}

}  // namespace kpz
