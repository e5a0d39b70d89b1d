#include "kpz/fredholm.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <numbers>
#include <string>

namespace kpz {
namespace {

template <int N>
QuadRule gl()
{
    using G = boost::math::quadrature::gauss<double, N>;
    const auto& ab = G::abscissa();
    const auto& wt = G::weights();
    QuadRule q;
    // boost stores the nonnegative half of the symmetric rule on (-1,1)
    for (size_t i = 0; i < ab.size(); ++i) {
        if (ab[i] == 0.0) {
            q.x.push_back(0.5);
            q.w.push_back(0.5 * wt[i]);
            continue;
        }
        q.x.push_back(0.5 * (1 - ab[i]));
        q.w.push_back(0.5 * wt[i]);
        q.x.push_back(0.5 * (1 + ab[i]));
        q.w.push_back(0.5 * wt[i]);
    }
    return q;
}

}  // namespace

double det_window(const Eigen::MatrixXd& K)
{
    if (K.rows() == 0)
        return 1.0;
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(K.rows(), K.cols()) - K;
    return m.partialPivLu().determinant();
}

QuadRule gauss_legendre01(int n)
{
    switch (n) {
    case 10: return gl<10>();
    case 20: return gl<20>();
    case 30: return gl<30>();
    case 40: return gl<40>();
    case 60: return gl<60>();
    case 80: return gl<80>();
    case 120: return gl<120>();
    case 160: return gl<160>();
    case 240: return gl<240>();
    case 320: return gl<320>();
    }
    throw std::invalid_argument("gauss_legendre01: unsupported order " + std::to_string(n));
}

QuadRule mapped_rule(const Domain& d, int n, HalfLineMap map)
{
    QuadRule g = gauss_legendre01(n);
    QuadRule q;
    q.x.resize(g.size());
    q.w.resize(g.size());
    for (size_t i = 0; i < g.size(); ++i) {
        double s = g.x[i], x = 0.0, jac = 1.0;
        switch (d.kind) {
        case Domain::Kind::finite:
            x = d.a + (d.b - d.a) * s;
            jac = d.b - d.a;
            break;
        case Domain::Kind::full:
            x = (2 * s - 1) / (s * (1 - s));
            jac = (2 * s * s - 2 * s + 1) / (s * s * (1 - s) * (1 - s));
            break;
        case Domain::Kind::right:
        case Domain::Kind::left: {
            double y = 0.0;
            if (map == HalfLineMap::rational) {
                y = s / (1 - s);
                jac = 1 / ((1 - s) * (1 - s));
            } else {
                double c = std::cos(0.5 * std::numbers::pi * s);
                y = 4 * std::tan(0.5 * std::numbers::pi * s);
                jac = 2 * std::numbers::pi / (c * c);
            }
            x = d.kind == Domain::Kind::right ? d.a + y : d.a - y;
            break;
        }
        }
        q.x[i] = x;
        q.w[i] = g.w[i] * jac;
    }
    return q;
}

double nystrom_value(const NystromProblem& p, int order)
{
    QuadRule q = mapped_rule(p.domain, order, p.map);
    const int n = int(q.size());
    Eigen::MatrixXd K(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            K(i, j) = std::sqrt(q.w[i]) * p.kernel(q.x[i], q.x[j]) * std::sqrt(q.w[j]);
    return det_window(K);
}

namespace {

int previous_order(int order)
{
    for (size_t i = 1; i < kOrderLadder.size(); ++i)
        if (kOrderLadder[i] == order)
            return kOrderLadder[i - 1];
    return order / 2;
}

}  // namespace

NystromResult nystrom_det(const NystromProblem& p)
{
    double v = nystrom_value(p, p.order);
    double prev = nystrom_value(p, previous_order(p.order));
    return {v, std::fabs(v - prev), p.order};
}

NystromResult nystrom_converged(const NystromProblem& p, double tol)
{
    double prev = nystrom_value(p, kOrderLadder[0]);
    for (size_t i = 1; i < kOrderLadder.size(); ++i) {
        double v = nystrom_value(p, kOrderLadder[i]);
        if (std::fabs(v - prev) < tol)
            return {v, std::fabs(v - prev), kOrderLadder[i]};
        prev = v;
    }
    throw LadderError("nystrom_det: ladder exhausted without meeting tolerance");
}

QuadRule composite_rule(double lo, double hi, int panels, int n)
{
    if (!(hi > lo) || panels < 1)
        throw std::invalid_argument("composite_rule: bad interval");
    QuadRule g = gauss_legendre01(n), q;
    double h = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p)
        for (size_t i = 0; i < g.size(); ++i) {
            q.x.push_back(lo + h * (p + g.x[i]));
            q.w.push_back(h * g.w[i]);
        }
    return q;
}

double block_extended_value(const BlockExtendedProblem& p, int order)
{
    std::vector<QuadRule> rules;
    std::vector<int> offset;
    int n = 0;
    for (const auto& d : p.domains) {
        rules.push_back(mapped_rule(d, order, p.map));
        offset.push_back(n);
        n += int(rules.back().size());
    }
    Eigen::MatrixXd K(n, n);
    for (size_t bi = 0; bi < rules.size(); ++bi)
        for (size_t bj = 0; bj < rules.size(); ++bj)
            for (size_t i = 0; i < rules[bi].size(); ++i)
                for (size_t j = 0; j < rules[bj].size(); ++j)
                    K(offset[bi] + i, offset[bj] + j) =
                        std::sqrt(rules[bi].w[i] * rules[bj].w[j]) *
                        p.kernel(int(bi), rules[bi].x[i], int(bj), rules[bj].x[j]);
    return det_window(K);
}

NystromResult block_extended_det(const BlockExtendedProblem& p)
{
    double v = block_extended_value(p, p.order);
    double prev = block_extended_value(p, previous_order(p.order));
    return {v, std::fabs(v - prev), p.order};
}

NystromResult block_extended_converged(const BlockExtendedProblem& p, double tol)
{
    double prev = block_extended_value(p, kOrderLadder[0]);
    for (size_t i = 1; i < kOrderLadder.size(); ++i) {
        double v = block_extended_value(p, kOrderLadder[i]);
        if (std::fabs(v - prev) < tol)
            return {v, std::fabs(v - prev), kOrderLadder[i]};
        prev = v;
    }
    throw LadderError("block_extended_det: ladder exhausted without meeting tolerance");
}

}  // namespace kpz
