#pragma once

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <stdexcept>
#include <vector>

namespace kpz {

// det(I - K) for a finite matrix, LU with partial pivoting.
double det_window(const Eigen::MatrixXd& K);

inline constexpr std::array<int, 4> kOrderLadder{20, 40, 80, 160};

struct Domain {
    enum class Kind { right, left, full, finite };
    Kind kind = Kind::right;
    double a = 0.0;  // right: [a,∞)  left: (-∞,a]  finite: [a,b]
    double b = 0.0;

    static Domain right_of(double r) { return {Kind::right, r, 0.0}; }
    static Domain left_of(double r) { return {Kind::left, r, 0.0}; }
    static Domain line() { return {Kind::full, 0.0, 0.0}; }
    static Domain interval(double lo, double hi) { return {Kind::finite, lo, hi}; }
};

enum class HalfLineMap { rational, tangent };

struct QuadRule {
    std::vector<double> x, w;
    size_t size() const { return x.size(); }
};

// Gauss-Legendre on (0,1); n from {10, 20, 30, 40, 60, 80, 120, 160, 240, 320}.
QuadRule gauss_legendre01(int n);
// Gauss rule mapped onto a domain. Half-lines use s -> r + s/(1-s) (or a tangent
// map), the full line s -> (2s-1)/(s(1-s)).
QuadRule mapped_rule(const Domain& d, int n, HalfLineMap map = HalfLineMap::rational);

// Gauss-Legendre with n nodes on each of `panels` equal pieces of [lo, hi].
QuadRule composite_rule(double lo, double hi, int panels, int n = 20);

template <class F>
double integrate(F&& f, const Domain& d, int n, HalfLineMap map = HalfLineMap::rational)
{
    QuadRule q = mapped_rule(d, n, map);
    double s = 0.0;
    for (size_t i = 0; i < q.size(); ++i)
        s += q.w[i] * f(q.x[i]);
    return s;
}

using Kernel2 = std::function<double(double, double)>;

struct NystromProblem {
    Kernel2 kernel;
    Domain domain = Domain::right_of(0.0);
    int order = 80;
    HalfLineMap map = HalfLineMap::rational;
};

struct NystromResult {
    double value = 1.0;
    double delta = 0.0;  // change from the previous ladder order
    int order = 0;
};

class LadderError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

double nystrom_value(const NystromProblem& p, int order);
NystromResult nystrom_det(const NystromProblem& p);
// Walks the ladder until delta < tol; throws LadderError if it never does.
NystromResult nystrom_converged(const NystromProblem& p, double tol);

// Multi-index kernel K(i,u; j,v) on per-index domains.
struct BlockExtendedProblem {
    std::function<double(int, double, int, double)> kernel;
    std::vector<Domain> domains;
    int order = 80;
    HalfLineMap map = HalfLineMap::rational;
};

double block_extended_value(const BlockExtendedProblem& p, int order);
NystromResult block_extended_det(const BlockExtendedProblem& p);
NystromResult block_extended_converged(const BlockExtendedProblem& p, double tol);

}  // namespace kpz
