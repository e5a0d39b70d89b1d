#include "doctest.h"
#include "gen.hpp"

#include "kpz/fredholm.hpp"

#include <cmath>
#include <numbers>

using namespace kpz;

TEST_CASE("det(I - K) on finite matrices")
{
    CHECK(det_window(Eigen::MatrixXd::Zero(4, 4)) == 1.0);
    CHECK(det_window(0.5 * Eigen::MatrixXd::Identity(3, 3)) == doctest::Approx(0.125));
    Eigen::MatrixXd k(2, 2);
    k << 0.2, 0.3, 0.1, 0.4;
    CHECK(det_window(k) == doctest::Approx(0.8 * 0.6 - 0.03));
}

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly")
{
    for (int n : {10, 20, 40, 160}) {
        QuadRule q = gauss_legendre01(n);
        double s = 0.0;
        for (size_t i = 0; i < q.size(); ++i)
            s += q.w[i] * std::pow(q.x[i], 2 * n - 1);
        CHECK(s == doctest::Approx(1.0 / (2 * n)).epsilon(1e-13));
    }
    CHECK_THROWS_AS(gauss_legendre01(17), std::invalid_argument);
}

TEST_CASE("mapped rules on half-lines, the line and intervals")
{
    CHECK(integrate([](double x) { return std::exp(-x); }, Domain::right_of(0.0), 80) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(integrate([](double x) { return std::exp(x - 2); }, Domain::left_of(2.0), 80) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(integrate([](double x) { return std::exp(-x * x); }, Domain::line(), 80) ==
          doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-12));
    CHECK(integrate([](double x) { return std::exp(-x); }, Domain::right_of(0.0), 80, HalfLineMap::tangent) ==
          doctest::Approx(1.0).epsilon(1e-10));
    CHECK(integrate([](double x) { return x * x; }, Domain::interval(-1.0, 2.0), 10) == doctest::Approx(3.0));
}

TEST_CASE("composite rule weights sum to the interval length")
{
    Gen g(31);
    for (int i = 0; i < 20; ++i) {
        double lo = g.uniform(-5, 0), hi = lo + g.uniform(0.1, 10);
        QuadRule q = composite_rule(lo, hi, int(g.integer(1, 9)), 20);
        double s = 0.0;
        for (double w : q.w)
            s += w;
        CHECK(s == doctest::Approx(hi - lo).epsilon(1e-13));
        CHECK(q.x.front() > lo);
        CHECK(q.x.back() < hi);
    }
}

TEST_CASE("rank-one kernel: det(I - K) = 1 - trace")
{
    // K(x,y) = e^{-x-y} on [0,∞): trace 1/2
    NystromProblem p{[](double x, double y) { return std::exp(-x - y); }, Domain::right_of(0.0)};
    NystromResult r = nystrom_converged(p, 1e-12);
    CHECK(r.value == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.delta < 1e-12);
    // shifted domain [s,∞): trace e^{-2s}/2
    p.domain = Domain::right_of(1.0);
    CHECK(nystrom_value(p, 40) == doctest::Approx(1 - std::exp(-2.0) / 2).epsilon(1e-12));
}

TEST_CASE("order ladder raises when the tolerance cannot be met")
{
    // kernel with a jump inside the domain converges only algebraically
    NystromProblem p{[](double x, double y) { return (x + y < 1.3) ? 0.3 : 0.0; }, Domain::interval(0.0, 1.0)};
    CHECK_THROWS_AS(nystrom_converged(p, 1e-14), LadderError);
}

TEST_CASE("block extended determinant of a block-diagonal kernel factorizes")
{
    BlockExtendedProblem p;
    p.kernel = [](int i, double x, int j, double y) {
        return i == j ? 0.5 * (i + 1) * std::exp(-x - y) : 0.0;
    };
    p.domains = {Domain::right_of(0.0), Domain::right_of(0.0)};
    NystromResult r = block_extended_converged(p, 1e-12);
    CHECK(r.value == doctest::Approx((1 - 0.25) * (1 - 0.5)).epsilon(1e-12));
}
