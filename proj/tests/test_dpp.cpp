#include "doctest.h"
#include "gen.hpp"

#include "kpz/dpp.hpp"

#include <cmath>

using namespace kpz;

namespace {

Eigen::MatrixXd random_psd(Gen& g, int n)
{
    Eigen::MatrixXd b(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            b(i, j) = g.uniform(-0.7, 0.7);
    return b * b.transpose();
}

std::vector<long> iota_points(int n)
{
    std::vector<long> p(size_t(n), 0);
    for (int i = 0; i < n; ++i)
        p[size_t(i)] = i;
    return p;
}

}  // namespace

TEST_CASE("diagonal L gives independent points")
{
    Eigen::MatrixXd L = Eigen::Vector3d(1.0, 3.0, 0.5).asDiagonal();
    FiniteDpp k = l_to_k(LEnsembleSpec(iota_points(3), L));
    CHECK(k.kernel(0, 0) == doctest::Approx(0.5));
    CHECK(k.kernel(1, 1) == doctest::Approx(0.75));
    CHECK(k.kernel(2, 2) == doctest::Approx(1.0 / 3.0));
    CHECK(std::abs(k.kernel(0, 1)) < 1e-15);
    const int pair[] = {0, 1};
    CHECK(dpp_correlation(k, pair) == doctest::Approx(0.375));
    CHECK(gap_probability(k, pair) == doctest::Approx(0.5 * 0.25));
}

TEST_CASE("one-point correlation is the kernel diagonal; empty gap is one")
{
    Gen g(21);
    FiniteDpp k = l_to_k(LEnsembleSpec(iota_points(5), random_psd(g, 5)));
    for (int i = 0; i < 5; ++i) {
        const int one[] = {i};
        CHECK(dpp_correlation(k, one) == doctest::Approx(k.kernel(i, i)).epsilon(1e-14));
    }
    CHECK(gap_probability(k, std::span<const int>{}) == 1.0);
}

TEST_CASE("conditioning on nothing fixed reproduces the L-ensemble kernel")
{
    Gen g(22);
    Eigen::MatrixXd L = random_psd(g, 6);
    FiniteDpp a = l_to_k(LEnsembleSpec(iota_points(6), L));
    FiniteDpp b = conditional_l_to_k(LEnsembleSpec(iota_points(6), L, std::vector<bool>(6, true)));
    CHECK((a.kernel - b.kernel).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("kernel eigenvalues of an L-ensemble lie in [0, 1)")
{
    Gen g(23);
    for (int rep = 0; rep < 10; ++rep) {
        FiniteDpp k = l_to_k(LEnsembleSpec(iota_points(7), random_psd(g, 7)));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (k.kernel + k.kernel.transpose()));
        CHECK(es.eigenvalues().minCoeff() > -1e-12);
        CHECK(es.eigenvalues().maxCoeff() < 1.0);
    }
}

TEST_CASE("Karlin-McGregor with one walker is the transition probability")
{
    StepKernel p = [](long a, long b, int t) { return (b - a >= 0 && b - a <= t) ? 0.25 * double(t + 1 - (b - a)) : 0.0; };
    const long s[] = {2}, e[] = {3};
    CHECK(karlin_mcgregor_det(p, s, e, 2) == doctest::Approx(p(2, 3, 2)));
    const long s2[] = {0, 1};
    CHECK_THROWS(karlin_mcgregor_det(p, s2, e, 2));
}

TEST_CASE("vicious walk kernel is a projection of rank n under the reversible measure")
{
    // simple symmetric walk, counting measure
    StepKernel p = [](long a, long b, int t) {
        long d = std::abs(b - a);
        if (d > t || (t - d) % 2)
            return 0.0;
        return std::tgamma(t + 1) / (std::tgamma(double((t + d) / 2) + 1) * std::tgamma(double((t - d) / 2) + 1)) *
               std::pow(0.5, t);
    };
    const int t = 3;
    std::vector<long> sites;
    for (long u = -10; u <= 12; ++u)
        sites.push_back(u);
    const long x[] = {0, 2, 4};
    FiniteDpp k = vicious_walk_kernel(p, t, [](long) { return 1.0; }, sites, x);
    CHECK(k.kernel.trace() == doctest::Approx(3.0).epsilon(1e-12));
    CHECK((k.kernel * k.kernel - k.kernel).cwiseAbs().maxCoeff() < 1e-12);
}
