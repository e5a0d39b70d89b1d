#include "doctest.h"
#include "gen.hpp"

#include "kpz/exact.hpp"

#include <cmath>

using namespace kpz;

TEST_CASE("Schuetz transition for one particle is the Poisson law")
{
    for (long d = 0; d < 10; ++d) {
        const long x[] = {3 + d}, y[] = {3};
        CHECK(schuetz_transition(x, y, 2.2) == doctest::Approx(poisson_pmf(d, 2.2)).epsilon(1e-13));
    }
    const long x[] = {1}, y[] = {3};
    CHECK(schuetz_transition(x, y, 2.2) == 0.0);
}

TEST_CASE("Schuetz transition at time zero and for blocked moves")
{
    const long y[] = {4, 1, -3};
    const long same[] = {4, 1, -3}, moved[] = {5, 1, -3}, behind[] = {4, 1, -4};
    CHECK(schuetz_transition(same, y, 0.0) == doctest::Approx(1.0));
    CHECK(schuetz_transition(moved, y, 0.0) == doctest::Approx(0.0));
    CHECK(std::abs(schuetz_transition(behind, y, 1.3)) < 1e-15);
}

TEST_CASE("two particles: leader is free, follower total mass is one")
{
    // summing over the follower recovers the free leader marginal
    const long y[] = {0, -1};
    const double t = 1.1;
    for (long a = 0; a < 4; ++a) {
        double s = 0.0;
        for (long b = -1; b < a; ++b) {
            const long x[] = {a, b};
            s += schuetz_transition(x, y, t);
        }
        CHECK(s == doctest::Approx(poisson_pmf(a, t)).epsilon(1e-12));
    }
}

TEST_CASE("Gelfand-Tsetlin sum reproduces the determinant")
{
    Gen g(51);
    for (int rep = 0; rep < 8; ++rep) {
        int n = int(g.integer(2, 3));
        std::vector<long> y = g.chamber(n, 0, 2);
        std::vector<long> x = y;
        x[0] += g.integer(0, 3);
        double t = g.uniform(0.3, 1.5);
        GtResult r = gt_pattern_sum(x, y, t, 30);
        CAPTURE(n);
        CHECK(r.value == doctest::Approx(schuetz_transition(x, y, t)).epsilon(1e-9).scale(1e-12));
        CHECK(r.patterns > 0);
    }
}

TEST_CASE("residue forms of the transfer kernels")
{
    Gen g(52);
    for (int rep = 0; rep < 12; ++rep) {
        double t = g.uniform(0.2, 3.0);
        long n = g.integer(1, 5), z1 = g.integer(-4, 4), z2 = g.integer(-4, 4);
        CAPTURE(n);
        CAPTURE(z1);
        CAPTURE(z2);
        CHECK(s_m(t, n, z1, z2) == doctest::Approx(s_m_residue(t, n, z1, z2)).epsilon(1e-11).scale(1.0));
        CHECK(s_n(t, n, z1, z2) == doctest::Approx(s_n_residue(t, n, z1, z2)).epsilon(1e-11).scale(1.0));
    }
}

TEST_CASE("barred walk kernel equals Q^n far from the boundary")
{
    for (long n = 1; n <= 4; ++n)
        for (long d = n; d < n + 6; ++d)
            CHECK(qbar(n, d, 0).convert_to<double>() == doctest::Approx(q_pow(n, d, 0)).epsilon(1e-15));
    // frozen values
    CHECK(qbar(2, 4, 0) == Rational(3, 16));
    CHECK(qbar(3, 5, 0) == Rational(3, 16));
}

TEST_CASE("reversed hitting form agrees with the forward one")
{
    InitialData s = InitialData::step();
    CHECK(g0n(s, 3, 2, -4) == doctest::Approx(0.15625).epsilon(1e-14));
    Gen g(53);
    for (int rep = 0; rep < 10; ++rep) {
        int n = int(g.integer(1, 4));
        long z2 = -n - g.integer(0, 4), z1 = g.integer(-3, 4);
        CAPTURE(n);
        CAPTURE(z1);
        CAPTURE(z2);
        CHECK(g0n_reversed(s, n, z1, z2) == doctest::Approx(g0n(s, n, z1, z2)).epsilon(1e-12).scale(1e-14));
    }
}

TEST_CASE("biorthogonal functions match the closed contour forms")
{
    const double t = 1.5;
    BiorthoSystem step(InitialData::step(), t, 4);
    BiorthoSystem per(InitialData::explicit_data({-2, -4, -6, -8, -10}), t, 4);
    for (int n = 1; n <= 4; ++n)
        for (int k = 0; k < n; ++k)
            for (long x = -6; x <= 3; ++x) {
                CAPTURE(n);
                CAPTURE(k);
                CAPTURE(x);
                CHECK(step.phi(n, k, x) == doctest::Approx(phi_closed_form_step(n, k, x, t)).epsilon(1e-10).scale(1e-12));
                CHECK(per.phi(n, k, x) ==
                      doctest::Approx(phi_closed_form_periodic(2, n, k, x, t)).epsilon(1e-10).scale(1e-12));
            }
    CHECK(step.biortho_defect(3, -30, 30) < 1e-12);
    CHECK(per.biortho_defect(4, -40, 30) < 1e-10);
}

TEST_CASE("hitting kernel matches the double contour kernel for step data")
{
    InitialData s = InitialData::step();
    CHECK(kt_kernel(1.5, s, 2, 3, -1, -2) == doctest::Approx(-0.15833194227271685).epsilon(1e-12));
    Gen g(54);
    for (int rep = 0; rep < 10; ++rep) {
        double t = g.uniform(0.5, 2.0);
        int ni = int(g.integer(1, 3)), nj = int(g.integer(1, 3));
        long x1 = g.integer(-5, 2), x2 = g.integer(-5, 2);
        CHECK(kt_kernel(t, s, ni, nj, x1, x2) ==
              doctest::Approx(kernel_step_double_contour(t, ni, nj, x1, x2)).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("multipoint probabilities in easy limits")
{
    InitialData s = InitialData::step();
    const Event far[] = {{2, -100}};
    CHECK(multipoint_probability(s, 1.5, far).value == doctest::Approx(1.0).epsilon(1e-12));
    // lone particle at 0: P(Poisson(1.5) >= 4)
    const Event one[] = {{1, 3}};
    CHECK(multipoint_probability(InitialData::explicit_data({0}), 1.5, one).value ==
          doctest::Approx(0.0656424543784502).epsilon(1e-10));
    const Event two[] = {{1, 0}, {3, -4}};
    CHECK(multipoint_probability(s, 1.0, two).value ==
          doctest::Approx(path_integral_probability(s, 1.0, two)).epsilon(1e-9));
}

TEST_CASE("Gelfand-Tsetlin indicator determinant")
{
    std::vector<std::vector<long>> ok{{3}, {1, 4}}, bad{{5}, {1, 4}};
    CHECK(in_gt(ok));
    CHECK_FALSE(in_gt(bad));
    CHECK(gt_indicator_det(ok) == doctest::Approx(1.0));
    CHECK(gt_indicator_det(bad) == doctest::Approx(0.0));
}
