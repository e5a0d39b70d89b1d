#include "doctest.h"
#include "gen.hpp"

#include "kpz/continuum.hpp"

#include <cmath>
#include <numbers>

using namespace kpz;

TEST_CASE("kernel reference values")
{
    // 30-digit reference evaluations
    CHECK(t_kernel(1.5, 0.4, -0.7) == doctest::Approx(0.201970727649784828).epsilon(1e-12));
    CHECK(heat_kernel(0.5, 0.3) == doctest::Approx(0.381387815460524086).epsilon(1e-14));
    CHECK(airy_kernel(1.0, 0.5) == doctest::Approx(0.0128895104356568554).epsilon(1e-12));
    CHECK(t_kernel(-1.5, 0.4, 0.7) == doctest::Approx(t_kernel(1.5, 0.4, -0.7)).epsilon(1e-14));
}

TEST_CASE("heat kernel has unit mass")
{
    CHECK(integrate([](double z) { return heat_kernel(0.5, z); }, Domain::line(), 80) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Tracy-Widom distributions")
{
    // published values: F_GUE(-2), and the means of both laws
    CHECK(tracy_widom(Ensemble::gue, -2.0).value == doctest::Approx(0.41322414250512).epsilon(1e-12));
    const double mean_gue = -1.7710868074, mean_goe = -1.2065335746;
    for (auto [e, m] : {std::pair{Ensemble::gue, mean_gue}, std::pair{Ensemble::goe, mean_goe}}) {
        double mean = -integrate([e](double r) { return tracy_widom_at_order(e, r, 60); }, Domain::interval(-10, 0), 120) +
                      integrate([e](double r) { return 1 - tracy_widom_at_order(e, r, 60); }, Domain::interval(0, 8), 120);
        CHECK(mean == doctest::Approx(m).epsilon(1e-8));
    }
    CHECK_THROWS_AS(tracy_widom(Ensemble::gue, 7.0), std::domain_error);
}

TEST_CASE("Tracy-Widom distribution functions are monotone")
{
    for (auto e : {Ensemble::gue, Ensemble::goe}) {
        double prev = 0.0;
        for (double r = -6; r <= 4; r += 0.5) {
            double v = tracy_widom(e, r).value;
            CHECK(v >= prev);
            CHECK(v <= 1.0);
            prev = v;
        }
    }
}

TEST_CASE("alternative Fredholm forms agree")
{
    for (double r : {-3.0, -1.0, 0.5}) {
        CHECK(f_gue_second_form(r) == doctest::Approx(tracy_widom(Ensemble::gue, r).value).epsilon(1e-11));
        CHECK(f_goe_reflection_form(r / 2) ==
              doctest::Approx(tracy_widom(Ensemble::goe, std::cbrt(4.0) * r / 2).value).epsilon(1e-11));
    }
}

TEST_CASE("one-point laws of the fixed point")
{
    const Profile nw = Profile::narrow_wedge(0.0), fl = Profile::flat(), hf = Profile::half_flat();
    CHECK(fixed_point_prob(nw, {{0, -1}}, 1).value == doctest::Approx(tracy_widom(Ensemble::gue, -1).value).epsilon(1e-10));
    // 1:2:3 scaling and the parabola
    CHECK(fixed_point_prob(nw, {{0, -1}}, 2).value ==
          doctest::Approx(tracy_widom(Ensemble::gue, -1 / std::cbrt(2.0)).value).epsilon(1e-10));
    CHECK(fixed_point_prob(nw, {{1, -1}}, 1).value == doctest::Approx(tracy_widom(Ensemble::gue, 0).value).epsilon(1e-10));
    CHECK(fixed_point_prob(fl, {{0.7, -0.5}}, 1).value ==
          doctest::Approx(tracy_widom(Ensemble::goe, -0.5 * std::cbrt(4.0)).value).epsilon(1e-10));
    // half-flat: flat on the right, more and more wedge-like on the left
    double right = fixed_point_prob(hf, {{3, -0.5}}, 1).value;
    CHECK(right == doctest::Approx(tracy_widom(Ensemble::goe, -0.5 * std::cbrt(4.0)).value).epsilon(1e-8));
    CHECK(fixed_point_prob(hf, {{0, -0.5}}, 1).value > right);
    CHECK(fixed_point_prob(hf, {{-1, -0.5}}, 1).value > fixed_point_prob(hf, {{0, -0.5}}, 1).value);
}

TEST_CASE("two-point law is bounded by the one-point laws")
{
    const Profile nw = Profile::narrow_wedge(0.0);
    double joint = fixed_point_prob(nw, {{0, -1}, {0.5, -1}}, 1).value;
    CHECK(joint == doctest::Approx(0.749026754365221).epsilon(1e-9));
    CHECK(joint <= fixed_point_prob(nw, {{0, -1}}, 1).value);
    CHECK(joint <= fixed_point_prob(nw, {{0.5, -1}}, 1).value);
}

TEST_CASE("kernel identities")
{
    CHECK(group_law_deviation(0.5, 0.3, 0.7, -0.2, {-1, 0, 1.5}) < 1e-11);
    SymmetryReport s = symmetry_checks(1.0, 1.7, {-1, 0, 1});
    CHECK(s.scaling_123 < 1e-11);
    CHECK(s.skew < 1e-11);
    CHECK(s.shift < 1e-11);
    CHECK(s.reflection_nw < 1e-11);
    CHECK(s.reflection_flat < 1e-11);
    CHECK(flat_kernel_quadrature(1.0, 0.2, -0.3, 0.6, 0.4) ==
          doctest::Approx(fixed_point_kernel({ClosedClass::flat}, 1.0, 0.2, -0.3, 0.6, 0.4)).epsilon(1e-9));
    CHECK(half_flat_kernel_alt(1.0, 0.2, -0.3, 0.6, 0.4) ==
          doctest::Approx(fixed_point_kernel({ClosedClass::half_flat}, 1.0, 0.2, -0.3, 0.6, 0.4)).epsilon(1e-9));
}

TEST_CASE("hitting operator by Monte Carlo")
{
    const Profile lc = Profile::lc_constant(1.0);
    // start above the barrier: no walk needed
    McEstimate above = hit_epi_mc(lc, 1.0, 0.5, 1.2, -0.2, 10, 1);
    CHECK(above.mean == doctest::Approx(t_kernel(1.0, 0.5, 1.4)));
    CHECK(above.stderr_ == 0.0);
    // flat barrier at c: first passage of a variance-2s Brownian motion from v
    const double t = 1.0, x = 0.5, v = 0.3, u = -0.2, c = 1.0;
    double exact = integrate(
        [&](double s) {
            double d = c - v;
            return d / std::sqrt(4 * std::numbers::pi * s * s * s) * std::exp(-d * d / (4 * s)) *
                   t_kernel(t, x - s, c - u);
        },
        Domain::interval(0.0, 12.0), 320);
    McEstimate m = hit_epi_mc(lc, t, x, v, u, 4000, 5);
    CHECK(std::abs(m.mean - exact) < 4 * m.stderr_);
    CHECK_THROWS_AS(hit_epi_mc(Profile::flat(), t, x, v, u, 10, 1), std::invalid_argument);
}

TEST_CASE("profiles")
{
    Profile hf = Profile::half_flat();
    CHECK(std::isinf(hf(-1.0)));
    CHECK(hf(2.0) == 0.0);
    Profile back = profile_from_json(profile_to_json(hf));
    CHECK(back.xs == hf.xs);
    CHECK(back.infinite == hf.infinite);
    CHECK_THROWS(profile_from_json(R"({"kind":"uc","xs":[0.0],"ys":[0.0],"infinite":[true,false],"bogus":1})"));
    CHECK(hopf_lax(Profile::narrow_wedge(0.0), 1.0, 2.0) == doctest::Approx(-4.0));
    CHECK(classify(Profile::narrow_wedge(0.5)).center == 0.5);
    CHECK(classify(Profile::flat(2.0)).cls == ClosedClass::flat);
    CHECK(classify(hf).cls == ClosedClass::half_flat);
    Profile ramp = Profile::flat();
    ramp.right_slope = 1.0;
    CHECK_THROWS_AS(classify(ramp), std::invalid_argument);
}

TEST_CASE("microscopic scaling parameters")
{
    ScalingParams p = ScalingParams::make(0.1, 1.0, {0.0}, {0.0});
    CHECK(p.t_micro == doctest::Approx(2 * std::pow(0.1, -1.5)));
    CHECK(p.n.size() == 1);
    CHECK(std::abs(p.rounding[0]) < 1.0);
}
