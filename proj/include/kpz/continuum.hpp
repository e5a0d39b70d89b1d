#pragma once

#include "kpz/fredholm.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace kpz {

// ---- T_{t,x} and friends ----

// T_{t,x}(z); t < 0 is the adjoint, T_{t,x}(z) = T_{-t,x}(-z); t = 0, x > 0 the heat kernel.
double t_kernel(double t, double x, double z);
double heat_kernel(double x, double z);  // (4πx)^{-1/2} e^{-z²/4x}

enum class AiryFamily { airy2, airy1, airy21 };
AiryFamily parse_airy_family(const std::string& s);

double airy_process_kernel(AiryFamily f, double x, double u, double xp, double up);
// airy2 for x < x' by direct quadrature of the negative-λ integral (cross-check path)
double airy2_negative_direct(double x, double u, double xp, double up);
double airy_kernel(double x, double y);  // K_Ai

enum class Ensemble { gue, goe };
Ensemble parse_ensemble(const std::string& s);

struct TwValue {
    double value;
    double delta;  // change between the last two ladder orders
    int order;
};

// F_GUE(r) = det(I - K_Ai) on [r,∞); F_GOE(r) = det(I - Ai(x+y+r)) on (0,∞).
TwValue tracy_widom(Ensemble e, double r, int order = 160);
double tracy_widom_at_order(Ensemble e, double r, int order);
// det(I - K χ_r K) on the λ < 0 side, inner integral by quadrature
double f_gue_second_form(double r, int order = 80);
// det(I - K ϱ_r K), equal to F_GOE(4^{1/3} r)
double f_goe_reflection_form(double r, int order = 80);

// ---- profiles ----

// Piecewise-linear function with breakpoints; each segment (including the two
// unbounded ones) may be replaced by -∞ (UC) or +∞ (LC).
struct Profile {
    enum class Kind { uc, lc };
    Kind kind = Kind::uc;
    std::vector<double> xs, ys;
    double left_slope = 0.0, right_slope = 0.0;
    std::vector<bool> infinite;  // xs.size() + 1 segments, left to right

    double operator()(double x) const;
    bool valid() const;
    double growth_constant() const;  // C with |value| <= C(1 + |x|) where finite

    static Profile narrow_wedge(double u, double value = 0.0);
    static Profile flat(double value = 0.0);
    static Profile half_flat();  // -∞ on (-∞, 0), 0 on [0, ∞)
    static Profile lc_constant(double value);
    static Profile lc_kink(double y0, double value, double slope);  // value up to y0, then linear
};

std::string profile_to_json(const Profile& p);
Profile profile_from_json(const std::string& s);

double hopf_lax(const Profile& h0, double t, double x);

// ---- fixed point ----

struct SpacePoint {
    double x;
    double a;
};

enum class ClosedClass { narrow_wedge, flat, half_flat };

struct ClosedProfile {
    ClosedClass cls;
    double center = 0.0;  // narrow wedge location
    double shift = 0.0;   // additive constant of h0
};

// recognizes the closed-form classes; throws for anything else
ClosedProfile classify(const Profile& h0);

// K(i,u; j,v) = -heat 1{x_i<x_j} + second term, for the given class
double fixed_point_kernel(const ClosedProfile& c, double t, double xi, double u, double xj, double v);
// half-flat second term as NW part + flat closed form - flat restricted to z < 0 (cross-check path)
double half_flat_kernel_alt(double t, double xi, double u, double xj, double v);
// flat second term by full-line quadrature (cross-check of the closed form)
double flat_kernel_quadrature(double t, double xi, double u, double xj, double v);

struct FixedPointResult {
    double value;
    double delta;
    int order;
};

FixedPointResult fixed_point_prob(const Profile& h0, std::vector<SpacePoint> points, double t, double tol = 1e-10);
double fixed_point_prob_at_order(const Profile& h0, std::vector<SpacePoint> points, double t, int order);

// ---- hitting operator by Monte Carlo ----

struct McEstimate {
    double mean;
    double stderr_;
    long samples;
};

McEstimate hit_epi_mc(const Profile& g, double t, double x, double v, double u, long samples, std::uint64_t seed,
                      double dt = 0.01);

// ---- identities ----

struct SkewReport {
    double max_deviation;
    int points;
};
SkewReport skew_identity_check(const Profile& h, double t, const std::vector<double>& grid);

// ∫ T_{s,x}(z - m) T_{t,y}(m) dm against T_{s+t,x+y}(z)
double group_law_deviation(double s, double x, double t, double y, const std::vector<double>& zs);

struct SymmetryReport {
    double scaling_123;
    double skew;
    double shift;
    double reflection_nw;
    double reflection_flat;
};
SymmetryReport symmetry_checks(double t, double alpha, const std::vector<double>& grid);

// ---- kernel limit ----

struct ScalingParams {
    double eps = 0.0, t = 0.0;
    std::vector<double> xs, as;
    // derived
    double t_micro = 0.0;
    std::vector<long> n, a_micro;
    std::vector<double> rounding;  // continuum a implied by the rounded n, minus the requested a

    static ScalingParams make(double eps, double t, std::vector<double> xs, std::vector<double> as);
};

struct KernelLimitRow {
    double eps;
    long n;
    double a_eff;
    double residual_sm;
    double residual_sn;
    int points;
};

std::vector<KernelLimitRow> kernel_limit_residual(const std::vector<double>& eps_ladder, double t, double x, double a,
                                                  double box);

}  // namespace kpz
