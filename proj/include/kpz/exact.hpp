#pragma once

#include "kpz/dpp.hpp"
#include "kpz/special.hpp"
#include "kpz/tasep.hpp"

#include <Eigen/Dense>

#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <tuple>
#include <vector>

namespace kpz {

// ---- Schütz determinant and the Gelfand-Tsetlin sum ----

// P(X_t = x | X_0 = y), x and y strictly decreasing, N <= 8.
double schuetz_transition(std::span<const long> x, std::span<const long> y, double t);

struct GtResult {
    double value = 0.0;
    double pad_delta = 0.0;  // change against pad/2
    long patterns = 0;
};

GtResult gt_pattern_sum(std::span<const long> x, std::span<const long> y, double t, long pad);

// ---- Ψ functions ----

// Conjugated Ψ^n_k(x) = 2^{X_0(n-k)-x} × (unconjugated Ψ); k may be negative.
double psi_conj(const InitialData& x0, long n, long k, long x, double t);
double psi_plain(const InitialData& x0, long n, long k, long x, double t);

// ---- exact polynomials in Newton form: p(base + s) = Σ d_j C(s, j) ----

class NewtonPoly {
public:
    NewtonPoly() = default;
    NewtonPoly(long base, std::vector<Rational> d) : base_(base), d_(std::move(d)) {}

    Rational operator()(long x) const;
    // Δ^j p(z) for j = 0..count-1
    std::vector<Rational> diffs_at(long z, int count) const;
    NewtonPoly rebase(long c) const;
    // S(x) = -Σ_{y=c+1}^{x} p(y), extended polynomially to all x
    NewtonPoly neg_sum_from(long c) const;
    int degree() const;
    long base() const { return base_; }
    const std::vector<Rational>& coeffs() const { return d_; }

private:
    long base_ = 0;
    std::vector<Rational> d_;
};

Rational pow2(long e);

// ---- biorthogonal system ----

class BiorthoSystem {
public:
    BiorthoSystem(InitialData x0, double t, int n_max);

    const InitialData& initial() const { return x0_; }
    double time() const { return t_; }
    int n_max() const { return n_max_; }

    double psi(int n, int k, long x) const { return psi_conj(x0_, n, k, x, t_); }
    double phi(int n, int k, long x) const;
    // h̃^n_k(ℓ, ·) = 2^{-z} h^n_k(ℓ, z)
    const NewtonPoly& h_tilde(int n, int k, int l) const;
    Rational h(int n, int k, int l, long z) const;
    // ((Q*)^{-ℓ} h^n_k(0, ·))(z), exact
    Rational q_star_inverse_h(int n, int k, int l, long z) const;

    // Σ_k Ψ^n_k(x1) Φ^n_k(x2)
    double kernel(int n, long x1, long x2) const;
    // -Q^{nj-ni} 1{ni<nj} + Σ_{k=1}^{nj} Ψ^{ni}_{ni-k}(x1) Φ^{nj}_{nj-k}(x2)
    double kernel_ext(int ni, long x1, int nj, long x2) const;

    // max_{k,l} |Σ_x Ψ^n_k Φ^n_l - δ| over [lo, hi]
    double biortho_defect(int n, long lo, long hi) const;
    // window on which the sums are converged to round-off for time t
    std::pair<long, long> default_window(int n) const;

private:
    InitialData x0_;
    double t_;
    int n_max_;
    mutable std::map<std::pair<int, int>, std::vector<NewtonPoly>> h_;
    mutable std::map<std::tuple<int, int, long>, double> phi_cache_;
    std::unique_ptr<std::mutex> mu_ = std::make_unique<std::mutex>();
};

BiorthoSystem build_biortho(const InitialData& x0, double t, int n_max, std::pair<long, long> window);

// conjugated Φ from the closed contour forms
double phi_closed_form_step(int n, int k, long x, double t);
// X_0(i) = -d i, i >= 1
double phi_closed_form_periodic(int d, int n, int k, long x, double t);

// ---- walk kernels ----

// conjugated Q^m(x, y) for any integer m
double q_pow(long m, long x, long y);
Rational qbar(long n, long y1, long y2);

struct HitOutcome {
    int m;   // τ
    long b;  // B_τ
    double p;
};

// Q-walk from B_0 = z1 (Geom[1/2] jumps strictly left), τ = min{m >= 0 : B_m > X_0(m+1)}, τ < n
std::vector<HitOutcome> hitting_walk(const InitialData& x0, int n, long z1);
// P_{B*_{ℓ-1} = z}(τ^{ℓ,n} = k) for the right-jumping walk, exact
Rational hit_probability_star(const InitialData& x0, int n, int k, int l, long z);
double g0n(const InitialData& x0, int n, long z1, long z2);
// P_{B*_{-1} = z2}(τ^{0,n} < n, B*_{n-1} = z1), valid for z2 <= X_0(n)
double g0n_reversed(const InitialData& x0, int n, long z1, long z2);

// S_{-t,-n} and S_{-t,n} by contour quadrature on |w| = 1/2
double s_m(double t, long n, long z1, long z2);
double s_n(double t, long n, long z1, long z2);
// finite residue sums, used as oracles
double s_m_residue(double t, long n, long z1, long z2);
double s_n_residue(double t, long n, long z1, long z2);

struct TransferValues {
    double sm, sn, sepi;
};
TransferValues transfer_kernels(const InitialData& x0, double t, int n, long z1, long z2);

// K_t of the right-finite formula, with caches for the translation-invariant S tables.
class HitKernel {
public:
    HitKernel(InitialData x0, double t);

    double operator()(int ni, long x1, int nj, long x2);
    double one_index(int n, long x1, long x2) { return (*this)(n, x1, n, x2); }
    double sm(int n, long d);  // S_{-t,-n}(0, d)
    double sn(int n, long d);  // S_{-t,n}(0, d)
    double sepi(int n, long z1, long z2);

    const InitialData& initial() const { return x0_; }
    double time() const { return t_; }

private:
    InitialData x0_;
    double t_;
    std::map<std::pair<int, long>, double> sm_, sn_;
    std::map<std::pair<int, long>, std::vector<HitOutcome>> hits_;
};

double kt_kernel(double t, const InitialData& x0, int ni, int nj, long x1, long x2);

// step data; includes the -Q^{nj-ni} term
double kernel_step_double_contour(double t, int ni, int nj, long z1, long z2);
// one-index kernel for two-sided X_0(i) = 2i
double kernel_periodic_contour(double t, int n, long z1, long z2);

// ---- Fredholm formulas ----

struct Event {
    int n;
    long a;
};

struct DiscreteKernelWindow {
    std::vector<int> indices;
    std::vector<std::pair<long, long>> intervals;  // per index [lo, a_j]
    std::vector<long> thresholds;
    Eigen::MatrixXd kernel;
    double delta = 0.0;  // change at the last lower-edge doubling
};

DiscreteKernelWindow kernel_window(HitKernel& K, std::span<const Event> events, long lower_pad);

struct MultipointResult {
    double value = 1.0;
    double delta = 0.0;
    long lower_pad = 0;
    int doublings = 0;
};

// P(X_t(n_j) > a_j, j = 1..M)
MultipointResult multipoint_probability(const InitialData& x0, double t, std::span<const Event> events,
                                        double tol = 1e-9);
double path_integral_probability(const InitialData& x0, double t, std::span<const Event> events);

// ---- L-ensemble check for N = 2 ----

struct BfpsReport {
    double max_deviation = 0.0;  // L-ensemble kernel vs the Ψ/Φ kernel
    double weight_deviation = 0.0;  // det(L_{z ∪ Z^c}) vs the triangular-array weight
    int gt_indicator_checks = 0;
    int gt_indicator_failures = 0;
};

BfpsReport bfps_l_verify(const InitialData& x0, double t, long half_width, std::uint64_t seed = 7);

// Π_n det[φ(z^{n-1}_i, z^n_j)] with z^{n-1}_n = +∞
double gt_indicator_det(const std::vector<std::vector<long>>& z);
bool in_gt(const std::vector<std::vector<long>>& z);

}  // namespace kpz
