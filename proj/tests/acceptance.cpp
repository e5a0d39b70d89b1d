// One pass/fail line per acceptance criterion. Tolerances and budgets are fixed here.

#include "kpz/continuum.hpp"
#include "kpz/dpp.hpp"
#include "kpz/exact.hpp"
#include "kpz/fredholm.hpp"
#include "kpz/validate.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace kpz;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void check(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            detail << "[FAILED " << what << "] ";
        }
    }
};

std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// 1. Schütz determinant against the CTMC oracle
void criterion1(Outcome& o)
{
    const std::vector<std::vector<long>> data{{0, -2}, {1, 0}, {2, 0, -3}, {0, -1, -2}};
    double worst = 0.0;
    for (const auto& x0 : data)
        for (double t : {0.5, 1.0}) {
            ValidationReport r = schuetz_vs_ctmc(x0, t);
            worst = std::max(worst, r.checks[0].computed);
            o.check(r.all_pass(), "oracle comparison or mass at t=" + sci(t));
        }
    o.check(worst <= 1e-6, "max deviation <= 1e-6");
    o.detail << "max |schuetz - oracle| = " << sci(worst);
}

// 2. Gelfand-Tsetlin sum equals the determinant
void criterion2(Outcome& o)
{
    const std::vector<std::pair<std::vector<long>, std::vector<long>>> cases{
        {{3}, {0}}, {{1, -1}, {0, -2}}, {{2, 0}, {0, -1}}, {{3, -1}, {1, -2}},
        {{2, 0, -1}, {0, -1, -3}}, {{1, -1, -2}, {0, -2, -3}}};
    double worst = 0.0;
    for (const auto& [x, y] : cases) {
        double s = schuetz_transition(x, y, 1.0);
        GtResult g = gt_pattern_sum(x, y, 1.0, 40);
        worst = std::max(worst, std::abs(g.value - s));
    }
    o.check(worst <= 1e-8, "GT sum within 1e-8");
    o.detail << "max |GT - det| = " << sci(worst) << " over " << cases.size() << " cases";
}

// 3. biorthogonality, numerically and in exact arithmetic
void criterion3(Outcome& o)
{
    std::mt19937_64 rng(20240611);
    std::vector<long> rand_x0{0};
    for (int i = 1; i < 6; ++i)
        rand_x0.push_back(rand_x0.back() - 1 - long(rng() % 3));
    const std::vector<std::pair<std::string, InitialData>> data{{"step", InitialData::step()},
                                                                {"periodic d=2", InitialData::periodic(2)},
                                                                {"random", InitialData::explicit_data(rand_x0)}};
    double worst = 0.0;
    long exact_failures = 0;
    for (const auto& [name, x0] : data) {
        BiorthoSystem b(x0, 1.0, 6);
        for (int n = 1; n <= 6; ++n) {
            auto [lo, hi] = b.default_window(n);
            worst = std::max(worst, b.biortho_defect(n, lo, hi));
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    if (b.q_star_inverse_h(n, k, l, x0.at(n - l)) != Rational(k == l ? 1 : 0))
                        ++exact_failures;
        }
    }
    o.check(worst <= 1e-8, "sum Psi Phi = delta within 1e-8");
    o.check(exact_failures == 0, "exact (Q*)^{-l} h identity");
    o.detail << "max biorthogonality defect = " << sci(worst) << ", exact identity failures = " << exact_failures;
}

// 4. hitting kernel against the step double-contour and periodic single-contour forms
void criterion4(Outcome& o)
{
    const double t = 1.0;
    double worst_step = 0.0;
    const std::vector<long> grid{-4, -2, -1, 0, 2};
    for (auto [ni, nj] : std::vector<std::pair<int, int>>{{2, 2}, {1, 3}, {3, 2}})
        for (long z1 : grid)
            for (long z2 : grid)
                worst_step = std::max(worst_step, std::abs(kt_kernel(t, InitialData::step(), ni, nj, z1, z2) -
                                                           kernel_step_double_contour(t, ni, nj, z1, z2)));
    // two-sided X_0(i) = -2(i-1) cut off at label 1 - L; its label n + L is the contour's index n - 1
    const long L = 16;
    const InitialData per = InitialData::periodic(2);
    double worst_per = 0.0;
    for (int n : {1, 2, 3}) {
        std::vector<long> y;
        for (long j = 1; j <= n + L; ++j)
            y.push_back(per.at(j - L));
        HitKernel K(InitialData::explicit_data(y), t);
        for (long z1 : grid)
            for (long z2 : grid)
                worst_per = std::max(worst_per, std::abs(K(int(n + L), z1, int(n + L), z2) -
                                                         kernel_periodic_contour(t, n - 1, z1, z2)));
    }
    o.check(worst_step <= 1e-7, "step double contour within 1e-7");
    o.check(worst_per <= 1e-7, "periodic single contour within 1e-7");
    o.detail << "step max diff = " << sci(worst_step) << ", periodic max diff = " << sci(worst_per);
}

// 5. Fredholm multi-point formula against the oracle, and the path-integral form
void criterion5(Outcome& o)
{
    const std::vector<long> x0{0, -1, -3};
    const InitialData data = InitialData::explicit_data(x0);
    const std::vector<std::vector<Event>> events{
        {{1, 0}}, {{2, -1}}, {{3, -3}}, {{3, -2}}, {{1, 1}, {3, -2}}, {{2, -1}, {3, -2}}, {{1, 0}, {2, -1}}};
    double worst_oracle = 0.0, worst_path = 0.0;
    for (double t : {0.5, 1.0}) {
        CtmcDistribution d = ctmc_oracle(x0, t, default_ctmc_box(t));
        for (const auto& ev : events) {
            double m = multipoint_probability(data, t, ev).value;
            worst_oracle = std::max(worst_oracle, std::abs(m - d.event_probability(ev)));
            worst_path = std::max(worst_path, std::abs(path_integral_probability(data, t, ev) - m));
        }
    }
    o.check(worst_oracle <= 1e-6, "multipoint vs oracle within 1e-6");
    o.check(worst_path <= 1e-9, "path integral vs multipoint within 1e-9");
    o.detail << "max |multipoint - oracle| = " << sci(worst_oracle) << ", max |path - multipoint| = "
             << sci(worst_path);
}

// 6. block L-ensemble for N = 2 step data
void criterion6(Outcome& o)
{
    BfpsReport r = bfps_l_verify(InitialData::step(), 1.0, 60);
    o.check(r.max_deviation <= 1e-6, "L-ensemble kernel within 1e-6");
    o.check(r.weight_deviation <= 1e-6, "weights within 1e-6");
    o.check(r.gt_indicator_failures == 0, "GT indicator determinant");
    o.detail << "kernel deviation = " << sci(r.max_deviation) << ", weight deviation = " << sci(r.weight_deviation)
             << ", GT indicator checks = " << r.gt_indicator_checks;
}

// subsets of {0..n-1} as bit masks
std::vector<int> members(unsigned mask, int n)
{
    std::vector<int> v;
    for (int i = 0; i < n; ++i)
        if (mask & (1u << i))
            v.push_back(i);
    return v;
}

double minor_det(const Eigen::MatrixXd& m, const std::vector<int>& idx)
{
    Eigen::MatrixXd s(idx.size(), idx.size());
    for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = 0; j < idx.size(); ++j)
            s(Eigen::Index(i), Eigen::Index(j)) = m(idx[i], idx[j]);
    return idx.empty() ? 1.0 : s.determinant();
}

// 7. DPP identities against exhaustive enumeration
void criterion7(Outcome& o)
{
    const int n = 8;
    std::mt19937_64 rng(77);
    std::normal_distribution<double> g;
    Eigen::MatrixXd B(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            B(i, j) = g(rng) / 2;
    Eigen::MatrixXd L = B * B.transpose();
    std::vector<long> pts(n);
    for (int i = 0; i < n; ++i)
        pts[size_t(i)] = i;

    // P(X) = det(L_X) / det(1 + L)
    std::vector<double> prob(1u << n);
    double Z = (Eigen::MatrixXd::Identity(n, n) + L).determinant();
    for (unsigned m = 0; m < (1u << n); ++m)
        prob[m] = minor_det(L, members(m, n)) / Z;

    FiniteDpp k = l_to_k(LEnsembleSpec(pts, L));
    double worst_corr = 0.0, worst_gap = 0.0;
    for (unsigned a = 1; a < (1u << n); a += 7) {
        double corr = 0.0, gap = 0.0;
        for (unsigned m = 0; m < (1u << n); ++m) {
            if ((m & a) == a)
                corr += prob[m];
            if ((m & a) == 0)
                gap += prob[m];
        }
        auto A = members(a, n);
        worst_corr = std::max(worst_corr, std::abs(dpp_correlation(k, A) - corr));
        worst_gap = std::max(worst_gap, std::abs(gap_probability(k, A) - gap));
    }

    // conditional: P(X) ∝ det(L_{X ∪ Z^c}) over X ⊆ Z, Z^c = {0, 3, 5}
    std::vector<bool> in_z(n, true);
    unsigned zc = (1u << 0) | (1u << 3) | (1u << 5);
    for (int i : members(zc, n))
        in_z[size_t(i)] = false;
    FiniteDpp ck = conditional_l_to_k(LEnsembleSpec(pts, L, in_z));
    std::vector<int> zidx;
    for (int i = 0; i < n; ++i)
        if (in_z[size_t(i)])
            zidx.push_back(i);
    const int nz = int(zidx.size());
    std::vector<double> cprob(1u << nz);
    double cz = 0.0;
    for (unsigned m = 0; m < (1u << nz); ++m) {
        std::vector<int> s = members(zc, n);
        for (int i : members(m, nz))
            s.push_back(zidx[size_t(i)]);
        std::sort(s.begin(), s.end());
        cprob[m] = minor_det(L, s);
        cz += cprob[m];
    }
    double worst_cond = 0.0;
    for (unsigned a = 1; a < (1u << nz); ++a) {
        double corr = 0.0;
        for (unsigned m = 0; m < (1u << nz); ++m)
            if ((m & a) == a)
                corr += cprob[m] / cz;
        worst_cond = std::max(worst_cond, std::abs(dpp_correlation(ck, members(a, nz)) - corr));
    }

    // Karlin-McGregor: Bernoulli walk (steps 0, +1), so paths cannot cross without meeting
    auto p = [](long a, long b, int t) {
        long k = b - a;
        if (k < 0 || k > t)
            return 0.0;
        return std::tgamma(t + 1) / (std::tgamma(double(k) + 1) * std::tgamma(double(t - k) + 1)) * std::pow(0.5, t);
    };
    const int T = 3;
    const std::vector<long> starts{0, 1, 2}, ends{1, 3, 4};
    std::vector<std::vector<long>> paths;  // all length-T paths from each start
    std::function<void(std::vector<long>&)> grow = [&](std::vector<long>& path) {
        if (int(path.size()) == T + 1) {
            paths.push_back(path);
            return;
        }
        for (int s = 0; s <= 1; ++s) {
            path.push_back(path.back() + s);
            grow(path);
            path.pop_back();
        }
    };
    for (long s : starts) {
        std::vector<long> path{s};
        grow(path);
    }
    auto weight = [](const std::vector<long>& path) {
        double w = 1.0;
        for (size_t i = 1; i < path.size(); ++i)
            w *= 0.5;
        return w;
    };
    double brute = 0.0;
    for (const auto& a : paths)
        for (const auto& b : paths)
            for (const auto& c : paths) {
                if (a[0] != starts[0] || b[0] != starts[1] || c[0] != starts[2])
                    continue;
                if (a[T] != ends[0] || b[T] != ends[1] || c[T] != ends[2])
                    continue;
                bool ok = true;
                for (int i = 0; i <= T; ++i)
                    ok = ok && a[size_t(i)] < b[size_t(i)] && b[size_t(i)] < c[size_t(i)];
                if (ok)
                    brute += weight(a) * weight(b) * weight(c);
            }
    double km = std::abs(karlin_mcgregor_det(p, starts, ends, T) - brute);
    o.check(brute > 0, "non-intersecting configurations exist");

    o.check(worst_corr <= 1e-10, "Macchi correlations");
    o.check(worst_gap <= 1e-10, "gap probabilities");
    o.check(worst_cond <= 1e-10, "conditional kernel");
    o.check(km <= 1e-10, "Karlin-McGregor");
    o.detail << "correlation " << sci(worst_corr) << ", gap " << sci(worst_gap) << ", conditional "
             << sci(worst_cond) << ", Karlin-McGregor " << sci(km);
}

// 8. Tracy-Widom self-convergence
void criterion8(Outcome& o)
{
    double worst = 0.0, prev = -1.0;
    bool monotone = true;
    for (int i = 0; i <= 32; ++i) {
        double r = -10 + 0.5 * i;
        for (Ensemble e : {Ensemble::gue, Ensemble::goe}) {
            double a = tracy_widom_at_order(e, r, 80), b = tracy_widom_at_order(e, r, 160);
            worst = std::max(worst, std::abs(a - b));
            if (e == Ensemble::gue) {
                monotone = monotone && b >= prev;
                prev = b;
            }
        }
    }
    double lo = tracy_widom(Ensemble::gue, -10).value, hi = tracy_widom(Ensemble::gue, 6).value;
    o.check(worst <= 1e-9, "orders 80/160 within 1e-9");
    o.check(monotone, "F_GUE monotone");
    o.check(lo <= 1e-6, "F_GUE(-10) <= 1e-6");
    o.check(hi >= 1 - 1e-6, "F_GUE(6) >= 1 - 1e-6");
    o.detail << "max order change = " << sci(worst) << ", F_GUE(-10) = " << sci(lo) << ", 1 - F_GUE(6) = "
             << sci(1 - hi);
}

// 9. fixed point against Tracy-Widom, skew identity, group law, 1:2:3 scaling
void criterion9(Outcome& o)
{
    double worst_tw = 0.0;
    for (double a : {-3.0, -2.0, -1.0, 0.0, 1.0})
        worst_tw = std::max(worst_tw, std::abs(fixed_point_prob(Profile::narrow_wedge(0.0), {{0.0, a}}, 1.0).value -
                                               tracy_widom(Ensemble::gue, a).value));
    const std::vector<double> grid{-2.0, -1.0, -0.3, 0.4, 1.2};
    double skew = 0.0;
    for (const Profile& h : {Profile::narrow_wedge(0.0), Profile::flat(), Profile::half_flat()})
        skew = std::max(skew, skew_identity_check(h, 1.0, grid).max_deviation);
    double group = std::max(group_law_deviation(0.7, 0.3, 1.1, -0.4, {-2.0, -0.5, 0.0, 1.0, 2.5}),
                            group_law_deviation(1.0, 0.0, 1.0, 0.0, {-1.0, 0.0, 1.0}));
    SymmetryReport sym = symmetry_checks(1.0, 2.0, grid);
    o.check(worst_tw <= 1e-8, "narrow wedge = F_GUE within 1e-8");
    o.check(skew <= 1e-8, "skew identity within 1e-8");
    o.check(group <= 1e-8, "group law within 1e-8");
    o.check(sym.scaling_123 <= 1e-6, "1:2:3 scaling within 1e-6");
    o.detail << "TW " << sci(worst_tw) << ", skew " << sci(skew) << ", group law " << sci(group) << ", scaling "
             << sci(sym.scaling_123);
}

// 10. scaling-limit convergence at desk scale
void criterion10(Outcome& o)
{
    ConvergenceStudy st = convergence_study("step", {1.0, 0.2, 0.1, 0.05}, 1.0, 100000, 10);
    for (const auto& r : st.rows)
        o.detail << "eps=" << r.eps << ": sup " << sci(r.distance) << " (midpoint " << sci(r.distance_midpoint)
                 << ", mean " << sci(r.mean) << ", " << sci(r.seconds) << " s); ";
    o.check(st.rows.front().distance >= 0.3, "eps=1 sanity row far from the limit");
    o.check(st.strictly_decreasing(), "sup distances strictly decrease");
    o.check(st.rows.back().distance <= 0.05, "finest sup distance <= 0.05");
    auto kl = kernel_limit_residual({0.2, 0.1, 0.05}, 1.0, 0.0, 0.0, 1.5);
    bool dec = true;
    for (size_t i = 1; i < kl.size(); ++i)
        dec = dec && kl[i].residual_sm < kl[i - 1].residual_sm && kl[i].residual_sn < kl[i - 1].residual_sn;
    o.check(dec, "kernel limit residual decreases");
    o.detail << "kernel residuals";
    for (const auto& r : kl)
        o.detail << " " << sci(r.residual_sm) << "/" << sci(r.residual_sn);
}

// 11. simulator statistics
void criterion11(Outcome& o)
{
    const long S = 100000;
    ValidationReport b1 = bernoulli_invariance_test(0.5, 2.0, 8, S, 111);
    ValidationReport b2 = bernoulli_invariance_test(0.3, 2.0, 8, S, 112);
    ValidationReport b0 = bernoulli_invariance_test(0.5, 0.0, 8, 2000, 113);
    ValidationReport cf = corner_flip_test(0.5, 2.0, 10, S, 114);
    ValidationReport cf3 = corner_flip_test(0.3, 2.0, 10, S, 115);
    ValidationReport chi = poisson_chi2_test(2.0, S, 116, 0.01);
    o.check(b1.all_pass(), "Bernoulli rho=0.5");
    o.check(b2.all_pass(), "Bernoulli rho=0.3");
    o.check(b0.all_pass(), "Bernoulli t=0");
    o.check(cf.all_pass() && cf3.all_pass(), "corner-flip rate");
    o.check(chi.all_pass(), "Poisson chi-square at 1%");
    o.detail << "corner-flip " << sci(cf.checks[0].computed) << " vs 0.25, " << sci(cf3.checks[0].computed)
             << " vs 0.21; chi2 " << sci(chi.checks[0].computed) << " <= " << sci(chi.checks[0].tolerance);
}

struct Criterion {
    void (*run)(Outcome&);
    double budget_s;
};

const Criterion kCriteria[] = {{criterion1, 60},  {criterion2, 60},  {criterion3, 120}, {criterion4, 60},
                               {criterion5, 120}, {criterion6, 60},  {criterion7, 30},  {criterion8, 120},
                               {criterion9, 120}, {criterion10, 900}, {criterion11, 300}};

bool run_one(int c)
{
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    try {
        kCriteria[c - 1].run(o);
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail << "[EXCEPTION " << e.what() << "]";
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.check(secs < kCriteria[c - 1].budget_s, "runtime budget");
    std::printf("criterion %d: %s  %s (%.1f s, budget %.0f s)\n", c, o.pass ? "PASS" : "FAIL", o.detail.str().c_str(),
                secs, kCriteria[c - 1].budget_s);
    std::fflush(stdout);
    return o.pass;
}

}  // namespace

int main(int argc, char** argv)
{
    std::vector<int> which;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--criterion" && i + 1 < argc)
            which.push_back(std::atoi(argv[++i]));
        else {
            std::fprintf(stderr, "usage: acceptance [--criterion N]...\n");
            return 1;
        }
    }
    if (which.empty())
        for (int c = 1; c <= 11; ++c)
            which.push_back(c);
    bool ok = true;
    for (int c : which) {
        if (c < 1 || c > 11) {
            std::fprintf(stderr, "criterion must be 1..11\n");
            return 1;
        }
        ok = run_one(c) && ok;
    }
    return ok ? 0 : 1;
}
