#pragma once

#include "kpz/exact.hpp"
#include "kpz/tasep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <thread>
#include <vector>

namespace kpz {

struct CheckRecord {
    std::string name;
    double computed = 0.0;
    double reference = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    double runtime_s = 0.0;
};

struct ValidationReport {
    std::string campaign;
    std::vector<CheckRecord> checks;
    std::vector<std::uint64_t> seeds;
    std::map<std::string, double> diagnostics;  // truncation and sampling diagnostics

    bool all_pass() const;
    std::string to_json() const;
};

// ---- CTMC oracle ----

struct CtmcDistribution {
    std::vector<std::vector<long>> states;  // strictly decreasing positions
    std::vector<double> probs;
    double boundary_mass = 0.0;  // mass on states where a particle used the whole box
    long box = 0;

    double prob(std::span<const long> x) const;
    double total_mass() const;
    // P(X_t(n_j) > a_j for all j), labels 1..N
    double event_probability(std::span<const Event> events) const;
};

// dP/dt = L P by uniformization; each particle may move at most `box` sites.
// Throws if the boundary mass is not below 1e-10.
CtmcDistribution ctmc_oracle(std::span<const long> x0, double t, long box);
long default_ctmc_box(double t);

// ---- campaigns ----

// f(k) for k in [0, samples), spread over `jobs` threads; result in index order,
// so any reduction over it is independent of the worker count.
template <class F>
auto run_samples(long samples, int jobs, F f) -> std::vector<decltype(f(0L))>
{
    std::vector<decltype(f(0L))> out(static_cast<size_t>(samples));
    std::atomic<long> next{0};
    constexpr long chunk = 256;
    auto work = [&] {
        for (;;) {
            long lo = next.fetch_add(chunk);
            if (lo >= samples)
                return;
            for (long k = lo; k < std::min(samples, lo + chunk); ++k)
                out[size_t(k)] = f(k);
        }
    };
    jobs = std::max(1, jobs);
    std::vector<std::thread> pool;
    for (int j = 1; j < jobs; ++j)
        pool.emplace_back(work);
    work();
    for (auto& th : pool)
        th.join();
    return out;
}

// fixed-order pairwise sum
double pairwise_sum(std::span<const double> v);

std::uint64_t sample_seed(std::uint64_t seed, long k);

ValidationReport mc_vs_exact(const InitialData& x0, double t, std::span<const Event> events, long samples,
                             std::uint64_t seed, int jobs = 1);

ValidationReport bernoulli_invariance_test(double rho, double t, long window, long samples, std::uint64_t seed,
                                           int jobs = 1);

// jumps across bonds of a Bernoulli(rho) stationary window, per bond and unit time, against rho(1-rho)
ValidationReport corner_flip_test(double rho, double t, long window, long samples, std::uint64_t seed, int jobs = 1);

// single free particle: displacement ~ Poisson(t), chi-square at level `alpha`
ValidationReport poisson_chi2_test(double t, long samples, std::uint64_t seed, double alpha = 0.01, int jobs = 1);

// Schütz determinant against the oracle over all states with oracle mass >= 1e-8
ValidationReport schuetz_vs_ctmc(std::span<const long> x0, double t);

struct ConvergenceRow {
    double eps = 0.0;
    long samples = 0;
    double distance = 0.0;            // sup_r |F_emp(r) - F(r)|
    double distance_midpoint = 0.0;   // F compared halfway between attainable values
    double mean = 0.0;                // empirical mean of h^ε(t,0)
    double seconds = 0.0;
};

struct ConvergenceStudy {
    std::string ic;
    double t = 0.0;
    std::vector<ConvergenceRow> rows;
    bool strictly_decreasing() const;
};

// h^ε(t,0) by TASEP simulation against the limit law (F_GUE for step, flat fixed point for flat)
ConvergenceStudy convergence_study(const std::string& ic, const std::vector<double>& eps_ladder, double t,
                                   long samples, std::uint64_t seed, int jobs = 1);

// limit CDF of h(t,0) for the given initial class
double limit_cdf(const std::string& ic, double t, double r);

// samples of h^ε(t,0)
std::vector<double> sample_rescaled_height(const std::string& ic, double eps, double t, long samples,
                                           std::uint64_t seed, int jobs = 1);

}  // namespace kpz
