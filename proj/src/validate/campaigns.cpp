#include "kpz/continuum.hpp"
#include "kpz/special.hpp"
#include "kpz/validate.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace kpz {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

CheckRecord band_check(std::string name, double computed, double reference, double tol, double secs = 0.0)
{
    return {std::move(name), computed, reference, tol, std::abs(computed - reference) <= tol, secs};
}

double mean_of(const std::vector<double>& v)
{
    return v.empty() ? 0.0 : pairwise_sum(v) / double(v.size());
}

// stderr of the mean from the sample variance
double stderr_of(const std::vector<double>& v, double mean)
{
    if (v.size() < 2)
        return 0.0;
    std::vector<double> sq(v.size());
    for (size_t i = 0; i < v.size(); ++i)
        sq[i] = (v[i] - mean) * (v[i] - mean);
    return std::sqrt(pairwise_sum(sq) / double(v.size() - 1) / double(v.size()));
}

// i.i.d. Bernoulli(rho) occupations on [lo, hi], as particle positions (decreasing)
std::vector<long> bernoulli_positions(double rho, long lo, long hi, std::uint64_t s)
{
    std::vector<long> pos;
    for (long z = hi; z >= lo; --z)
        if (counter_uniform(s, 0xB0B0, std::uint64_t(z - lo)) < rho)
            pos.push_back(z);
    return pos;
}

long bernoulli_pad(double t)
{
    return long(std::ceil(t + 10 * std::sqrt(t) + 10));
}

}  // namespace

ValidationReport mc_vs_exact(const InitialData& x0, double t, std::span<const Event> events, long samples,
                             std::uint64_t seed, int jobs)
{
    if (events.empty() || samples < 1)
        throw std::invalid_argument("mc_vs_exact: needs events and samples");
    auto start = Clock::now();
    int max_n = 0;
    for (const auto& e : events)
        max_n = std::max(max_n, e.n);
    MultipointResult exact = multipoint_probability(x0, t, events);
    // two-sided periodic data: free leader far enough ahead that it cannot be felt by time t
    long lo = 1;
    if (x0.kind() == InitialData::Kind::periodic)
        lo = 1 - long(std::ceil((t + 10 * std::sqrt(t) + 20) / x0.spacing()));
    std::vector<long> pos;
    for (long k = lo; k <= max_n; ++k)
        pos.push_back(x0.at(k));
    const ParticleState init = make_state(InitialData::explicit_data(pos), 1, long(pos.size()));

    auto hits = run_samples(samples, jobs, [&](long k) {
        ParticleState s = evolve(init, t, sample_seed(seed, k));
        for (const auto& e : events)
            if (!(s.position_of(e.n - lo + 1) > e.a))
                return 0.0;
        return 1.0;
    });
    double p_hat = mean_of(hits);
    double p = exact.value;
    double tol = 3 * std::sqrt(std::max(p * (1 - p), 0.0) / double(samples)) + 1e-6;

    ValidationReport r;
    r.campaign = "mc-vs-exact";
    r.seeds = {seed};
    r.checks.push_back(band_check("P(X_t(n_j) > a_j)", p_hat, p, tol, seconds_since(start)));
    r.diagnostics["samples"] = double(samples);
    r.diagnostics["exact_delta"] = exact.delta;
    r.diagnostics["exact_lower_pad"] = double(exact.lower_pad);
    return r;
}

ValidationReport bernoulli_invariance_test(double rho, double t, long window, long samples, std::uint64_t seed,
                                           int jobs)
{
    if (!(rho > 0 && rho < 1) || window < 2 || samples < 1 || t < 0)
        throw std::invalid_argument("bernoulli_invariance_test: needs 0 < rho < 1, window >= 2, t >= 0");
    auto start = Clock::now();
    const long pad = bernoulli_pad(t);
    // per sample: occupations of [0, window) at time t
    auto occ = run_samples(samples, jobs, [&](long k) {
        std::uint64_t s = sample_seed(seed, k);
        std::vector<long> pos = bernoulli_positions(rho, -pad, window - 1 + pad, s);
        std::vector<char> out(size_t(window), 0);
        if (pos.empty())
            return out;
        ParticleState st = evolve(make_state(InitialData::explicit_data(pos), 1, long(pos.size())), t, s);
        for (long p : st.positions)
            if (p >= 0 && p < window)
                out[size_t(p)] = 1;
        return out;
    });

    ValidationReport r;
    r.campaign = "bernoulli-invariance";
    r.seeds = {seed};
    const double secs = seconds_since(start);
    const double sd_site = std::sqrt(rho * (1 - rho) / double(samples));
    const double sd_pair = std::sqrt(rho * rho * (1 - rho * rho) / double(samples));
    std::vector<double> col(static_cast<size_t>(samples));
    for (long z = 0; z < window; ++z) {
        for (long k = 0; k < samples; ++k)
            col[size_t(k)] = occ[size_t(k)][size_t(z)];
        r.checks.push_back(band_check("mean occupation site " + std::to_string(z), mean_of(col), rho, 3 * sd_site, secs));
    }
    for (long z = 0; z + 1 < window; ++z) {
        for (long k = 0; k < samples; ++k)
            col[size_t(k)] = occ[size_t(k)][size_t(z)] * occ[size_t(k)][size_t(z + 1)];
        r.checks.push_back(
            band_check("neighbour product sites " + std::to_string(z) + "," + std::to_string(z + 1), mean_of(col),
                       rho * rho, 3 * sd_pair, secs));
    }
    r.diagnostics["pad"] = double(pad);
    r.diagnostics["samples"] = double(samples);
    return r;
}

ValidationReport corner_flip_test(double rho, double t, long window, long samples, std::uint64_t seed, int jobs)
{
    if (!(rho > 0 && rho < 1) || window < 1 || samples < 2 || !(t > 0))
        throw std::invalid_argument("corner_flip_test: needs 0 < rho < 1, window >= 1, t > 0, samples >= 2");
    auto start = Clock::now();
    const long pad = bernoulli_pad(t);
    // jumps z -> z+1 with z in [0, window), per bond and unit time
    auto rates = run_samples(samples, jobs, [&](long k) {
        std::uint64_t s = sample_seed(seed, k);
        std::vector<long> pos = bernoulli_positions(rho, -pad, window + pad, s);
        if (pos.empty())
            return 0.0;
        long jumps = 0;
        evolve(make_state(InitialData::explicit_data(pos), 1, long(pos.size())), t, s,
               [&](const ParticleState&, const JumpEvent& e) {
                   if (e.from >= 0 && e.from < window)
                       ++jumps;
               });
        return double(jumps) / (double(window) * t);
    });
    double m = mean_of(rates);
    double se = stderr_of(rates, m);

    ValidationReport r;
    r.campaign = "corner-flip-rate";
    r.seeds = {seed};
    r.checks.push_back(band_check("jump rate per bond", m, rho * (1 - rho), 3 * se, seconds_since(start)));
    r.diagnostics["stderr"] = se;
    r.diagnostics["pad"] = double(pad);
    return r;
}

ValidationReport poisson_chi2_test(double t, long samples, std::uint64_t seed, double alpha, int jobs)
{
    if (!(t > 0) || samples < 1 || !(alpha > 0 && alpha < 1))
        throw std::invalid_argument("poisson_chi2_test: needs t > 0, samples >= 1, 0 < alpha < 1");
    auto start = Clock::now();
    const ParticleState init = make_state(InitialData::explicit_data({0}), 1, 1);
    auto disp = run_samples(samples, jobs, [&](long k) { return evolve(init, t, sample_seed(seed, k)).positions[0]; });

    // bins 0..K-1 with expected count >= 5, then a lumped tail; low bins below 5 are lumped too
    const double S = double(samples);
    std::vector<double> expected;
    std::vector<long> lo_edge;
    double mass = 0.0;
    double pending = 0.0;
    long k = 0;
    long start_k = 0;
    for (;; ++k) {
        double p = poisson_pmf(k, t);
        pending += p;
        if (S * pending >= 5 && S * (1 - mass - pending) >= 5) {
            expected.push_back(S * pending);
            lo_edge.push_back(start_k);
            mass += pending;
            pending = 0.0;
            start_k = k + 1;
        }
        if (S * (1 - mass - pending) < 5 && double(k) > t)
            break;
    }
    // tail bin [start_k, inf) merged into the last bin
    if (expected.empty())
        throw std::invalid_argument("poisson_chi2_test: too few samples for any bin");
    expected.back() += S * (1 - mass);
    std::vector<long> observed(expected.size(), 0);
    for (long d : disp) {
        auto it = std::upper_bound(lo_edge.begin(), lo_edge.end(), d);
        observed[size_t(it - lo_edge.begin()) - 1]++;
    }
    std::vector<double> terms(expected.size());
    for (size_t i = 0; i < expected.size(); ++i)
        terms[i] = (double(observed[i]) - expected[i]) * (double(observed[i]) - expected[i]) / expected[i];
    double chi2 = pairwise_sum(terms);
    double dof = double(expected.size()) - 1;
    double crit = dof >= 1 ? boost::math::quantile(boost::math::chi_squared(dof), 1 - alpha) : 0.0;

    ValidationReport r;
    r.campaign = "poisson-chi2";
    r.seeds = {seed};
    r.checks.push_back({"chi-square statistic", chi2, crit, crit, dof >= 1 && chi2 <= crit, seconds_since(start)});
    r.diagnostics["bins"] = double(expected.size());
    r.diagnostics["alpha"] = alpha;
    return r;
}

std::vector<double> sample_rescaled_height(const std::string& ic, double eps, double t, long samples,
                                           std::uint64_t seed, int jobs)
{
    if (!(eps > 0 && eps <= 1) || !(t > 0) || samples < 1)
        throw std::invalid_argument("sample_rescaled_height: needs 0 < eps <= 1, t > 0, samples >= 1");
    const double tm = 2 * std::pow(eps, -1.5) * t;
    ParticleState init;
    if (ic == "step") {
        init = make_state(InitialData::step(), 1, step_label_bound(0, tm));
    } else if (ic == "flat") {
        // X_0(k) = -2(k-1); keep particles whose influence can reach the origin by time tm
        long left = long(std::ceil(tm + 10 * std::sqrt(tm) + 20));
        long right = long(std::ceil(2 * tm + 40));
        long lo = -(right / 2), hi = left / 2 + 1;
        init = make_state(InitialData::periodic(2), lo, hi);
    } else {
        throw std::invalid_argument("sample_rescaled_height: ic must be step or flat");
    }
    return run_samples(samples, jobs, [&](long k) {
        ParticleState s = evolve(init, tm, sample_seed(seed, k));
        return rescale_height(height(s, 0, 0), eps, t, 0.0);
    });
}

double limit_cdf(const std::string& ic, double t, double r)
{
    if (!(t > 0))
        throw std::invalid_argument("limit_cdf: needs t > 0");
    double s = r / std::cbrt(t);
    if (ic == "step") {
        if (s < -14)
            return 0.0;
        if (s > 9)
            return 1.0;
        if (s < -10 || s > 6)
            return tracy_widom_at_order(Ensemble::gue, s, 80);
        return tracy_widom(Ensemble::gue, s).value;
    }
    if (ic == "flat") {
        if (s < -12)
            return 0.0;
        if (s > 8)
            return 1.0;
        return fixed_point_prob(Profile::flat(), {{0.0, r}}, t, 1e-9).value;
    }
    throw std::invalid_argument("limit_cdf: ic must be step or flat");
}

bool ConvergenceStudy::strictly_decreasing() const
{
    for (size_t i = 1; i < rows.size(); ++i)
        if (!(rows[i].distance < rows[i - 1].distance))
            return false;
    return !rows.empty();
}

ConvergenceStudy convergence_study(const std::string& ic, const std::vector<double>& eps_ladder, double t,
                                   long samples, std::uint64_t seed, int jobs)
{
    ConvergenceStudy out;
    out.ic = ic;
    out.t = t;
    for (size_t i = 0; i < eps_ladder.size(); ++i) {
        const double eps = eps_ladder[i];
        if (i > 0 && !(eps < eps_ladder[i - 1]))
            throw std::invalid_argument("convergence_study: eps ladder must decrease");
        auto start = Clock::now();
        std::vector<double> h = sample_rescaled_height(ic, eps, t, samples, seed + i, jobs);
        std::sort(h.begin(), h.end());
        const double delta = 2 * std::sqrt(eps);  // lattice spacing of h^ε(t,0)
        const double S = double(h.size());
        ConvergenceRow row;
        row.eps = eps;
        row.samples = samples;
        row.mean = mean_of(h);
        // F_emp jumps only at attained values, so the sup is attained at one of their two sides
        for (size_t j = 0; j < h.size();) {
            size_t k = j;
            while (k < h.size() && h[k] == h[j])
                ++k;
            double before = double(j) / S, after = double(k) / S;
            double f = limit_cdf(ic, t, h[j]);
            row.distance = std::max({row.distance, std::abs(after - f), std::abs(before - f)});
            double fm = limit_cdf(ic, t, h[j] + delta / 2);
            double fl = limit_cdf(ic, t, h[j] - delta / 2);
            row.distance_midpoint = std::max({row.distance_midpoint, std::abs(after - fm), std::abs(before - fl)});
            j = k;
        }
        row.seconds = seconds_since(start);
        out.rows.push_back(row);
    }
    return out;
}

}  // namespace kpz
