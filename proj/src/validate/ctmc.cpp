#include "kpz/special.hpp"
#include "kpz/validate.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace kpz {

namespace {

struct StateSpace {
    int n = 0;
    long box = 0;
    std::vector<long> x0;
    std::vector<std::vector<long>> disp;  // displacements per state
    std::vector<long> index;              // dense code -> state, -1 if outside the chamber

    long code(const std::vector<long>& d) const
    {
        long c = 0;
        for (int i = n - 1; i >= 0; --i)
            c = c * (box + 1) + d[size_t(i)];
        return c;
    }

    bool in_chamber(const std::vector<long>& d) const
    {
        for (int i = 1; i < n; ++i)
            if (x0[size_t(i)] + d[size_t(i)] >= x0[size_t(i - 1)] + d[size_t(i - 1)])
                return false;
        return true;
    }
};

StateSpace enumerate(std::span<const long> x0, long box)
{
    StateSpace s;
    s.n = int(x0.size());
    s.box = box;
    s.x0.assign(x0.begin(), x0.end());
    long total = 1;
    for (int i = 0; i < s.n; ++i)
        total *= box + 1;
    s.index.assign(size_t(total), -1);
    std::vector<long> d(size_t(s.n), 0);
    for (long c = 0; c < total; ++c) {
        long r = c;
        for (int i = 0; i < s.n; ++i) {
            d[size_t(i)] = r % (box + 1);
            r /= box + 1;
        }
        if (s.in_chamber(d)) {
            s.index[size_t(c)] = long(s.disp.size());
            s.disp.push_back(d);
        }
    }
    return s;
}

}  // namespace

long default_ctmc_box(double t)
{
    return long(std::ceil(t + 10 * std::sqrt(t) + 20));
}

CtmcDistribution ctmc_oracle(std::span<const long> x0, double t, long box)
{
    const int n = int(x0.size());
    if (n < 1 || n > 4)
        throw std::invalid_argument("ctmc_oracle: need 1 <= N <= 4");
    for (int i = 1; i < n; ++i)
        if (x0[size_t(i)] >= x0[size_t(i - 1)])
            throw std::invalid_argument("ctmc_oracle: initial positions must be strictly decreasing");
    if (t < 0 || box < 1)
        throw std::invalid_argument("ctmc_oracle: needs t >= 0 and box >= 1");

    const StateSpace s = enumerate(x0, box);
    const size_t m = s.disp.size();
    // uniformized chain P = I + Q/N: each particle proposes a jump with probability 1/N
    std::vector<std::vector<size_t>> moves(m);
    for (size_t k = 0; k < m; ++k)
        for (int i = 0; i < n; ++i) {
            std::vector<long> d = s.disp[k];
            if (d[size_t(i)] == box)
                continue;
            ++d[size_t(i)];
            if (i > 0 && s.x0[size_t(i)] + d[size_t(i)] >= s.x0[size_t(i - 1)] + d[size_t(i - 1)])
                continue;
            moves[k].push_back(size_t(s.index[size_t(s.code(d))]));
        }

    std::vector<double> cur(m, 0.0), next(m), acc(m, 0.0);
    cur[size_t(s.index[0])] = 1.0;
    const double rate = n, lt = rate * t;
    double weight_used = 0.0;
    for (long k = 0;; ++k) {
        double w = poisson_pmf(k, lt);
        for (size_t j = 0; j < m; ++j)
            acc[j] += w * cur[j];
        weight_used += w;
        if (1.0 - weight_used < 1e-15 && double(k) > lt)
            break;
        if (k > 100000)
            throw std::runtime_error("ctmc_oracle: uniformization did not converge");
        std::fill(next.begin(), next.end(), 0.0);
        for (size_t j = 0; j < m; ++j) {
            double p = cur[j] / rate;
            double stay = cur[j];
            for (size_t tgt : moves[j]) {
                next[tgt] += p;
                stay -= p;
            }
            next[j] += stay;
        }
        std::swap(cur, next);
    }

    CtmcDistribution out;
    out.box = box;
    for (size_t j = 0; j < m; ++j) {
        std::vector<long> x(static_cast<size_t>(n));
        bool edge = false;
        for (int i = 0; i < n; ++i) {
            x[size_t(i)] = s.x0[size_t(i)] + s.disp[j][size_t(i)];
            edge = edge || s.disp[j][size_t(i)] == box;
        }
        if (edge)
            out.boundary_mass += acc[j];
        out.states.push_back(std::move(x));
        out.probs.push_back(acc[j]);
    }
    if (!(out.boundary_mass < 1e-10))
        throw std::runtime_error("ctmc_oracle: boundary mass " + std::to_string(out.boundary_mass) +
                                 " too large; increase the box beyond " + std::to_string(box));
    return out;
}

double CtmcDistribution::prob(std::span<const long> x) const
{
    for (size_t j = 0; j < states.size(); ++j)
        if (std::equal(x.begin(), x.end(), states[j].begin(), states[j].end()))
            return probs[j];
    return 0.0;
}

double CtmcDistribution::total_mass() const
{
    return pairwise_sum(probs);
}

double CtmcDistribution::event_probability(std::span<const Event> events) const
{
    for (const auto& e : events)
        if (e.n < 1 || states.empty() || size_t(e.n) > states.front().size())
            throw std::out_of_range("event_probability: label outside the oracle's particles");
    double s = 0.0;
    for (size_t j = 0; j < states.size(); ++j) {
        bool ok = true;
        for (const auto& e : events)
            ok = ok && states[j][size_t(e.n - 1)] > e.a;
        if (ok)
            s += probs[j];
    }
    return s;
}

ValidationReport schuetz_vs_ctmc(std::span<const long> x0, double t)
{
    auto start = std::chrono::steady_clock::now();
    CtmcDistribution d = ctmc_oracle(x0, t, default_ctmc_box(t));
    double worst = 0.0;
    long compared = 0;
    for (size_t j = 0; j < d.states.size(); ++j) {
        if (d.probs[j] < 1e-8)
            continue;
        worst = std::max(worst, std::abs(schuetz_transition(d.states[j], x0, t) - d.probs[j]));
        ++compared;
    }
    ValidationReport r;
    r.campaign = "schuetz-vs-ctmc";
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.checks.push_back({"max |schuetz - oracle|", worst, 0.0, 1e-6, worst <= 1e-6, secs});
    r.checks.push_back({"oracle total mass", d.total_mass(), 1.0, 1e-10, std::abs(d.total_mass() - 1) <= 1e-10, 0.0});
    r.diagnostics["boundary_mass"] = d.boundary_mass;
    r.diagnostics["states_compared"] = double(compared);
    r.diagnostics["box"] = double(d.box);
    return r;
}

}  // namespace kpz
