#include "kpz/tasep.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>

namespace kpz {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double counter_uniform(std::uint64_t seed, std::uint64_t key, std::uint64_t counter)
{
    std::uint64_t h = splitmix64(splitmix64(splitmix64(seed) ^ key) ^ counter);
    return (double(h >> 11) + 0.5) * 0x1.0p-53;
}

bool ParticleState::valid() const
{
    for (size_t i = 1; i < positions.size(); ++i)
        if (positions[i] >= positions[i - 1])
            return false;
    return time >= 0.0;
}

ParticleState make_state(const InitialData& x0, long lo, long hi)
{
    if (hi < lo)
        throw std::invalid_argument("make_state: empty label range");
    ParticleState s;
    s.first_label = lo;
    for (long k = lo; k <= hi; ++k) {
        long p = x0.at(k);
        if (p >= kPlusInf || p <= kMinusInf)
            throw std::invalid_argument("make_state: label " + std::to_string(k) + " has no finite position");
        s.positions.push_back(p);
    }
    s.leader_free = x0.at(lo - 1) >= kPlusInf;
    s.anchor = x0.inverse(-1);
    return s;
}

ParticleState evolve(ParticleState state, double duration, std::uint64_t seed, const JumpObserver& observer)
{
    if (duration < 0)
        throw std::invalid_argument("evolve: negative duration");
    const size_t n = state.positions.size();
    if (n == 0 || duration == 0)
        return state;

    // Each label carries its own rate-1 Poisson clock; a ring moves the particle
    // if the target site is empty. Streams are keyed by label, so truncating the
    // tracked range does not change the clocks of the remaining particles.
    std::vector<std::uint64_t> counter(n, 0);
    auto next_ring = [&](size_t i, double from) {
        auto key = std::uint64_t(state.label(i));
        return from - std::log(counter_uniform(seed, key, counter[i]++));
    };
    using Item = std::pair<double, size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    for (size_t i = 0; i < n; ++i)
        queue.emplace(next_ring(i, 0.0), i);

    const double t0 = state.time;
    while (!queue.empty()) {
        auto [t, i] = queue.top();
        if (t > duration)
            break;
        queue.pop();
        bool free = (i == 0) ? state.leader_free : state.positions[i] + 1 < state.positions[i - 1];
        if (free) {
            long from = state.positions[i]++;
            if (observer) {
                state.time = t0 + t;
                observer(state, {t0 + t, i, from});
            }
        }
        queue.emplace(next_ring(i, t), i);
    }
    state.time = t0 + duration;
    return state;
}

long step_label_bound(long z, double t)
{
    // particle k of step data sits near t - 2 sqrt(kt); fluctuations are O(t^{1/3})
    double k = std::max(0.0, double(z)) + t / 4 + 10 * std::cbrt(t) + 20;
    return long(std::ceil(k));
}

}  // namespace kpz
