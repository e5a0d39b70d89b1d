#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace kpz {

inline constexpr long kPlusInf = std::numeric_limits<long>::max() / 4;
inline constexpr long kMinusInf = -kPlusInf;

// X_0(k). Step and periodic are defined for all labels (step only k >= 1),
// explicit data lists X_0(1), X_0(2), ... and is -inf beyond the list.
class InitialData {
public:
    enum class Kind { step, periodic, explicit_ };

    static InitialData step();
    static InitialData periodic(int d);
    static InitialData explicit_data(std::vector<long> entries);

    Kind kind() const { return kind_; }
    int spacing() const { return d_; }
    const std::vector<long>& entries() const { return entries_; }

    long at(long label) const;
    // number of labels with finite position (explicit only)
    std::optional<long> finite_count() const;
    // min{k >= first_label : X_0(k) <= u}
    long inverse(long u) const;
    // labels start here (periodic data is two-sided; use the right-finite part for exact formulas)
    long first_label() const { return kind_ == Kind::periodic ? std::numeric_limits<long>::min() / 4 : 1; }
    // relabelled so that label 1 is the first finite particle; +inf leaders dropped
    InitialData right_finite() const;
    std::string describe() const;

private:
    Kind kind_ = Kind::step;
    int d_ = 1;
    std::vector<long> entries_;
};

InitialData make_initial(const std::string& kind, const std::vector<long>& params);

struct ParticleState {
    std::vector<long> positions;  // strictly decreasing
    long first_label = 1;
    double time = 0.0;
    bool leader_free = true;  // no untracked particle ahead of positions[0]
    long anchor = 1;          // X_0^{-1}(-1), cached from the initial data

    long label(size_t i) const { return first_label + long(i); }
    long position_of(long label) const { return positions.at(size_t(label - first_label)); }
    bool valid() const;
};

// Tracks labels [lo, hi] of the initial data.
ParticleState make_state(const InitialData& x0, long lo, long hi);

// Counter-based stream: uniform in (0,1) from (seed, key, counter).
double counter_uniform(std::uint64_t seed, std::uint64_t key, std::uint64_t counter);
std::uint64_t splitmix64(std::uint64_t x);

struct JumpEvent {
    double time;
    size_t index;
    long from;
};
using JumpObserver = std::function<void(const ParticleState&, const JumpEvent&)>;

ParticleState evolve(ParticleState state, double duration, std::uint64_t seed,
                     const JumpObserver& observer = nullptr);

struct HeightField {
    long anchor_z = 0;  // z of values[0]
    std::vector<long> values;
    double time = 0.0;

    long at(long z) const { return values.at(size_t(z - anchor_z)); }
};

// h_t(z) = -2(X_t^{-1}(z-1) - X_0^{-1}(-1)) - z on [z_lo, z_hi].
HeightField height(const ParticleState& state, long z_lo, long z_hi);

// h^ε(t,x) = ε^{1/2}[h(2x/ε) + ε^{-3/2} t], linear between lattice points.
double rescale_height(const HeightField& h, double eps, double t, double x);

// Labels of step data whose motion can reach position `z` within time t, with margin.
long step_label_bound(long z, double t);

}  // namespace kpz
