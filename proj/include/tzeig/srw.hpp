#pragma once

#include <cstdint>
#include <vector>

#include "tzeig/rng.hpp"
#include "tzeig/tensor.hpp"

namespace tzeig {

/// State of a spacey random walk. History counts include the start state.
struct WalkState {
    int current = 0;
    std::vector<std::int64_t> history_counts;
    std::int64_t steps = 0;

    /// history_counts / (steps + 1).
    Vector occupation() const;
};

/// Spacey random walk on a 3-mode transition tensor.
class SpaceyWalk {
public:
    SpaceyWalk(const TransitionTensor& p, std::uint64_t seed);

    /// Start at `state`, or at a uniformly drawn state when negative.
    void reset(int state = -1);

    /// Draw Y from the visit counts, then X_{n+1} ~ P(:, X_n, Y).
    void step();
    void run(std::int64_t steps);

    const WalkState& state() const noexcept { return state_; }

private:
    int sample_history();
    int sample_column(int current, int history);

    const TransitionTensor* p_;
    int n_;
    Rng rng_;
    WalkState state_;
};

/// Occupation vector after `steps` transitions from a uniform random start.
Vector srw_run(const TransitionTensor& p, std::int64_t steps, std::uint64_t seed);

/// 0.5 * ||p - q||_1.
double total_variation(const Vector& p, const Vector& q);

}  // namespace tzeig
