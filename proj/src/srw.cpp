#include "tzeig/srw.hpp"

#include <cmath>
#include <string>

#include "tzeig/error.hpp"

namespace tzeig {

namespace {

constexpr double kColumnTol = 1e-10;

}  // namespace

Vector WalkState::occupation() const {
    Vector occ(static_cast<Eigen::Index>(history_counts.size()));
    const double total = static_cast<double>(steps + 1);
    for (std::size_t i = 0; i < history_counts.size(); ++i) {
        occ[static_cast<Eigen::Index>(i)] = static_cast<double>(history_counts[i]) / total;
    }
    return occ;
}

SpaceyWalk::SpaceyWalk(const TransitionTensor& p, std::uint64_t seed)
    : p_(&p), n_(p.dim()), rng_(make_rng(seed, 0x737277)) {
    if (p.order() != 3) throw InvalidArgument("spacey random walk needs a 3-mode transition tensor");
    reset();
}

void SpaceyWalk::reset(int state) {
    if (state >= n_) throw InvalidArgument("start state out of range");
    if (state < 0) state = std::uniform_int_distribution<int>(0, n_ - 1)(rng_);
    state_.current = state;
    state_.history_counts.assign(static_cast<std::size_t>(n_), 0);
    state_.history_counts[static_cast<std::size_t>(state)] = 1;
    state_.steps = 0;
}

int SpaceyWalk::sample_history() {
    // Total visits is steps + 1, so draw an integer position in the history.
    std::uniform_int_distribution<std::int64_t> pick(0, state_.steps);
    std::int64_t r = pick(rng_);
    for (int i = 0; i < n_; ++i) {
        r -= state_.history_counts[static_cast<std::size_t>(i)];
        if (r < 0) return i;
    }
    return n_ - 1;
}

int SpaceyWalk::sample_column(int current, int history) {
    const auto data = p_->base().entries();
    const auto n = static_cast<std::size_t>(n_);
    // P(i, current, history) sits at (i * n + current) * n + history.
    const std::size_t base = static_cast<std::size_t>(current) * n + static_cast<std::size_t>(history);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += data[i * n * n + base];
    if (std::abs(total - 1.0) > kColumnTol) {
        throw CorruptTensorError("column (" + std::to_string(current) + ", " + std::to_string(history) +
                                 ") sums to " + std::to_string(total));
    }
    double u = std::uniform_real_distribution<double>(0.0, total)(rng_);
    for (std::size_t i = 0; i < n; ++i) {
        u -= data[i * n * n + base];
        if (u < 0.0) return static_cast<int>(i);
    }
    // Roundoff: land on the last state with positive mass.
    for (auto i = static_cast<std::ptrdiff_t>(n) - 1; i >= 0; --i) {
        if (data[static_cast<std::size_t>(i) * n * n + base] > 0.0) return static_cast<int>(i);
    }
    return n_ - 1;
}

void SpaceyWalk::step() {
    const int history = sample_history();
    const int next = sample_column(state_.current, history);
    state_.current = next;
    ++state_.history_counts[static_cast<std::size_t>(next)];
    ++state_.steps;
}

void SpaceyWalk::run(std::int64_t steps) {
    for (std::int64_t s = 0; s < steps; ++s) step();
}

Vector srw_run(const TransitionTensor& p, std::int64_t steps, std::uint64_t seed) {
    if (steps < 0) throw InvalidArgument("steps must be nonnegative");
    SpaceyWalk walk(p, seed);
    walk.run(steps);
    return walk.state().occupation();
}

double total_variation(const Vector& p, const Vector& q) {
    if (p.size() != q.size()) throw InvalidArgument("distributions have different lengths");
    return 0.5 * (p - q).lpNorm<1>();
}

}  // namespace tzeig
