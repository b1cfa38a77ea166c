#include "monobandit/ucb.hpp"

#include <cmath>
#include <stdexcept>

#include "monobandit/numeric.hpp"

namespace monobandit {

int ucb_grid_size(std::int64_t horizon) {
    if (horizon < 1) {
        throw std::invalid_argument("ucb grid size requires horizon >= 1");
    }
    return static_cast<int>(floor_root(horizon, 3));
}

double ucb_index(const UcbState& state, int k, std::int64_t t) {
    if (state.pull_counts[k] == 0) {
        if (state.variant == UcbVariant::Deflating) {
            return 1.0 - static_cast<double>(k) / static_cast<double>(state.grid_size);
        }
        return 1.0;
    }
    const double pulls = static_cast<double>(state.pull_counts[k]);
    const double mean = state.reward_sums[k] / pulls;
    const double log_t = std::log(static_cast<double>(t));
    const double bonus =
        state.sigma * std::sqrt(2.0 * std::log(1.0 + t * log_t * log_t) / pulls);
    return mean + bonus;
}

int ucb_select(const UcbState& state, std::int64_t t) {
    // Tie rule: the plain variant stays at the smaller arm; the constrained
    // variants take the larger one. The distinction matters once: in the
    // opening periods every untried arm shares the same index, and under the
    // monotone floor whichever arm wins that tie becomes a floor the policy
    // can never go back below.
    const bool monotone = state.variant != UcbVariant::Plain;
    int best = 0;
    double best_index = ucb_index(state, 0, t);
    for (int k = 1; k <= state.grid_size; ++k) {
        const double index = ucb_index(state, k, t);
        if (index > best_index || (monotone && index == best_index)) {
            best_index = index;
            best = k;
        }
    }
    if (monotone && best < state.last_index) {
        return state.last_index;
    }
    return best;
}

UcbPolicy::UcbPolicy(UcbVariant variant, PolicyOverrides overrides)
    : variant_(variant), overrides_(overrides) {}

void UcbPolicy::reset(std::int64_t horizon, double sigma, std::uint64_t /*seed*/) {
    const int grid = overrides_.grid_size.value_or(ucb_grid_size(horizon));
    if (grid < 1) {
        throw std::invalid_argument("ucb policy needs grid size >= 1");
    }
    state_ = UcbState{};
    state_.grid_size = grid;
    state_.sigma = sigma;
    state_.variant = variant_;
    state_.pull_counts.assign(grid + 1, 0);
    state_.reward_sums.assign(grid + 1, 0.0);
    state_.last_index = 0;
}

double UcbPolicy::next_arm(std::int64_t t) {
    const int k = ucb_select(state_, t);
    return static_cast<double>(k) / static_cast<double>(state_.grid_size);
}

void UcbPolicy::observe(std::int64_t /*t*/, double arm, double reward) {
    const int k = static_cast<int>(std::lround(arm * state_.grid_size));
    if (k < 0 || k > state_.grid_size ||
        std::abs(arm - static_cast<double>(k) / static_cast<double>(state_.grid_size)) > 1e-9) {
        throw std::logic_error("ucb policy observed a reward for an off-grid arm");
    }
    state_.pull_counts[k] += 1;
    state_.reward_sums[k] += reward;
    state_.last_index = k;
}

std::string UcbPolicy::name() const {
    switch (variant_) {
        case UcbVariant::Plain:
            return "ucb";
        case UcbVariant::Monotone:
            return "ucb-mono";
        case UcbVariant::Deflating:
            return "ucb-deflate";
    }
    return "?";
}

}  // namespace monobandit
