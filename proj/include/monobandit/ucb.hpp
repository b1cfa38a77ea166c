#pragma once

#include <cstdint>
#include <vector>

#include "monobandit/policy.hpp"

namespace monobandit {

// Discretization K = floor(T^{1/3}); the grid arms are {k/K}_{k=0..K}.
int ucb_grid_size(std::int64_t horizon);

enum class UcbVariant { Plain, Monotone, Deflating };

struct UcbState {
    int grid_size = 0;  // K; grid has K+1 arms
    double sigma = 0.0;
    UcbVariant variant = UcbVariant::Plain;
    std::vector<std::int64_t> pull_counts;  // T_k over the periods observed so far
    std::vector<double> reward_sums;
    int last_index = 0;  // most recently pulled arm index (the monotone floor)
};

// Index of arm k at period t:
//   untried: 1, or 1 - k/K under the deflating initialization
//   tried:   mean_k + sigma * sqrt(2 ln(1 + t (ln t)^2) / T_k)
double ucb_index(const UcbState& state, int k, std::int64_t t);

// Chosen arm index for period t. Plain-variant argmax ties break toward the
// smallest k; the monotone variants break ties toward the largest k and never
// go below last_index.
int ucb_select(const UcbState& state, std::int64_t t);

class UcbPolicy final : public Policy {
public:
    UcbPolicy(UcbVariant variant, PolicyOverrides overrides = {});

    void reset(std::int64_t horizon, double sigma, std::uint64_t seed) override;
    double next_arm(std::int64_t t) override;
    void observe(std::int64_t t, double arm, double reward) override;
    bool is_monotone() const override { return variant_ != UcbVariant::Plain; }
    std::string name() const override;

    const UcbState& state() const { return state_; }

private:
    UcbVariant variant_;
    PolicyOverrides overrides_;
    UcbState state_;
};

}  // namespace monobandit
