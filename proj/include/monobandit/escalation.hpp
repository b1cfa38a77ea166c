#pragma once

#include <cstdint>
#include <vector>

#include "monobandit/policy.hpp"

namespace monobandit {

struct EscalationParams {
    int grid_size;   // K
    int batch_size;  // m
};

// Schedule K = floor(T^{1/4}), m = floor(T^{1/2}). Requires T >= 16.
EscalationParams escalation_params(std::int64_t horizon);

struct ConfidenceBounds {
    double lower;
    double upper;
};

// batch_mean +- sigma * sqrt(2 ln(m) / m). Requires m >= 1.
ConfidenceBounds confidence_bounds(double batch_mean, std::int64_t batch_size, double sigma);

// One completed batch, kept for tracing and test introspection.
struct BatchRecord {
    enum class Decision { Escalate, Stop, GridExhausted };
    int arm_index;  // k: the batch was played at arm k/K
    double mean;
    double lower;
    double upper;
    Decision decision;
};

// Batched escalation over the grid {k/K}. Plays each grid arm m times in a
// row; after a batch, if the batch's upper confidence bound falls strictly
// below the lower bound recorded for any earlier arm, the current arm has
// passed the mode and is played for the rest of the horizon. If the grid is
// exhausted without stopping, the policy freezes at arm 1 (the arm sequence
// must stay nondecreasing, so there is nowhere else to go).
class EscalationPolicy final : public Policy {
public:
    explicit EscalationPolicy(PolicyOverrides overrides = {});

    void reset(std::int64_t horizon, double sigma, std::uint64_t seed) override;
    double next_arm(std::int64_t t) override;
    void observe(std::int64_t t, double arm, double reward) override;
    bool is_monotone() const override { return true; }
    std::string name() const override { return "alg1"; }

    int grid_size() const { return grid_size_; }
    int batch_size() const { return batch_size_; }
    bool stopped() const { return stopped_; }
    double frozen_arm() const { return frozen_arm_; }
    const std::vector<double>& lower_bound_history() const { return lb_history_; }
    const std::vector<BatchRecord>& batch_records() const { return batch_records_; }

private:
    double current_arm() const;

    PolicyOverrides overrides_;
    int grid_size_ = 0;
    int batch_size_ = 0;
    double sigma_ = 0.0;
    int arm_index_ = 0;          // k, current grid index
    double batch_sum_ = 0.0;
    std::int64_t batch_count_ = 0;
    std::vector<double> lb_history_;  // LB_i for completed arms i < k
    bool stopped_ = false;
    double frozen_arm_ = 0.0;
    std::vector<BatchRecord> batch_records_;
};

}  // namespace monobandit
