#include "monobandit/escalation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "monobandit/numeric.hpp"

namespace monobandit {

EscalationParams escalation_params(std::int64_t horizon) {
    if (horizon < 16) {
        throw std::invalid_argument(
            "escalation schedule requires horizon >= 16, got " + std::to_string(horizon));
    }
    return {static_cast<int>(floor_root(horizon, 4)),
            static_cast<int>(floor_root(horizon, 2))};
}

ConfidenceBounds confidence_bounds(double batch_mean, std::int64_t batch_size, double sigma) {
    if (batch_size < 1) {
        throw std::invalid_argument("confidence_bounds: batch size must be >= 1");
    }
    const double m = static_cast<double>(batch_size);
    const double half_width = sigma * std::sqrt(2.0 * std::log(m) / m);
    return {batch_mean - half_width, batch_mean + half_width};
}

EscalationPolicy::EscalationPolicy(PolicyOverrides overrides) : overrides_(overrides) {}

void EscalationPolicy::reset(std::int64_t horizon, double sigma, std::uint64_t /*seed*/) {
    if (overrides_.grid_size && overrides_.batch_size) {
        grid_size_ = *overrides_.grid_size;
        batch_size_ = *overrides_.batch_size;
    } else {
        const EscalationParams params = escalation_params(horizon);
        grid_size_ = overrides_.grid_size.value_or(params.grid_size);
        batch_size_ = overrides_.batch_size.value_or(params.batch_size);
    }
    if (grid_size_ < 1 || batch_size_ < 1) {
        throw std::invalid_argument("escalation policy needs grid size >= 1 and batch size >= 1");
    }
    sigma_ = sigma;
    arm_index_ = 0;
    batch_sum_ = 0.0;
    batch_count_ = 0;
    lb_history_.clear();
    stopped_ = false;
    frozen_arm_ = 0.0;
    batch_records_.clear();
}

double EscalationPolicy::current_arm() const {
    return static_cast<double>(arm_index_) / static_cast<double>(grid_size_);
}

double EscalationPolicy::next_arm(std::int64_t /*t*/) {
    return stopped_ ? frozen_arm_ : current_arm();
}

void EscalationPolicy::observe(std::int64_t /*t*/, double arm, double reward) {
    if (stopped_) {
        return;  // frozen; later rewards no longer influence the state
    }
    if (std::abs(arm - current_arm()) > 1e-12) {
        throw std::logic_error("escalation policy observed a reward for a foreign arm");
    }
    batch_sum_ += reward;
    ++batch_count_;
    if (batch_count_ < batch_size_) {
        return;
    }

    // Batch complete: bounds use exactly these batch_size_ rewards.
    const ConfidenceBounds bounds =
        confidence_bounds(batch_sum_ / static_cast<double>(batch_size_), batch_size_, sigma_);
    bool stop = false;
    for (const double lb : lb_history_) {
        if (bounds.upper < lb) {
            stop = true;
            break;
        }
    }

    BatchRecord record{arm_index_, batch_sum_ / static_cast<double>(batch_size_), bounds.lower,
                       bounds.upper, BatchRecord::Decision::Escalate};
    if (stop) {
        record.decision = BatchRecord::Decision::Stop;
        stopped_ = true;
        frozen_arm_ = current_arm();
    } else if (arm_index_ == grid_size_) {
        record.decision = BatchRecord::Decision::GridExhausted;
        stopped_ = true;
        frozen_arm_ = 1.0;
    } else {
        lb_history_.push_back(bounds.lower);
        ++arm_index_;
        batch_sum_ = 0.0;
        batch_count_ = 0;
    }
    batch_records_.push_back(record);
}

}  // namespace monobandit
