#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace monobandit {

// One learner playing arms in [0,1]. Driven strictly as
//   reset(T, sigma, seed); then for t = 1..T: next_arm(t), observe(t, arm, reward).
//
// A policy flagged monotone must never emit an arm smaller than any arm it
// emitted before (the harness enforces this as a hard contract). The seed
// feeds the policy's own randomizer and is independent of the environment
// stream; the policies shipped here are deterministic and do not consume it.
class Policy {
public:
    virtual ~Policy() = default;

    virtual void reset(std::int64_t horizon, double sigma, std::uint64_t seed) = 0;
    virtual double next_arm(std::int64_t t) = 0;
    virtual void observe(std::int64_t t, double arm, double reward) = 0;
    virtual bool is_monotone() const = 0;
    virtual std::string name() const = 0;
};

// Plays one fixed arm every period. Reference policy for tests and for the
// oracle baseline (fixed at the instance maximizer).
class FixedArmPolicy final : public Policy {
public:
    explicit FixedArmPolicy(double arm, std::string name = "fixed");

    void reset(std::int64_t horizon, double sigma, std::uint64_t seed) override;
    double next_arm(std::int64_t /*t*/) override { return arm_; }
    void observe(std::int64_t /*t*/, double /*arm*/, double /*reward*/) override {}
    bool is_monotone() const override { return true; }
    std::string name() const override { return name_; }

private:
    double arm_;
    std::string name_;
};

// Hyper-parameter overrides; defaults follow the horizon-based schedules.
struct PolicyOverrides {
    std::optional<int> grid_size;   // K
    std::optional<int> batch_size;  // m (escalation policy only)
};

// Known names: alg1, ucb, ucb-mono, ucb-deflate, fixed:<arm>.
std::unique_ptr<Policy> make_policy(std::string_view name, const PolicyOverrides& overrides = {});

}  // namespace monobandit
