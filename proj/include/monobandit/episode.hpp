#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "monobandit/instances.hpp"
#include "monobandit/piecewise_linear.hpp"
#include "monobandit/policy.hpp"

namespace monobandit {

// The realized (arm, reward) sequence of one episode.
struct Trajectory {
    std::vector<double> arms;
    std::vector<double> rewards;
    std::string instance_id;
    std::string policy_id;
    std::uint64_t seed = 0;
};

struct RunRecord {
    Trajectory trajectory;
    double regret = 0.0;
    bool monotone = false;  // audit: arms nondecreasing over the whole episode
};

// T * max f - sum_t f(X_t), against the true (noiseless) f.
double regret(const Trajectory& trajectory, const PiecewiseLinearFunction& f);

// True iff arms are nondecreasing.
bool assert_monotone(const Trajectory& trajectory);

// Runs one policy against one instance for `horizon` periods.
//
// The episode seed is split into two independent streams (reward noise and
// the policy's randomizer), so two policies given the same seed see the same
// noise process. A policy flagged monotone that emits a decreasing arm is a
// contract violation and throws; for other policies the audit only lands in
// the monotone flag.
RunRecord run_episode(Policy& policy, const PiecewiseLinearFunction& f, const NoiseModel& noise,
                      std::int64_t horizon, std::uint64_t seed,
                      std::string_view instance_id = "");

// Line-oriented episode log: policy, instance family, T, seed, regret,
// monotone flag, space-separated.
struct EpisodeSummary {
    std::string policy_id;
    std::string instance_id;
    std::int64_t horizon = 0;
    std::uint64_t seed = 0;
    double regret = 0.0;
    bool monotone = false;
};

EpisodeSummary summarize(const RunRecord& record);
std::string to_log_line(const EpisodeSummary& summary);
EpisodeSummary parse_log_line(const std::string& line);

}  // namespace monobandit
