#include "monobandit/episode.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "monobandit/format.hpp"
#include "monobandit/rng.hpp"

namespace monobandit {

namespace {
// Stream ids under the episode seed.
constexpr std::uint64_t kEnvStream = 0;
constexpr std::uint64_t kPolicyStream = 1;
}  // namespace

double regret(const Trajectory& trajectory, const PiecewiseLinearFunction& f) {
    if (trajectory.arms.empty()) {
        throw std::invalid_argument("regret of an empty trajectory");
    }
    const double best = f.max_value().value;
    double total = 0.0;
    for (const double arm : trajectory.arms) {
        total += best - f.eval(arm);
    }
    return std::max(0.0, total);
}

bool assert_monotone(const Trajectory& trajectory) {
    for (std::size_t i = 1; i < trajectory.arms.size(); ++i) {
        if (trajectory.arms[i] < trajectory.arms[i - 1]) {
            return false;
        }
    }
    return true;
}

RunRecord run_episode(Policy& policy, const PiecewiseLinearFunction& f, const NoiseModel& noise,
                      std::int64_t horizon, std::uint64_t seed,
                      std::string_view instance_id) {
    if (horizon < 1) {
        throw std::invalid_argument("run_episode requires horizon >= 1");
    }
    Rng env_rng(stream_seed(seed, {kEnvStream}));
    policy.reset(horizon, noise.sigma, stream_seed(seed, {kPolicyStream}));

    RunRecord record;
    record.trajectory.arms.reserve(horizon);
    record.trajectory.rewards.reserve(horizon);
    record.trajectory.instance_id = std::string(instance_id);
    record.trajectory.policy_id = policy.name();
    record.trajectory.seed = seed;

    double prev_arm = 0.0;
    for (std::int64_t t = 1; t <= horizon; ++t) {
        const double arm = policy.next_arm(t);
        if (!(arm >= 0.0 && arm <= 1.0)) {
            throw std::runtime_error("policy '" + policy.name() + "' chose arm outside [0,1]");
        }
        if (t > 1 && arm < prev_arm && policy.is_monotone()) {
            throw std::runtime_error("monotone policy '" + policy.name() +
                                     "' emitted a decreasing arm at t=" + std::to_string(t));
        }
        const double reward = sample_reward(f, arm, noise, env_rng);
        policy.observe(t, arm, reward);
        record.trajectory.arms.push_back(arm);
        record.trajectory.rewards.push_back(reward);
        prev_arm = arm;
    }
    record.regret = regret(record.trajectory, f);
    record.monotone = assert_monotone(record.trajectory);
    return record;
}

EpisodeSummary summarize(const RunRecord& record) {
    return {record.trajectory.policy_id,
            record.trajectory.instance_id,
            static_cast<std::int64_t>(record.trajectory.arms.size()),
            record.trajectory.seed,
            record.regret,
            record.monotone};
}

std::string to_log_line(const EpisodeSummary& summary) {
    // "-" stands in for an empty field so the line always has six tokens.
    std::ostringstream os;
    os << (summary.policy_id.empty() ? "-" : summary.policy_id) << ' '
       << (summary.instance_id.empty() ? "-" : summary.instance_id) << ' ' << summary.horizon
       << ' ' << summary.seed << ' ' << format_number(summary.regret) << ' '
       << (summary.monotone ? 1 : 0);
    return os.str();
}

EpisodeSummary parse_log_line(const std::string& line) {
    std::istringstream is(line);
    EpisodeSummary summary;
    std::string regret_text;
    int monotone = 0;
    if (!(is >> summary.policy_id >> summary.instance_id >> summary.horizon >> summary.seed >>
          regret_text >> monotone)) {
        throw std::invalid_argument("bad episode log line: '" + line + "'");
    }
    if (summary.policy_id == "-") summary.policy_id.clear();
    if (summary.instance_id == "-") summary.instance_id.clear();
    summary.regret = parse_number(regret_text, "episode log line");
    summary.monotone = monotone != 0;
    return summary;
}

}  // namespace monobandit
