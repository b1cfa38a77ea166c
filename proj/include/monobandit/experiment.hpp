#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "monobandit/episode.hpp"
#include "monobandit/instances.hpp"
#include "monobandit/policy.hpp"

namespace monobandit {

// Configuration/input errors; the CLI maps these to exit status 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The four benchmark policies in canonical order, and their CSV columns.
inline constexpr std::array<std::string_view, 4> kBenchmarkPolicies = {"alg1", "ucb", "ucb-mono",
                                                                   "ucb-deflate"};
inline constexpr std::string_view kCsvHeader = "T,alg1_reg,UCB_reg,UCB_inc_reg,UCB_def_reg";

struct ExperimentConfig {
    std::vector<std::int64_t> horizons;
    int replications = 1;
    double sigma = 0.1;
    std::uint64_t master_seed = 0;
    std::vector<std::string> policies = {"alg1", "ucb", "ucb-mono", "ucb-deflate"};
    InstanceSpec instance;            // default: random-peak
    PolicyOverrides policy_overrides; // optional K / m, applied to every policy
    int parallelism = 0;              // 0 = hardware concurrency

    // Throws ConfigError; called before any episode runs.
    void validate() const;
};

// Mean regret and standard error per (horizon, policy).
struct RegretTable {
    std::vector<std::int64_t> horizons;
    std::vector<std::string> policies;
    std::vector<std::vector<double>> mean_regret;  // [horizon][policy]
    std::vector<std::vector<double>> std_error;    // [horizon][policy]

    int policy_index(std::string_view policy) const;  // -1 if absent
    int horizon_index(std::int64_t horizon) const;    // -1 if absent
    double mean(std::int64_t horizon, std::string_view policy) const;
    double stderr_of(std::int64_t horizon, std::string_view policy) const;
};

struct MonteCarloResult {
    RegretTable table;
    // Per horizon, over the drawn instances:
    std::vector<double> max_lipschitz;
    // Episodes whose realized regret exceeded the schedule's regret ceiling
    // for their own instance (informational; the ceiling is an expectation
    // bound, so single episodes may poke above it).
    std::vector<std::int64_t> ceiling_exceedances;
    // One summary per episode in (horizon, replication, policy) order; left
    // empty by checkpointed runs, which persist only the aggregates.
    std::vector<EpisodeSummary> episodes;
};

// One episode summary per line.
void write_episode_log(const std::vector<EpisodeSummary>& episodes, const std::string& path);

// Runs the (horizon, replication) grid. Per replication one instance is drawn
// and shared by every policy in the roster; every (horizon, replication,
// policy) triple has its own seed derived from the master seed, so results
// are independent of roster composition, iteration order, and parallelism.
MonteCarloResult monte_carlo(const ExperimentConfig& config);

// Same table as monte_carlo, computed one horizon at a time with each
// finished horizon persisted to checkpoint_path, so an interrupted run
// resumes where it left off. The checkpoint carries a config fingerprint and
// is ignored on mismatch. Callers remove the file once the final artifact is
// written.
MonteCarloResult monte_carlo_checkpointed(const ExperimentConfig& config,
                                          const std::string& checkpoint_path,
                                          std::ostream* progress = nullptr);

// Regret ceiling (3c + 11/2 + 4 sqrt(3) sigma sqrt(ln T)) * T^{3/4} of the
// escalation schedule; natural logarithm. Requires T >= 16.
double escalation_regret_ceiling(std::int64_t horizon, double lipschitz_c, double sigma);

struct ScalingFit {
    double slope = 0.0;
    double intercept = 0.0;
    int points_used = 0;
    int points_excluded = 0;  // horizons dropped for nonpositive mean regret
};

// Least-squares slope of ln(mean regret) vs ln(T). Needs >= 3 usable points.
ScalingFit fit_scaling_exponent(const RegretTable& table, std::string_view policy);

// CSV serialization in the fixed four-column schema above. The table must
// hold exactly the four benchmark policies. Standard errors are not part of
// the file format.
std::string to_csv(const RegretTable& table);
RegretTable parse_csv(std::istream& in, std::string_view source_name = "csv");
void write_csv(const RegretTable& table, const std::string& path);
RegretTable read_csv(const std::string& path);

// Human-readable summary of a run (means, standard errors, diagnostics).
std::string summary_text(const MonteCarloResult& result);

}  // namespace monobandit
