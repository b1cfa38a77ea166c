// monobandit CLI: Monte-Carlo regret experiments for bandit policies under a
// nondecreasing-arm constraint. Subcommands: run, reproduce-figure3,
// validate-instances, scaling, trace.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "monobandit/config_file.hpp"
#include "monobandit/episode.hpp"
#include "monobandit/escalation.hpp"
#include "monobandit/experiment.hpp"
#include "monobandit/format.hpp"
#include "monobandit/instances.hpp"
#include "monobandit/policy.hpp"

namespace {

using namespace monobandit;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

// Raw flag values; only flags the user actually passed override the config
// file, which in turn overrides the subcommand defaults.
struct CommonFlags {
    std::string config_path;
    std::string horizons;
    int replications = 0;
    double sigma = 0.0;
    std::uint64_t seed = 0;
    std::string policies;
    std::string instance;
    std::string out;
    std::string episodes;
    int parallelism = 0;
    int grid_size = 0;
    int batch_size = 0;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags, bool with_config = true) {
    if (with_config) {
        cmd->add_option("--config", flags.config_path, "key = value config file");
    }
    cmd->add_option("--horizons", flags.horizons, "comma-separated horizon list");
    cmd->add_option("--replications", flags.replications, "replications per horizon");
    cmd->add_option("--sigma", flags.sigma, "reward noise standard deviation");
    cmd->add_option("--seed", flags.seed, "master seed");
    cmd->add_option("--policies", flags.policies, "comma-separated policy roster");
    cmd->add_option("--instance", flags.instance,
                    "instance family (random-peak, lower-bound:K:k, prop1:1|2, explicit:...)");
    cmd->add_option("--out", flags.out, "output CSV path");
    cmd->add_option("--parallelism", flags.parallelism, "worker threads (default: cores)");
    cmd->add_option("--grid-size", flags.grid_size, "override grid size K for all policies");
    cmd->add_option("--batch-size", flags.batch_size, "override batch size m (alg1)");
}

// MONOBANDIT_OUT_DIR prefixes relative output paths.
std::string resolve_out_path(const std::string& path) {
    if (path.empty() || std::filesystem::path(path).is_absolute()) {
        return path;
    }
    const char* dir = std::getenv("MONOBANDIT_OUT_DIR");
    if (dir == nullptr || *dir == '\0') {
        return path;
    }
    return (std::filesystem::path(dir) / path).string();
}

void apply_flags(const CLI::App* cmd, const CommonFlags& flags, ExperimentConfig& config,
                 std::string& out_path) {
    if (!flags.config_path.empty()) {
        ConfigFile::load(flags.config_path).apply(config, out_path);
    }
    if (cmd->count("--horizons")) config.horizons = parse_horizon_list(flags.horizons);
    if (cmd->count("--replications")) config.replications = flags.replications;
    if (cmd->count("--sigma")) config.sigma = flags.sigma;
    if (cmd->count("--seed")) config.master_seed = flags.seed;
    if (cmd->count("--policies")) config.policies = parse_name_list(flags.policies);
    if (cmd->count("--instance")) {
        try {
            config.instance = InstanceSpec::parse(flags.instance);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
    if (cmd->count("--parallelism")) config.parallelism = flags.parallelism;
    if (cmd->count("--grid-size")) config.policy_overrides.grid_size = flags.grid_size;
    if (cmd->count("--batch-size")) config.policy_overrides.batch_size = flags.batch_size;
    if (cmd->count("--out")) out_path = flags.out;
}

bool has_benchmark_roster(const ExperimentConfig& config) {
    if (config.policies.size() != kBenchmarkPolicies.size()) return false;
    for (const auto name : kBenchmarkPolicies) {
        bool found = false;
        for (const auto& p : config.policies) {
            if (p == name) found = true;
        }
        if (!found) return false;
    }
    return true;
}

int cmd_run(const CLI::App* cmd, const CommonFlags& flags) {
    ExperimentConfig config;
    // Default grid: the full benchmark horizons. CI-scale runs pass their own.
    config.horizons.clear();
    for (std::int64_t T = 1000; T <= 101000; T += 10000) {
        config.horizons.push_back(T);
    }
    config.replications = 100;
    std::string out_path = "regret.csv";
    apply_flags(cmd, flags, config, out_path);
    config.validate();

    const MonteCarloResult result = monte_carlo(config);
    std::cout << summary_text(result);

    if (cmd->count("--episodes")) {
        const std::string episodes_path = resolve_out_path(flags.episodes);
        write_episode_log(result.episodes, episodes_path);
        std::cout << "wrote " << episodes_path << '\n';
    }
    if (has_benchmark_roster(config)) {
        const std::string path = resolve_out_path(out_path);
        write_csv(result.table, path);
        std::cout << "wrote " << path << '\n';
    } else if (cmd->count("--out")) {
        throw ConfigError(
            "the CSV schema needs the full roster alg1,ucb,ucb-mono,ucb-deflate; "
            "drop --out or restore the roster");
    } else {
        std::cout << "(csv skipped: roster is not the four benchmark policies)\n";
    }
    return kExitOk;
}

int cmd_reproduce_figure3(const CLI::App* cmd, const CommonFlags& flags) {
    ExperimentConfig config;
    config.horizons.clear();
    for (std::int64_t T = 1000; T <= 101000; T += 10000) {
        config.horizons.push_back(T);
    }
    config.replications = 100;
    config.sigma = 0.1;
    config.master_seed = 20240501;

    std::string out_path = "data.csv";
    apply_flags(cmd, flags, config, out_path);
    if (!has_benchmark_roster(config)) {
        throw ConfigError("reproduce-figure3 runs the fixed four-policy roster");
    }
    config.validate();

    const std::string path = resolve_out_path(out_path);
    const std::string checkpoint = path + ".ckpt";
    const MonteCarloResult result = monte_carlo_checkpointed(config, checkpoint, &std::cerr);
    write_csv(result.table, path);
    std::error_code ec;
    std::filesystem::remove(checkpoint, ec);  // run finished; checkpoint spent
    std::cout << summary_text(result);
    std::cout << "wrote " << path << '\n';
    return kExitOk;
}

int cmd_validate_instances(std::int64_t samples, std::uint64_t seed, int grid_points) {
    Rng rng(stream_seed(seed, {fnv1a64("validate")}));
    const double step = 1.0 / static_cast<double>(grid_points);

    const auto in_range = [&](const PiecewiseLinearFunction& f) {
        for (int g = 0; g <= grid_points; ++g) {
            const double v = f.eval(std::min(1.0, g * step));
            if (!(v >= 0.0 && v <= 1.0)) return false;
        }
        return true;
    };

    std::int64_t range_fail = 0, quasi_fail = 0, lipschitz_fail = 0;
    for (std::int64_t i = 0; i < samples; ++i) {
        const double x1 = rng.next_uniform(0.0, 1.0);
        const double x2 = rng.next_uniform(0.5, 1.0);
        const PiecewiseLinearFunction f = make_random_peak_instance(x1, x2);
        if (!in_range(f)) ++range_fail;
        if (!check_quasiconcave(f)) ++quasi_fail;
        if (!check_lipschitz(f, random_peak_lipschitz(x1, x2))) ++lipschitz_fail;
    }
    std::cout << "random-peak: " << samples << " samples, " << range_fail
              << " range failures, " << quasi_fail << " quasiconcavity failures, "
              << lipschitz_fail << " Lipschitz failures\n";

    std::int64_t lb_fail = 0;
    for (int K = 1; K <= 20; ++K) {
        for (int k = 1; k <= K; ++k) {
            const PiecewiseLinearFunction f = make_lower_bound_instance(K, k);
            const double peak = (static_cast<double>(k) - 0.5) / static_cast<double>(K);
            const MaxPoint mp = f.max_value();
            if (!check_lipschitz(f, 1.0) || !check_quasiconcave(f) || !in_range(f) ||
                mp.x != peak || mp.value != peak) {
                ++lb_fail;
            }
        }
    }
    std::cout << "lower-bound family (K <= 20): " << lb_fail << " failures\n";

    const auto [f1, f2] = make_prop1_pair();
    std::int64_t pair_fail = 0;
    for (int g = 0; g <= grid_points; ++g) {
        const double x = std::min(1.0, g * step);
        if (x <= 0.5 && f1.eval(x) != f2.eval(x)) ++pair_fail;
    }
    if (!check_quasiconcave(f1) || check_quasiconcave(f2)) ++pair_fail;
    std::cout << "prefix pair: " << pair_fail << " failures\n";

    const std::int64_t total = range_fail + quasi_fail + lipschitz_fail + lb_fail + pair_fail;
    std::cout << (total == 0 ? "all instance checks passed\n"
                             : "instance checks FAILED\n");
    return total == 0 ? kExitOk : kExitRuntime;
}

int cmd_scaling(const CLI::App* cmd, const CommonFlags& flags) {
    ExperimentConfig config;
    config.horizons = {1000, 4000, 16000, 64000};
    config.replications = 100;

    std::string out_path;
    apply_flags(cmd, flags, config, out_path);
    config.validate();

    const MonteCarloResult result = monte_carlo(config);
    std::cout << summary_text(result);
    for (const auto& policy : config.policies) {
        const ScalingFit fit = fit_scaling_exponent(result.table, policy);
        std::cout << policy << ": slope " << format_number(fit.slope) << " ("
                  << fit.points_used << " horizons";
        if (fit.points_excluded > 0) {
            std::cout << ", " << fit.points_excluded << " excluded for nonpositive mean";
        }
        std::cout << ")\n";
    }
    if (!out_path.empty()) {
        if (!has_benchmark_roster(config)) {
            throw ConfigError(
                "the CSV schema needs the full roster alg1,ucb,ucb-mono,ucb-deflate; "
                "drop --out or restore the roster");
        }
        const std::string path = resolve_out_path(out_path);
        write_csv(result.table, path);
        std::cout << "wrote " << path << '\n';
    }
    return kExitOk;
}

int cmd_trace(const std::string& policy_name, const std::string& instance_text,
              std::int64_t horizon, std::uint64_t seed, double sigma,
              std::optional<int> grid_size, std::optional<int> batch_size) {
    if (horizon < 1) {
        throw ConfigError("trace horizon must be >= 1");
    }
    InstanceSpec spec;
    try {
        spec = InstanceSpec::parse(instance_text);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    Rng instance_rng(stream_seed(seed, {fnv1a64("instance")}));
    const DrawnInstance drawn = spec.draw(instance_rng);

    PolicyOverrides overrides;
    overrides.grid_size = grid_size;
    overrides.batch_size = batch_size;
    std::unique_ptr<Policy> policy;
    if (policy_name == "oracle") {
        policy = std::make_unique<FixedArmPolicy>(drawn.f.max_value().x, "oracle");
    } else {
        try {
            policy = make_policy(policy_name, overrides);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }

    if (!(sigma >= 0.0)) {
        throw ConfigError("sigma must be >= 0");
    }
    const NoiseModel noise(sigma);
    Rng env_rng(stream_seed(seed, {0}));
    try {
        policy->reset(horizon, sigma, stream_seed(seed, {1}));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    const auto* escalation = dynamic_cast<const EscalationPolicy*>(policy.get());
    std::size_t batches_printed = 0;
    std::cout << "policy=" << policy->name() << " instance=" << spec.name() << " T=" << horizon
              << " seed=" << seed << " sigma=" << format_number(sigma) << '\n';
    for (std::int64_t t = 1; t <= horizon; ++t) {
        const double arm = policy->next_arm(t);
        const double reward = sample_reward(drawn.f, arm, noise, env_rng);
        policy->observe(t, arm, reward);
        std::cout << "t=" << t << " arm=" << format_number(arm)
                  << " reward=" << format_number(reward) << '\n';
        if (escalation != nullptr) {
            const auto& records = escalation->batch_records();
            for (; batches_printed < records.size(); ++batches_printed) {
                const BatchRecord& r = records[batches_printed];
                std::cout << "batch k=" << r.arm_index << " arm="
                          << format_number(static_cast<double>(r.arm_index) /
                                           escalation->grid_size())
                          << " mean=" << format_number(r.mean)
                          << " lb=" << format_number(r.lower)
                          << " ub=" << format_number(r.upper) << " decision=";
                switch (r.decision) {
                    case BatchRecord::Decision::Escalate:
                        std::cout << "escalate";
                        break;
                    case BatchRecord::Decision::Stop:
                        std::cout << "stop (frozen at "
                                  << format_number(escalation->frozen_arm()) << ")";
                        break;
                    case BatchRecord::Decision::GridExhausted:
                        std::cout << "grid-exhausted (frozen at 1)";
                        break;
                }
                std::cout << '\n';
            }
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte-Carlo regret experiments for monotone-arm bandit policies"};
    app.require_subcommand(1);

    CommonFlags run_flags;
    CLI::App* run = app.add_subcommand("run", "run a configured experiment and write CSV");
    add_common_flags(run, run_flags);
    run->add_option("--episodes", run_flags.episodes,
                    "also write one log line per episode to this path");

    CommonFlags fig3_flags;
    CLI::App* fig3 = app.add_subcommand(
        "reproduce-figure3", "regenerate the bundled benchmark dataset (data.csv)");
    add_common_flags(fig3, fig3_flags, /*with_config=*/false);

    std::int64_t validate_samples = 10000;
    std::uint64_t validate_seed = 7;
    int validate_grid = 10000;
    CLI::App* validate =
        app.add_subcommand("validate-instances", "audit instance-family invariants");
    validate->add_option("--samples", validate_samples, "random-peak sample count");
    validate->add_option("--seed", validate_seed, "sampling seed");
    validate->add_option("--grid", validate_grid, "evaluation grid resolution");

    CommonFlags scaling_flags;
    CLI::App* scaling =
        app.add_subcommand("scaling", "fit log-log regret slopes over a horizon grid");
    add_common_flags(scaling, scaling_flags);

    std::string trace_policy = "alg1";
    std::string trace_instance = "random-peak";
    std::int64_t trace_horizon = 100;
    std::uint64_t trace_seed = 1;
    double trace_sigma = 0.1;
    int trace_grid = 0;
    int trace_batch = 0;
    CLI::App* trace = app.add_subcommand("trace", "print one episode period by period");
    trace->add_option("--policy", trace_policy, "policy name");
    trace->add_option("--instance", trace_instance, "instance family");
    trace->add_option("-T,--horizon", trace_horizon, "episode length");
    trace->add_option("--seed", trace_seed, "episode seed");
    trace->add_option("--sigma", trace_sigma, "reward noise standard deviation");
    trace->add_option("--grid-size", trace_grid, "override grid size K");
    trace->add_option("--batch-size", trace_batch, "override batch size m");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (run->parsed()) {
            return cmd_run(run, run_flags);
        }
        if (fig3->parsed()) {
            return cmd_reproduce_figure3(fig3, fig3_flags);
        }
        if (validate->parsed()) {
            return cmd_validate_instances(validate_samples, validate_seed, validate_grid);
        }
        if (scaling->parsed()) {
            return cmd_scaling(scaling, scaling_flags);
        }
        if (trace->parsed()) {
            return cmd_trace(trace_policy, trace_instance, trace_horizon, trace_seed,
                             trace_sigma,
                             trace->count("--grid-size") ? std::optional<int>(trace_grid)
                                                         : std::nullopt,
                             trace->count("--batch-size") ? std::optional<int>(trace_batch)
                                                          : std::nullopt);
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitUsage;
}
