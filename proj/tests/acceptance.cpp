// Acceptance suite: end-to-end checks of the experiment pipeline at reduced
// scale. Each criterion prints one PASS/FAIL line; the exit status is the
// number of failed criteria.

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "escalation_oracle.hpp"
#include "monobandit/episode.hpp"
#include "monobandit/escalation.hpp"
#include "monobandit/experiment.hpp"
#include "monobandit/instances.hpp"
#include "monobandit/parallel.hpp"
#include "monobandit/policy.hpp"
#include "monobandit/rng.hpp"

using namespace monobandit;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool pass, const std::string& detail) {
    std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << criterion << " (" << name
              << "): " << detail << '\n';
    std::cout.flush();
    if (!pass) ++failures;
}

void run_criterion(int criterion, const std::string& name,
                   const std::function<std::pair<bool, std::string>()>& body) {
    try {
        const auto [pass, detail] = body();
        report(criterion, name, pass, detail);
    } catch (const std::exception& e) {
        report(criterion, name, false, std::string("exception: ") + e.what());
    }
}

double combined_se(double a, double b) { return std::sqrt(a * a + b * b); }

// --- criterion 1: nondecreasing arm sequences, zero violations ------------

std::pair<bool, std::string> criterion_monotonicity() {
    const std::vector<std::int64_t> horizons = {100, 1000, 10000};
    const std::vector<std::string> policies = {"alg1", "ucb-mono", "ucb-deflate"};
    const int pairs = 1000;
    const std::uint64_t base = 424242;
    const NoiseModel noise(0.1);

    std::atomic<int> violations{0};
    parallel_for(pairs, 0, [&](std::size_t i) {
        const std::int64_t T = horizons[i % horizons.size()];
        Rng instance_rng(stream_seed(base, {i, 0}));
        const auto f = make_random_peak_instance(instance_rng);
        for (const auto& name : policies) {
            auto policy = make_policy(name);
            try {
                const auto record =
                    run_episode(*policy, f, noise, T, stream_seed(base, {i, fnv1a64(name)}));
                if (!record.monotone || !assert_monotone(record.trajectory)) {
                    violations.fetch_add(1);
                }
            } catch (const std::runtime_error&) {
                violations.fetch_add(1);  // the harness hard-fails on violations
            }
        }
    });
    std::ostringstream os;
    os << violations.load() << " violations over " << pairs
       << " (instance, seed) pairs x {alg1, ucb-mono, ucb-deflate} at T in {100, 1000, 10000}";
    return {violations.load() == 0, os.str()};
}

// --- criteria 2+3: benchmark ordering and the regret ceiling ---------------

MonteCarloResult ordering_run() {
    ExperimentConfig config;
    config.horizons = {1000, 11000, 31000};
    config.replications = 50;
    config.sigma = 0.1;
    config.master_seed = 31337;
    return monte_carlo(config);
}

std::pair<bool, std::string> criterion_ordering(const MonteCarloResult& result) {
    const std::int64_t T = 31000;
    const double alg1 = result.table.mean(T, "alg1");
    const double alg1_se = result.table.stderr_of(T, "alg1");
    const double ucb = result.table.mean(T, "ucb");
    const double ucb_se = result.table.stderr_of(T, "ucb");
    const double mono = result.table.mean(T, "ucb-mono");
    const double mono_se = result.table.stderr_of(T, "ucb-mono");

    const double ucb_margin = (alg1 - ucb) / combined_se(alg1_se, ucb_se);
    const double mono_margin = (mono - 2.0 * alg1) / combined_se(mono_se, 2.0 * alg1_se);
    const bool pass = ucb_margin >= 3.0 && mono_margin >= 3.0;

    std::ostringstream os;
    os.precision(1);
    os << std::fixed << "at T=31000: ucb " << ucb << " < alg1 " << alg1 << " ("
       << ucb_margin << " SE); ucb-mono " << mono << " >= 2x alg1 (" << mono_margin
       << " SE); both need >= 3 SE";
    return {pass, os.str()};
}

std::pair<bool, std::string> criterion_ceiling(const MonteCarloResult& result) {
    bool pass = true;
    std::ostringstream os;
    os.precision(1);
    os << std::fixed;
    for (std::size_t h = 0; h < result.table.horizons.size(); ++h) {
        const std::int64_t T = result.table.horizons[h];
        const double mean = result.table.mean(T, "alg1");
        const double bound = escalation_regret_ceiling(T, result.max_lipschitz[h], 0.1);
        if (mean > bound) pass = false;
        if (h) os << ", ";
        os << "T=" << T << ": " << mean << " <= " << bound;
    }
    return {pass, os.str()};
}

// --- criterion 4: log-log slope window and rate separation ------------------

std::pair<bool, std::string> criterion_rates() {
    ExperimentConfig config;
    config.horizons = {1000, 4000, 16000, 64000};
    config.replications = 100;
    config.sigma = 0.1;
    config.master_seed = 271828;
    config.policies = {"alg1", "ucb"};
    const MonteCarloResult result = monte_carlo(config);

    const double alg1_slope = fit_scaling_exponent(result.table, "alg1").slope;
    const double ucb_slope = fit_scaling_exponent(result.table, "ucb").slope;
    const bool window = alg1_slope >= 0.60 && alg1_slope <= 0.90;
    const bool separated = ucb_slope <= alg1_slope - 0.02;

    std::ostringstream os;
    os.precision(3);
    os << std::fixed << "alg1 slope " << alg1_slope << " in [0.60, 0.90]: "
       << (window ? "yes" : "NO") << "; ucb slope " << ucb_slope
       << " <= alg1 slope - 0.02: " << (separated ? "yes" : "NO");
    return {window && separated, os.str()};
}

// --- criterion 5: indistinguishable-pair regret sum -------------------------

std::pair<bool, std::string> criterion_pair_bound() {
    const std::int64_t T = 10000;
    const int reps = 200;
    bool pass = true;
    std::ostringstream os;
    os.precision(1);
    os << std::fixed;

    bool first = true;
    for (const std::string policy : {"alg1", "ucb-mono"}) {
        double sum = 0.0, se_sq = 0.0;
        for (const std::string member : {"prop1:1", "prop1:2"}) {
            ExperimentConfig config;
            config.horizons = {T};
            config.replications = reps;
            config.sigma = 0.1;
            config.master_seed = 161803;
            config.policies = {policy};
            config.instance = InstanceSpec::parse(member);
            const MonteCarloResult result = monte_carlo(config);
            sum += result.table.mean(T, policy);
            const double se = result.table.stderr_of(T, policy);
            se_sq += se * se;
        }
        const double floor = static_cast<double>(T) / 2.0 - 3.0 * std::sqrt(se_sq);
        if (sum < floor) pass = false;
        if (!first) os << "; ";
        os << policy << ": R(f1)+R(f2) = " << sum << " >= " << floor;
        first = false;
    }
    return {pass, os.str()};
}

// --- criterion 6: hard-instance family sanity -------------------------------

std::pair<bool, std::string> criterion_lower_bound_family() {
    int checked = 0, failed = 0;
    for (int K = 1; K <= 20; ++K) {
        for (int k = 1; k <= K; ++k) {
            const auto f = make_lower_bound_instance(K, k);
            const double peak = (static_cast<double>(k) - 0.5) / static_cast<double>(K);
            const MaxPoint mp = f.max_value();
            ++checked;
            if (!check_lipschitz(f, 1.0) || !check_quasiconcave(f) || mp.x != peak ||
                mp.value != peak) {
                ++failed;
            }
        }
    }
    std::ostringstream os;
    os << checked << " instances (K <= 20): Lipschitz(1), quasiconcave, exact maximum; "
       << failed << " failures";
    return {failed == 0, os.str()};
}

// --- criterion 7: zero-noise trajectories equal the brute-force trace -------

std::pair<bool, std::string> criterion_zero_noise_oracle() {
    std::vector<std::pair<std::string, PiecewiseLinearFunction>> instances;
    const auto pair = make_prop1_pair();
    instances.emplace_back("prop1:1", pair.first);
    instances.emplace_back("prop1:2", pair.second);
    for (int K = 2; K <= 6; ++K) {
        for (int k = 1; k <= K; ++k) {
            instances.emplace_back("lower-bound:" + std::to_string(K) + ":" + std::to_string(k),
                                   make_lower_bound_instance(K, k));
        }
    }

    int compared = 0, mismatched = 0;
    for (const std::int64_t T : {256, 1000}) {
        const EscalationParams params = escalation_params(T);
        for (const auto& [name, f] : instances) {
            EscalationPolicy policy;
            const auto record = run_episode(policy, f, NoiseModel(0.0), T, 55, name);
            const auto expected = oracle::escalation_arms_zero_noise(
                f, T, params.grid_size, params.batch_size, 0.0);
            ++compared;
            if (record.trajectory.arms != expected) ++mismatched;
        }
    }
    std::ostringstream os;
    os << compared << " trajectories compared period by period, " << mismatched
       << " mismatches";
    return {mismatched == 0, os.str()};
}

// --- criterion 8: byte-identical artifacts across runs and pool sizes -------

std::pair<bool, std::string> criterion_determinism() {
    const std::string cli = MONOBANDIT_CLI_PATH;
    const auto dir = std::filesystem::temp_directory_path() /
                     ("monobandit-accept-" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);

    const auto slurp = [](const std::filesystem::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };

    std::vector<std::string> outputs;
    bool ran_ok = true;
    const int parallelism[4] = {1, 1, 8, 8};
    for (int i = 0; i < 4; ++i) {
        const auto out = dir / ("run" + std::to_string(i) + ".csv");
        std::ostringstream cmd;
        cmd << cli << " reproduce-figure3 --horizons 1000,3000 --replications 5 --seed 2718"
            << " --parallelism " << parallelism[i] << " --out " << out.string()
            << " >/dev/null 2>&1";
        const int status = std::system(cmd.str().c_str());
        if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) ran_ok = false;
        outputs.push_back(slurp(out));
    }
    std::error_code ec;
    std::filesystem::remove_all(dir, ec);

    bool identical = ran_ok && !outputs[0].empty();
    for (int i = 1; i < 4; ++i) {
        if (outputs[i] != outputs[0]) identical = false;
    }
    std::ostringstream os;
    os << "reproduce-figure3 (reduced) twice at parallelism 1 and twice at 8: "
       << (ran_ok ? "all runs exited 0, " : "a run failed, ")
       << (identical ? "4 byte-identical CSVs" : "outputs differ");
    return {identical, os.str()};
}

}  // namespace

int main() {
    std::cout << "acceptance suite (reduced-scale, fixed seeds)\n";

    run_criterion(1, "monotone arm sequences", criterion_monotonicity);

    MonteCarloResult ordering;
    bool ordering_ok = false;
    try {
        ordering = ordering_run();
        ordering_ok = true;
    } catch (const std::exception& e) {
        report(2, "benchmark ordering", false, std::string("exception: ") + e.what());
        report(3, "regret ceiling", false, "skipped: shared run failed");
    }
    if (ordering_ok) {
        run_criterion(2, "benchmark ordering", [&] { return criterion_ordering(ordering); });
        run_criterion(3, "regret ceiling", [&] { return criterion_ceiling(ordering); });
    }

    run_criterion(4, "rate separation", criterion_rates);
    run_criterion(5, "indistinguishable-pair bound", criterion_pair_bound);
    run_criterion(6, "hard-instance family", criterion_lower_bound_family);
    run_criterion(7, "zero-noise trace equivalence", criterion_zero_noise_oracle);
    run_criterion(8, "artifact determinism", criterion_determinism);

    std::cout << (8 - failures) << "/8 criteria passed\n";
    return failures;
}
