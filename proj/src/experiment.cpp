#include "monobandit/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "monobandit/episode.hpp"
#include "monobandit/format.hpp"
#include "monobandit/parallel.hpp"
#include "monobandit/policy.hpp"
#include "monobandit/rng.hpp"

namespace monobandit {

namespace {

// Stream id separating instance draws from episode seeds.
const std::uint64_t kInstanceStream = fnv1a64("instance");

bool known_policy_name(const std::string& name) {
    if (name == "alg1" || name == "ucb" || name == "ucb-mono" || name == "ucb-deflate" ||
        name == "oracle") {
        return true;
    }
    return name.rfind("fixed:", 0) == 0;
}

std::unique_ptr<Policy> instantiate(const std::string& name, const PiecewiseLinearFunction& f,
                                    const PolicyOverrides& overrides) {
    if (name == "oracle") {
        return std::make_unique<FixedArmPolicy>(f.max_value().x, "oracle");
    }
    return make_policy(name, overrides);
}

}  // namespace

void ExperimentConfig::validate() const {
    if (horizons.empty()) {
        throw ConfigError("no horizons configured");
    }
    if (replications < 1) {
        throw ConfigError("replications must be >= 1");
    }
    if (!(sigma >= 0.0)) {
        throw ConfigError("sigma must be >= 0");
    }
    if (policies.empty()) {
        throw ConfigError("no policies configured");
    }
    for (const auto& name : policies) {
        if (!known_policy_name(name)) {
            throw ConfigError("unknown policy: '" + name + "'");
        }
    }
    if ((policy_overrides.grid_size && *policy_overrides.grid_size < 1) ||
        (policy_overrides.batch_size && *policy_overrides.batch_size < 1)) {
        throw ConfigError("policy overrides must be >= 1");
    }
    const bool has_alg1 =
        std::find(policies.begin(), policies.end(), "alg1") != policies.end();
    for (const std::int64_t T : horizons) {
        if (T < 1) {
            throw ConfigError("horizon must be >= 1, got " + std::to_string(T));
        }
        if (has_alg1 && T < 16) {
            throw ConfigError("alg1 requires every horizon >= 16, got " + std::to_string(T));
        }
    }
}

int RegretTable::policy_index(std::string_view policy) const {
    for (std::size_t i = 0; i < policies.size(); ++i) {
        if (policies[i] == policy) return static_cast<int>(i);
    }
    return -1;
}

int RegretTable::horizon_index(std::int64_t horizon) const {
    for (std::size_t i = 0; i < horizons.size(); ++i) {
        if (horizons[i] == horizon) return static_cast<int>(i);
    }
    return -1;
}

double RegretTable::mean(std::int64_t horizon, std::string_view policy) const {
    const int h = horizon_index(horizon);
    const int p = policy_index(policy);
    if (h < 0 || p < 0) {
        throw std::out_of_range("regret table has no cell for the requested horizon/policy");
    }
    return mean_regret[h][p];
}

double RegretTable::stderr_of(std::int64_t horizon, std::string_view policy) const {
    const int h = horizon_index(horizon);
    const int p = policy_index(policy);
    if (h < 0 || p < 0) {
        throw std::out_of_range("regret table has no cell for the requested horizon/policy");
    }
    return std_error[h][p];
}

MonteCarloResult monte_carlo(const ExperimentConfig& config) {
    config.validate();

    const std::size_t n_horizons = config.horizons.size();
    const std::size_t n_policies = config.policies.size();
    const std::size_t reps = static_cast<std::size_t>(config.replications);
    const NoiseModel noise(config.sigma);

    // One cell per (horizon, replication); filled independently, reduced in
    // fixed order afterwards so results do not depend on scheduling.
    struct Cell {
        double lipschitz = 0.0;
        std::vector<double> regret;
        std::vector<EpisodeSummary> episodes;
    };
    std::vector<Cell> cells(n_horizons * reps);

    std::vector<std::uint64_t> policy_stream_ids(n_policies);
    for (std::size_t p = 0; p < n_policies; ++p) {
        policy_stream_ids[p] = fnv1a64(config.policies[p]);
    }

    parallel_for(cells.size(), config.parallelism, [&](std::size_t idx) {
        const std::size_t h = idx / reps;
        const std::size_t r = idx % reps;
        const std::int64_t T = config.horizons[h];

        Rng instance_rng(stream_seed(config.master_seed,
                                     {static_cast<std::uint64_t>(T), r, kInstanceStream}));
        const DrawnInstance drawn = config.instance.draw(instance_rng);

        Cell& cell = cells[idx];
        cell.lipschitz = drawn.lipschitz_c;
        cell.regret.resize(n_policies);
        cell.episodes.reserve(n_policies);
        for (std::size_t p = 0; p < n_policies; ++p) {
            const std::uint64_t seed = stream_seed(
                config.master_seed, {static_cast<std::uint64_t>(T), r, policy_stream_ids[p]});
            auto policy =
                instantiate(config.policies[p], drawn.f, config.policy_overrides);
            const RunRecord record =
                run_episode(*policy, drawn.f, noise, T, seed, config.instance.name());
            cell.regret[p] = record.regret;
            cell.episodes.push_back(summarize(record));
        }
    });

    MonteCarloResult result;
    result.table.horizons = config.horizons;
    result.table.policies = config.policies;
    result.table.mean_regret.assign(n_horizons, std::vector<double>(n_policies, 0.0));
    result.table.std_error.assign(n_horizons, std::vector<double>(n_policies, 0.0));
    result.max_lipschitz.assign(n_horizons, 0.0);
    result.ceiling_exceedances.assign(n_horizons, 0);

    const int alg1_col = result.table.policy_index("alg1");
    for (std::size_t h = 0; h < n_horizons; ++h) {
        const std::int64_t T = config.horizons[h];
        for (std::size_t p = 0; p < n_policies; ++p) {
            double sum = 0.0;
            for (std::size_t r = 0; r < reps; ++r) {
                sum += cells[h * reps + r].regret[p];
            }
            const double mean = sum / static_cast<double>(reps);
            result.table.mean_regret[h][p] = mean;
            if (reps > 1) {
                double sq = 0.0;
                for (std::size_t r = 0; r < reps; ++r) {
                    const double d = cells[h * reps + r].regret[p] - mean;
                    sq += d * d;
                }
                result.table.std_error[h][p] =
                    std::sqrt(sq / static_cast<double>(reps - 1)) /
                    std::sqrt(static_cast<double>(reps));
            }
        }
        for (std::size_t r = 0; r < reps; ++r) {
            const Cell& cell = cells[h * reps + r];
            result.max_lipschitz[h] = std::max(result.max_lipschitz[h], cell.lipschitz);
            if (alg1_col >= 0 && T >= 16 &&
                cell.regret[alg1_col] > escalation_regret_ceiling(T, cell.lipschitz, config.sigma)) {
                result.ceiling_exceedances[h] += 1;
            }
        }
    }
    result.episodes.reserve(cells.size() * n_policies);
    for (Cell& cell : cells) {
        for (EpisodeSummary& episode : cell.episodes) {
            result.episodes.push_back(std::move(episode));
        }
    }
    return result;
}

void write_episode_log(const std::vector<EpisodeSummary>& episodes, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    for (const auto& episode : episodes) {
        out << to_log_line(episode) << '\n';
    }
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

double escalation_regret_ceiling(std::int64_t horizon, double lipschitz_c, double sigma) {
    if (horizon < 16) {
        throw std::invalid_argument("regret ceiling is stated for horizons >= 16");
    }
    const double T = static_cast<double>(horizon);
    return (3.0 * lipschitz_c + 5.5 + 4.0 * std::sqrt(3.0) * sigma * std::sqrt(std::log(T))) *
           std::pow(T, 0.75);
}

ScalingFit fit_scaling_exponent(const RegretTable& table, std::string_view policy) {
    const int p = table.policy_index(policy);
    if (p < 0) {
        throw std::invalid_argument("policy not in table: '" + std::string(policy) + "'");
    }
    ScalingFit fit;
    std::vector<double> xs, ys;
    for (std::size_t h = 0; h < table.horizons.size(); ++h) {
        const double mean = table.mean_regret[h][p];
        if (mean > 0.0) {
            xs.push_back(std::log(static_cast<double>(table.horizons[h])));
            ys.push_back(std::log(mean));
        } else {
            ++fit.points_excluded;
        }
    }
    if (xs.size() < 3) {
        throw std::runtime_error("scaling fit needs >= 3 horizons with positive mean regret");
    }
    const double n = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.points_used = static_cast<int>(xs.size());
    return fit;
}

// ---------------------------------------------------------------------------
// CSV in the fixed data.csv schema

namespace {

std::vector<int> benchmark_policy_columns(const RegretTable& table) {
    if (table.policies.size() != kBenchmarkPolicies.size()) {
        throw std::invalid_argument(
            "csv schema requires exactly the four benchmark policies (alg1, ucb, ucb-mono, "
            "ucb-deflate)");
    }
    std::vector<int> cols;
    cols.reserve(kBenchmarkPolicies.size());
    for (const auto name : kBenchmarkPolicies) {
        const int p = table.policy_index(name);
        if (p < 0) {
            throw std::invalid_argument("csv schema requires policy '" + std::string(name) +
                                        "' in the table");
        }
        cols.push_back(p);
    }
    return cols;
}

}  // namespace

std::string to_csv(const RegretTable& table) {
    const std::vector<int> cols = benchmark_policy_columns(table);
    std::ostringstream os;
    os << kCsvHeader << '\n';
    for (std::size_t h = 0; h < table.horizons.size(); ++h) {
        os << table.horizons[h];
        for (const int p : cols) {
            os << ',' << format_number(table.mean_regret[h][p]);
        }
        os << '\n';
    }
    return os.str();
}

RegretTable parse_csv(std::istream& in, std::string_view source_name) {
    const auto fail = [&source_name](int line_no, const std::string& why) -> void {
        throw ConfigError(std::string(source_name) + ":" + std::to_string(line_no) + ": " + why);
    };

    RegretTable table;
    table.policies.assign(kBenchmarkPolicies.begin(), kBenchmarkPolicies.end());

    std::string line;
    int line_no = 0;
    if (!std::getline(in, line)) {
        fail(1, "empty file");
    }
    ++line_no;
    if (line != kCsvHeader) {
        fail(line_no, "expected header '" + std::string(kCsvHeader) + "'");
    }
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            const std::size_t pos = line.find(',', start);
            if (pos == std::string::npos) {
                fields.push_back(line.substr(start));
                break;
            }
            fields.push_back(line.substr(start, pos - start));
            start = pos + 1;
        }
        if (fields.size() != 5) {
            fail(line_no, "expected 5 comma-separated fields, got " +
                              std::to_string(fields.size()));
        }
        std::int64_t T = 0;
        const auto ec = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), T);
        if (ec.ec != std::errc{} || ec.ptr != fields[0].data() + fields[0].size()) {
            fail(line_no, "bad horizon: '" + fields[0] + "'");
        }
        std::vector<double> row(4, 0.0);
        for (int i = 0; i < 4; ++i) {
            try {
                row[i] = parse_number(fields[i + 1], "field");
            } catch (const std::exception&) {
                fail(line_no, "bad value: '" + fields[i + 1] + "'");
            }
        }
        table.horizons.push_back(T);
        table.mean_regret.push_back(std::move(row));
        table.std_error.emplace_back(4, 0.0);
    }
    return table;
}

void write_csv(const RegretTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    out << to_csv(table);
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

RegretTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open csv: " + path);
    }
    return parse_csv(in, path);
}

// ---------------------------------------------------------------------------
// Checkpointed runs

namespace {

std::string config_fingerprint(const ExperimentConfig& config) {
    std::ostringstream os;
    for (const auto T : config.horizons) os << T << ';';
    os << '|' << config.replications << '|' << format_number(config.sigma) << '|'
       << config.master_seed << '|';
    for (const auto& p : config.policies) os << p << ';';
    os << '|' << config.instance.name() << '|'
       << config.policy_overrides.grid_size.value_or(0) << ','
       << config.policy_overrides.batch_size.value_or(0);
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(os.str())));
    return buf;
}

struct CheckpointRow {
    double max_lipschitz = 0.0;
    std::int64_t ceiling_exceedances = 0;
    std::vector<double> means;
    std::vector<double> std_errors;
};

// Format: "fingerprint <hex>" then per finished horizon one line of
// space-separated fields: T lip exceed mean0 se0 mean1 se1 ...
std::map<std::int64_t, CheckpointRow> load_checkpoint(const std::string& path,
                                                      const std::string& fingerprint,
                                                      std::size_t n_policies) {
    std::map<std::int64_t, CheckpointRow> rows;
    std::ifstream in(path);
    if (!in) {
        return rows;
    }
    std::string tag, fp;
    if (!(in >> tag >> fp) || tag != "fingerprint" || fp != fingerprint) {
        return rows;  // stale or foreign checkpoint: recompute everything
    }
    std::int64_t T = 0;
    while (in >> T) {
        CheckpointRow row;
        std::string lip_text;
        if (!(in >> lip_text >> row.ceiling_exceedances)) return {};
        row.max_lipschitz = parse_number(lip_text, "checkpoint");
        row.means.resize(n_policies);
        row.std_errors.resize(n_policies);
        for (std::size_t p = 0; p < n_policies; ++p) {
            std::string mean_text, se_text;
            if (!(in >> mean_text >> se_text)) return {};
            row.means[p] = parse_number(mean_text, "checkpoint");
            row.std_errors[p] = parse_number(se_text, "checkpoint");
        }
        rows[T] = std::move(row);
    }
    return rows;
}

void save_checkpoint(const std::string& path, const std::string& fingerprint,
                     const std::map<std::int64_t, CheckpointRow>& rows) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) {
            throw std::runtime_error("cannot write checkpoint: " + tmp);
        }
        out << "fingerprint " << fingerprint << '\n';
        for (const auto& [T, row] : rows) {
            out << T << ' ' << format_number(row.max_lipschitz) << ' '
                << row.ceiling_exceedances;
            for (std::size_t p = 0; p < row.means.size(); ++p) {
                out << ' ' << format_number(row.means[p]) << ' '
                    << format_number(row.std_errors[p]);
            }
            out << '\n';
        }
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace

MonteCarloResult monte_carlo_checkpointed(const ExperimentConfig& config,
                                          const std::string& checkpoint_path,
                                          std::ostream* progress) {
    config.validate();
    const std::string fingerprint = config_fingerprint(config);
    const std::size_t n_policies = config.policies.size();
    auto rows = load_checkpoint(checkpoint_path, fingerprint, n_policies);

    for (const std::int64_t T : config.horizons) {
        if (rows.count(T)) {
            if (progress) {
                *progress << "horizon " << T << ": restored from checkpoint\n";
            }
            continue;
        }
        ExperimentConfig sub = config;
        sub.horizons = {T};
        // Episode seeds depend on (master seed, T, replication, policy) only,
        // so a single-horizon run reproduces the corresponding slice of the
        // full grid exactly.
        const MonteCarloResult piece = monte_carlo(sub);
        CheckpointRow row;
        row.max_lipschitz = piece.max_lipschitz[0];
        row.ceiling_exceedances = piece.ceiling_exceedances[0];
        row.means = piece.table.mean_regret[0];
        row.std_errors = piece.table.std_error[0];
        rows[T] = std::move(row);
        save_checkpoint(checkpoint_path, fingerprint, rows);
        if (progress) {
            *progress << "horizon " << T << ": done (" << config.replications
                      << " replications)\n";
        }
    }

    MonteCarloResult result;
    result.table.horizons = config.horizons;
    result.table.policies = config.policies;
    for (const std::int64_t T : config.horizons) {
        const CheckpointRow& row = rows.at(T);
        result.table.mean_regret.push_back(row.means);
        result.table.std_error.push_back(row.std_errors);
        result.max_lipschitz.push_back(row.max_lipschitz);
        result.ceiling_exceedances.push_back(row.ceiling_exceedances);
    }
    return result;
}

std::string summary_text(const MonteCarloResult& result) {
    const RegretTable& table = result.table;
    std::ostringstream os;
    os << std::left << std::setw(10) << "T";
    for (const auto& p : table.policies) {
        os << std::setw(22) << p;
    }
    os << '\n';
    os << std::fixed << std::setprecision(3);
    for (std::size_t h = 0; h < table.horizons.size(); ++h) {
        os << std::left << std::setw(10) << table.horizons[h];
        for (std::size_t p = 0; p < table.policies.size(); ++p) {
            std::ostringstream cell;
            cell << std::fixed << std::setprecision(3) << table.mean_regret[h][p] << " ("
                 << table.std_error[h][p] << ")";
            os << std::setw(22) << cell.str();
        }
        os << '\n';
    }
    if (table.policy_index("alg1") >= 0) {
        os << "max instance Lipschitz constant per horizon:";
        for (const double c : result.max_lipschitz) {
            os << ' ' << std::setprecision(3) << c;
        }
        os << '\n';
        std::int64_t exceed = 0;
        for (const auto e : result.ceiling_exceedances) exceed += e;
        if (exceed > 0) {
            os << "note: " << exceed
               << " alg1 episode(s) above the per-instance regret ceiling\n";
        }
    }
    return os.str();
}

}  // namespace monobandit
