#pragma once

#include <string>
#include <utility>
#include <vector>

#include "monobandit/experiment.hpp"

namespace monobandit {

// Plain `key = value` config files; '#' starts a comment. Recognized keys:
// horizons, replications, sigma, seed, policies, instance, out, parallelism,
// grid-size, batch-size. Values use the same formats as the CLI flags (lists
// comma-separated).
struct ConfigFile {
    std::vector<std::pair<std::string, std::string>> entries;

    // Parse errors and unreadable files throw ConfigError.
    static ConfigFile load(const std::string& path);

    // Applies the recognized keys over `config`; `out_path` receives the
    // `out` key if present. Unknown keys are ConfigErrors.
    void apply(ExperimentConfig& config, std::string& out_path) const;
};

// Shared list parsers (also used for CLI flag values).
std::vector<std::int64_t> parse_horizon_list(const std::string& text);
std::vector<std::string> parse_name_list(const std::string& text);

}  // namespace monobandit
