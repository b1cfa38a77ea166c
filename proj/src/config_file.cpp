#include "monobandit/config_file.hpp"

#include <charconv>
#include <fstream>

#include "monobandit/format.hpp"

namespace monobandit {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::int64_t parse_int(const std::string& text, const std::string& what) {
    std::int64_t v = 0;
    const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
    if (r.ec != std::errc{} || r.ptr != text.data() + text.size()) {
        throw ConfigError("bad " + what + ": '" + text + "'");
    }
    return v;
}

}  // namespace

std::vector<std::int64_t> parse_horizon_list(const std::string& text) {
    std::vector<std::int64_t> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t pos = text.find(',', start);
        if (pos == std::string::npos) pos = text.size();
        const std::string tok = trim(text.substr(start, pos - start));
        if (!tok.empty()) {
            out.push_back(parse_int(tok, "horizon"));
        }
        start = pos + 1;
    }
    if (out.empty()) {
        throw ConfigError("empty horizon list: '" + text + "'");
    }
    return out;
}

std::vector<std::string> parse_name_list(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t pos = text.find(',', start);
        if (pos == std::string::npos) pos = text.size();
        const std::string tok = trim(text.substr(start, pos - start));
        if (!tok.empty()) {
            out.push_back(tok);
        }
        start = pos + 1;
    }
    if (out.empty()) {
        throw ConfigError("empty name list: '" + text + "'");
    }
    return out;
}

ConfigFile ConfigFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config not found: " + path);
    }
    ConfigFile file;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        const std::string stripped = trim(line);
        if (stripped.empty()) {
            continue;
        }
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path + ":" + std::to_string(line_no) +
                              ": expected 'key = value'");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError(path + ":" + std::to_string(line_no) +
                              ": expected 'key = value'");
        }
        file.entries.emplace_back(key, value);
    }
    return file;
}

void ConfigFile::apply(ExperimentConfig& config, std::string& out_path) const {
    for (const auto& [key, value] : entries) {
        if (key == "horizons") {
            config.horizons = parse_horizon_list(value);
        } else if (key == "replications") {
            config.replications = static_cast<int>(parse_int(value, "replications"));
        } else if (key == "sigma") {
            try {
                config.sigma = parse_number(value, "sigma");
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
        } else if (key == "seed") {
            config.master_seed = static_cast<std::uint64_t>(parse_int(value, "seed"));
        } else if (key == "policies") {
            config.policies = parse_name_list(value);
        } else if (key == "instance") {
            try {
                config.instance = InstanceSpec::parse(value);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
        } else if (key == "parallelism") {
            config.parallelism = static_cast<int>(parse_int(value, "parallelism"));
        } else if (key == "grid-size") {
            config.policy_overrides.grid_size = static_cast<int>(parse_int(value, "grid-size"));
        } else if (key == "batch-size") {
            config.policy_overrides.batch_size =
                static_cast<int>(parse_int(value, "batch-size"));
        } else if (key == "out") {
            out_path = value;
        } else {
            throw ConfigError("unknown config key: '" + key + "'");
        }
    }
}

}  // namespace monobandit
