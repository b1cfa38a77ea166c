#include "monobandit/policy.hpp"

#include <cstdlib>
#include <stdexcept>

#include "monobandit/escalation.hpp"
#include "monobandit/ucb.hpp"

namespace monobandit {

FixedArmPolicy::FixedArmPolicy(double arm, std::string name)
    : arm_(arm), name_(std::move(name)) {
    if (!(arm >= 0.0 && arm <= 1.0)) {
        throw std::invalid_argument("fixed arm must lie in [0,1]");
    }
}

void FixedArmPolicy::reset(std::int64_t /*horizon*/, double /*sigma*/, std::uint64_t /*seed*/) {}

std::unique_ptr<Policy> make_policy(std::string_view name, const PolicyOverrides& overrides) {
    if (name == "alg1") {
        return std::make_unique<EscalationPolicy>(overrides);
    }
    if (name == "ucb") {
        return std::make_unique<UcbPolicy>(UcbVariant::Plain, overrides);
    }
    if (name == "ucb-mono") {
        return std::make_unique<UcbPolicy>(UcbVariant::Monotone, overrides);
    }
    if (name == "ucb-deflate") {
        return std::make_unique<UcbPolicy>(UcbVariant::Deflating, overrides);
    }
    if (name.rfind("fixed:", 0) == 0) {
        char* end = nullptr;
        const std::string arm_text(name.substr(6));
        const double arm = std::strtod(arm_text.c_str(), &end);
        if (end == arm_text.c_str() || *end != '\0') {
            throw std::invalid_argument("bad fixed arm: '" + arm_text + "'");
        }
        return std::make_unique<FixedArmPolicy>(arm, std::string(name));
    }
    throw std::invalid_argument("unknown policy: '" + std::string(name) + "'");
}

}  // namespace monobandit
