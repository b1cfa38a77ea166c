#pragma once

#include <string>
#include <string_view>

namespace monobandit {

// Shortest round-trip decimal form of v (std::to_chars). write/parse/write is
// byte-stable, which the deterministic CSV outputs rely on.
std::string format_number(double v);

// Strict double parse of the whole token; `context` names the caller in the
// error message.
double parse_number(std::string_view token, std::string_view context);

}  // namespace monobandit
