#include "monobandit/format.hpp"

#include <array>
#include <charconv>
#include <stdexcept>
#include <system_error>

namespace monobandit {

std::string format_number(double v) {
    std::array<char, 64> buf;
    const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (result.ec != std::errc{}) {
        throw std::runtime_error("format_number failed");
    }
    return std::string(buf.data(), result.ptr);
}

double parse_number(std::string_view token, std::string_view context) {
    double v = 0.0;
    const auto result = std::from_chars(token.data(), token.data() + token.size(), v);
    if (result.ec != std::errc{} || result.ptr != token.data() + token.size()) {
        throw std::invalid_argument(std::string(context) + ": not a number: '" +
                                    std::string(token) + "'");
    }
    return v;
}

}  // namespace monobandit
