#pragma once

#include <cmath>
#include <cstdint>

namespace monobandit {

// Largest r >= 0 with r^p <= n. Exact integer arithmetic; the float estimate
// only picks the starting point.
inline std::int64_t floor_root(std::int64_t n, int p) {
    const auto pow_le = [n, p](std::int64_t r) {
        std::int64_t acc = 1;
        for (int i = 0; i < p; ++i) {
            if (r != 0 && acc > n / r) return false;
            acc *= r;
        }
        return acc <= n;
    };
    std::int64_t r = std::llround(std::pow(static_cast<double>(n), 1.0 / p));
    if (r < 0) r = 0;
    while (r > 0 && !pow_le(r)) --r;
    while (pow_le(r + 1)) ++r;
    return r;
}

}  // namespace monobandit
