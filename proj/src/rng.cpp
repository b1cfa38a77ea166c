#include "monobandit/rng.hpp"

#include <cmath>
#include <numbers>

namespace monobandit {

double Rng::next_normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = next_unit();
    while (u1 <= 0.0) {
        u1 = next_unit();
    }
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * next_unit();
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

}  // namespace monobandit
