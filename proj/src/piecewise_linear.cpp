#include "monobandit/piecewise_linear.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace monobandit {

namespace {
// Absorbs rounding in breakpoint coordinates when slopes are compared
// against a claimed Lipschitz constant.
constexpr double kSlopeTolerance = 1e-9;
}  // namespace

PiecewiseLinearFunction::PiecewiseLinearFunction(std::vector<Breakpoint> points)
    : points_(std::move(points)) {
    if (points_.size() < 2) {
        throw std::invalid_argument("piecewise-linear function needs at least 2 breakpoints");
    }
    if (points_.front().x != 0.0) {
        throw std::invalid_argument("first breakpoint must be at x = 0");
    }
    if (points_.back().x != 1.0) {
        throw std::invalid_argument("last breakpoint must be at x = 1");
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const auto& p = points_[i];
        if (!(p.y >= 0.0 && p.y <= 1.0)) {
            throw std::invalid_argument("breakpoint y out of [0,1]: " + std::to_string(p.y));
        }
        if (i > 0 && !(points_[i - 1].x < p.x)) {
            throw std::invalid_argument("breakpoint x coordinates must be strictly increasing");
        }
    }
}

double PiecewiseLinearFunction::eval(double x) const {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::domain_error("eval: x outside [0,1]: " + std::to_string(x));
    }
    auto it = std::lower_bound(points_.begin(), points_.end(), x,
                               [](const Breakpoint& p, double v) { return p.x < v; });
    if (it != points_.end() && it->x == x) {
        return it->y;  // breakpoint hit, exact
    }
    const Breakpoint& hi = *it;
    const Breakpoint& lo = *(it - 1);
    const double t = (x - lo.x) / (hi.x - lo.x);
    return lo.y + t * (hi.y - lo.y);
}

MaxPoint PiecewiseLinearFunction::max_value() const {
    MaxPoint best{points_.front().x, points_.front().y};
    for (const auto& p : points_) {
        if (p.y > best.value) {
            best = {p.x, p.y};
        }
    }
    return best;
}

bool check_lipschitz(const PiecewiseLinearFunction& f, double c) {
    const auto& pts = f.breakpoints();
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const double slope = (pts[i].y - pts[i - 1].y) / (pts[i].x - pts[i - 1].x);
        if (std::abs(slope) > c + kSlopeTolerance) {
            return false;
        }
    }
    return true;
}

bool check_quasiconcave(const PiecewiseLinearFunction& f) {
    const auto& pts = f.breakpoints();
    bool seen_fall = false;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (pts[i].y < pts[i - 1].y) {
            seen_fall = true;
        } else if (pts[i].y > pts[i - 1].y && seen_fall) {
            return false;
        }
    }
    return true;
}

}  // namespace monobandit
