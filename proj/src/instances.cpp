#include "monobandit/instances.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace monobandit {

NoiseModel::NoiseModel(double s) : sigma(s) {
    if (!(s >= 0.0)) {
        throw std::invalid_argument("noise sigma must be >= 0");
    }
}

double sample_reward(const PiecewiseLinearFunction& f, double x, const NoiseModel& noise,
                     Rng& rng) {
    return f.eval(x) + noise.sigma * rng.next_normal();
}

PiecewiseLinearFunction make_random_peak_instance(Rng& rng) {
    const double x1 = rng.next_uniform(0.0, 1.0);
    const double x2 = rng.next_uniform(0.5, 1.0);
    return make_random_peak_instance(x1, x2);
}

PiecewiseLinearFunction make_random_peak_instance(double x1, double x2) {
    if (x1 <= 0.0) {
        return PiecewiseLinearFunction({{0.0, x2}, {1.0, 0.0}});
    }
    if (x1 >= 1.0) {
        return PiecewiseLinearFunction({{0.0, 0.0}, {1.0, x2}});
    }
    return PiecewiseLinearFunction({{0.0, 0.0}, {x1, x2}, {1.0, 0.0}});
}

double random_peak_lipschitz(double x1, double x2) {
    if (x1 <= 0.0) return x2;  // single descending segment
    if (x1 >= 1.0) return x2;
    return std::max(x2 / x1, x2 / (1.0 - x1));
}

PiecewiseLinearFunction make_lower_bound_instance(int K, int k) {
    if (K < 1 || k < 1 || k > K) {
        throw std::invalid_argument("lower-bound instance requires 1 <= k <= K");
    }
    const double peak = (static_cast<double>(k) - 0.5) / static_cast<double>(K);
    const double zero_at = (2.0 * static_cast<double>(k) - 1.0) / static_cast<double>(K);
    std::vector<Breakpoint> pts;
    pts.push_back({0.0, 0.0});
    pts.push_back({peak, peak});
    if (zero_at < 1.0) {
        pts.push_back({zero_at, 0.0});
        pts.push_back({1.0, 0.0});
    } else {
        pts.push_back({1.0, zero_at - 1.0});
    }
    return PiecewiseLinearFunction(std::move(pts));
}

std::pair<PiecewiseLinearFunction, PiecewiseLinearFunction> make_prop1_pair() {
    PiecewiseLinearFunction f1({{0.0, 0.0}, {0.25, 0.5}, {0.5, 0.0}, {1.0, 0.0}});
    PiecewiseLinearFunction f2(
        {{0.0, 0.0}, {0.25, 0.5}, {0.5, 0.0}, {0.75, 1.0}, {1.0, 0.0}});
    return {std::move(f1), std::move(f2)};
}

namespace {

double max_abs_slope(const std::vector<Breakpoint>& pts) {
    double c = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        c = std::max(c, std::abs((pts[i].y - pts[i - 1].y) / (pts[i].x - pts[i - 1].x)));
    }
    return c;
}

[[noreturn]] void bad_spec(std::string_view text, const std::string& why) {
    throw std::invalid_argument("bad instance spec '" + std::string(text) + "': " + why);
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(s.substr(start));
            return out;
        }
        out.emplace_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

double parse_number(const std::string& tok, std::string_view full) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0') {
        bad_spec(full, "not a number: '" + tok + "'");
    }
    return v;
}

}  // namespace

InstanceSpec InstanceSpec::parse(std::string_view text) {
    InstanceSpec spec;
    if (text == "random-peak") {
        spec.family = InstanceFamily::RandomPeak;
        return spec;
    }
    if (text.rfind("lower-bound:", 0) == 0) {
        const auto parts = split(text.substr(12), ':');
        if (parts.size() != 2) bad_spec(text, "expected lower-bound:K:k");
        spec.family = InstanceFamily::LowerBound;
        spec.lb_grid = std::atoi(parts[0].c_str());
        spec.lb_index = std::atoi(parts[1].c_str());
        if (spec.lb_grid < 1 || spec.lb_index < 1 || spec.lb_index > spec.lb_grid) {
            bad_spec(text, "requires 1 <= k <= K");
        }
        return spec;
    }
    if (text.rfind("prop1:", 0) == 0) {
        spec.family = InstanceFamily::Prop1;
        const std::string which(text.substr(6));
        if (which == "1") {
            spec.prop1_member = 1;
        } else if (which == "2") {
            spec.prop1_member = 2;
        } else {
            bad_spec(text, "member must be 1 or 2");
        }
        return spec;
    }
    if (text.rfind("explicit:", 0) == 0) {
        spec.family = InstanceFamily::Explicit;
        for (const auto& pair : split(text.substr(9), ';')) {
            const auto xy = split(pair, ',');
            if (xy.size() != 2) bad_spec(text, "expected x,y pairs separated by ';'");
            spec.explicit_points.push_back(
                {parse_number(xy[0], text), parse_number(xy[1], text)});
        }
        // Validate eagerly so config errors surface before any episode runs.
        PiecewiseLinearFunction check(spec.explicit_points);
        return spec;
    }
    bad_spec(text, "unknown family");
}

std::string InstanceSpec::name() const {
    switch (family) {
        case InstanceFamily::RandomPeak:
            return "random-peak";
        case InstanceFamily::LowerBound:
            return "lower-bound:" + std::to_string(lb_grid) + ":" + std::to_string(lb_index);
        case InstanceFamily::Prop1:
            return "prop1:" + std::to_string(prop1_member);
        case InstanceFamily::Explicit: {
            std::ostringstream os;
            os << "explicit:";
            for (std::size_t i = 0; i < explicit_points.size(); ++i) {
                if (i) os << ';';
                os << explicit_points[i].x << ',' << explicit_points[i].y;
            }
            return os.str();
        }
    }
    return "?";
}

DrawnInstance InstanceSpec::draw(Rng& rng) const {
    switch (family) {
        case InstanceFamily::RandomPeak: {
            const double x1 = rng.next_uniform(0.0, 1.0);
            const double x2 = rng.next_uniform(0.5, 1.0);
            return {make_random_peak_instance(x1, x2), random_peak_lipschitz(x1, x2)};
        }
        case InstanceFamily::LowerBound:
            return {make_lower_bound_instance(lb_grid, lb_index), 1.0};
        case InstanceFamily::Prop1: {
            auto pair = make_prop1_pair();
            if (prop1_member == 1) {
                return {std::move(pair.first), 2.0};
            }
            return {std::move(pair.second), 4.0};
        }
        case InstanceFamily::Explicit: {
            PiecewiseLinearFunction f(explicit_points);
            const double c = max_abs_slope(f.breakpoints());
            return {std::move(f), c};
        }
    }
    throw std::logic_error("unreachable instance family");
}

}  // namespace monobandit
