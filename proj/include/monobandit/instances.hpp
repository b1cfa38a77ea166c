#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "monobandit/piecewise_linear.hpp"
#include "monobandit/rng.hpp"

namespace monobandit {

// Gaussian reward noise. sigma = 0 yields deterministic rewards.
struct NoiseModel {
    double sigma = 0.0;

    NoiseModel() = default;
    explicit NoiseModel(double s);
};

// f(x) + sigma * g with g standard normal; conditional mean is exactly f(x).
double sample_reward(const PiecewiseLinearFunction& f, double x, const NoiseModel& noise,
                     Rng& rng);

// Tent through (0,0), (x1,x2), (1,0) with x1 ~ U(0,1) and x2 ~ U(0.5,1).
// A degenerate draw (x1 in {0,1}) collapses to two breakpoints.
PiecewiseLinearFunction make_random_peak_instance(Rng& rng);
PiecewiseLinearFunction make_random_peak_instance(double x1, double x2);

// Exact Lipschitz constant of the tent above: max(x2/x1, x2/(1-x1)).
double random_peak_lipschitz(double x1, double x2);

// Hard-instance family: f_k(x) = x for x < (k-1/2)/K, max{(2k-1)/K - x, 0}
// otherwise. Maximum (k-1/2)/K attained at x = (k-1/2)/K. Requires 1 <= k <= K.
PiecewiseLinearFunction make_lower_bound_instance(int K, int k);

// The indistinguishable-prefix pair: f1 is a tent peaking at (0.25, 0.5),
// f2 agrees with f1 on [0, 0.5] and adds a second peak at (0.75, 1).
std::pair<PiecewiseLinearFunction, PiecewiseLinearFunction> make_prop1_pair();

enum class InstanceFamily { RandomPeak, LowerBound, Prop1, Explicit };

struct DrawnInstance {
    PiecewiseLinearFunction f;
    double lipschitz_c;  // exact constant of the drawn function
};

// A nameable instance family. Config strings:
//   random-peak | lower-bound:K:k | prop1:1 | prop1:2 | explicit:x,y;x,y;...
struct InstanceSpec {
    InstanceFamily family = InstanceFamily::RandomPeak;
    int lb_grid = 0;     // K of lower-bound:K:k
    int lb_index = 0;    // k of lower-bound:K:k
    int prop1_member = 0;
    std::vector<Breakpoint> explicit_points;

    static InstanceSpec parse(std::string_view text);
    std::string name() const;

    // rng is consumed only by the random-peak family.
    DrawnInstance draw(Rng& rng) const;
};

}  // namespace monobandit
