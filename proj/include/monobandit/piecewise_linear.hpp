#pragma once

#include <utility>
#include <vector>

namespace monobandit {

struct Breakpoint {
    double x;
    double y;
};

struct MaxPoint {
    double x;
    double value;
};

// Objective function f: [0,1] -> [0,1] as exact linear interpolation through
// ordered breakpoints. Invariants, enforced at construction:
//   - x coordinates strictly increasing, first x = 0, last x = 1
//   - all y values in [0, 1]
class PiecewiseLinearFunction {
public:
    explicit PiecewiseLinearFunction(std::vector<Breakpoint> points);

    // Exact at breakpoints, linear interpolation between them.
    // x outside [0,1] is a domain error.
    double eval(double x) const;

    // Maximum over breakpoints (exact for piecewise-linear f).
    // Ties break toward the smallest x.
    MaxPoint max_value() const;

    const std::vector<Breakpoint>& breakpoints() const { return points_; }

private:
    std::vector<Breakpoint> points_;
};

// True iff every segment's absolute slope is <= c. Sufficient and necessary
// for piecewise-linear f. A tiny tolerance absorbs breakpoint rounding.
bool check_lipschitz(const PiecewiseLinearFunction& f, double c);

// True iff the breakpoint y-sequence is weakly unimodal (no rise after a
// fall), which for piecewise-linear f is equivalent to quasiconcavity.
bool check_quasiconcave(const PiecewiseLinearFunction& f);

}  // namespace monobandit
