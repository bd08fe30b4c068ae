#pragma once

#include <cstddef>
#include <vector>

namespace skflt {

/// Piecewise-constant cadlag path on [0,1]: value initial_value on
/// [0, times[0]), value values[i] on [times[i], times[i+1]), and values.back()
/// from the last jump time through t = 1. Jump times are strictly increasing
/// and lie in (0,1].
struct StepPath {
    double initial_value = 0.0;
    std::vector<double> times;
    std::vector<double> values;

    /// Validates ordering and ranges; throws std::invalid_argument.
    static StepPath make(double initial_value, std::vector<double> times,
                         std::vector<double> values);

    /// Right-continuous evaluation at t in [0,1].
    double value_at(double t) const;

    double value_at_one() const { return values.empty() ? initial_value : values.back(); }

    std::size_t jump_count() const { return times.size(); }
};

}  // namespace skflt
