#include "skflt/step_path.hpp"

#include <algorithm>
#include <stdexcept>

namespace skflt {

StepPath StepPath::make(double initial_value, std::vector<double> times,
                        std::vector<double> values) {
    if (times.size() != values.size())
        throw std::invalid_argument("StepPath: times and values must have equal length");
    double prev = 0.0;
    for (double t : times) {
        if (!(t > prev && t <= 1.0))
            throw std::invalid_argument("StepPath: times must be strictly increasing in (0,1]");
        prev = t;
    }
    return StepPath{initial_value, std::move(times), std::move(values)};
}

double StepPath::value_at(double t) const {
    // last jump time <= t
    auto it = std::upper_bound(times.begin(), times.end(), t);
    if (it == times.begin()) return initial_value;
    return values[static_cast<std::size_t>(it - times.begin()) - 1];
}

}  // namespace skflt
