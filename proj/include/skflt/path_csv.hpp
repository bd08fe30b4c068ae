#pragma once

#include <iosfwd>
#include <string>

#include "skflt/step_path.hpp"

namespace skflt {

/// Path exchange format: header "t,value", then one row per point; the first
/// data row is t = 0 with the initial value, later rows are jump times.
/// Floats carry 17 significant digits.
void write_path_csv(std::ostream& out, const StepPath& path);
void write_path_csv_file(const std::string& filename, const StepPath& path);

StepPath read_path_csv(std::istream& in);
StepPath read_path_csv_file(const std::string& filename);

/// %.17g rendering used by every CSV writer.
std::string format_double(double v);

}  // namespace skflt
