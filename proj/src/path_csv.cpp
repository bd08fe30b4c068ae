#include "skflt/path_csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace skflt {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_path_csv(std::ostream& out, const StepPath& path) {
    out << "t,value\n";
    out << "0," << format_double(path.initial_value) << "\n";
    for (std::size_t i = 0; i < path.times.size(); ++i) {
        out << format_double(path.times[i]) << "," << format_double(path.values[i]) << "\n";
    }
}

void write_path_csv_file(const std::string& filename, const StepPath& path) {
    std::ofstream out(filename);
    if (!out) throw std::runtime_error("cannot open for writing: " + filename);
    write_path_csv(out, path);
}

StepPath read_path_csv(std::istream& in) {
    std::string line;
    bool have_initial = false;
    double initial = 0.0;
    std::vector<double> times, values;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("path csv: expected 't,value' rows");
        std::size_t pos = 0;
        double t, v;
        try {
            t = std::stod(line.substr(0, comma), &pos);
            v = std::stod(line.substr(comma + 1));
        } catch (const std::exception&) {
            if (!have_initial && times.empty()) continue;  // header row
            throw std::runtime_error("path csv: malformed row: " + line);
        }
        if (!have_initial) {
            if (t != 0.0) throw std::runtime_error("path csv: first row must have t = 0");
            initial = v;
            have_initial = true;
        } else {
            times.push_back(t);
            values.push_back(v);
        }
    }
    if (!have_initial) throw std::runtime_error("path csv: no data rows");
    return StepPath::make(initial, std::move(times), std::move(values));
}

StepPath read_path_csv_file(const std::string& filename) {
    std::ifstream in(filename);
    if (!in) throw std::runtime_error("cannot open: " + filename);
    return read_path_csv(in);
}

}  // namespace skflt
