#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "polylab/polytope.hpp"

namespace polylab::io {

// {"vertices": [[f,f],...], "ray_in": [f,f], "ray_out": [f,f], "speeds": [f,...], "alpha": f, "beta": f}
OutlineSpec outline_from_json(const std::string& text);
std::string outline_to_json(const OutlineSpec& spec);

// {"base": [f,f], "y1": f, "linear": [f,f], "kinks": [{"y": f, "jump": [f,f]}, ...], "quad": [f,f]}
// Doubles are written in shortest round-trip form, so reading back is bit-exact.
MomentumMap map_from_json(const std::string& text);
std::string map_to_json(const MomentumMap& map);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

// Header row required; "nan" cells allowed. Throws Parse with the offending line number.
CsvTable parse_csv(const std::string& text);
// %.17g per cell, NaN written as "nan".
std::string format_csv(const CsvTable& table);
std::string format_number(double v);

// Columns in the stated order, other columns rejected.
CsvTable require_columns(const CsvTable& table, const std::vector<std::string>& names);

std::vector<std::pair<double, double>> read_trace_csv(const std::string& path);  // y,value
std::vector<std::pair<double, double>> read_points_csv(const std::string& path); // x,y

}  // namespace polylab::io
