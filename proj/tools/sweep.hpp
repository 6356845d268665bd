#pragma once

// Parameter sweeps for the command line: "name=v1,v2,..." or
// "name=start:stop:count", several parts joined by ';'. The first part varies
// fastest.

#include <string>
#include <string_view>
#include <vector>

namespace bohmtoa::cli {

struct SweepAxis {
    std::string name;  // one of r, phi, omega, mass, hbar, L, L/l, dL, T
    std::vector<double> values;
};

// Throws std::invalid_argument on malformed input.
std::vector<SweepAxis> parse_sweep(std::string_view spec);

// Comma-separated list of finite numbers.
std::vector<double> parse_list(std::string_view text);

// Column header for an axis ("L/l" -> "L_over_l").
std::string column_name(const std::string& axis);

}  // namespace bohmtoa::cli
