#pragma once

#include <algorithm>
#include <cmath>

namespace bohmtoa::testing {

inline double rel_err(double actual, double expected) {
    return std::abs(actual - expected) / std::max(std::abs(expected), 1e-300);
}

// Relative difference with an O(1) floor, for entries that may vanish.
inline double scaled_err(double actual, double expected) {
    return std::abs(actual - expected) / std::max({1.0, std::abs(actual), std::abs(expected)});
}

}  // namespace bohmtoa::testing
