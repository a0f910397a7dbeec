#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gbod {

/// Ceiling of an index expression like ceil(t*n), guarded against values such
/// as 0.97*100 landing one ulp above the integer they represent.
inline long ceil_index(double x) {
    return static_cast<long>(std::ceil(x - 1e-9));
}

/// Binary entropy in bits with the 0*log0 := 0 convention.
inline double binary_entropy(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

/// Population standard deviation (divisor n).
inline double population_std(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(v.size()));
}

}  // namespace gbod
