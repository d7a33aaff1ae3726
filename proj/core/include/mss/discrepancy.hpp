#pragma once

#include <cmath>
#include <string>
#include <vector>

namespace mss {

/// A recomputed value that disagrees with a printed one.
struct Discrepancy {
    std::string cell;
    double computed = 0.0;
    double published = 0.0;

    friend bool operator==(const Discrepancy&, const Discrepancy&) = default;
};

using DiscrepancyList = std::vector<Discrepancy>;

/// True when `computed`, rounded to the number of decimals the published
/// value was printed with, differs from it.
inline bool differs_at_precision(double computed, double published, int decimals) {
    double scale = std::pow(10.0, decimals);
    return std::llround(computed * scale) != std::llround(published * scale);
}

} // namespace mss
