#pragma once

#include "forestsmith/bag.hpp"

namespace forestsmith {

/// Assignments to an r-variable prefix with exactly s negated literals.
struct PrefixPattern {
    int r = 0;
    int s = 0;

    PrefixPattern(int r_, int s_);
    bool matches(std::uint64_t prefix_bits) const noexcept;
};

/// Threshold of the inner choose bag selected by a prefix of 2c variables
/// carrying s zeros: m - 2c + s. May fall outside [1, n - 2c]; callers clamp.
int inner_threshold(int m, int c, int s);

/// Majority on n = 2m-1 variables as a bag of n - 2c trees. Tree i branches
/// on x_1..x_{2c}; the prefix with s zeros continues with tree i of the
/// choose bag C_{n-2c}(m-2c+s; x_{2c+1..n}). Thresholds <= 0 select Leaf(1)
/// and thresholds above n-2c select Leaf(0). c = 0 returns the n
/// single-variable trees.
///
/// Throws PreconditionError for even n, n < 3, c < 0 or n - 2c < 3 with c > 0.
Bag build_reduced_majority(int n, int c);

}  // namespace forestsmith
