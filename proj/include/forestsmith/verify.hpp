#pragma once

// Reference predicates computed by bit counting only. Nothing here builds or
// walks a Tree except exhaustive_equiv, which evaluates the subject under test.

#include "forestsmith/bag.hpp"
#include "forestsmith/tree.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace forestsmith {

/// [#1(b) >= k]; k <= 0 is always 1 and k > |b| always 0.
bool threshold_oracle(int k, std::span<const bool> bits);
bool threshold_oracle(int k, const InputVector& x);

/// [#1(b) >= m] for |b| = 2m-1. Throws PreconditionError for even length.
bool majority_oracle(std::span<const bool> bits);
bool majority_oracle(const InputVector& x);

struct Counterexample {
    InputVector input;
    bool expected;
    bool actual;
};

using InputPredicate = std::function<bool(const InputVector&)>;

/// First input (canonical order) on which subject and oracle disagree.
/// Throws CapacityError above the enumeration cap.
std::optional<Counterexample> exhaustive_equiv(const Tree& subject, const InputPredicate& oracle, int l);
std::optional<Counterexample> exhaustive_equiv(const Bag& subject, const InputPredicate& oracle);

namespace formula {

/// Tree i of the choose bag C_n(k) over bits b_1..b_n, evaluated from its
/// defining counting condition.
bool choose_tree(int n, int k, int i, std::span<const bool> bits);

/// Tree i of the reduced-majority bag for Maj_n with 2c prefix variables.
bool reduced_majority_tree(int n, int c, int i, std::span<const bool> bits);

/// Outputs of the 2m-3 reduced trees from the original outputs
/// t = (t_1..t_{2m-1}), with the designated orders of the (1,1) and (0,0)
/// strata given as original 1-based positions (length 2m-3 each).
std::vector<bool> lossy_reduced_profile(std::span<const bool> t, int K,
                                        std::span<const int> order_minus,
                                        std::span<const int> order_plus);

}  // namespace formula

/// Unpacks the canonical index of x into x_1..x_l.
std::vector<bool> to_bits(const InputVector& x);

}  // namespace forestsmith
