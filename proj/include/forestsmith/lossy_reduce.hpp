#pragma once

#include "forestsmith/bag.hpp"
#include "forestsmith/distribution.hpp"
#include "forestsmith/numeric.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace forestsmith {

/// w(b): total distribution weight of the inputs whose vote profile is b.
class WeightProfile {
public:
    WeightProfile(int length, std::map<std::uint64_t, std::uint64_t> weights);

    int length() const noexcept { return length_; }
    std::uint64_t total() const noexcept { return total_; }
    std::uint64_t weight(const VoteProfile& b) const;
    const std::map<std::uint64_t, std::uint64_t>& entries() const noexcept { return weights_; }

    /// W^L: weight of profiles with exactly L ones.
    std::uint64_t level_weight(int ones) const;
    /// W^{(j1,j2)}: weight of profiles with (b[1], b[2]) = (j1, j2).
    std::uint64_t case_weight(bool first, bool second) const;

private:
    int length_;
    std::map<std::uint64_t, std::uint64_t> weights_;  // only non-zero entries
    std::uint64_t total_ = 0;
};

/// Throws CapacityError when bag.n_vars() is over the enumeration cap and
/// PreconditionError when the distribution is over a different l.
WeightProfile weight_profile(const Bag& bag, const Distribution& dist);

enum class Pattern { AllOnes, AllZeros };

/// Subset selection over the profile coordinates in `positions`. With
/// AllOnes, the level is "L ones among positions" and a subset J counts the
/// profiles whose J-coordinates are all 1; AllZeros exchanges 0 and 1.
/// `condition`, when set, restricts to profiles with (b[1], b[2]) equal to it.
struct SelectionQuery {
    std::vector<int> positions;  // 1-based profile coordinates
    int K = 0;
    int L = 0;
    Pattern pattern = Pattern::AllOnes;
    std::optional<std::pair<bool, bool>> condition;
};

struct SubsetChoice {
    std::vector<int> subset;          // sorted, size K
    std::uint64_t subset_weight = 0;  // W^L_J(a)
    std::uint64_t level_weight = 0;   // W^L
    int H = 0;
    int K = 0;
    int L = 0;

    /// C(L,K) / C(H,K) * W^L
    Rational averaging_bound() const;
    bool meets_averaging_bound() const { return Rational(subset_weight) <= averaging_bound(); }
};

/// Exhaustive argmin of W^L_J(a) over all K-subsets of `positions`, ties
/// broken by the lexicographically smallest sorted subset.
/// Throws PreconditionError unless 1 <= K <= L <= |positions|.
SubsetChoice select_J0(const WeightProfile& profile, const SelectionQuery& query);

/// err(a, b) = weight of inputs where the two bags' votes differ / total.
/// Throws PreconditionError when the bags or distribution disagree on l.
Rational measure_error(const Bag& a, const Bag& b, const Distribution& dist);

/// Canonical indices of inputs where the two bags' votes differ, ascending.
std::vector<std::uint64_t> disagreement_set(const Bag& a, const Bag& b);

/// Which of the three hat-C lists of the one-step reduction.
enum class HatCase {
    Minus,   // threshold m-2, used when t_1 = t_2 = 1
    Middle,  // threshold m-1, used when exactly one of t_1, t_2 is 1
    Plus,    // threshold m,   used when t_1 = t_2 = 0
};

/// The 2m-3 component trees of one hat-C list for the original trees
/// `trees` (all 2m-1 of them). `order[j]` is the original 1-based position
/// placed at reduced position 3+j; the first K entries are the designated
/// subset.
///   Minus: t_{2+i} ∨ L_1(2+i) for i <= K with L_1(j) = t_3 ∧ ... ∧ t_{j-1} ∧ ¬t_j,
///          t_{2+i} otherwise;
///   Plus:  I_1(2+i) = t_{2+i} ∧ (t_{3+i} ∨ ... ∨ t_{2+K}) for i <= K,
///          t_{2+i} otherwise;
///   Middle: t_{2+i}.
std::vector<Tree> build_hat_choose(std::span<const Tree> trees, int K, HatCase which,
                                   std::span<const int> order);

/// Component trees of reduced tree i, one per prefix stratum.
struct ReducedColumn {
    Tree minus;  // t_1 t_2
    Tree mixed;  // t_1 ¬t_2 or ¬t_1 t_2
    Tree plus;   // ¬t_1 ¬t_2
};

struct ReducedConstruction {
    std::vector<ReducedColumn> columns;
    Bag bag;
};

/// T_i = (t_1 ∧ t_2 ∧ T_i^-) ∨ (t_1 ∧ ¬t_2 ∧ t_{2+i}) ∨ (¬t_1 ∧ t_2 ∧ t_{2+i})
///       ∨ (¬t_1 ∧ ¬t_2 ∧ T_i^+),
/// materialized by grafting on the leaves of t_1 and then t_2. The mixed
/// stratum keeps the identity order.
ReducedConstruction build_reduced_construction(const Bag& bag, int K,
                                               std::span<const int> order_minus,
                                               std::span<const int> order_plus);

struct ReduceOptions {
    /// Test hook: skip subset selection and designate positions 3..K+2.
    bool identity_permutations = false;
};

/// Outcome of one 2m-1 -> 2m-3 step.
struct ReductionReport {
    int trees_before = 0;
    int trees_after = 0;
    int K = 0;

    std::vector<int> j0_minus;     // designated subset for the (1,1) case
    std::vector<int> j0_plus;      // designated subset for the (0,0) case
    std::vector<int> order_minus;  // original positions at reduced positions 1..2m-3
    std::vector<int> order_plus;

    std::uint64_t total = 0;
    std::uint64_t w11 = 0;
    std::uint64_t w10 = 0;
    std::uint64_t w01 = 0;
    std::uint64_t w00 = 0;
    /// (1,1) stratum: W^L at L = m-2 ones among 3..2m-1, and W^L_{J0}(1..1).
    std::uint64_t level_weight_minus = 0;
    std::uint64_t subset_weight_minus = 0;
    /// (0,0) stratum: W^L at L = m-2 zeros among 3..2m-1, and W^L_{J0}(0..0).
    std::uint64_t level_weight_plus = 0;
    std::uint64_t subset_weight_plus = 0;

    Rational measured_error;  // under this step's distribution
    Rational bound;           // 1/2^K
    Rational stratum_bound;     // C(m-2,K)/C(2m-3,K) * (W^(1,1) + W^(0,0)) / total

    BigCount input_max_size;   // r
    BigCount input_total_size;
    BigCount output_max_size;
    BigCount output_total_size;
    /// Reduced sizes obey size <= size_constant * r^(2K+11).
    BigCount size_constant;
    Rational size_ratio;  // output_max_size / r^(2K+11)

    std::vector<std::uint64_t> disagreements;
    std::vector<ReducedColumn> columns;
};

struct ReductionResult {
    Bag bag;
    ReductionReport report;
};

/// One reduction step. Requires an odd bag of 2m-1 >= 5 trees,
/// 1 <= K <= m-2 and n_vars within the enumeration cap.
ReductionResult reduce_once(const Bag& bag, int K, const Distribution& dist,
                            const ReduceOptions& options = {});

struct IteratedReport {
    int c = 0;
    int K = 0;
    std::uint64_t original_total = 0;
    std::vector<ReductionReport> steps;
    /// Per-step distributions after zeroing each step's disagreements
    /// (entry j is the distribution step j+1 ran under).
    std::vector<Distribution> step_distributions;
    Rational cumulative_error;  // final bag vs original bag, original distribution
    Rational bound;             // c/2^K
};

struct IteratedResult {
    Bag bag;
    IteratedReport report;
};

/// Applies reduce_once c times, zeroing the weights of each step's
/// disagreement set before the next step. Precondition failures name the
/// iteration.
IteratedResult reduce_c_times(const Bag& bag, int K, int c, const Distribution& dist,
                              const ReduceOptions& options = {});

}  // namespace forestsmith
