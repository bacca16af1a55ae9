#include "forestsmith/lossy_reduce.hpp"

#include "forestsmith/errors.hpp"
#include "forestsmith/truth_table.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

namespace forestsmith {

// ---------------------------------------------------------------------------
// Weight profiles

WeightProfile::WeightProfile(int length, std::map<std::uint64_t, std::uint64_t> weights)
    : length_(length), weights_(std::move(weights)) {
    if (length < 0 || length > kMaxInputBits) throw PreconditionError("profile length outside [0, 63]");
    for (auto it = weights_.begin(); it != weights_.end();) {
        if (length < 64 && (it->first >> length) != 0)
            throw PreconditionError("profile entry has bits beyond length " + std::to_string(length));
        if (it->second > ~std::uint64_t{0} - total_) throw PreconditionError("profile total overflows 64 bits");
        total_ += it->second;
        it = it->second == 0 ? weights_.erase(it) : std::next(it);
    }
}

std::uint64_t WeightProfile::weight(const VoteProfile& b) const {
    auto it = weights_.find(b.bits);
    return it == weights_.end() ? 0 : it->second;
}

std::uint64_t WeightProfile::level_weight(int ones) const {
    std::uint64_t sum = 0;
    for (const auto& [bits, w] : weights_)
        if (std::popcount(bits) == ones) sum += w;
    return sum;
}

std::uint64_t WeightProfile::case_weight(bool first, bool second) const {
    const std::uint64_t want = (first ? 1U : 0U) | (second ? 2U : 0U);
    std::uint64_t sum = 0;
    for (const auto& [bits, w] : weights_)
        if ((bits & 3U) == want) sum += w;
    return sum;
}

namespace {

// Profile of every input, tree 1 in bit 0.
std::vector<std::uint64_t> profiles_by_input(const Bag& bag) {
    require_enumerable(bag.n_vars());
    const std::uint64_t count = std::uint64_t{1} << bag.n_vars();
    std::vector<std::uint64_t> profiles(count, 0);
    for (std::size_t t = 0; t < bag.tree_count(); ++t) {
        const Tree& tree = bag.trees()[t];
        detail::for_each_range(count, [&](std::uint64_t begin, std::uint64_t end) {
            for (std::uint64_t x = begin; x < end; ++x)
                if (tree.eval_index(x)) profiles[x] |= std::uint64_t{1} << t;
        });
    }
    return profiles;
}

void require_same_domain(const Bag& bag, const Distribution& dist) {
    if (bag.n_vars() != dist.num_vars())
        throw PreconditionError("bag over " + std::to_string(bag.n_vars()) + " variables, distribution over " +
                                std::to_string(dist.num_vars()));
}

std::uint64_t position_mask(std::span<const int> positions) {
    std::uint64_t mask = 0;
    for (int p : positions) mask |= std::uint64_t{1} << (p - 1);
    return mask;
}

struct LevelEntry {
    std::uint64_t bits;
    std::uint64_t weight;
};

// Profiles at level L of the query (pattern count over positions == L,
// honoring the condition), with their total weight.
std::vector<LevelEntry> collect_level(const WeightProfile& profile, const SelectionQuery& q,
                                      std::uint64_t& level_weight) {
    const std::uint64_t mask = position_mask(q.positions);
    std::vector<LevelEntry> level;
    level_weight = 0;
    for (const auto& [bits, w] : profile.entries()) {
        if (q.condition) {
            const bool b1 = bits & 1U;
            const bool b2 = (bits >> 1) & 1U;
            if (b1 != q.condition->first || b2 != q.condition->second) continue;
        }
        const std::uint64_t matched = q.pattern == Pattern::AllOnes ? (bits & mask) : (~bits & mask);
        if (std::popcount(matched) != q.L) continue;
        level.push_back({bits, w});
        level_weight += w;
    }
    return level;
}

std::uint64_t subset_weight(const std::vector<LevelEntry>& level, Pattern pattern,
                            std::span<const int> subset) {
    const std::uint64_t mask = position_mask(subset);
    std::uint64_t sum = 0;
    for (const auto& e : level) {
        const std::uint64_t matched = pattern == Pattern::AllOnes ? (e.bits & mask) : (~e.bits & mask);
        if (matched == mask) sum += e.weight;
    }
    return sum;
}

void validate_query(const WeightProfile& profile, const SelectionQuery& q) {
    const int H = static_cast<int>(q.positions.size());
    std::vector<int> sorted = q.positions;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw PreconditionError("select_J0: duplicate positions");
    for (int p : sorted)
        if (p < 1 || p > profile.length())
            throw PreconditionError("select_J0: position " + std::to_string(p) + " outside the profile");
    if (q.K < 1) throw PreconditionError("select_J0: K must be >= 1");
    if (q.K > q.L)
        throw PreconditionError("select_J0: K = " + std::to_string(q.K) + " exceeds L = " + std::to_string(q.L));
    if (q.L > H)
        throw PreconditionError("select_J0: L = " + std::to_string(q.L) + " exceeds H = " + std::to_string(H));
    if (q.condition && profile.length() < 2) throw PreconditionError("select_J0: condition needs length >= 2");
}

}  // namespace

WeightProfile weight_profile(const Bag& bag, const Distribution& dist) {
    require_same_domain(bag, dist);
    const auto profiles = profiles_by_input(bag);
    std::map<std::uint64_t, std::uint64_t> weights;
    for (std::uint64_t x = 0; x < profiles.size(); ++x) {
        const std::uint64_t w = dist.weight(x);
        if (w != 0) weights[profiles[x]] += w;
    }
    return WeightProfile(static_cast<int>(bag.tree_count()), std::move(weights));
}

// ---------------------------------------------------------------------------
// Subset selection

Rational SubsetChoice::averaging_bound() const {
    return Rational(binomial(L, K), binomial(H, K)) * Rational(level_weight);
}

SubsetChoice select_J0(const WeightProfile& profile, const SelectionQuery& query) {
    validate_query(profile, query);
    std::vector<int> positions = query.positions;
    std::sort(positions.begin(), positions.end());
    const int H = static_cast<int>(positions.size());

    SubsetChoice best;
    best.H = H;
    best.K = query.K;
    best.L = query.L;
    const auto level = collect_level(profile, query, best.level_weight);

    // Lexicographic enumeration of K-subsets as index vectors; a strict
    // improvement is required to replace the incumbent.
    std::vector<int> idx(query.K);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<int> subset(query.K);
    bool have = false;
    for (;;) {
        for (int j = 0; j < query.K; ++j) subset[j] = positions[idx[j]];
        const std::uint64_t w = subset_weight(level, query.pattern, subset);
        if (!have || w < best.subset_weight) {
            best.subset = subset;
            best.subset_weight = w;
            have = true;
        }
        int j = query.K - 1;
        while (j >= 0 && idx[j] == H - query.K + j) --j;
        if (j < 0) break;
        ++idx[j];
        for (int r = j + 1; r < query.K; ++r) idx[r] = idx[r - 1] + 1;
    }
    return best;
}

// ---------------------------------------------------------------------------
// Error measurement

std::vector<std::uint64_t> disagreement_set(const Bag& a, const Bag& b) {
    if (a.n_vars() != b.n_vars())
        throw PreconditionError("bags over " + std::to_string(a.n_vars()) + " and " + std::to_string(b.n_vars()) +
                                " variables");
    const TruthTable diff = truth_table(a) ^ truth_table(b);
    std::vector<std::uint64_t> out;
    out.reserve(diff.count_ones());
    for (std::uint64_t x = 0; x < diff.size(); ++x)
        if (diff.get(x)) out.push_back(x);
    return out;
}

Rational measure_error(const Bag& a, const Bag& b, const Distribution& dist) {
    require_same_domain(a, dist);
    const auto diff = disagreement_set(a, b);
    BigCount weight = 0;
    for (std::uint64_t x : diff) weight += dist.weight(x);
    return Rational(weight, BigCount(dist.total()));
}

// ---------------------------------------------------------------------------
// Construction

std::vector<Tree> build_hat_choose(std::span<const Tree> trees, int K, HatCase which,
                                   std::span<const int> order) {
    const int H = static_cast<int>(trees.size());
    const int reduced = H - 2;
    if (H < 5 || H % 2 == 0) throw PreconditionError("hat-C needs an odd bag of at least 5 trees");
    if (static_cast<int>(order.size()) != reduced)
        throw PreconditionError("hat-C order must list " + std::to_string(reduced) + " positions");
    if (K < 1 || K > reduced) throw PreconditionError("hat-C: K outside [1, " + std::to_string(reduced) + "]");
    {
        std::vector<int> sorted(order.begin(), order.end());
        std::sort(sorted.begin(), sorted.end());
        for (int j = 0; j < reduced; ++j)
            if (sorted[j] != j + 3) throw PreconditionError("hat-C order must be a permutation of 3.." +
                                                            std::to_string(H));
    }

    auto t = [&](int j) -> const Tree& { return trees[order[j - 3] - 1]; };

    std::vector<Tree> out;
    out.reserve(reduced);
    for (int i = 1; i <= reduced; ++i) {
        const int j = 2 + i;
        if (which == HatCase::Middle || i > K) {
            out.push_back(t(j));
        } else if (which == HatCase::Minus) {
            // t_j ∨ L_1(j), L_1(j) = t_3 ∧ ... ∧ t_{j-1} ∧ ¬t_j
            Tree l1 = negate(t(j));
            if (j > 3) {
                Tree prefix = t(3);
                for (int q = 4; q < j; ++q) prefix = conjoin(prefix, t(q));
                l1 = conjoin(prefix, l1);
            }
            out.push_back(disjoin(t(j), l1));
        } else {
            // I_1(j) = t_j ∧ (t_{j+1} ∨ ... ∨ t_{2+K})
            Tree tail = Tree::leaf(false);
            if (j + 1 <= 2 + K) {
                tail = t(j + 1);
                for (int q = j + 2; q <= 2 + K; ++q) tail = disjoin(tail, t(q));
            }
            out.push_back(conjoin(t(j), tail));
        }
    }
    return out;
}

ReducedConstruction build_reduced_construction(const Bag& bag, int K, std::span<const int> order_minus,
                                               std::span<const int> order_plus) {
    const auto trees = bag.trees();
    const int reduced = static_cast<int>(trees.size()) - 2;
    std::vector<int> identity(std::max(reduced, 0));
    std::iota(identity.begin(), identity.end(), 3);

    auto minus = build_hat_choose(trees, K, HatCase::Minus, order_minus);
    auto mixed = build_hat_choose(trees, K, HatCase::Middle, identity);
    auto plus = build_hat_choose(trees, K, HatCase::Plus, order_plus);

    const Tree& t1 = trees[0];
    const Tree& t2 = trees[1];
    std::vector<ReducedColumn> columns;
    std::vector<Tree> reduced_trees;
    columns.reserve(reduced);
    reduced_trees.reserve(reduced);
    for (int i = 0; i < reduced; ++i) {
        Tree when_t1 = branch_on(t2, minus[i], mixed[i]);
        Tree when_not_t1 = branch_on(t2, mixed[i], plus[i]);
        reduced_trees.push_back(branch_on(t1, when_t1, when_not_t1));
        columns.push_back({minus[i], mixed[i], plus[i]});
    }
    return {std::move(columns), Bag(std::move(reduced_trees), bag.n_vars())};
}

// ---------------------------------------------------------------------------
// Reduction steps

namespace {

void check_step(int trees, int K, const std::string& where) {
    const int m = (trees + 1) / 2;
    if (trees < 5)
        throw PreconditionError(where + "reduction needs at least 5 trees, got " + std::to_string(trees));
    if (K < 1 || K > m - 2)
        throw PreconditionError(where + "K = " + std::to_string(K) + " outside [1, " + std::to_string(m - 2) +
                                "] for a bag of " + std::to_string(trees) + " trees");
}

std::vector<int> designated_order(const std::vector<int>& subset, int H) {
    std::vector<int> order = subset;
    for (int p = 3; p <= H; ++p)
        if (std::find(subset.begin(), subset.end(), p) == subset.end()) order.push_back(p);
    return order;
}

}  // namespace

ReductionResult reduce_once(const Bag& bag, int K, const Distribution& dist, const ReduceOptions& options) {
    const int H = static_cast<int>(bag.tree_count());
    check_step(H, K, "");
    require_same_domain(bag, dist);
    require_enumerable(bag.n_vars());
    const int m = (H + 1) / 2;

    const WeightProfile profile = weight_profile(bag, dist);

    std::vector<int> positions(H - 2);
    std::iota(positions.begin(), positions.end(), 3);
    SelectionQuery minus_query{positions, K, m - 2, Pattern::AllOnes, std::pair{true, true}};
    SelectionQuery plus_query{positions, K, m - 2, Pattern::AllZeros, std::pair{false, false}};

    ReductionReport report;
    report.trees_before = H;
    report.trees_after = H - 2;
    report.K = K;

    if (options.identity_permutations) {
        std::vector<int> first(positions.begin(), positions.begin() + K);
        const auto minus_level = collect_level(profile, minus_query, report.level_weight_minus);
        const auto plus_level = collect_level(profile, plus_query, report.level_weight_plus);
        report.j0_minus = first;
        report.j0_plus = first;
        report.subset_weight_minus = subset_weight(minus_level, Pattern::AllOnes, first);
        report.subset_weight_plus = subset_weight(plus_level, Pattern::AllZeros, first);
    } else {
        const SubsetChoice minus = select_J0(profile, minus_query);
        const SubsetChoice plus = select_J0(profile, plus_query);
        report.j0_minus = minus.subset;
        report.j0_plus = plus.subset;
        report.level_weight_minus = minus.level_weight;
        report.subset_weight_minus = minus.subset_weight;
        report.level_weight_plus = plus.level_weight;
        report.subset_weight_plus = plus.subset_weight;
    }
    report.order_minus = designated_order(report.j0_minus, H);
    report.order_plus = designated_order(report.j0_plus, H);

    ReducedConstruction built = build_reduced_construction(bag, K, report.order_minus, report.order_plus);

    report.total = dist.total();
    report.w11 = profile.case_weight(true, true);
    report.w10 = profile.case_weight(true, false);
    report.w01 = profile.case_weight(false, true);
    report.w00 = profile.case_weight(false, false);

    report.disagreements = disagreement_set(bag, built.bag);
    BigCount error_weight = 0;
    for (std::uint64_t x : report.disagreements) error_weight += dist.weight(x);
    report.measured_error = Rational(error_weight, BigCount(report.total));
    report.bound = Rational(BigCount(1), power(2, K));
    report.stratum_bound = Rational(binomial(m - 2, K), binomial(2 * m - 3, K)) *
                         Rational(BigCount(report.w11) + report.w00, BigCount(report.total));

    report.input_max_size = bag.max_tree_size();
    report.input_total_size = bag.total_size();
    report.output_max_size = built.bag.max_tree_size();
    report.output_total_size = built.bag.total_size();
    report.size_constant = power(2, 2 * K + 10);
    report.size_ratio = Rational(report.output_max_size, power(report.input_max_size, 2 * K + 11));

    report.columns = std::move(built.columns);
    return {std::move(built.bag), std::move(report)};
}

IteratedResult reduce_c_times(const Bag& bag, int K, int c, const Distribution& dist,
                              const ReduceOptions& options) {
    if (c < 1) throw PreconditionError("reduce_c_times: c must be >= 1");
    const int H = static_cast<int>(bag.tree_count());
    if (H - 2 * c < 3)
        throw PreconditionError("reduce_c_times: " + std::to_string(H) + " trees cannot lose " +
                                std::to_string(2 * c) + " and keep at least 3");
    for (int step = 1; step <= c; ++step)
        check_step(H - 2 * (step - 1), K, "iteration " + std::to_string(step) + ": ");
    require_same_domain(bag, dist);

    IteratedReport report;
    report.c = c;
    report.K = K;
    report.original_total = dist.total();

    Bag current = bag;
    Distribution current_dist = dist;
    for (int step = 1; step <= c; ++step) {
        report.step_distributions.push_back(current_dist);
        ReductionResult result = [&] {
            try {
                return reduce_once(current, K, current_dist, options);
            } catch (const PreconditionError& e) {
                throw PreconditionError("iteration " + std::to_string(step) + ": " + e.what());
            }
        }();
        if (step < c) current_dist = current_dist.with_zeroed(result.report.disagreements);
        report.steps.push_back(std::move(result.report));
        current = std::move(result.bag);
    }
    report.cumulative_error = measure_error(current, bag, dist);
    report.bound = Rational(BigCount(c), power(2, K));
    return {std::move(current), std::move(report)};
}

}  // namespace forestsmith
