#include "forestsmith/verify.hpp"

#include "forestsmith/errors.hpp"
#include "forestsmith/truth_table.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <string>

namespace forestsmith {

std::vector<bool> to_bits(const InputVector& x) {
    std::vector<bool> bits(x.length());
    for (int i = 0; i < x.length(); ++i) bits[i] = (x.index() >> i) & 1U;
    return bits;
}

namespace {

int count_ones(std::span<const bool> bits, std::size_t first = 0,
               std::size_t last = std::numeric_limits<std::size_t>::max()) {
    last = std::min(last, bits.size());
    int n = 0;
    for (std::size_t i = first; i < last; ++i) n += bits[i];
    return n;
}

std::optional<Counterexample> first_disagreement(int l, const std::function<bool(std::uint64_t)>& subject,
                                                 const InputPredicate& oracle) {
    require_enumerable(l);
    constexpr auto kNone = std::numeric_limits<std::uint64_t>::max();
    std::atomic<std::uint64_t> first{kNone};
    detail::for_each_range(std::uint64_t{1} << l, [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end && i < first.load(); ++i) {
            if (subject(i) == oracle(InputVector(i, l))) continue;
            std::uint64_t seen = first.load();
            while (i < seen && !first.compare_exchange_weak(seen, i)) {
            }
            return;
        }
    });
    if (first == kNone) return std::nullopt;
    InputVector x(first, l);
    return Counterexample{x, oracle(x), subject(first)};
}

}  // namespace

bool threshold_oracle(int k, std::span<const bool> bits) { return count_ones(bits) >= k; }

bool threshold_oracle(int k, const InputVector& x) { return x.count_ones() >= k; }

bool majority_oracle(std::span<const bool> bits) {
    if (bits.size() % 2 == 0)
        throw PreconditionError("majority needs an odd number of bits, got " + std::to_string(bits.size()));
    return count_ones(bits) >= static_cast<int>(bits.size() + 1) / 2;
}

bool majority_oracle(const InputVector& x) {
    if (x.length() % 2 == 0)
        throw PreconditionError("majority needs an odd number of bits, got " + std::to_string(x.length()));
    return x.count_ones() >= (x.length() + 1) / 2;
}

std::optional<Counterexample> exhaustive_equiv(const Tree& subject, const InputPredicate& oracle, int l) {
    if (subject.max_var() > l)
        throw StructuralError("tree queries x_" + std::to_string(subject.max_var()) + " beyond l = " +
                              std::to_string(l));
    return first_disagreement(l, [&](std::uint64_t i) { return subject.eval_index(i); }, oracle);
}

std::optional<Counterexample> exhaustive_equiv(const Bag& subject, const InputPredicate& oracle) {
    return first_disagreement(subject.n_vars(), [&](std::uint64_t i) { return subject.eval_index(i); },
                              oracle);
}

namespace formula {

bool choose_tree(int n, int k, int i, std::span<const bool> bits) {
    if (n < 3 || n % 2 == 0 || k < 1 || k > n || i < 1 || i > n || static_cast<int>(bits.size()) < n)
        throw PreconditionError("choose_tree formula: invalid (n, k, i)");
    const int m = (n + 1) / 2;
    const bool bi = bits[i - 1];
    if (k == m) return bi;
    if (k < m) {
        const int ell = m - k;
        if (i <= ell) return true;
        const int zeros_before = (i - 1) - count_ones(bits, 0, i - 1);
        const bool leftmost_zero = !bi && zeros_before <= ell - 1;
        return bi || leftmost_zero;
    }
    const int ell = k - m;
    if (i > n - ell) return false;
    return bi && count_ones(bits, i, n) >= ell;
}

bool reduced_majority_tree(int n, int c, int i, std::span<const bool> bits) {
    const int m = (n + 1) / 2;
    if (c == 0) return bits[i - 1];
    const int prefix = 2 * c;
    const int width = n - prefix;
    const int zeros = prefix - count_ones(bits, 0, prefix);
    const int k = m - prefix + zeros;
    if (k <= 0) return true;
    if (k > width) return false;
    return choose_tree(width, k, i, bits.subspan(prefix, width));
}

std::vector<bool> lossy_reduced_profile(std::span<const bool> t, int K, std::span<const int> order_minus,
                                        std::span<const int> order_plus) {
    const int H = static_cast<int>(t.size());
    const int reduced = H - 2;
    if (H < 5 || H % 2 == 0 || static_cast<int>(order_minus.size()) != reduced ||
        static_cast<int>(order_plus.size()) != reduced || K < 1 || K > reduced)
        throw PreconditionError("lossy formula: invalid profile or orders");

    // t_j for j >= 3 after the stratum's reordering; j is 1-based.
    auto tm = [&](int j) -> bool { return t[order_minus[j - 3] - 1]; };
    auto tp = [&](int j) -> bool { return t[order_plus[j - 3] - 1]; };
    const bool t1 = t[0];
    const bool t2 = t[1];

    std::vector<bool> out(reduced);
    for (int i = 1; i <= reduced; ++i) {
        bool minus = tm(2 + i);
        if (i <= K) {
            bool l1 = !tm(2 + i);
            for (int j = 3; j <= 1 + i; ++j) l1 = l1 && tm(j);
            minus = tm(2 + i) || l1;
        }
        bool plus = tp(2 + i);
        if (i <= K) {
            bool tail = false;
            for (int j = 3 + i; j <= 2 + K; ++j) tail = tail || tp(j);
            plus = tp(2 + i) && tail;
        }
        const bool mixed = t[2 + i - 1];
        out[i - 1] = (t1 && t2 && minus) || (t1 && !t2 && mixed) || (!t1 && t2 && mixed) ||
                     (!t1 && !t2 && plus);
    }
    return out;
}

}  // namespace formula

}  // namespace forestsmith
