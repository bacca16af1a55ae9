#include "forestsmith/majority_reduce.hpp"

#include "forestsmith/errors.hpp"
#include "forestsmith/kofn.hpp"

#include <bit>
#include <map>
#include <string>
#include <vector>

namespace forestsmith {

PrefixPattern::PrefixPattern(int r_, int s_) : r(r_), s(s_) {
    if (r < 0 || r > kMaxInputBits || s < 0 || s > r)
        throw PreconditionError("prefix pattern P(" + std::to_string(r) + "," + std::to_string(s) +
                                ") needs 0 <= s <= r");
}

bool PrefixPattern::matches(std::uint64_t prefix_bits) const noexcept {
    const std::uint64_t mask = r == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << r) - 1;
    return r - std::popcount(prefix_bits & mask) == s;
}

int inner_threshold(int m, int c, int s) { return m - 2 * c + s; }

Bag build_reduced_majority(int n, int c) {
    if (n < 3 || n % 2 == 0)
        throw PreconditionError("reduced majority: n = " + std::to_string(n) + " must be odd and >= 3");
    const int m = (n + 1) / 2;
    if (c < 0 || (c > 0 && n - 2 * c < 3))
        throw PreconditionError("reduced majority: c = " + std::to_string(c) + " outside [0, " +
                                std::to_string(m - 2) + "] for n = " + std::to_string(n));
    if (c == 0) return build_choose_bag({.n = n, .k = m});

    const int prefix_len = 2 * c;
    const int width = n - prefix_len;

    // Inner trees per s = number of zeros in the prefix.
    std::vector<std::vector<Tree>> inner(prefix_len + 1);
    for (int s = 0; s <= prefix_len; ++s) {
        const int k = inner_threshold(m, c, s);
        if (k <= 0) {
            inner[s].assign(width, Tree::leaf(true));
        } else if (k > width) {
            inner[s].assign(width, Tree::leaf(false));
        } else {
            Bag sub = build_choose_bag({.n = width, .k = k, .offset = prefix_len, .n_vars = n});
            inner[s].assign(sub.trees().begin(), sub.trees().end());
        }
    }

    std::vector<Tree> trees;
    trees.reserve(width);
    const std::uint64_t prefixes = std::uint64_t{1} << prefix_len;
    for (int i = 0; i < width; ++i) {
        std::map<std::uint64_t, Tree> selector;
        for (std::uint64_t prefix = 0; prefix < prefixes; ++prefix) {
            const int zeros = prefix_len - std::popcount(prefix);
            selector.emplace(prefix, inner[zeros][i]);
        }
        trees.push_back(prefix_graft(prefix_len, selector));
    }
    return Bag(std::move(trees), n);
}

}  // namespace forestsmith
