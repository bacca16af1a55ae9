#include "forestsmith/distribution.hpp"

#include "forestsmith/errors.hpp"
#include "forestsmith/truth_table.hpp"

#include <string>

namespace forestsmith {

Distribution Distribution::uniform(int l) {
    require_enumerable(l);
    return Distribution(l, {}, std::uint64_t{1} << l);
}

Distribution Distribution::table(int l, std::vector<std::uint64_t> weights) {
    require_enumerable(l);
    const std::uint64_t expected = std::uint64_t{1} << l;
    if (weights.size() != expected)
        throw PreconditionError("distribution over l = " + std::to_string(l) + " needs " +
                                std::to_string(expected) + " weights, got " + std::to_string(weights.size()));
    std::uint64_t total = 0;
    for (std::uint64_t w : weights) {
        if (w > ~std::uint64_t{0} - total) throw PreconditionError("distribution total overflows 64 bits");
        total += w;
    }
    if (total == 0) throw PreconditionError("distribution total must be positive");
    return Distribution(l, std::move(weights), total);
}

std::vector<std::uint64_t> Distribution::weights() const {
    if (weights_.empty()) return std::vector<std::uint64_t>(std::uint64_t{1} << l_, 1);
    return weights_;
}

Distribution Distribution::with_zeroed(const std::vector<std::uint64_t>& inputs) const {
    std::vector<std::uint64_t> w = weights();
    for (std::uint64_t x : inputs) w.at(x) = 0;
    return table(l_, std::move(w));
}

bool operator==(const Distribution& a, const Distribution& b) {
    if (a.l_ != b.l_ || a.total_ != b.total_) return false;
    if (a.weights_.empty() && b.weights_.empty()) return true;
    return a.weights() == b.weights();
}

}  // namespace forestsmith
