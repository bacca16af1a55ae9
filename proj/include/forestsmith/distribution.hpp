#pragma once

#include <cstdint>
#include <vector>

namespace forestsmith {

/// Exact non-negative integer weights over all 2^l inputs. The probability of
/// x is weight(x) / total().
class Distribution {
public:
    static Distribution uniform(int l);
    /// Throws PreconditionError on a length other than 2^l, an all-zero table
    /// or a total that overflows 64 bits.
    static Distribution table(int l, std::vector<std::uint64_t> weights);

    int num_vars() const noexcept { return l_; }
    bool is_uniform() const noexcept { return weights_.empty(); }
    std::uint64_t weight(std::uint64_t canonical_index) const noexcept {
        return weights_.empty() ? 1 : weights_[canonical_index];
    }
    std::uint64_t total() const noexcept { return total_; }

    /// Explicit table, all ones for a uniform distribution.
    std::vector<std::uint64_t> weights() const;

    /// Copy with the listed inputs set to weight 0 (the result is always a
    /// table). Throws PreconditionError if every weight would become 0.
    Distribution with_zeroed(const std::vector<std::uint64_t>& inputs) const;

    /// Same l and same weights; a uniform distribution equals the all-ones table.
    friend bool operator==(const Distribution& a, const Distribution& b);

private:
    Distribution(int l, std::vector<std::uint64_t> weights, std::uint64_t total)
        : l_(l), weights_(std::move(weights)), total_(total) {}

    int l_;
    std::vector<std::uint64_t> weights_;  // empty for uniform
    std::uint64_t total_;
};

}  // namespace forestsmith
