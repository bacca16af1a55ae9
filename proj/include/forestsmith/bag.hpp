#pragma once

#include "forestsmith/tree.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace forestsmith {

/// Per-tree outputs (t_1(x), ..., t_H(x)); tree 1 is bit 0 of `bits`.
struct VoteProfile {
    std::uint64_t bits = 0;
    int length = 0;

    bool operator[](int position) const { return (bits >> (position - 1)) & 1U; }  // 1-based
    int count_ones() const noexcept;
    std::string to_string() const;

    static VoteProfile from_bits(const std::string& bits);

    friend bool operator==(const VoteProfile&, const VoteProfile&) = default;
};

/// Odd-cardinality ordered collection of trees over x_1..x_{n_vars}, deciding
/// by majority vote.
class Bag {
public:
    /// Throws StructuralError on an even or empty tree list or a tree that
    /// queries a variable beyond n_vars.
    Bag(std::vector<Tree> trees, int n_vars);

    int n_vars() const noexcept { return n_vars_; }
    std::size_t tree_count() const noexcept { return trees_.size(); }
    /// M for a bag of 2M-1 trees.
    int quorum() const noexcept { return static_cast<int>(trees_.size() + 1) / 2; }
    std::span<const Tree> trees() const noexcept { return trees_; }
    const Tree& tree(std::size_t position) const { return trees_.at(position - 1); }  // 1-based

    VoteProfile vote_profile(const InputVector& x) const;
    VoteProfile vote_profile_index(std::uint64_t canonical_index) const noexcept;
    bool eval(const InputVector& x) const;
    bool eval_index(std::uint64_t canonical_index) const noexcept;

    BigCount max_tree_size() const;
    BigCount total_size() const;

    bool structurally_equal(const Bag& other) const;

private:
    std::vector<Tree> trees_;
    int n_vars_;
};

}  // namespace forestsmith
