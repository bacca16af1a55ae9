#pragma once

#include "forestsmith/numeric.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <string>

namespace forestsmith {

/// 1-based variable index, x_1 ... x_l.
struct VarIndex {
    int value = 1;

    constexpr VarIndex() = default;
    constexpr explicit VarIndex(int v) : value(v) {}

    friend constexpr bool operator==(VarIndex, VarIndex) = default;
    friend constexpr auto operator<=>(VarIndex, VarIndex) = default;
};

/// Largest variable count an InputVector can carry.
inline constexpr int kMaxInputBits = 63;

/// An assignment to x_1..x_l. The canonical integer encoding puts x_1 in the
/// least-significant bit.
class InputVector {
public:
    InputVector(std::uint64_t canonical_index, int length);

    static InputVector from_bits(const std::string& bits);  // "101" -> x_1=1, x_2=0, x_3=1

    int length() const noexcept { return length_; }
    std::uint64_t index() const noexcept { return bits_; }
    bool operator[](VarIndex v) const;
    int count_ones() const noexcept;

    /// "(1,0,1)" in x_1..x_l order.
    std::string to_string() const;

    friend bool operator==(const InputVector&, const InputVector&) = default;

private:
    std::uint64_t bits_;
    int length_;
};

/// Immutable simple decision tree. Internal nodes query one variable; the lo
/// child is taken when the variable is 0. Subtrees may be shared in memory
/// but every query reports the expanded (tree, not DAG) quantities.
class Tree {
public:
    struct Node;
    using NodePtr = std::shared_ptr<const Node>;

    static Tree leaf(bool label);
    static Tree node(VarIndex var, Tree lo, Tree hi);
    /// Node(x_v, Leaf(0), Leaf(1)).
    static Tree variable(VarIndex var);

    bool is_leaf() const noexcept;
    bool label() const;     // leaf only
    VarIndex var() const;   // internal only
    Tree lo() const;        // internal only
    Tree hi() const;        // internal only

    /// Expanded node count, leaves included.
    const BigCount& size() const noexcept;
    const BigCount& one_leaves() const noexcept;
    const BigCount& zero_leaves() const noexcept;
    /// Largest variable index queried, 0 for a leaf.
    int max_var() const noexcept;
    int depth() const noexcept;
    /// Number of distinct stored nodes.
    std::size_t stored_nodes() const;

    /// Throws StructuralError if the tree queries a variable beyond x.length().
    bool eval(const InputVector& x) const;
    /// Unchecked evaluation on a canonical index.
    bool eval_index(std::uint64_t canonical_index) const noexcept;

    bool structurally_equal(const Tree& other) const;

    const Node* raw() const noexcept { return root_.get(); }

private:
    explicit Tree(NodePtr root) : root_(std::move(root)) {}

    NodePtr root_;

    friend class TreeBuilder;
};

struct Tree::Node {
    bool label = false;
    int var = 0;  // 0 marks a leaf
    NodePtr lo;
    NodePtr hi;
    BigCount size;
    BigCount ones;
    BigCount zeros;
    int max_var = 0;
    int depth = 0;
};

/// Replaces every 0-leaf by `on_zero` and every 1-leaf by `on_one`.
/// The logical result is the copy-substitution; storage is shared.
Tree graft_leaves(const Tree& tree, const Tree& on_zero, const Tree& on_one);

/// Exchanges the 0 and 1 leaf labels. Size is unchanged.
Tree negate(const Tree& tree);

/// Replaces each 1-leaf of t1 by a copy of t2.
Tree conjoin(const Tree& t1, const Tree& t2);

/// Replaces each 0-leaf of t1 by a copy of t2.
Tree disjoin(const Tree& t1, const Tree& t2);

/// (cond ∧ if_one) ∨ (¬cond ∧ if_zero), built by grafting onto the leaves of
/// cond. Same substitution as conjoin/disjoin with both leaf kinds replaced.
Tree branch_on(const Tree& cond, const Tree& if_one, const Tree& if_zero);

/// Complete branching on x_1..x_p (x_1 at the root) with `selector[prefix]`
/// grafted at the leaf reached by `prefix` (canonical encoding, x_1 = bit 0).
/// Throws PreconditionError if p is out of range or a prefix is missing.
Tree prefix_graft(int p, const std::map<std::uint64_t, Tree>& selector);

/// Debug rendering: "0", "1", "x3(0,1)".
std::string to_expression(const Tree& tree);

}  // namespace forestsmith
