#include "forestsmith/tree.hpp"

#include "forestsmith/errors.hpp"

#include <bit>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace forestsmith {

// ---------------------------------------------------------------------------
// InputVector

InputVector::InputVector(std::uint64_t canonical_index, int length)
    : bits_(canonical_index), length_(length) {
    if (length < 0 || length > kMaxInputBits)
        throw StructuralError("input length " + std::to_string(length) + " outside [0, 63]");
    if (length < 64 && (canonical_index >> length) != 0)
        throw StructuralError("canonical index has bits beyond length " + std::to_string(length));
}

InputVector InputVector::from_bits(const std::string& bits) {
    std::uint64_t index = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1')
            index |= std::uint64_t{1} << i;
        else if (bits[i] != '0')
            throw StructuralError("input bits must be 0/1, got '" + bits + "'");
    }
    return InputVector(index, static_cast<int>(bits.size()));
}

bool InputVector::operator[](VarIndex v) const {
    if (v.value < 1 || v.value > length_)
        throw StructuralError("variable x_" + std::to_string(v.value) + " outside input of length " +
                              std::to_string(length_));
    return (bits_ >> (v.value - 1)) & 1U;
}

int InputVector::count_ones() const noexcept { return std::popcount(bits_); }

std::string InputVector::to_string() const {
    std::string out = "(";
    for (int i = 0; i < length_; ++i) {
        if (i) out += ',';
        out += ((bits_ >> i) & 1U) ? '1' : '0';
    }
    return out + ")";
}

// ---------------------------------------------------------------------------
// Tree

class TreeBuilder {
public:
    using NodePtr = Tree::NodePtr;

    static const NodePtr& leaf(bool label) {
        static const NodePtr zero = make_leaf(false);
        static const NodePtr one = make_leaf(true);
        return label ? one : zero;
    }

    static NodePtr make_node(int var, NodePtr lo, NodePtr hi) {
        auto n = std::make_shared<Tree::Node>();
        n->var = var;
        n->size = 1 + lo->size + hi->size;
        n->ones = lo->ones + hi->ones;
        n->zeros = lo->zeros + hi->zeros;
        n->max_var = std::max({var, lo->max_var, hi->max_var});
        n->depth = 1 + std::max(lo->depth, hi->depth);
        n->lo = std::move(lo);
        n->hi = std::move(hi);
        return n;
    }

    static Tree wrap(NodePtr p) { return Tree(std::move(p)); }
    static const NodePtr& unwrap(const Tree& t) { return t.root_; }

private:
    static NodePtr make_leaf(bool label) {
        auto n = std::make_shared<Tree::Node>();
        n->label = label;
        n->size = 1;
        n->ones = label ? 1 : 0;
        n->zeros = label ? 0 : 1;
        return n;
    }
};

Tree Tree::leaf(bool label) { return Tree(TreeBuilder::leaf(label)); }

Tree Tree::node(VarIndex var, Tree lo, Tree hi) {
    if (var.value < 1 || var.value > kMaxInputBits)
        throw StructuralError("tree node queries x_" + std::to_string(var.value) + ", outside [1, 63]");
    return Tree(TreeBuilder::make_node(var.value, std::move(lo.root_), std::move(hi.root_)));
}

Tree Tree::variable(VarIndex var) { return node(var, leaf(false), leaf(true)); }

bool Tree::is_leaf() const noexcept { return root_->var == 0; }

bool Tree::label() const {
    if (!is_leaf()) throw StructuralError("label() on an internal node");
    return root_->label;
}

VarIndex Tree::var() const {
    if (is_leaf()) throw StructuralError("var() on a leaf");
    return VarIndex{root_->var};
}

Tree Tree::lo() const {
    if (is_leaf()) throw StructuralError("lo() on a leaf");
    return Tree(root_->lo);
}

Tree Tree::hi() const {
    if (is_leaf()) throw StructuralError("hi() on a leaf");
    return Tree(root_->hi);
}

const BigCount& Tree::size() const noexcept { return root_->size; }
const BigCount& Tree::one_leaves() const noexcept { return root_->ones; }
const BigCount& Tree::zero_leaves() const noexcept { return root_->zeros; }
int Tree::max_var() const noexcept { return root_->max_var; }
int Tree::depth() const noexcept { return root_->depth; }

std::size_t Tree::stored_nodes() const {
    std::unordered_set<const Node*> seen;
    std::vector<const Node*> stack{root_.get()};
    while (!stack.empty()) {
        const Node* n = stack.back();
        stack.pop_back();
        if (!seen.insert(n).second) continue;
        if (n->var != 0) {
            stack.push_back(n->lo.get());
            stack.push_back(n->hi.get());
        }
    }
    return seen.size();
}

bool Tree::eval(const InputVector& x) const {
    if (max_var() > x.length())
        throw StructuralError("tree queries x_" + std::to_string(max_var()) + " but the input has " +
                              std::to_string(x.length()) + " variables");
    return eval_index(x.index());
}

bool Tree::eval_index(std::uint64_t canonical_index) const noexcept {
    const Node* n = root_.get();
    while (n->var != 0) n = ((canonical_index >> (n->var - 1)) & 1U) ? n->hi.get() : n->lo.get();
    return n->label;
}

bool Tree::structurally_equal(const Tree& other) const {
    std::set<std::pair<const Node*, const Node*>> known_equal;
    auto equal = [&](auto&& self, const Node* a, const Node* b) -> bool {
        if (a == b) return true;
        if (a->var != b->var) return false;
        if (a->var == 0) return a->label == b->label;
        if (a->size != b->size) return false;
        if (known_equal.contains({a, b})) return true;
        if (!self(self, a->lo.get(), b->lo.get()) || !self(self, a->hi.get(), b->hi.get())) return false;
        known_equal.insert({a, b});
        return true;
    };
    return equal(equal, root_.get(), other.root_.get());
}

// ---------------------------------------------------------------------------
// Composition

Tree graft_leaves(const Tree& tree, const Tree& on_zero, const Tree& on_one) {
    using NodePtr = Tree::NodePtr;
    const NodePtr& zero_sub = TreeBuilder::unwrap(on_zero);
    const NodePtr& one_sub = TreeBuilder::unwrap(on_one);
    std::unordered_map<const Tree::Node*, NodePtr> memo;

    auto graft = [&](auto&& self, const NodePtr& n) -> NodePtr {
        if (n->var == 0) return n->label ? one_sub : zero_sub;
        if (auto it = memo.find(n.get()); it != memo.end()) return it->second;
        NodePtr lo = self(self, n->lo);
        NodePtr hi = self(self, n->hi);
        NodePtr result = (lo == n->lo && hi == n->hi) ? n : TreeBuilder::make_node(n->var, lo, hi);
        memo.emplace(n.get(), result);
        return result;
    };
    return TreeBuilder::wrap(graft(graft, TreeBuilder::unwrap(tree)));
}

Tree negate(const Tree& tree) { return graft_leaves(tree, Tree::leaf(true), Tree::leaf(false)); }

Tree conjoin(const Tree& t1, const Tree& t2) { return graft_leaves(t1, Tree::leaf(false), t2); }

Tree disjoin(const Tree& t1, const Tree& t2) { return graft_leaves(t1, t2, Tree::leaf(true)); }

Tree branch_on(const Tree& cond, const Tree& if_one, const Tree& if_zero) {
    return graft_leaves(cond, if_zero, if_one);
}

Tree prefix_graft(int p, const std::map<std::uint64_t, Tree>& selector) {
    if (p < 1 || p > 24) throw PreconditionError("prefix_graft: p = " + std::to_string(p) + " outside [1, 24]");
    const std::uint64_t prefixes = std::uint64_t{1} << p;
    for (const auto& [prefix, subtree] : selector)
        if (prefix >= prefixes)
            throw PreconditionError("prefix_graft: selector key " + std::to_string(prefix) +
                                    " is not a " + std::to_string(p) + "-bit prefix");

    auto build = [&](auto&& self, int level, std::uint64_t prefix) -> Tree {
        if (level > p) {
            auto it = selector.find(prefix);
            if (it == selector.end())
                throw PreconditionError("prefix_graft: no subtree for prefix " +
                                        InputVector(prefix, p).to_string());
            return it->second;
        }
        Tree lo = self(self, level + 1, prefix);
        Tree hi = self(self, level + 1, prefix | (std::uint64_t{1} << (level - 1)));
        return Tree::node(VarIndex{level}, std::move(lo), std::move(hi));
    };
    return build(build, 1, 0);
}

std::string to_expression(const Tree& tree) {
    if (tree.is_leaf()) return tree.label() ? "1" : "0";
    return "x" + std::to_string(tree.var().value) + "(" + to_expression(tree.lo()) + "," +
           to_expression(tree.hi()) + ")";
}

}  // namespace forestsmith
