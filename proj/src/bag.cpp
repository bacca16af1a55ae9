#include "forestsmith/bag.hpp"

#include "forestsmith/errors.hpp"

#include <bit>

namespace forestsmith {

int VoteProfile::count_ones() const noexcept { return std::popcount(bits); }

std::string VoteProfile::to_string() const {
    std::string out = "(";
    for (int i = 0; i < length; ++i) {
        if (i) out += ',';
        out += ((bits >> i) & 1U) ? '1' : '0';
    }
    return out + ")";
}

VoteProfile VoteProfile::from_bits(const std::string& text) {
    VoteProfile b;
    b.length = static_cast<int>(text.size());
    for (std::size_t i = 0; i < text.size(); ++i)
        if (text[i] == '1') b.bits |= std::uint64_t{1} << i;
    return b;
}

Bag::Bag(std::vector<Tree> trees, int n_vars) : trees_(std::move(trees)), n_vars_(n_vars) {
    if (n_vars < 0 || n_vars > kMaxInputBits)
        throw StructuralError("bag declares " + std::to_string(n_vars) + " variables, outside [0, 63]");
    if (trees_.size() % 2 == 0)
        throw StructuralError("bag must have odd cardinality, got " + std::to_string(trees_.size()) +
                              " trees");
    if (trees_.size() > static_cast<std::size_t>(kMaxInputBits))
        throw StructuralError("bag has more than 63 trees");
    for (std::size_t i = 0; i < trees_.size(); ++i)
        if (trees_[i].max_var() > n_vars)
            throw StructuralError("tree " + std::to_string(i + 1) + " queries x_" +
                                  std::to_string(trees_[i].max_var()) + " but the bag declares " +
                                  std::to_string(n_vars) + " variables");
}

VoteProfile Bag::vote_profile(const InputVector& x) const {
    if (x.length() != n_vars_)
        throw StructuralError("input of length " + std::to_string(x.length()) + " for a bag over " +
                              std::to_string(n_vars_) + " variables");
    return vote_profile_index(x.index());
}

VoteProfile Bag::vote_profile_index(std::uint64_t canonical_index) const noexcept {
    VoteProfile b;
    b.length = static_cast<int>(trees_.size());
    for (std::size_t i = 0; i < trees_.size(); ++i)
        if (trees_[i].eval_index(canonical_index)) b.bits |= std::uint64_t{1} << i;
    return b;
}

bool Bag::eval(const InputVector& x) const { return vote_profile(x).count_ones() >= quorum(); }

bool Bag::eval_index(std::uint64_t canonical_index) const noexcept {
    int ones = 0;
    for (const Tree& t : trees_) ones += t.eval_index(canonical_index);
    return ones >= quorum();
}

BigCount Bag::max_tree_size() const {
    BigCount best = 0;
    for (const Tree& t : trees_)
        if (t.size() > best) best = t.size();
    return best;
}

BigCount Bag::total_size() const {
    BigCount sum = 0;
    for (const Tree& t : trees_) sum += t.size();
    return sum;
}

bool Bag::structurally_equal(const Bag& other) const {
    if (n_vars_ != other.n_vars_ || trees_.size() != other.trees_.size()) return false;
    for (std::size_t i = 0; i < trees_.size(); ++i)
        if (!trees_[i].structurally_equal(other.trees_[i])) return false;
    return true;
}

}  // namespace forestsmith
