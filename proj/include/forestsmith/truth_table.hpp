#pragma once

#include "forestsmith/bag.hpp"
#include "forestsmith/tree.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace forestsmith {

/// Hard ceiling on exhaustively enumerated variable counts.
inline constexpr int kTruthTableCap = 24;
/// Above this, enumeration is allowed but callers should warn.
inline constexpr int kTruthTableSoftCap = 20;

/// kTruthTableCap, lowered (never raised) by FORESTSMITH_MAX_L.
int effective_var_cap();

/// Throws CapacityError if l is negative or above effective_var_cap().
void require_enumerable(int l);

/// 2^l packed bits indexed by the canonical input encoding.
class TruthTable {
public:
    explicit TruthTable(int l, bool fill = false);

    int num_vars() const noexcept { return l_; }
    std::uint64_t size() const noexcept { return std::uint64_t{1} << l_; }

    bool get(std::uint64_t index) const noexcept { return (words_[index >> 6] >> (index & 63)) & 1U; }
    void set(std::uint64_t index, bool value) noexcept;

    std::uint64_t count_ones() const noexcept;
    bool is_constant(bool value) const noexcept;

    TruthTable operator~() const;
    TruthTable operator&(const TruthTable& other) const;
    TruthTable operator|(const TruthTable& other) const;
    TruthTable operator^(const TruthTable& other) const;
    bool operator==(const TruthTable& other) const noexcept;

    /// Bits in canonical order, e.g. "0101" for x_1 over l=2.
    std::string to_string() const;

    static TruthTable from_predicate(int l, const std::function<bool(std::uint64_t)>& predicate);

private:
    void clear_padding() noexcept;

    int l_;
    std::vector<std::uint64_t> words_;
};

TruthTable truth_table(const Tree& tree, int l);
/// Majority vote of the bag over its own n_vars.
TruthTable truth_table(const Bag& bag);

namespace detail {
/// Splits [0, count) into contiguous ranges processed by worker threads when
/// the range is large and more than one hardware thread exists.
void for_each_range(std::uint64_t count,
                    const std::function<void(std::uint64_t begin, std::uint64_t end)>& body);
}  // namespace detail

}  // namespace forestsmith
