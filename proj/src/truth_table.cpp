#include "forestsmith/truth_table.hpp"

#include "forestsmith/errors.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <string>
#include <thread>

namespace forestsmith {

int effective_var_cap() {
    int cap = kTruthTableCap;
    if (const char* env = std::getenv("FORESTSMITH_MAX_L")) {
        char* end = nullptr;
        const long requested = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && requested >= 0) cap = std::min<long>(cap, requested);
    }
    return cap;
}

void require_enumerable(int l) {
    const int cap = effective_var_cap();
    if (l < 0 || l > cap)
        throw CapacityError("exhaustive enumeration over " + std::to_string(l) +
                            " variables exceeds the cap of " + std::to_string(cap));
}

TruthTable::TruthTable(int l, bool fill) : l_(l) {
    require_enumerable(l);
    const std::uint64_t bits = std::uint64_t{1} << l;
    words_.assign((bits + 63) / 64, fill ? ~std::uint64_t{0} : 0);
    clear_padding();
}

void TruthTable::clear_padding() noexcept {
    if (l_ < 6) words_[0] &= (std::uint64_t{1} << (std::uint64_t{1} << l_)) - 1;
}

void TruthTable::set(std::uint64_t index, bool value) noexcept {
    const std::uint64_t mask = std::uint64_t{1} << (index & 63);
    if (value)
        words_[index >> 6] |= mask;
    else
        words_[index >> 6] &= ~mask;
}

std::uint64_t TruthTable::count_ones() const noexcept {
    std::uint64_t n = 0;
    for (auto w : words_) n += std::popcount(w);
    return n;
}

bool TruthTable::is_constant(bool value) const noexcept {
    return count_ones() == (value ? size() : 0);
}

TruthTable TruthTable::operator~() const {
    TruthTable out = *this;
    for (auto& w : out.words_) w = ~w;
    out.clear_padding();
    return out;
}

namespace {
void require_same_width(const TruthTable& a, const TruthTable& b) {
    if (a.num_vars() != b.num_vars())
        throw PreconditionError("truth tables over " + std::to_string(a.num_vars()) + " and " +
                                std::to_string(b.num_vars()) + " variables");
}
}  // namespace

TruthTable TruthTable::operator&(const TruthTable& other) const {
    require_same_width(*this, other);
    TruthTable out = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] &= other.words_[i];
    return out;
}

TruthTable TruthTable::operator|(const TruthTable& other) const {
    require_same_width(*this, other);
    TruthTable out = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] |= other.words_[i];
    return out;
}

TruthTable TruthTable::operator^(const TruthTable& other) const {
    require_same_width(*this, other);
    TruthTable out = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] ^= other.words_[i];
    return out;
}

bool TruthTable::operator==(const TruthTable& other) const noexcept {
    return l_ == other.l_ && words_ == other.words_;
}

std::string TruthTable::to_string() const {
    std::string out;
    out.reserve(size());
    for (std::uint64_t i = 0; i < size(); ++i) out += get(i) ? '1' : '0';
    return out;
}

TruthTable TruthTable::from_predicate(int l, const std::function<bool(std::uint64_t)>& predicate) {
    TruthTable out(l);
    for (std::uint64_t i = 0; i < out.size(); ++i) out.set(i, predicate(i));
    return out;
}

namespace detail {

void for_each_range(std::uint64_t count,
                    const std::function<void(std::uint64_t, std::uint64_t)>& body) {
    constexpr std::uint64_t kParallelThreshold = std::uint64_t{1} << 16;
    const unsigned hw = std::thread::hardware_concurrency();
    if (count < kParallelThreshold || hw <= 1) {
        body(0, count);
        return;
    }
    const std::uint64_t workers = std::min<std::uint64_t>(hw, 16);
    // Ranges are multiples of 64 so workers never share a truth-table word.
    std::uint64_t chunk = (count + workers - 1) / workers;
    chunk = (chunk + 63) & ~std::uint64_t{63};
    std::vector<std::jthread> threads;
    for (std::uint64_t begin = 0; begin < count; begin += chunk)
        threads.emplace_back([&body, begin, end = std::min(count, begin + chunk)] { body(begin, end); });
}

}  // namespace detail

TruthTable truth_table(const Tree& tree, int l) {
    TruthTable out(l);
    if (tree.max_var() > l)
        throw StructuralError("tree queries x_" + std::to_string(tree.max_var()) + " beyond l = " +
                              std::to_string(l));
    detail::for_each_range(out.size(), [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) out.set(i, tree.eval_index(i));
    });
    return out;
}

TruthTable truth_table(const Bag& bag) {
    TruthTable out(bag.n_vars());
    detail::for_each_range(out.size(), [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) out.set(i, bag.eval_index(i));
    });
    return out;
}

}  // namespace forestsmith
