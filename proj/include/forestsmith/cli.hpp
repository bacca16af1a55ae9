#pragma once

#include "forestsmith/numeric.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace forestsmith::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

/// One CSV row of `forestsmith sweep`.
struct SweepRecord {
    std::string mode;          // kofn | majority | lossy
    std::string construction;  // choose | naive | reduced | random
    int n = 0;                 // variables (kofn, majority) or trees (lossy)
    std::optional<int> k;
    std::optional<int> c;
    std::optional<int> K;
    std::optional<std::uint64_t> seed;
    BigCount max_tree_size;
    BigCount total_size;
    BigCount bound_value;
    Rational ratio;  // max_tree_size / bound_value
    bool verified = false;
    Rational error;
};

/// Column order of the sweep CSV.
inline constexpr const char* kSweepHeader =
    "mode,construction,n,k,c,K,seed,max_tree_size,total_size,bound_value,ratio,verified,error,error_decimal";

std::string to_csv_row(const SweepRecord& record);

/// Every odd n in [n_min, n_max] (n >= 3) and every k in [1, n]; each bag is
/// checked against the threshold oracle on all inputs.
std::vector<SweepRecord> sweep_kofn(int n_min, int n_max, bool include_naive);

/// Every odd n in [n_min, n_max] and every 1 <= c <= min(c_max, m-2).
std::vector<SweepRecord> sweep_majority(int n_min, int n_max, int c_max);

enum class DistributionMix { Uniform, Random, Mixed };

struct LossySweepOptions {
    std::uint64_t seed = 0;
    int count = 0;
    int trees = 9;
    int l = 8;
    int max_depth = 4;
    int K = 1;
    int c = 1;
    std::uint64_t max_weight = 16;
    DistributionMix mix = DistributionMix::Mixed;
};

/// Seeds seed, seed+1, ...; even offsets use a uniform distribution and odd
/// ones a random table when mix == Mixed.
std::vector<SweepRecord> sweep_lossy(const LossySweepOptions& options);

/// Entry point shared by the forestsmith binary and the tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace forestsmith::cli
