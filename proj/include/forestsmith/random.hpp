#pragma once

#include "forestsmith/bag.hpp"
#include "forestsmith/distribution.hpp"

#include <cstdint>
#include <random>

namespace forestsmith {

/// Seeded generator state. Draws use only the raw mt19937_64 stream so the
/// corpus is identical across standard libraries.
class CorpusRng {
public:
    explicit CorpusRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, bound) by rejection; bound > 0.
    std::uint64_t below(std::uint64_t bound);
    bool coin() { return (engine_() >> 63) != 0; }

private:
    std::mt19937_64 engine_;
};

/// Random tree over x_1..x_l of depth <= max_depth that never queries a
/// variable twice on one path.
Tree random_tree(CorpusRng& rng, int l, int max_depth);

/// Throws PreconditionError for even n_trees or max_depth outside [0, l].
Bag random_bag(std::uint64_t seed, int n_trees, int l, int max_depth);

/// Integer weights in [0, max_weight]; all-zero draws are redrawn.
/// Throws PreconditionError for max_weight == 0 or l over the cap.
Distribution random_distribution(std::uint64_t seed, int l, std::uint64_t max_weight);

}  // namespace forestsmith
