#pragma once

// Nearest-neighbor scorer.
//
// With the observation point sitting at offset n_d straight "above" the
// measured point, the similarity to any other point reduces to
// n_d / sqrt(d² + n_d²), which strictly decreases with the Euclidean distance
// d. The s_n largest similarities therefore belong to the s_n nearest
// neighbors, so each score is one exact kNN query plus the closed form. Points
// are processed in parallel with OpenMP; each score is computed independently
// in a fixed order, so output does not depend on the thread count.

#include <cmath>
#include <cstddef>
#include <span>

#include "odadvcs/neighbor_index.hpp"
#include "odadvcs/types.hpp"

namespace odadvcs {

struct FastOptions {
    IndexKind index = IndexKind::automatic;
    /// 0 uses the OpenMP runtime default.
    int threads = 0;
};

/// n_d / sqrt(d² + n_d²).
inline double similarity_from_distance(double squared_distance, double offset) noexcept {
    return offset / std::sqrt(squared_distance + offset * offset);
}

/// Score of one point from its nearest neighbors (sorted nearest first).
double score_from_neighbors(std::span<const Neighbor> neighbors, double offset);

ScoreReport score_all_fast(const Dataset& data, const Params& params, const FastOptions& options = {});

/// Same, reusing a prebuilt index over `data`.
ScoreReport score_all_fast(const NeighborIndex& index, const Params& params, int threads = 0);

}  // namespace odadvcs

