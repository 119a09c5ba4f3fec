#pragma once

// Serial reference scorer. Builds the (n+1)-dimensional vectors explicitly and
// evaluates the absolute-value cosine formula for every ordered pair, so it is
// Θ(q²·n). It exists as the correctness oracle for the fast path.

#include <cstddef>
#include <vector>

#include "odadvcs/types.hpp"

namespace odadvcs {

/// A point lifted into n + 1 dimensions.
struct AugmentedPoint {
    std::vector<double> coords;
};

/// Appends a zero coordinate to every point.
std::vector<AugmentedPoint> augment(const Dataset& data);

/// Copy of `measured` with its last coordinate replaced by `offset`.
AugmentedPoint observation_point(const AugmentedPoint& measured, double offset);

/// Similarity between the vectors o→xi and o→xj:
///
///   Σ_k |o_k − xi_k|·|o_k − xj_k|  /  (‖o − xi‖·‖o − xj‖)
///
/// With `o` built by observation_point(xi, n_d) the value lies in (0, 1] and
/// equals n_d / sqrt(d² + n_d²), d being the n-dimensional distance xi–xj.
double cosine_similarity(const AugmentedPoint& o, const AugmentedPoint& xi, const AugmentedPoint& xj);

/// Sum of the s_n largest similarities measured from point i.
double score_point(const Dataset& data, std::size_t i, const Params& params);

/// Scores every point; lower scores are more outlying.
ScoreReport score_all_naive(const Dataset& data, const Params& params);

namespace detail {

/// Sums the `top` largest entries of `values` in ascending order. Reorders
/// `values`. The result depends only on the multiset of values.
double sum_largest(std::vector<double>& values, std::size_t top);

}  // namespace detail

}  // namespace odadvcs
