#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "odadvcs/types.hpp"

namespace odadvcs {

struct Neighbor {
    std::size_t index;
    double squared_distance;

    bool operator==(const Neighbor&) const = default;
};

/// Strict weak order on (squared distance, index); the shared tie-break of
/// both scorers.
constexpr bool closer(const Neighbor& a, const Neighbor& b) noexcept {
    return a.squared_distance < b.squared_distance ||
           (a.squared_distance == b.squared_distance && a.index < b.index);
}

enum class IndexKind {
    automatic,    ///< k-d tree up to kMaxTreeDim dimensions, brute force above.
    kd_tree,
    brute_force,  ///< Blocked exhaustive scan.
};

/// Immutable exact k-nearest-neighbor index over the points of a dataset.
///
/// Queries are by point index and never return the query point itself (a
/// duplicate at another index is a regular neighbor at distance 0). Results
/// are the exact k smallest (squared distance, index) pairs, sorted by that
/// order. Safe for concurrent queries.
class NeighborIndex {
public:
    static constexpr std::size_t kMaxTreeDim = 12;
    static constexpr std::size_t kLeafSize = 16;

    explicit NeighborIndex(const Dataset& data, IndexKind kind = IndexKind::automatic);

    std::size_t size() const noexcept { return size_; }
    std::size_t dim() const noexcept { return dim_; }
    IndexKind kind() const noexcept { return kind_; }

    /// Throws InvalidTopR when k > size() - 1.
    std::vector<Neighbor> query(std::size_t point, std::size_t k) const;

    /// Allocation-free variant; `out` is overwritten.
    void query(std::size_t point, std::size_t k, std::vector<Neighbor>& out) const;

    /// Answers a batch of queries at once. For the brute-force kind the
    /// reference points are streamed in cache-sized blocks shared by the whole
    /// batch. `out` is resized to queries.size().
    void query_batch(std::span<const std::size_t> queries, std::size_t k,
                     std::vector<std::vector<Neighbor>>& out) const;

private:
    struct Node {
        std::size_t begin;  // range into order_
        std::size_t end;
        std::uint32_t left;  // 0 marks a leaf; the root is never a child
        std::uint32_t right;
        std::uint32_t split_dim;
        double split_value;
    };

    std::uint32_t build(std::size_t begin, std::size_t end);
    void search(std::uint32_t node, std::span<const double> q, std::size_t self, std::size_t k,
                std::vector<Neighbor>& heap) const;
    double box_distance(std::uint32_t node, std::span<const double> q) const;
    double squared_distance(std::span<const double> q, std::size_t slot) const;
    void check_k(std::size_t k) const;

    std::size_t size_ = 0;
    std::size_t dim_ = 0;
    IndexKind kind_ = IndexKind::automatic;
    std::vector<double> points_;       // permuted into tree order for locality
    std::vector<std::size_t> order_;   // slot -> original index
    std::vector<std::size_t> slot_of_; // original index -> slot
    std::vector<Node> nodes_;
    std::vector<double> bounds_;       // per node: dim_ lows then dim_ highs
};

}  // namespace odadvcs
