#include "odadvcs/neighbor_index.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

namespace odadvcs {

namespace {

constexpr std::size_t kBlockPoints = 1024;

// Bounded max-heap of the k best candidates; front() is the current worst.
inline void offer(std::vector<Neighbor>& heap, std::size_t k, Neighbor candidate) {
    if (heap.size() < k) {
        heap.push_back(candidate);
        std::push_heap(heap.begin(), heap.end(), closer);
    } else if (closer(candidate, heap.front())) {
        std::pop_heap(heap.begin(), heap.end(), closer);
        heap.back() = candidate;
        std::push_heap(heap.begin(), heap.end(), closer);
    }
}

inline void finish(std::vector<Neighbor>& heap) {
    std::sort_heap(heap.begin(), heap.end(), closer);
}

}  // namespace

NeighborIndex::NeighborIndex(const Dataset& data, IndexKind kind)
    : size_(data.size()), dim_(data.dim()), kind_(kind) {
    validate_dataset(data);
    if (kind_ == IndexKind::automatic) {
        kind_ = dim_ <= kMaxTreeDim ? IndexKind::kd_tree : IndexKind::brute_force;
    }
    points_.assign(data.values().begin(), data.values().end());
    order_.resize(size_);
    std::iota(order_.begin(), order_.end(), std::size_t{0});

    if (kind_ == IndexKind::kd_tree) {
        nodes_.reserve(2 * (size_ / kLeafSize + 1));
        bounds_.reserve(nodes_.capacity() * 2 * dim_);
        build(0, size_);
        std::vector<double> permuted(points_.size());
        for (std::size_t slot = 0; slot < size_; ++slot) {
            std::copy_n(points_.begin() + static_cast<std::ptrdiff_t>(order_[slot] * dim_), dim_,
                        permuted.begin() + static_cast<std::ptrdiff_t>(slot * dim_));
        }
        points_ = std::move(permuted);
    }
    slot_of_.resize(size_);
    for (std::size_t slot = 0; slot < size_; ++slot) {
        slot_of_[order_[slot]] = slot;
    }
}

// Runs before points_ is permuted, so coordinates are addressed by original index.
std::uint32_t NeighborIndex::build(std::size_t begin, std::size_t end) {
    const auto id = static_cast<std::uint32_t>(nodes_.size());
    nodes_.push_back({begin, end, 0, 0, 0, 0.0});
    const std::size_t base = bounds_.size();
    bounds_.resize(base + 2 * dim_);
    for (std::size_t k = 0; k < dim_; ++k) {
        bounds_[base + k] = std::numeric_limits<double>::infinity();
        bounds_[base + dim_ + k] = -std::numeric_limits<double>::infinity();
    }
    for (std::size_t s = begin; s < end; ++s) {
        const double* p = points_.data() + order_[s] * dim_;
        for (std::size_t k = 0; k < dim_; ++k) {
            bounds_[base + k] = std::min(bounds_[base + k], p[k]);
            bounds_[base + dim_ + k] = std::max(bounds_[base + dim_ + k], p[k]);
        }
    }
    if (end - begin <= kLeafSize) {
        return id;
    }

    std::size_t split = 0;
    double widest = -1.0;
    for (std::size_t k = 0; k < dim_; ++k) {
        const double extent = bounds_[base + dim_ + k] - bounds_[base + k];
        if (extent > widest) {
            widest = extent;
            split = k;
        }
    }
    if (widest <= 0.0) {
        return id;  // all points identical; keep as one leaf
    }

    const std::size_t mid = begin + (end - begin) / 2;
    const auto first = order_.begin() + static_cast<std::ptrdiff_t>(begin);
    std::nth_element(first, order_.begin() + static_cast<std::ptrdiff_t>(mid),
                     order_.begin() + static_cast<std::ptrdiff_t>(end),
                     [&](std::size_t a, std::size_t b) {
                         const double va = points_[a * dim_ + split];
                         const double vb = points_[b * dim_ + split];
                         return va < vb || (va == vb && a < b);
                     });
    const double split_value = points_[order_[mid] * dim_ + split];

    const std::uint32_t left = build(begin, mid);
    const std::uint32_t right = build(mid, end);
    Node& node = nodes_[id];
    node.left = left;
    node.right = right;
    node.split_dim = static_cast<std::uint32_t>(split);
    node.split_value = split_value;
    return id;
}

double NeighborIndex::squared_distance(std::span<const double> q, std::size_t slot) const {
    const double* p = points_.data() + slot * dim_;
    double sum = 0.0;
    for (std::size_t k = 0; k < dim_; ++k) {
        const double diff = q[k] - p[k];
        sum += diff * diff;
    }
    return sum;
}

// Never exceeds the computed distance of any point inside the box: rounding is
// monotone, and each per-dimension term is bounded by the point's term.
double NeighborIndex::box_distance(std::uint32_t node, std::span<const double> q) const {
    const double* lo = bounds_.data() + static_cast<std::size_t>(node) * 2 * dim_;
    const double* hi = lo + dim_;
    double sum = 0.0;
    for (std::size_t k = 0; k < dim_; ++k) {
        double diff = 0.0;
        if (q[k] < lo[k]) {
            diff = q[k] - lo[k];
        } else if (q[k] > hi[k]) {
            diff = q[k] - hi[k];
        }
        sum += diff * diff;
    }
    return sum;
}

void NeighborIndex::search(std::uint32_t id, std::span<const double> q, std::size_t self,
                           std::size_t k, std::vector<Neighbor>& heap) const {
    const Node& node = nodes_[id];
    if (node.left == 0) {
        for (std::size_t slot = node.begin; slot < node.end; ++slot) {
            const std::size_t index = order_[slot];
            if (index != self) {
                offer(heap, k, {index, squared_distance(q, slot)});
            }
        }
        return;
    }
    const bool go_left = q[node.split_dim] < node.split_value;
    const std::uint32_t near = go_left ? node.left : node.right;
    const std::uint32_t far = go_left ? node.right : node.left;
    for (const std::uint32_t child : {near, far}) {
        // A box at exactly the current worst distance may still hold a tie with a smaller index.
        if (heap.size() < k || box_distance(child, q) <= heap.front().squared_distance) {
            search(child, q, self, k, heap);
        }
    }
}

void NeighborIndex::check_k(std::size_t k) const {
    if (size_ == 0 || k > size_ - 1) {
        throw InvalidTopR(k, size_);
    }
}

std::vector<Neighbor> NeighborIndex::query(std::size_t point, std::size_t k) const {
    std::vector<Neighbor> out;
    query(point, k, out);
    return out;
}

void NeighborIndex::query(std::size_t point, std::size_t k, std::vector<Neighbor>& out) const {
    check_k(k);
    if (point >= size_) {
        throw InvalidSpec("query index " + std::to_string(point) + " out of range");
    }
    out.clear();
    out.reserve(k);
    if (k == 0) {
        return;
    }
    const std::size_t slot = slot_of_[point];
    const std::span<const double> q(points_.data() + slot * dim_, dim_);
    if (kind_ == IndexKind::kd_tree) {
        search(0, q, point, k, out);
    } else {
        for (std::size_t s = 0; s < size_; ++s) {
            if (s != slot) {
                offer(out, k, {order_[s], squared_distance(q, s)});
            }
        }
    }
    finish(out);
}

void NeighborIndex::query_batch(std::span<const std::size_t> queries, std::size_t k,
                                std::vector<std::vector<Neighbor>>& out) const {
    check_k(k);
    out.resize(queries.size());
    if (kind_ == IndexKind::kd_tree) {
        for (std::size_t t = 0; t < queries.size(); ++t) {
            query(queries[t], k, out[t]);
        }
        return;
    }
    for (std::size_t t = 0; t < queries.size(); ++t) {
        if (queries[t] >= size_) {
            throw InvalidSpec("query index " + std::to_string(queries[t]) + " out of range");
        }
        out[t].clear();
        out[t].reserve(k);
    }
    if (k == 0) {
        return;
    }
    for (std::size_t block = 0; block < size_; block += kBlockPoints) {
        const std::size_t block_end = std::min(size_, block + kBlockPoints);
        for (std::size_t t = 0; t < queries.size(); ++t) {
            const std::size_t self = slot_of_[queries[t]];
            const std::span<const double> q(points_.data() + self * dim_, dim_);
            auto& heap = out[t];
            for (std::size_t s = block; s < block_end; ++s) {
                if (s != self) {
                    offer(heap, k, {order_[s], squared_distance(q, s)});
                }
            }
        }
    }
    for (auto& heap : out) {
        finish(heap);
    }
}

}  // namespace odadvcs
