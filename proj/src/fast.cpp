#include "odadvcs/fast.hpp"

#include <numeric>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace odadvcs {

namespace {

constexpr std::size_t kBatch = 64;

}  // namespace

double score_from_neighbors(std::span<const Neighbor> neighbors, double offset) {
    // Farthest first = ascending similarity, matching the reference summation order.
    double sum = 0.0;
    for (auto it = neighbors.rbegin(); it != neighbors.rend(); ++it) {
        sum += similarity_from_distance(it->squared_distance, offset);
    }
    return sum;
}

ScoreReport score_all_fast(const Dataset& data, const Params& params, const FastOptions& options) {
    validate_dataset(data);
    params.check_against(data);
    const NeighborIndex index(data, options.index);
    return score_all_fast(index, params, options.threads);
}

ScoreReport score_all_fast(const NeighborIndex& index, const Params& params, int threads) {
    const std::size_t q = index.size();
    if (q == 0 || params.top() > q - 1) {
        throw InvalidTopR(params.top(), q);
    }
    const std::size_t k = params.top();
    const double offset = params.offset();
    std::vector<double> scores(q);
    const auto batches = static_cast<std::ptrdiff_t>((q + kBatch - 1) / kBatch);
#ifdef _OPENMP
    const int team = threads > 0 ? threads : omp_get_max_threads();
#else
    (void)threads;
#endif

#pragma omp parallel num_threads(team)
    {
        std::vector<std::size_t> queries;
        std::vector<std::vector<Neighbor>> neighbors;
#pragma omp for schedule(dynamic, 1)
        for (std::ptrdiff_t b = 0; b < batches; ++b) {
            const std::size_t begin = static_cast<std::size_t>(b) * kBatch;
            const std::size_t end = std::min(q, begin + kBatch);
            queries.resize(end - begin);
            std::iota(queries.begin(), queries.end(), begin);
            index.query_batch(queries, k, neighbors);
            for (std::size_t t = 0; t < queries.size(); ++t) {
                scores[queries[t]] = score_from_neighbors(neighbors[t], offset);
            }
        }
    }
    return ScoreReport::from_scores(std::move(scores));
}

}  // namespace odadvcs
