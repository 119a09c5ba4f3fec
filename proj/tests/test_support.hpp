#pragma once

// Test-only helpers. The oracle here evaluates the augmented-dimension
// similarity in long double straight from its definition, independent of the
// library's scorers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "odadvcs/types.hpp"

namespace odadvcs::testing {

/// Literal formula on explicitly built (n+1)-dimensional vectors.
inline long double oracle_similarity(std::span<const double> xi, std::span<const double> xj, double offset) {
    const std::size_t n = xi.size();
    std::vector<long double> o(xi.begin(), xi.end());
    o.push_back(offset);
    std::vector<long double> a(xi.begin(), xi.end());
    a.push_back(0.0L);
    std::vector<long double> b(xj.begin(), xj.end());
    b.push_back(0.0L);
    long double num = 0.0L;
    long double na = 0.0L;
    long double nb = 0.0L;
    for (std::size_t k = 0; k <= n; ++k) {
        num += std::fabs(o[k] - a[k]) * std::fabs(o[k] - b[k]);
        na += (o[k] - a[k]) * (o[k] - a[k]);
        nb += (o[k] - b[k]) * (o[k] - b[k]);
    }
    return num / (std::sqrt(na) * std::sqrt(nb));
}

/// Brute force: every pairwise similarity, sort descending, sum the top r.
inline std::vector<long double> oracle_scores(const Dataset& data, double offset, std::size_t top) {
    std::vector<long double> out(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        std::vector<long double> sims;
        for (std::size_t j = 0; j < data.size(); ++j) {
            if (j != i) {
                sims.push_back(oracle_similarity(data.row(i), data.row(j), offset));
            }
        }
        std::sort(sims.begin(), sims.end(), std::greater<>());
        long double sum = 0.0L;
        for (std::size_t t = 0; t < top; ++t) {
            sum += sims[t];
        }
        out[i] = sum;
    }
    return out;
}

inline Dataset random_dataset(std::mt19937_64& rng, std::size_t q, std::size_t n, double lo = -100.0,
                              double hi = 100.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> values(q * n);
    for (auto& v : values) {
        v = u(rng);
    }
    return Dataset(q, n, std::move(values));
}

/// Coordinates on a 1/8 grid: sums and differences of such values within
/// ±2^40 are exact, so translations are exact too.
inline Dataset dyadic_dataset(std::mt19937_64& rng, std::size_t q, std::size_t n) {
    std::uniform_int_distribution<int> u(-800, 800);
    std::vector<double> values(q * n);
    for (auto& v : values) {
        v = u(rng) / 8.0;
    }
    return Dataset(q, n, std::move(values));
}

}  // namespace odadvcs::testing
