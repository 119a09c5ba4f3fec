#include "odadvcs/naive.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace odadvcs {

std::vector<AugmentedPoint> augment(const Dataset& data) {
    std::vector<AugmentedPoint> out;
    out.reserve(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto row = data.row(i);
        AugmentedPoint p;
        p.coords.reserve(row.size() + 1);
        p.coords.assign(row.begin(), row.end());
        p.coords.push_back(0.0);
        out.push_back(std::move(p));
    }
    return out;
}

AugmentedPoint observation_point(const AugmentedPoint& measured, double offset) {
    AugmentedPoint o = measured;
    o.coords.back() = offset;
    return o;
}

double cosine_similarity(const AugmentedPoint& o, const AugmentedPoint& xi, const AugmentedPoint& xj) {
    double numerator = 0.0;
    double norm_i = 0.0;
    double norm_j = 0.0;
    for (std::size_t k = 0; k < o.coords.size(); ++k) {
        const double a = o.coords[k] - xi.coords[k];
        const double b = o.coords[k] - xj.coords[k];
        numerator += std::abs(a) * std::abs(b);
        norm_i += a * a;
        norm_j += b * b;
    }
    return numerator / (std::sqrt(norm_i) * std::sqrt(norm_j));
}

namespace detail {

double sum_largest(std::vector<double>& values, std::size_t top) {
    top = std::min(top, values.size());
    const auto mid = values.begin() + static_cast<std::ptrdiff_t>(top);
    std::nth_element(values.begin(), mid, values.end(), std::greater<>());
    std::sort(values.begin(), mid);
    double sum = 0.0;
    for (auto it = values.begin(); it != mid; ++it) {
        sum += *it;
    }
    return sum;
}

}  // namespace detail

namespace {

double score_augmented(const std::vector<AugmentedPoint>& points, std::size_t i, double offset,
                       std::size_t top, std::vector<double>& sims) {
    const AugmentedPoint o = observation_point(points[i], offset);
    sims.clear();
    for (std::size_t j = 0; j < points.size(); ++j) {
        if (j != i) {
            sims.push_back(cosine_similarity(o, points[i], points[j]));
        }
    }
    return detail::sum_largest(sims, top);
}

}  // namespace

double score_point(const Dataset& data, std::size_t i, const Params& params) {
    validate_dataset(data);
    params.check_against(data);
    if (i >= data.size()) {
        throw InvalidSpec("point index " + std::to_string(i) + " out of range");
    }
    const auto points = augment(data);
    std::vector<double> sims;
    return score_augmented(points, i, params.offset(), params.top(), sims);
}

ScoreReport score_all_naive(const Dataset& data, const Params& params) {
    validate_dataset(data);
    params.check_against(data);
    const auto points = augment(data);
    std::vector<double> scores(data.size());
    std::vector<double> sims;
    sims.reserve(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        scores[i] = score_augmented(points, i, params.offset(), params.top(), sims);
    }
    return ScoreReport::from_scores(std::move(scores));
}

}  // namespace odadvcs
