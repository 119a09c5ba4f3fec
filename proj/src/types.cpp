#include "odadvcs/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace odadvcs {

Dataset::Dataset(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
    if (values_.size() != rows_ * cols_) {
        throw InvalidSpec("dataset shape " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                          " does not match " + std::to_string(values_.size()) + " values");
    }
}

Dataset Dataset::from_rows(const std::vector<std::vector<double>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    std::vector<double> values;
    values.reserve(rows.size() * cols);
    for (const auto& r : rows) {
        if (r.size() != cols) {
            throw InvalidSpec("rows have differing lengths");
        }
        values.insert(values.end(), r.begin(), r.end());
    }
    return Dataset(rows.size(), cols, std::move(values));
}

const Dataset& validate_dataset(const Dataset& data) {
    if (data.size() <= 2) {
        throw TooFewPoints(data.size());
    }
    if (data.dim() < 2) {
        throw TooFewDimensions(data.dim());
    }
    for (std::size_t i = 0; i < data.size(); ++i) {
        for (std::size_t k = 0; k < data.dim(); ++k) {
            if (!std::isfinite(data(i, k))) {
                throw NonFiniteValue(i, k);
            }
        }
    }
    return data;
}

Params::Params(double offset, std::size_t top) : offset_(offset), top_(top) {
    if (!(offset > 0.0) || !std::isfinite(offset)) {
        throw InvalidParams("n_d must be a finite positive number");
    }
    if (top == 0) {
        throw InvalidParams("s_n must be at least 1");
    }
}

void Params::check_against(const Dataset& data) const {
    if (data.size() == 0 || top_ > data.size() - 1) {
        throw InvalidTopR(top_, data.size());
    }
}

ScoreReport ScoreReport::from_scores(std::vector<double> scores) {
    ScoreReport report;
    report.ranking.resize(scores.size());
    std::iota(report.ranking.begin(), report.ranking.end(), std::size_t{0});
    std::stable_sort(report.ranking.begin(), report.ranking.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
    report.scores = std::move(scores);
    return report;
}

std::vector<std::size_t> ScoreReport::ranks() const {
    std::vector<std::size_t> out(ranking.size());
    for (std::size_t t = 0; t < ranking.size(); ++t) {
        out[ranking[t]] = t + 1;
    }
    return out;
}

LabeledDataset::LabeledDataset(Dataset data, std::vector<bool> is_outlier)
    : data_(std::move(data)), is_outlier_(std::move(is_outlier)) {
    if (is_outlier_.size() != data_.size()) {
        throw InvalidSpec("label count " + std::to_string(is_outlier_.size()) +
                          " does not match point count " + std::to_string(data_.size()));
    }
    outlier_count_ = static_cast<std::size_t>(std::count(is_outlier_.begin(), is_outlier_.end(), true));
}

void LabeledDataset::require_outliers() const {
    if (outlier_count_ == 0 || outlier_count_ >= data_.size()) {
        throw NoOutliersLabeled();
    }
}

}  // namespace odadvcs
