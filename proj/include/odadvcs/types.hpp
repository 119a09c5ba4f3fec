#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "odadvcs/error.hpp"

namespace odadvcs {

/// Row-major matrix of q points in n dimensions.
///
/// Any shape can be constructed; `validate_dataset` enforces the scoring
/// preconditions (q >= 3, n >= 2, all values finite).
class Dataset {
public:
    Dataset() = default;

    /// `values` must hold exactly rows * cols entries, row-major.
    Dataset(std::size_t rows, std::size_t cols, std::vector<double> values);

    static Dataset from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t size() const noexcept { return rows_; }
    std::size_t dim() const noexcept { return cols_; }

    std::span<const double> row(std::size_t i) const noexcept {
        return {values_.data() + i * cols_, cols_};
    }
    double operator()(std::size_t i, std::size_t k) const noexcept { return values_[i * cols_ + k]; }
    std::span<const double> values() const noexcept { return values_; }

    bool operator==(const Dataset&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> values_;
};

/// Checks q > 2, n >= 2 and finiteness; returns the dataset unchanged.
const Dataset& validate_dataset(const Dataset& data);

/// The two algorithm knobs.
///
/// `offset` (n_d) is the added-dimension coordinate of each observation point.
/// It is scale-dependent: similarities depend only on distance / offset, so
/// pick it relative to the data's spread (normalizing data to [0, 300] and
/// using the defaults reproduces the reference experiments).
/// `top` (s_n) is how many of the largest similarities are summed per point.
class Params {
public:
    static constexpr double kDefaultOffset = 80.0;
    static constexpr std::size_t kDefaultTop = 40;

    Params() = default;
    Params(double offset, std::size_t top);

    double offset() const noexcept { return offset_; }
    std::size_t top() const noexcept { return top_; }

    /// Throws InvalidTopR when top > q - 1.
    void check_against(const Dataset& data) const;

private:
    double offset_ = kDefaultOffset;
    std::size_t top_ = kDefaultTop;
};

/// Per-point scores plus the ascending-score ranking (most outlying first).
struct ScoreReport {
    std::vector<double> scores;
    /// Point indices ordered by score ascending, ties by ascending index.
    std::vector<std::size_t> ranking;

    static ScoreReport from_scores(std::vector<double> scores);

    /// 1-based rank of every point, i.e. the inverse permutation of `ranking`.
    std::vector<std::size_t> ranks() const;
};

/// Dataset plus ground-truth outlier flags.
class LabeledDataset {
public:
    LabeledDataset() = default;
    LabeledDataset(Dataset data, std::vector<bool> is_outlier);

    const Dataset& data() const noexcept { return data_; }
    const std::vector<bool>& is_outlier() const noexcept { return is_outlier_; }
    std::size_t outlier_count() const noexcept { return outlier_count_; }

    /// Throws NoOutliersLabeled unless 1 <= outlier_count < q.
    void require_outliers() const;

private:
    Dataset data_;
    std::vector<bool> is_outlier_;
    std::size_t outlier_count_ = 0;
};

}  // namespace odadvcs
