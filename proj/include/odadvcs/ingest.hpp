#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "odadvcs/types.hpp"

namespace odadvcs {

/// A CSV column designated by header name or by 0-based position.
class ColumnRef {
public:
    static ColumnRef by_name(std::string name);
    static ColumnRef by_index(std::size_t index);
    /// All-digit text is a position, anything else a name.
    static ColumnRef parse(std::string_view text);

    /// Throws ConfigError when the column does not exist.
    std::size_t resolve(const std::vector<std::string>& header, std::size_t field_count) const;
    std::string describe() const;

private:
    std::optional<std::string> name_;
    std::size_t index_ = 0;
};

/// Reads comma-separated decimal numbers, one point per line. Blank lines are
/// skipped. The result is validated (q >= 3, n >= 2, finite).
Dataset read_csv(std::istream& in, bool has_header = true);

/// Same, with one column holding 0 (normal) / 1 (outlier) labels. The label
/// column is removed from the features.
LabeledDataset read_labeled_csv(std::istream& in, const ColumnRef& label, bool has_header = true);

/// Numeric features plus one free-text class column (e.g. an Iris species).
struct ClassTable {
    std::vector<std::string> feature_names;
    Dataset features;
    std::vector<std::string> classes;

    /// Row indices whose class equals `name`, ascending.
    std::vector<std::size_t> rows_of(std::string_view name) const;
};

ClassTable read_class_csv(std::istream& in, const ColumnRef& class_column, bool has_header = true);

/// Builds an evaluation set from a class table: every row of `normal_class`
/// (or its first `normal_limit` rows) as normal points, followed by the listed
/// `outlier_rows` flagged as outliers.
LabeledDataset compose_labeled(const ClassTable& table, std::string_view normal_class,
                               std::span<const std::size_t> outlier_rows,
                               std::optional<std::size_t> normal_limit = std::nullopt);

/// Optional per-column min-max normalization to [0, 1], then multiplication by
/// `scale`. Constant columns become all zeros.
struct PreprocessSpec {
    bool normalize = true;
    double scale = 300.0;

    /// Throws InvalidSpec unless scale is finite and positive.
    void validate() const;
};

Dataset preprocess(const Dataset& data, const PreprocessSpec& spec);
LabeledDataset preprocess(const LabeledDataset& data, const PreprocessSpec& spec);

/// Header `x1,...,xn`, values in shortest round-trip form, so read_csv gives
/// back bit-identical values.
void write_csv(std::ostream& out, const Dataset& data);
/// Same with a trailing `label` column of 0/1.
void write_csv(std::ostream& out, const LabeledDataset& data);

/// Header `index,score,rank`; one row per point ordered by rank (1-based);
/// scores with 12 significant digits.
void write_scores(const ScoreReport& report, std::ostream& out);

}  // namespace odadvcs
