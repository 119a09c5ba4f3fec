#include "odadvcs/ingest.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>

namespace odadvcs {

namespace {

struct RawRow {
    std::size_t line;
    std::vector<std::string> fields;
};

struct RawTable {
    std::vector<std::string> header;
    std::vector<RawRow> rows;
    std::size_t width = 0;
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
        s = s.substr(1, s.size() - 2);
    }
    return s;
}

std::vector<std::string> split(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        const auto field = trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start));
        out.emplace_back(field);
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

bool blank(std::string_view line) {
    return std::all_of(line.begin(), line.end(),
                       [](char c) { return c == ' ' || c == '\t' || c == '\r'; });
}

RawTable read_raw(std::istream& in, bool has_header) {
    RawTable table;
    std::string line;
    std::size_t line_no = 0;
    bool header_pending = has_header;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) {
            line.erase(0, 3);
        }
        if (blank(line)) {
            continue;
        }
        auto fields = split(line);
        if (table.width == 0) {
            table.width = fields.size();
        } else if (fields.size() != table.width) {
            throw RaggedRows(line_no, table.width, fields.size());
        }
        if (header_pending) {
            table.header = std::move(fields);
            header_pending = false;
        } else {
            table.rows.push_back({line_no, std::move(fields)});
        }
    }
    if (in.bad()) {
        throw DataError("I/O error while reading CSV");
    }
    if (table.width == 0) {
        throw ParseError(line_no == 0 ? 1 : line_no, 0, "empty input");
    }
    if (table.rows.empty()) {
        throw ParseError(line_no, 0, "no data rows");
    }
    return table;
}

double parse_number(std::string_view text, std::size_t line, std::size_t column) {
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || end != text.data() + text.size()) {
        throw ParseError(line, column, "not a number: '" + std::string(text) + "'");
    }
    return value;
}

// Parses every column except `skip` as a number; reports NaN/inf at its data-row position.
Dataset numeric_features(const RawTable& table, std::optional<std::size_t> skip) {
    const std::size_t cols = table.width - (skip ? 1 : 0);
    std::vector<double> values;
    values.reserve(table.rows.size() * cols);
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        std::size_t out_col = 0;
        for (std::size_t c = 0; c < table.width; ++c) {
            if (skip && c == *skip) {
                continue;
            }
            const double v = parse_number(row.fields[c], row.line, c);
            if (!std::isfinite(v)) {
                throw NonFiniteValue(r, out_col);
            }
            values.push_back(v);
            ++out_col;
        }
    }
    return Dataset(table.rows.size(), cols, std::move(values));
}

std::vector<std::string> names_without(const RawTable& table, std::optional<std::size_t> skip) {
    std::vector<std::string> names;
    for (std::size_t c = 0; c < table.width; ++c) {
        if (skip && c == *skip) {
            continue;
        }
        names.push_back(c < table.header.size() ? table.header[c] : "x" + std::to_string(c + 1));
    }
    return names;
}

void append_double(std::string& out, double v) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    out.append(buf.data(), res.ptr);
}

void write_rows(std::ostream& out, const Dataset& data, const std::vector<bool>* labels) {
    std::string line;
    for (std::size_t k = 0; k < data.dim(); ++k) {
        line += (k ? ",x" : "x") + std::to_string(k + 1);
    }
    if (labels) {
        line += ",label";
    }
    out << line << '\n';
    for (std::size_t i = 0; i < data.size(); ++i) {
        line.clear();
        for (std::size_t k = 0; k < data.dim(); ++k) {
            if (k) {
                line += ',';
            }
            append_double(line, data(i, k));
        }
        if (labels) {
            line += (*labels)[i] ? ",1" : ",0";
        }
        out << line << '\n';
    }
    if (!out) {
        throw DataError("I/O error while writing CSV");
    }
}

}  // namespace

ColumnRef ColumnRef::by_name(std::string name) {
    ColumnRef ref;
    ref.name_ = std::move(name);
    return ref;
}

ColumnRef ColumnRef::by_index(std::size_t index) {
    ColumnRef ref;
    ref.index_ = index;
    return ref;
}

ColumnRef ColumnRef::parse(std::string_view text) {
    std::size_t index = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), index);
    if (!text.empty() && ec == std::errc() && end == text.data() + text.size()) {
        return by_index(index);
    }
    return by_name(std::string(text));
}

std::size_t ColumnRef::resolve(const std::vector<std::string>& header, std::size_t field_count) const {
    if (name_) {
        if (header.empty()) {
            throw ConfigError("column '" + *name_ + "' named but the CSV has no header");
        }
        const auto it = std::find(header.begin(), header.end(), *name_);
        if (it == header.end()) {
            throw ConfigError("no column named '" + *name_ + "'");
        }
        return static_cast<std::size_t>(it - header.begin());
    }
    if (index_ >= field_count) {
        throw ConfigError("column index " + std::to_string(index_) + " out of range (" +
                          std::to_string(field_count) + " columns)");
    }
    return index_;
}

std::string ColumnRef::describe() const {
    return name_ ? "'" + *name_ + "'" : "#" + std::to_string(index_);
}

Dataset read_csv(std::istream& in, bool has_header) {
    const RawTable table = read_raw(in, has_header);
    Dataset data = numeric_features(table, std::nullopt);
    validate_dataset(data);
    return data;
}

LabeledDataset read_labeled_csv(std::istream& in, const ColumnRef& label, bool has_header) {
    const RawTable table = read_raw(in, has_header);
    const std::size_t label_col = label.resolve(table.header, table.width);
    std::vector<bool> flags;
    flags.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        const double v = parse_number(row.fields[label_col], row.line, label_col);
        if (v != 0.0 && v != 1.0) {
            throw ParseError(row.line, label_col, "label must be 0 or 1");
        }
        flags.push_back(v == 1.0);
    }
    Dataset data = numeric_features(table, label_col);
    validate_dataset(data);
    return {std::move(data), std::move(flags)};
}

std::vector<std::size_t> ClassTable::rows_of(std::string_view name) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if (classes[i] == name) {
            out.push_back(i);
        }
    }
    return out;
}

ClassTable read_class_csv(std::istream& in, const ColumnRef& class_column, bool has_header) {
    const RawTable table = read_raw(in, has_header);
    const std::size_t col = class_column.resolve(table.header, table.width);
    ClassTable out;
    out.feature_names = names_without(table, col);
    out.features = numeric_features(table, col);
    out.classes.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        out.classes.push_back(row.fields[col]);
    }
    return out;
}

LabeledDataset compose_labeled(const ClassTable& table, std::string_view normal_class,
                               std::span<const std::size_t> outlier_rows,
                               std::optional<std::size_t> normal_limit) {
    auto normals = table.rows_of(normal_class);
    if (normals.empty()) {
        throw ConfigError("no rows of class '" + std::string(normal_class) + "'");
    }
    if (normal_limit && *normal_limit < normals.size()) {
        normals.resize(*normal_limit);
    }
    const std::size_t dim = table.features.dim();
    std::vector<double> values;
    values.reserve((normals.size() + outlier_rows.size()) * dim);
    auto append = [&](std::size_t row) {
        if (row >= table.features.size()) {
            throw ConfigError("row " + std::to_string(row) + " out of range");
        }
        const auto r = table.features.row(row);
        values.insert(values.end(), r.begin(), r.end());
    };
    for (const auto row : normals) {
        append(row);
    }
    for (const auto row : outlier_rows) {
        append(row);
    }
    std::vector<bool> flags(normals.size() + outlier_rows.size(), false);
    std::fill(flags.begin() + static_cast<std::ptrdiff_t>(normals.size()), flags.end(), true);
    return {Dataset(flags.size(), dim, std::move(values)), std::move(flags)};
}

void PreprocessSpec::validate() const {
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw InvalidSpec("scale must be a finite positive number");
    }
}

Dataset preprocess(const Dataset& data, const PreprocessSpec& spec) {
    spec.validate();
    const std::size_t q = data.size();
    const std::size_t n = data.dim();
    std::vector<double> values(data.values().begin(), data.values().end());
    for (std::size_t k = 0; k < n; ++k) {
        double lo = 0.0;
        double range = 1.0;
        if (spec.normalize && q > 0) {
            lo = data(0, k);
            double hi = lo;
            for (std::size_t i = 1; i < q; ++i) {
                lo = std::min(lo, data(i, k));
                hi = std::max(hi, data(i, k));
            }
            range = hi - lo;
        }
        for (std::size_t i = 0; i < q; ++i) {
            double& v = values[i * n + k];
            if (!spec.normalize) {
                v *= spec.scale;
            } else if (range > 0.0) {
                v = (v - lo) / range * spec.scale;
            } else {
                v = 0.0;
            }
        }
    }
    return Dataset(q, n, std::move(values));
}

LabeledDataset preprocess(const LabeledDataset& data, const PreprocessSpec& spec) {
    return {preprocess(data.data(), spec), data.is_outlier()};
}

void write_csv(std::ostream& out, const Dataset& data) {
    write_rows(out, data, nullptr);
}

void write_csv(std::ostream& out, const LabeledDataset& data) {
    write_rows(out, data.data(), &data.is_outlier());
}

void write_scores(const ScoreReport& report, std::ostream& out) {
    out << "index,score,rank\n";
    std::array<char, 64> buf{};
    for (std::size_t t = 0; t < report.ranking.size(); ++t) {
        const std::size_t i = report.ranking[t];
        std::snprintf(buf.data(), buf.size(), "%.12g", report.scores[i]);
        out << i << ',' << buf.data() << ',' << (t + 1) << '\n';
    }
    if (!out) {
        throw DataError("I/O error while writing scores");
    }
}

}  // namespace odadvcs
