#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace odadvcs {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The input data cannot be scored or evaluated (bad file contents, too few
/// points, missing labels). The CLI maps these to exit code 1.
class DataError : public Error {
public:
    using Error::Error;
};

/// A caller-supplied parameter or specification is out of range. The CLI
/// maps these to exit code 2.
class ConfigError : public Error {
public:
    using Error::Error;
};

class TooFewPoints : public DataError {
public:
    explicit TooFewPoints(std::size_t count)
        : DataError("dataset has " + std::to_string(count) + " points; at least 3 are required"),
          count_(count) {}
    std::size_t count() const noexcept { return count_; }

private:
    std::size_t count_;
};

class TooFewDimensions : public DataError {
public:
    explicit TooFewDimensions(std::size_t dims)
        : DataError("dataset has " + std::to_string(dims) + " dimensions; at least 2 are required"),
          dims_(dims) {}
    std::size_t dims() const noexcept { return dims_; }

private:
    std::size_t dims_;
};

/// NaN or infinity at a 0-based (row, column) position.
class NonFiniteValue : public DataError {
public:
    NonFiniteValue(std::size_t row, std::size_t column)
        : DataError("non-finite value at row " + std::to_string(row) + ", column " +
                    std::to_string(column)),
          row_(row), column_(column) {}
    std::size_t row() const noexcept { return row_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t row_;
    std::size_t column_;
};

/// s_n exceeds the q - 1 reference points available per measured point.
class InvalidTopR : public DataError {
public:
    InvalidTopR(std::size_t top, std::size_t points)
        : DataError("s_n = " + std::to_string(top) + " exceeds q - 1 = " +
                    std::to_string(points == 0 ? 0 : points - 1)),
          top_(top), points_(points) {}
    std::size_t top() const noexcept { return top_; }
    std::size_t points() const noexcept { return points_; }

private:
    std::size_t top_;
    std::size_t points_;
};

/// Malformed CSV text. `line` is 1-based, `column` is the 0-based field index.
class ParseError : public DataError {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : DataError("line " + std::to_string(line) + ", field " + std::to_string(column) + ": " +
                    what),
          line_(line), column_(column) {}
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class RaggedRows : public DataError {
public:
    RaggedRows(std::size_t line, std::size_t expected, std::size_t found)
        : DataError("line " + std::to_string(line) + " has " + std::to_string(found) +
                    " fields, expected " + std::to_string(expected)),
          line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class NoOutliersLabeled : public DataError {
public:
    NoOutliersLabeled() : DataError("no points are labeled as outliers") {}
};

class InvalidParams : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class InvalidSpec : public ConfigError {
public:
    using ConfigError::ConfigError;
};

}  // namespace odadvcs
