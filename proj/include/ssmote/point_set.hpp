#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ssmote {

/// Raised when a caller-supplied parameter is outside its valid domain.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/**
 * Dense row-major n x d matrix of finite coordinates.
 *
 * Used both for data sets (one row per observation) and for small vertex
 * matrices of a simplex. Construction validates shape and finiteness.
 */
class PointSet {
public:
    PointSet() = default;
    PointSet(std::size_t rows, std::size_t cols);
    PointSet(std::size_t rows, std::size_t cols, std::vector<double> values);

    /// Builds from nested rows; every row must have the same length.
    static PointSet from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0; }

    std::span<const double> row(std::size_t i) const {
        return {values_.data() + i * cols_, cols_};
    }
    std::span<double> row(std::size_t i) { return {values_.data() + i * cols_, cols_}; }

    double operator()(std::size_t i, std::size_t j) const { return values_[i * cols_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return values_[i * cols_ + j]; }

    const std::vector<double>& values() const { return values_; }

    void append_row(std::span<const double> r);

    /// Rows selected by index, in the given order.
    PointSet select(std::span<const std::size_t> indices) const;

    /// Throws ParameterError when a coordinate is NaN or infinite.
    void validate_finite() const;

    bool operator==(const PointSet&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> values_;
};

double squared_distance(std::span<const double> a, std::span<const double> b);
double euclidean_distance(std::span<const double> a, std::span<const double> b);

}  // namespace ssmote
