#include "ssmote/point_set.hpp"

#include <cmath>

namespace ssmote {

PointSet::PointSet(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), values_(rows * cols, 0.0) {}

PointSet::PointSet(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
    if (values_.size() != rows_ * cols_) {
        throw ParameterError("point set: " + std::to_string(values_.size()) +
                             " values do not fill a " + std::to_string(rows_) + "x" +
                             std::to_string(cols_) + " matrix");
    }
}

PointSet PointSet::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) return {};
    const std::size_t d = rows.front().size();
    std::vector<double> values;
    values.reserve(rows.size() * d);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != d) {
            throw ParameterError("point set: row " + std::to_string(i) + " has " +
                                 std::to_string(rows[i].size()) + " columns, expected " +
                                 std::to_string(d));
        }
        values.insert(values.end(), rows[i].begin(), rows[i].end());
    }
    return PointSet(rows.size(), d, std::move(values));
}

void PointSet::append_row(std::span<const double> r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    if (r.size() != cols_) {
        throw ParameterError("point set: appended row has " + std::to_string(r.size()) +
                             " columns, expected " + std::to_string(cols_));
    }
    values_.insert(values_.end(), r.begin(), r.end());
    ++rows_;
}

PointSet PointSet::select(std::span<const std::size_t> indices) const {
    PointSet out(indices.size(), cols_);
    for (std::size_t i = 0; i < indices.size(); ++i) {
        const auto src = row(indices[i]);
        std::copy(src.begin(), src.end(), out.row(i).begin());
    }
    return out;
}

void PointSet::validate_finite() const {
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw ParameterError("point set: non-finite coordinate at row " +
                                 std::to_string(i / cols_) + ", column " +
                                 std::to_string(i % cols_));
        }
    }
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double diff = a[j] - b[j];
        acc += diff * diff;
    }
    return acc;
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
    return std::sqrt(squared_distance(a, b));
}

}  // namespace ssmote
