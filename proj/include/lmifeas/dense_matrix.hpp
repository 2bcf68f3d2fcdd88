#ifndef LMIFEAS_DENSE_MATRIX_HPP
#define LMIFEAS_DENSE_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "lmifeas/vector_ops.hpp"

namespace lmifeas {

/// Row-major rectangular matrix. Used for linear-system rows and eigenvector blocks.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      require_same_size(r.size(), cols_, "DenseMatrix");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }

  std::span<const double> data() const noexcept { return data_; }

  /// A x
  Vector apply(std::span<const double> x) const {
    require_same_size(x.size(), cols_, "DenseMatrix::apply");
    Vector y(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) y[i] = dot(row(i), x);
    return y;
  }

  /// Aᵀ y
  Vector apply_transpose(std::span<const double> y) const {
    require_same_size(y.size(), rows_, "DenseMatrix::apply_transpose");
    Vector x(cols_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) axpy(y[i], row(i), x);
    return x;
  }

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

}  // namespace lmifeas

#endif  // LMIFEAS_DENSE_MATRIX_HPP
