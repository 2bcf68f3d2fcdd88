#ifndef LMIFEAS_SYM_MATRIX_HPP
#define LMIFEAS_SYM_MATRIX_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "lmifeas/dense_matrix.hpp"
#include "lmifeas/errors.hpp"
#include "lmifeas/vector_ops.hpp"

namespace lmifeas {

/// Dense real symmetric n×n matrix.
///
/// Storage is full row-major, but every mutator writes (i,j) and (j,i)
/// together, so entry(i,j) == entry(j,i) holds bit-for-bit.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

  /// Builds from full rows. Off-diagonal pairs must agree within
  /// `tol * max(1, |a_ij|, |a_ji|)`; the stored value is their average.
  static SymMatrix from_rows(const std::vector<Vector>& rows, double tol = 1e-12) {
    const std::size_t n = rows.size();
    SymMatrix s(n);
    for (std::size_t i = 0; i < n; ++i) require_same_size(rows[i].size(), n, "SymMatrix::from_rows");
    for (std::size_t i = 0; i < n; ++i) {
      s.a_[i * n + i] = rows[i][i];
      for (std::size_t j = 0; j < i; ++j) {
        const double lo = rows[i][j];
        const double up = rows[j][i];
        const double scale = std::max({1.0, std::abs(lo), std::abs(up)});
        if (!(std::abs(lo - up) <= tol * scale)) {
          throw InvalidParameter("matrix not symmetric at (" + std::to_string(i) + "," +
                                 std::to_string(j) + ")");
        }
        s.set(i, j, 0.5 * (lo + up));
      }
    }
    return s;
  }

  static SymMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    std::vector<Vector> r;
    for (const auto& row : rows) r.emplace_back(row);
    return from_rows(r);
  }

  static SymMatrix identity(std::size_t n) {
    SymMatrix s(n);
    for (std::size_t i = 0; i < n; ++i) s.a_[i * n + i] = 1.0;
    return s;
  }

  static SymMatrix diagonal(std::span<const double> d) {
    SymMatrix s(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) s.a_[i * d.size() + i] = d[i];
    return s;
  }

  static SymMatrix diagonal(std::initializer_list<double> d) {
    return diagonal(std::span<const double>(d.begin(), d.size()));
  }

  /// v vᵀ
  static SymMatrix outer(std::span<const double> v) {
    SymMatrix s(v.size());
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s.a_[i * n + j] = v[i] * v[j];
    return s;
  }

  /// AᵀA of a rectangular matrix.
  static SymMatrix gram(const DenseMatrix& a) {
    const std::size_t q = a.cols();
    SymMatrix s(q);
    for (std::size_t r = 0; r < a.rows(); ++r) {
      const auto row = a.row(r);
      for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j <= i; ++j) s.a_[i * q + j] += row[i] * row[j];
    }
    s.mirror_lower();
    return s;
  }

  std::size_t dim() const noexcept { return n_; }

  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  void set(std::size_t i, std::size_t j, double v) {
    a_[i * n_ + j] = v;
    a_[j * n_ + i] = v;
  }

  std::span<const double> row(std::size_t i) const { return {a_.data() + i * n_, n_}; }

  /// Full row-major entries.
  std::span<const double> data() const noexcept { return a_; }

  bool is_finite() const { return all_finite(a_); }

  /// this += w * other
  SymMatrix& add_scaled(const SymMatrix& other, double w) {
    require_same_size(other.n_, n_, "SymMatrix::add_scaled");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += w * other.a_[k];
    return *this;
  }

  SymMatrix& operator+=(const SymMatrix& o) { return add_scaled(o, 1.0); }
  SymMatrix& operator-=(const SymMatrix& o) { return add_scaled(o, -1.0); }
  SymMatrix& operator*=(double w) {
    for (double& v : a_) v *= w;
    return *this;
  }

  friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
  friend SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
  friend SymMatrix operator*(double w, SymMatrix a) { return a *= w; }

  bool operator==(const SymMatrix&) const = default;

  /// S v
  Vector apply(std::span<const double> v) const {
    require_same_size(v.size(), n_, "SymMatrix::apply");
    Vector out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = dot(row(i), v);
    return out;
  }

 private:
  void mirror_lower() {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < i; ++j) a_[j * n_ + i] = a_[i * n_ + j];
  }

  std::size_t n_ = 0;
  std::vector<double> a_;
};

/// Trace inner product ⟨X, Y⟩ = Σ X(j,k) Y(j,k).
inline double frobenius_inner(const SymMatrix& x, const SymMatrix& y) {
  require_same_size(x.dim(), y.dim(), "frobenius_inner");
  return dot(x.data(), y.data());
}

inline double frobenius_norm(const SymMatrix& x) { return std::sqrt(frobenius_inner(x, x)); }

/// Block-diagonal concatenation.
inline SymMatrix block_diagonal(std::span<const SymMatrix> blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.dim();
  SymMatrix out(n);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.dim(); ++i)
      for (std::size_t j = 0; j <= i; ++j) out.set(off + i, off + j, b(i, j));
    off += b.dim();
  }
  return out;
}

}  // namespace lmifeas

#endif  // LMIFEAS_SYM_MATRIX_HPP
