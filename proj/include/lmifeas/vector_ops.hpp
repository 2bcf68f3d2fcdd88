#ifndef LMIFEAS_VECTOR_OPS_HPP
#define LMIFEAS_VECTOR_OPS_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "lmifeas/errors.hpp"

namespace lmifeas {

using Vector = std::vector<double>;

inline void require_same_size(std::size_t a, std::size_t b, const char* where) {
  if (a != b) {
    throw DimensionMismatch(std::string(where) + ": expected length " + std::to_string(b) +
                            ", got " + std::to_string(a));
  }
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  require_same_size(a.size(), b.size(), "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline double distance_sq(std::span<const double> a, std::span<const double> b) {
  require_same_size(a.size(), b.size(), "distance_sq");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

inline double distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(distance_sq(a, b));
}

/// y += a * x
inline void axpy(double a, std::span<const double> x, std::span<double> y) {
  require_same_size(x.size(), y.size(), "axpy");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

/// Returns (1 - w) * a + w * b.
inline Vector lerp(std::span<const double> a, std::span<const double> b, double w) {
  require_same_size(a.size(), b.size(), "lerp");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = (1.0 - w) * a[i] + w * b[i];
  return out;
}

inline bool all_finite(std::span<const double> a) {
  for (double v : a) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace lmifeas

#endif  // LMIFEAS_VECTOR_OPS_HPP
