#ifndef LMIFEAS_TEST_HELPERS_HPP
#define LMIFEAS_TEST_HELPERS_HPP

#include <cstddef>
#include <cstdint>

#include "lmifeas/sym_matrix.hpp"
#include "lmifeas/testbench.hpp"

namespace lmifeas::testing {

inline SymMatrix random_sym(Lcg64& rng, std::size_t n, double scale = 1.0) {
  SymMatrix s(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) s.set(i, j, scale * rng.uniform(-1.0, 1.0));
  return s;
}

inline Vector random_vec(Lcg64& rng, std::size_t n, double scale = 1.0) {
  Vector v(n);
  for (double& x : v) x = scale * rng.uniform(-1.0, 1.0);
  return v;
}

inline double max_abs_diff(const SymMatrix& a, const SymMatrix& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) d = std::max(d, std::abs(a.data()[k] - b.data()[k]));
  return d;
}

}  // namespace lmifeas::testing

#endif  // LMIFEAS_TEST_HELPERS_HPP
