#ifndef LMIFEAS_SPECTRAL_HPP
#define LMIFEAS_SPECTRAL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "lmifeas/errors.hpp"
#include "lmifeas/sym_matrix.hpp"

namespace lmifeas {

/// Eigenpairs of a symmetric matrix, eigenvalues in descending order.
/// Eigenvectors are stored column-major so `vector(k)` is contiguous.
struct EigDecomposition {
  Vector eigenvalues;
  std::vector<double> vectors;

  std::size_t dim() const noexcept { return eigenvalues.size(); }
  std::span<const double> vector(std::size_t k) const {
    return {vectors.data() + k * dim(), dim()};
  }
  double v(std::size_t row, std::size_t k) const { return vectors[k * dim() + row]; }
};

struct JacobiSettings {
  double off_tolerance = 1e-12;  // relative to ‖S‖_F
  int max_sweeps = 30;
};

namespace detail {

inline void require_finite(const SymMatrix& s, const char* where) {
  if (!s.is_finite()) throw NonFiniteInput(std::string(where) + ": matrix has NaN/Inf entries");
}

struct Rotation {
  std::size_t p;
  std::size_t q;
  double s;
  double tau;  // s / (1 + c)
};

/// Result of the Jacobi sweeps: the diagonalized matrix (upper triangle),
/// optionally the accumulated eigenvectors (column-major) or the rotation log.
struct JacobiState {
  std::size_t n;
  std::vector<double> a;
  std::vector<double> v;
  std::vector<Rotation> log;

  double diag(std::size_t i) const { return a[i * n + i]; }
};

inline double off_diagonal_norm(const std::vector<double>& a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) s += a[i * n + j] * a[i * n + j];
  return std::sqrt(2.0 * s);
}

inline void rotate_pair(double& g, double& h, double s, double tau) {
  const double g0 = g;
  const double h0 = h;
  g = g0 - s * (h0 + g0 * tau);
  h = h0 + s * (g0 - h0 * tau);
}

/// Cyclic Jacobi sweeps over the upper triangle. With `accumulate` the
/// rotations are applied to V; otherwise they are logged so single columns
/// of V can be rebuilt later.
inline JacobiState jacobi(const SymMatrix& m, const JacobiSettings& settings, bool accumulate) {
  const std::size_t n = m.dim();
  JacobiState st{n, std::vector<double>(m.data().begin(), m.data().end()), {}, {}};
  auto& a = st.a;
  if (accumulate) {
    st.v.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) st.v[i * n + i] = 1.0;
  } else {
    st.log.reserve(4 * n * n);
  }
  const double threshold = settings.off_tolerance * frobenius_norm(m);
  // pivots this small cannot keep the off-diagonal norm above the threshold
  const double negligible = n > 1 ? threshold / static_cast<double>(n) : 0.0;
  for (int sweep = 0; sweep < settings.max_sweeps; ++sweep) {
    if (off_diagonal_norm(a, n) <= threshold) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (std::abs(apq) <= negligible) continue;
        const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double w = std::sqrt(t * t + 1.0);
        const double sn = t / w;
        const double tau = t / (w + 1.0);  // sn / (1 + c) with c = 1/w

        a[p * n + p] -= t * apq;
        a[q * n + q] += t * apq;
        a[p * n + q] = 0.0;
        for (std::size_t r = 0; r < p; ++r) rotate_pair(a[r * n + p], a[r * n + q], sn, tau);
        for (std::size_t r = p + 1; r < q; ++r) rotate_pair(a[p * n + r], a[r * n + q], sn, tau);
        for (std::size_t r = q + 1; r < n; ++r) rotate_pair(a[p * n + r], a[q * n + r], sn, tau);
        if (accumulate) {
          double* vp = st.v.data() + p * n;
          double* vq = st.v.data() + q * n;
          for (std::size_t r = 0; r < n; ++r) rotate_pair(vp[r], vq[r], sn, tau);
        } else {
          st.log.push_back({p, q, sn, tau});
        }
      }
    }
  }
  return st;
}

/// Column k of V = J₁J₂⋯J_r, by applying the logged rotations to e_k in reverse.
inline Vector rebuild_column(const JacobiState& st, std::size_t k) {
  Vector w(st.n, 0.0);
  w[k] = 1.0;
  for (auto it = st.log.rbegin(); it != st.log.rend(); ++it) {
    double& wp = w[it->p];
    double& wq = w[it->q];
    const double p0 = wp;
    const double q0 = wq;
    wp = p0 + it->s * (q0 - it->tau * p0);
    wq = q0 - it->s * (p0 + it->tau * q0);
  }
  return w;
}

/// Indices of the diagonal sorted by value, descending; ties keep index order.
inline std::vector<std::size_t> descending_order(const JacobiState& st) {
  std::vector<std::size_t> order(st.n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return st.diag(i) > st.diag(j); });
  return order;
}

inline void normalize_sign(std::span<double> col) {
  for (double x : col) {
    if (std::abs(x) > 1e-12) {
      if (x < 0.0)
        for (double& y : col) y = -y;
      return;
    }
  }
}

}  // namespace detail

/// Cyclic Jacobi eigendecomposition.
///
/// Sweeps stop once the off-diagonal Frobenius norm falls below
/// `off_tolerance * ‖S‖_F` or after `max_sweeps`. Each eigenvector is signed
/// so that its first non-negligible component is positive.
inline EigDecomposition eig_sym(const SymMatrix& s, const JacobiSettings& settings = {}) {
  detail::require_finite(s, "eig_sym");
  const std::size_t n = s.dim();
  const auto st = detail::jacobi(s, settings, true);
  const auto order = detail::descending_order(st);
  EigDecomposition out;
  out.eigenvalues.resize(n);
  out.vectors.resize(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = st.diag(order[k]);
    double* col = out.vectors.data() + k * n;
    std::copy_n(st.v.data() + order[k] * n, n, col);
    detail::normalize_sign({col, n});
  }
  return out;
}

struct TopEigenpair {
  double value;
  Vector vector;
};

/// Largest eigenvalue with a unit eigenvector (e₁ for the zero matrix).
inline TopEigenpair lambda_max(const SymMatrix& s) {
  detail::require_finite(s, "lambda_max");
  if (s.dim() == 0) throw DimensionMismatch("lambda_max: empty matrix");
  const auto st = detail::jacobi(s, {}, false);
  const auto order = detail::descending_order(st);
  Vector v = detail::rebuild_column(st, order[0]);
  detail::normalize_sign(v);
  return {st.diag(order[0]), std::move(v)};
}

/// Splits S = proj + residual with proj ⪯ 0, residual ⪰ 0 and ⟨proj, residual⟩ = 0.
struct ConeSplit {
  SymMatrix proj;
  SymMatrix residual;
};

/// Metric projection of S onto the negative-semidefinite cone.
///
/// residual = Σ max(λᵢ,0) vᵢvᵢᵀ is assembled from the positive eigenpairs and
/// proj = S − residual, so a matrix that is already ⪯ 0 is returned unchanged.
inline ConeSplit project_neg_semidef(const SymMatrix& s) {
  detail::require_finite(s, "project_neg_semidef");
  const std::size_t n = s.dim();
  const auto st = detail::jacobi(s, {}, false);
  const auto order = detail::descending_order(st);
  SymMatrix residual(n);
  for (std::size_t k = 0; k < n && st.diag(order[k]) > 0.0; ++k) {
    const double lam = st.diag(order[k]);
    const Vector vk = detail::rebuild_column(st, order[k]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= i; ++j) residual.set(i, j, residual(i, j) + lam * vk[i] * vk[j]);
  }
  SymMatrix proj = s;
  proj -= residual;
  return {std::move(proj), std::move(residual)};
}

struct MatrixNorms {
  double fro;
  double spectral;
};

inline MatrixNorms norms(const SymMatrix& s) {
  detail::require_finite(s, "norms");
  if (s.dim() == 0) return {0.0, 0.0};
  const auto eig = eig_sym(s);
  const double spectral = std::max(std::abs(eig.eigenvalues.front()), std::abs(eig.eigenvalues.back()));
  return {frobenius_norm(s), spectral};
}

}  // namespace lmifeas

#endif  // LMIFEAS_SPECTRAL_HPP
