#ifndef LMIFEAS_TESTBENCH_HPP
#define LMIFEAS_TESTBENCH_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "lmifeas/dense_matrix.hpp"
#include "lmifeas/errors.hpp"
#include "lmifeas/lmi_model.hpp"
#include "lmifeas/objectives.hpp"
#include "lmifeas/spectral.hpp"

namespace lmifeas {

/// 64-bit linear congruential generator
///   state ← 6364136223846793005·state + 1442695040888963407  (mod 2⁶⁴)
/// starting from state = seed. Each draw advances once and uses the top
/// 53 bits: u = (state >> 11)·2⁻⁵³ ∈ [0, 1).
class Lcg64 {
 public:
  static constexpr std::uint64_t kMultiplier = 6364136223846793005ULL;
  static constexpr std::uint64_t kIncrement = 1442695040888963407ULL;

  explicit Lcg64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ = state_ * kMultiplier + kIncrement;
    return state_;
  }

  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

struct CertifiedInstance {
  LmiProblem problem;
  SlaterCertificate certificate;
  Vector witness;
  std::uint64_t seed;
};

/// Random LMI with a known Slater point.
///
/// Draw order from one Lcg64(seed): lower triangles (row-major, j ≤ i) of
/// A₁…A_m in [−1,1), then d ∈ [−1,1)ᵐ, then an n×n matrix R in [−1,1)
/// row-major. With Q = RᵀR scaled to ‖Q‖_F = σ, B = 𝒜d + σI + Q, so
/// 𝒜d − B = −σI − Q ⪯ −σI.
inline CertifiedInstance gen_lmi(std::size_t n, std::size_t m, double sigma, std::uint64_t seed) {
  if (n == 0 || m == 0) throw InvalidParameter("gen_lmi: n and m must be >= 1");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InvalidParameter("gen_lmi: sigma must be positive");
  Lcg64 rng(seed);
  std::vector<SymMatrix> coeffs;
  coeffs.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    SymMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= i; ++j) a.set(i, j, rng.uniform(-1.0, 1.0));
    coeffs.push_back(std::move(a));
  }
  Vector d(m);
  for (double& v : d) v = rng.uniform(-1.0, 1.0);
  DenseMatrix r(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) = rng.uniform(-1.0, 1.0);
  SymMatrix q = SymMatrix::gram(r);
  const double qn = frobenius_norm(q);
  if (qn > 0.0) q *= sigma / qn;

  SymMatrix b(n);
  for (std::size_t k = 0; k < m; ++k) b.add_scaled(coeffs[k], d[k]);
  b.add_scaled(SymMatrix::identity(n), sigma);
  b += q;
  LmiProblem p(std::move(coeffs), std::move(b));
  auto cert = SlaterCertificate::validated(p, d, sigma);
  return {std::move(p), std::move(cert), std::move(d), seed};
}

enum class RowMix { AllEq, AllLe, Mixed };

struct LinsysInstance {
  LinIneqSystem system;
  Vector witness;
};

/// Random consistent linear system.
///
/// Draw order: A (p×q row-major) in [−1,1), witness x★ ∈ [−1,1)^q, then per
/// row a kind draw (Mixed only: u < ½ → EQ) and, for LE rows, a slack in
/// [0, ½). bᵢ = (Ax★)ᵢ + slackᵢ.
inline LinsysInstance gen_linsys(std::size_t p, std::size_t q, std::uint64_t seed, RowMix mix = RowMix::Mixed) {
  if (p == 0 || q == 0) throw InvalidParameter("gen_linsys: p and q must be >= 1");
  Lcg64 rng(seed);
  DenseMatrix a(p, q);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < q; ++j) a(i, j) = rng.uniform(-1.0, 1.0);
  Vector w(q);
  for (double& v : w) v = rng.uniform(-1.0, 1.0);
  Vector b = a.apply(w);
  std::vector<RowKind> kinds(p);
  for (std::size_t i = 0; i < p; ++i) {
    RowKind k = mix == RowMix::AllEq ? RowKind::EQ : RowKind::LE;
    if (mix == RowMix::Mixed) k = rng.uniform() < 0.5 ? RowKind::EQ : RowKind::LE;
    kinds[i] = k;
    if (k == RowKind::LE) b[i] += rng.uniform(0.0, 0.5);
  }
  return {LinIneqSystem(std::move(a), std::move(b), std::move(kinds)), std::move(w)};
}

/// 1/σ⁺_min(A): reciprocal of the smallest nonzero singular value, the
/// Hoffman constant of an equality system. Eigenvalues of AᵀA below
/// 1e−10·λ_max count as zero.
inline double hoffman_eq(const DenseMatrix& a) {
  const auto eig = eig_sym(SymMatrix::gram(a));
  const double top = eig.eigenvalues.front();
  if (!(top > 0.0)) throw ZeroMatrix("hoffman_eq: matrix is zero");
  double smallest = top;
  for (double lam : eig.eigenvalues) {
    if (lam > 1e-10 * top) smallest = std::min(smallest, lam);
  }
  return 1.0 / std::sqrt(smallest);
}

/// Upper bound on the Hoffman constant of a mixed system: the max of
/// 1/σ_min(A_J) over row subsets J with A_J of full row rank. Exponential in p.
inline double hoffman_upper_bound(const LinIneqSystem& sys, std::size_t max_rows = 16) {
  const std::size_t p = sys.p();
  if (p > max_rows) throw InvalidParameter("hoffman_upper_bound: too many rows to enumerate");
  double best = 0.0;
  std::vector<std::size_t> rows;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << p); ++mask) {
    rows.clear();
    for (std::size_t i = 0; i < p; ++i)
      if (mask & (std::uint64_t{1} << i)) rows.push_back(i);
    if (rows.size() > sys.q()) continue;
    SymMatrix g(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j <= i; ++j) g.set(i, j, dot(sys.rows().row(rows[i]), sys.rows().row(rows[j])));
    const auto eig = eig_sym(g);
    const double lo = eig.eigenvalues.back();
    if (lo > 1e-10 * std::max(1.0, eig.eigenvalues.front())) best = std::max(best, 1.0 / std::sqrt(lo));
  }
  if (best == 0.0) throw ZeroMatrix("hoffman_upper_bound: matrix is zero");
  return best;
}

/// Euclidean distance from x to {x : Ax = b} for a consistent system,
/// ‖A⁺(Ax − b)‖ with the pseudo-inverse taken from eig(AᵀA).
inline double affine_distance(const DenseMatrix& a, std::span<const double> b, std::span<const double> x) {
  Vector r = a.apply(x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  const Vector atr = a.apply_transpose(r);
  const auto eig = eig_sym(SymMatrix::gram(a));
  const double top = eig.eigenvalues.front();
  Vector step(x.size(), 0.0);
  for (std::size_t k = 0; k < eig.dim(); ++k) {
    const double lam = eig.eigenvalues[k];
    if (!(lam > 1e-10 * top)) continue;
    axpy(dot(eig.vector(k), atr) / lam, eig.vector(k), step);
  }
  return norm2(step);
}

/// Distance from x to the solution polyhedron of sys by Dykstra's
/// alternating projections onto the row halfspaces and hyperplanes.
inline double polyhedron_distance(const LinIneqSystem& sys, std::span<const double> x, std::size_t sweeps = 20000,
                                  double tol = 1e-13) {
  const std::size_t p = sys.p();
  const std::size_t q = sys.q();
  Vector y(x.begin(), x.end());
  std::vector<Vector> incr(p, Vector(q, 0.0));
  for (std::size_t s = 0; s < sweeps; ++s) {
    double change = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
      const auto a = sys.rows().row(i);
      Vector w = y;
      axpy(1.0, incr[i], w);
      const double aa = dot(a, a);
      double viol = dot(a, w) - sys.rhs()[i];
      if (sys.kinds()[i] == RowKind::LE) viol = std::max(0.0, viol);
      Vector proj = w;
      if (aa > 0.0) axpy(-viol / aa, a, proj);
      for (std::size_t j = 0; j < q; ++j) {
        incr[i][j] = w[j] - proj[j];
        change += (proj[j] - y[j]) * (proj[j] - y[j]);
      }
      y = std::move(proj);
    }
    if (change <= tol * tol) break;
  }
  return distance(x, y);
}

/// Central differences (f(x + h eᵢ) − f(x − h eᵢ)) / 2h.
template <FirstOrderOracle O>
Vector fd_gradient(const O& oracle, std::span<const double> x, double h) {
  if (!(h > 0.0)) throw InvalidParameter("fd_gradient: h must be positive");
  Vector g(x.size());
  Vector probe(x.begin(), x.end());
  for (std::size_t i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double fp = oracle.evaluate(probe).value;
    probe[i] = x[i] - h;
    const double fm = oracle.evaluate(probe).value;
    probe[i] = x[i];
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

struct Interval {
  double lo;
  double hi;
};

struct GridMinimum {
  Vector point;
  double value;
};

/// Exhaustive grid search over a box with `grid` points per axis (m ≤ 2).
template <FirstOrderOracle O>
GridMinimum brute_minimize(const O& oracle, std::span<const Interval> box, std::size_t grid) {
  const std::size_t m = oracle.dimension();
  if (m > 2) throw InvalidParameter("brute_minimize: at most two variables");
  if (grid < 2) throw InvalidParameter("brute_minimize: grid must be >= 2");
  require_same_size(box.size(), m, "brute_minimize box");
  auto coord = [&](std::size_t axis, std::size_t k) {
    return box[axis].lo + (box[axis].hi - box[axis].lo) * static_cast<double>(k) / static_cast<double>(grid - 1);
  };
  GridMinimum best{Vector(m, 0.0), std::numeric_limits<double>::infinity()};
  Vector x(m);
  const std::size_t outer = m == 2 ? grid : 1;
  for (std::size_t i = 0; i < grid; ++i) {
    x[0] = coord(0, i);
    for (std::size_t j = 0; j < outer; ++j) {
      if (m == 2) x[1] = coord(1, j);
      const double v = oracle.evaluate(x).value;
      if (v < best.value) best = {x, v};
    }
  }
  return best;
}

/// Grid minimum of max(λ₁(𝒜x − B), 0).
inline GridMinimum brute_feasibility(const LmiProblem& p, std::span<const Interval> box, std::size_t grid) {
  if (p.m() > 2) throw InvalidParameter("brute_feasibility: at most two variables");
  return brute_minimize(NonsmoothOracle(p), box, grid);
}

}  // namespace lmifeas

#endif  // LMIFEAS_TESTBENCH_HPP
