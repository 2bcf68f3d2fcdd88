#ifndef LMIFEAS_LMI_MODEL_HPP
#define LMIFEAS_LMI_MODEL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lmifeas/dense_matrix.hpp"
#include "lmifeas/errors.hpp"
#include "lmifeas/spectral.hpp"
#include "lmifeas/sym_matrix.hpp"
#include "lmifeas/vector_ops.hpp"

namespace lmifeas {

/// Feasibility problem  A₁x₁ + … + A_m x_m − B ⪯ 0.
class LmiProblem {
 public:
  LmiProblem(std::vector<SymMatrix> coeffs, SymMatrix rhs) : coeffs_(std::move(coeffs)), rhs_(std::move(rhs)) {
    if (coeffs_.empty()) throw InvalidParameter("LmiProblem: need at least one coefficient matrix");
    if (rhs_.dim() == 0) throw InvalidParameter("LmiProblem: matrix dimension must be positive");
    for (const auto& a : coeffs_) require_same_size(a.dim(), rhs_.dim(), "LmiProblem coefficient");
  }

  std::size_t n() const noexcept { return rhs_.dim(); }
  std::size_t m() const noexcept { return coeffs_.size(); }
  const std::vector<SymMatrix>& coeffs() const noexcept { return coeffs_; }
  const SymMatrix& coeff(std::size_t i) const { return coeffs_.at(i); }
  const SymMatrix& rhs() const noexcept { return rhs_; }

  bool operator==(const LmiProblem&) const = default;

 private:
  std::vector<SymMatrix> coeffs_;
  SymMatrix rhs_;
};

/// Σ xᵢ Aᵢ
inline SymMatrix apply_operator(const LmiProblem& p, std::span<const double> x) {
  require_same_size(x.size(), p.m(), "apply_operator");
  SymMatrix out(p.n());
  for (std::size_t i = 0; i < p.m(); ++i) {
    if (x[i] != 0.0) out.add_scaled(p.coeff(i), x[i]);
  }
  return out;
}

/// 𝒜x − B
inline SymMatrix constraint_matrix(const LmiProblem& p, std::span<const double> x) {
  SymMatrix s = apply_operator(p, x);
  s -= p.rhs();
  return s;
}

/// (⟨A₁,Z⟩, …, ⟨A_m,Z⟩)
inline Vector adjoint_apply(const LmiProblem& p, const SymMatrix& z) {
  require_same_size(z.dim(), p.n(), "adjoint_apply");
  Vector out(p.m());
  for (std::size_t i = 0; i < p.m(); ++i) out[i] = frobenius_inner(p.coeff(i), z);
  return out;
}

struct OperatorConstants {
  double M;       // √Σ‖Aᵢ‖₂², bound on subgradients of max(λ₁,0)
  double opnorm;  // √Σ‖Aᵢ‖_F²
  double L;       // 2·opnorm², gradient Lipschitz constant of the squared cone distance
};

inline OperatorConstants constants(const LmiProblem& p) {
  double spec_sq = 0.0;
  double fro_sq = 0.0;
  for (const auto& a : p.coeffs()) {
    const auto nr = norms(a);
    spec_sq += nr.spectral * nr.spectral;
    fro_sq += nr.fro * nr.fro;
  }
  const double opnorm = std::sqrt(fro_sq);
  return {std::sqrt(spec_sq), opnorm, 2.0 * fro_sq};
}

/// A point d with λ₁(𝒜d − B) ≤ −σ, validated against its problem.
class SlaterCertificate {
 public:
  /// Relative slack (times max(1, ‖B‖_F)) allowed when checking the margin.
  static constexpr double kValidationSlack = 1e-10;

  static SlaterCertificate validated(const LmiProblem& p, Vector point, double margin) {
    if (!(margin > 0.0) || !std::isfinite(margin)) throw InvalidCertificate("Slater margin must be positive");
    require_same_size(point.size(), p.m(), "SlaterCertificate point");
    if (!all_finite(point)) throw InvalidCertificate("Slater point has non-finite entries");
    const double top = lambda_max(constraint_matrix(p, point)).value;
    const double slack = kValidationSlack * std::max(1.0, frobenius_norm(p.rhs()));
    if (top > -margin + slack) {
      throw InvalidCertificate("Slater certificate fails: lambda_max(Ad - B) = " + std::to_string(top) +
                               " > -sigma = " + std::to_string(-margin));
    }
    return SlaterCertificate(std::move(point), margin);
  }

  const Vector& point() const noexcept { return point_; }
  double margin() const noexcept { return margin_; }

  bool operator==(const SlaterCertificate&) const = default;

 private:
  SlaterCertificate(Vector point, double margin) : point_(std::move(point)), margin_(margin) {}

  Vector point_;
  double margin_;
};

/// μ = ‖d‖₂ / σ
inline double mu_of(const SlaterCertificate& cert) { return norm2(cert.point()) / cert.margin(); }

/// Block-diagonal combination of LMIs over a shared variable vector.
inline LmiProblem stack(std::span<const LmiProblem> problems) {
  if (problems.empty()) throw InvalidParameter("stack: no problems given");
  const std::size_t m = problems.front().m();
  for (const auto& p : problems) require_same_size(p.m(), m, "stack variable count");
  std::vector<SymMatrix> blocks;
  blocks.reserve(problems.size());
  std::vector<SymMatrix> coeffs;
  coeffs.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    blocks.clear();
    for (const auto& p : problems) blocks.push_back(p.coeff(i));
    coeffs.push_back(block_diagonal(blocks));
  }
  blocks.clear();
  for (const auto& p : problems) blocks.push_back(p.rhs());
  return LmiProblem(std::move(coeffs), block_diagonal(blocks));
}

inline LmiProblem stack(std::initializer_list<LmiProblem> problems) {
  return stack(std::span<const LmiProblem>(problems.begin(), problems.size()));
}

/// Primal-dual pair  min ⟨c,x⟩ s.t. 𝒜x ⪯ B   /   max ⟨B,y⟩ s.t. 𝒜ᵀy = c, y ⪯ 0.
struct SdpPair {
  Vector objective;
  std::vector<SymMatrix> coeffs;
  SymMatrix rhs;
};

/// The optimality system of an SdpPair written as one LMI.
///
/// Variables are (x, y_upper), where y_upper lists y(j,k) for j ≤ k in
/// row-major order. Equalities become pairs of opposing 1×1 blocks, so the
/// result never has a strictly feasible point.
struct ReducedSdp {
  LmiProblem problem;
  std::size_t primal_count;
  std::size_t matrix_dim;
  bool certificate_derivable = false;

  Vector pack(std::span<const double> x, const SymMatrix& y) const {
    require_same_size(x.size(), primal_count, "ReducedSdp::pack");
    require_same_size(y.dim(), matrix_dim, "ReducedSdp::pack");
    Vector z(x.begin(), x.end());
    for (std::size_t j = 0; j < matrix_dim; ++j)
      for (std::size_t k = j; k < matrix_dim; ++k) z.push_back(y(j, k));
    return z;
  }

  std::pair<Vector, SymMatrix> unpack(std::span<const double> z) const {
    require_same_size(z.size(), problem.m(), "ReducedSdp::unpack");
    Vector x(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(primal_count));
    SymMatrix y(matrix_dim);
    std::size_t idx = primal_count;
    for (std::size_t j = 0; j < matrix_dim; ++j)
      for (std::size_t k = j; k < matrix_dim; ++k) y.set(j, k, z[idx++]);
    return {std::move(x), std::move(y)};
  }
};

inline ReducedSdp reduce_primal_dual(const SdpPair& pair) {
  const std::size_t m = pair.coeffs.size();
  const std::size_t n = pair.rhs.dim();
  if (m == 0 || n == 0) throw InvalidParameter("reduce_primal_dual: empty pair");
  require_same_size(pair.objective.size(), m, "reduce_primal_dual objective");
  for (const auto& a : pair.coeffs) require_same_size(a.dim(), n, "reduce_primal_dual coefficient");

  const std::size_t ny = n * (n + 1) / 2;
  const std::size_t total_vars = m + ny;
  const std::size_t eq_off = n;
  const std::size_t y_off = n + 2 * m;
  const std::size_t gap_row = n + 2 * m + n;
  const std::size_t big = gap_row + 1;

  // Basis element of y(j,k): E_jk + E_kj off the diagonal, E_jj on it.
  auto basis_inner = [](const SymMatrix& a, std::size_t j, std::size_t k) {
    return j == k ? a(j, j) : 2.0 * a(j, k);
  };

  std::vector<SymMatrix> coeffs(total_vars, SymMatrix(big));
  SymMatrix rhs(big);

  // 𝒜x ⪯ B
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c <= r; ++c) coeffs[i].set(r, c, pair.coeffs[i](r, c));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c <= r; ++c) rhs.set(r, c, pair.rhs(r, c));

  std::size_t yv = m;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j; k < n; ++k, ++yv) {
      // ⟨Aᵢ,y⟩ − cᵢ ≤ 0 and −⟨Aᵢ,y⟩ + cᵢ ≤ 0
      for (std::size_t i = 0; i < m; ++i) {
        const double w = basis_inner(pair.coeffs[i], j, k);
        coeffs[yv].set(eq_off + 2 * i, eq_off + 2 * i, w);
        coeffs[yv].set(eq_off + 2 * i + 1, eq_off + 2 * i + 1, -w);
      }
      // y ⪯ 0
      coeffs[yv].set(y_off + j, y_off + k, 1.0);
      // −⟨B,y⟩ part of the gap row
      coeffs[yv].set(gap_row, gap_row, -basis_inner(pair.rhs, j, k));
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    rhs.set(eq_off + 2 * i, eq_off + 2 * i, pair.objective[i]);
    rhs.set(eq_off + 2 * i + 1, eq_off + 2 * i + 1, -pair.objective[i]);
    coeffs[i].set(gap_row, gap_row, pair.objective[i]);
  }
  return ReducedSdp{LmiProblem(std::move(coeffs), std::move(rhs)), m, n, false};
}

enum class RowKind { LE, EQ };

/// Linear system  aᵢᵀx ≤ bᵢ (LE rows),  aᵢᵀx = bᵢ (EQ rows).
class LinIneqSystem {
 public:
  LinIneqSystem(DenseMatrix rows, Vector rhs, std::vector<RowKind> kinds)
      : rows_(std::move(rows)), rhs_(std::move(rhs)), kinds_(std::move(kinds)) {
    if (rows_.rows() == 0 || rows_.cols() == 0) throw InvalidParameter("LinIneqSystem: empty matrix");
    require_same_size(rhs_.size(), rows_.rows(), "LinIneqSystem rhs");
    require_same_size(kinds_.size(), rows_.rows(), "LinIneqSystem kinds");
    if (!all_finite(rows_.data()) || !all_finite(rhs_)) throw NonFiniteInput("LinIneqSystem: non-finite data");
  }

  std::size_t p() const noexcept { return rows_.rows(); }
  std::size_t q() const noexcept { return rows_.cols(); }
  const DenseMatrix& rows() const noexcept { return rows_; }
  const Vector& rhs() const noexcept { return rhs_; }
  const std::vector<RowKind>& kinds() const noexcept { return kinds_; }

  bool all_equalities() const {
    return std::all_of(kinds_.begin(), kinds_.end(), [](RowKind k) { return k == RowKind::EQ; });
  }

  bool operator==(const LinIneqSystem&) const = default;

 private:
  DenseMatrix rows_;
  Vector rhs_;
  std::vector<RowKind> kinds_;
};

/// e(y): positive part on LE rows, identity on EQ rows.
inline Vector residual_map(const LinIneqSystem& sys, std::span<const double> y) {
  require_same_size(y.size(), sys.p(), "residual_map");
  Vector e(y.begin(), y.end());
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (sys.kinds()[i] == RowKind::LE) e[i] = std::max(0.0, e[i]);
  }
  return e;
}

/// Spectral norm of a rectangular matrix, via the top eigenvalue of AᵀA.
inline double spectral_norm(const DenseMatrix& a) {
  const auto top = lambda_max(SymMatrix::gram(a)).value;
  return std::sqrt(std::max(0.0, top));
}

}  // namespace lmifeas

#endif  // LMIFEAS_LMI_MODEL_HPP
