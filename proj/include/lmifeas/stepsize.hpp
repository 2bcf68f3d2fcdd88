#ifndef LMIFEAS_STEPSIZE_HPP
#define LMIFEAS_STEPSIZE_HPP

#include <cmath>
#include <cstddef>

#include "lmifeas/errors.hpp"

namespace lmifeas {

enum class StepsizeKind { Harmonic, Recursive };

/// Stepsize rule for the gap reduction procedure together with the
/// constants (C₁, C₂, C₃) of
///   α₁ = 1,  α_t²/Γ_t ≤ C₁,  Γ_t ≤ C₂/t²,  Γ_t (Σ_τ (α_τ/Γ_τ)²)^½ ≤ C₃/√t.
struct StepsizePolicy {
  StepsizeKind kind;
  double C1;
  double C2;
  double C3;

  static StepsizePolicy harmonic() { return {StepsizeKind::Harmonic, 2.0, 2.0, 2.0 / std::sqrt(3.0)}; }
  static StepsizePolicy recursive() { return {StepsizeKind::Recursive, 1.0, 4.0, 4.0 / std::sqrt(3.0)}; }
  static StepsizePolicy of(StepsizeKind k) { return k == StepsizeKind::Harmonic ? harmonic() : recursive(); }
};

struct StepsizeValue {
  double alpha;
  double Gamma;
};

/// Generates (α_t, Γ_t) for t = 1, 2, … with Γ₁ = 1 and Γ_t = Γ_{t−1}(1 − α_t).
class StepsizeSchedule {
 public:
  explicit StepsizeSchedule(StepsizePolicy policy) : policy_(policy) {}

  StepsizeValue next() {
    ++t_;
    if (t_ == 1) {
      gamma_ = 1.0;
      return {1.0, 1.0};
    }
    double alpha;
    if (policy_.kind == StepsizeKind::Harmonic) {
      alpha = 2.0 / (static_cast<double>(t_) + 1.0);
      gamma_ *= 1.0 - alpha;
    } else {
      // positive root of α² + Γα − Γ = 0, written to avoid cancellation
      const double g = gamma_;
      alpha = 2.0 * g / (g + std::sqrt(g * g + 4.0 * g));
      gamma_ = alpha * alpha;
    }
    return {alpha, gamma_};
  }

  std::size_t t() const noexcept { return t_; }

 private:
  StepsizePolicy policy_;
  std::size_t t_ = 0;
  double gamma_ = 1.0;
};

inline StepsizeValue stepsizes(StepsizePolicy policy, std::size_t t) {
  if (t == 0) throw InvalidParameter("stepsizes: t must be >= 1");
  StepsizeSchedule s(policy);
  StepsizeValue v{};
  for (std::size_t k = 0; k < t; ++k) v = s.next();
  return v;
}

}  // namespace lmifeas

#endif  // LMIFEAS_STEPSIZE_HPP
