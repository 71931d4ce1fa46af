#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pwmel/errors.hpp"
#include "pwmel/melnikov.hpp"

namespace pwmel {

struct ZeroScanOptions {
  double u_max = 10.0;
  double tol = 1e-12;         // bracket width, and the |M|/scale tangency threshold
  int scan_points = 4096;
  int refine_factor = 4;      // density multiplier per refinement level
  int max_depth = 8;
  double tail_factor = 100.0; // sign-change check continues on (u_max, tail_factor·u_max]
  int tail_points = 512;
};

enum class Multiplicity { odd_simple, even_suspected };

struct ZeroEstimate {
  double u = 0.0;
  double h = 0.0;              // u⁴ + u²
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  Multiplicity multiplicity = Multiplicity::odd_simple;

  double bracket_width() const { return bracket_hi - bracket_lo; }
};

struct ZeroReport {
  std::vector<ZeroEstimate> zeros;  // sorted by u, brackets disjoint
  int count = 0;                    // with multiplicity: odd → 1, even-suspected → 2
  int bound = -1;                   // theoretical bound, −1 when n = 0
  bool bound_satisfied = true;
  std::vector<std::string> warnings;
};

/// Positive zeros of the u-form on (0, u_max], plus a sign-change check of the
/// tail. Throws ResolutionFailure when a near-tangency stays ambiguous after
/// max_depth refinements.
ZeroReport count_zeros(const UForm& uf, const ZeroScanOptions& opts = {});

/// Sorted scan abscissae: half geometric from 1e-6·u_max, half uniform.
std::vector<double> scan_grid(double u_max, int points);

/// Bisection of a sign change of f on [lo, hi] down to the given width.
template <class F>
std::pair<double, double> bisect_bracket(F&& f, double lo, double hi, long double f_lo, double width) {
  for (int iter = 0; iter < 400 && hi - lo > width; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const long double f_mid = f(mid);
    if (f_mid == 0.0L) return {mid, mid};
    if ((f_mid < 0.0L) == (f_lo < 0.0L)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return {lo, hi};
}

/// Upper bound on the number of limit cycles from the first-order Melnikov
/// function: n = 1 gives 4 (four-zone) or 3 (two-zone), otherwise
/// 2n + 5⌊(n−1)/2⌋ + 4. Throws Unsupported for n < 1.
int theoretical_bound(int n, Mode mode);

/// Low-order coefficients of a degree-1 Melnikov function.
///   four-zone: M(u) = λ₄u⁴ + λ₃u³ + λ₂u² + λ₁u + λ₀(u⁴+u²)W(u), with
///              μ₂ = λ₂ + πλ₀/4, μ₄ = λ₄ + πλ₀/4, μ₅ = −λ₀/3 the Taylor coefficients
///   two-zone:  M(u) = u(τ₀ + τ₁(u + u³) + τ₂u² + τ₄u⁴ + o(u⁴))
struct LambdaCoeffs {
  Mode mode = Mode::four_zone;
  double lambda[5] = {0, 0, 0, 0, 0};
  double mu2 = 0, mu4 = 0, mu5 = 0;
  double tau0 = 0, tau1 = 0, tau2 = 0, tau4 = 0;

  /// (λ₁, μ₂, λ₃, μ₄, μ₅) in four-zone mode, (τ₀, τ₁, τ₂, τ₄) otherwise.
  std::vector<double> series() const;
};

LambdaCoeffs lambda_coeffs(const PerturbationSpec& spec);

/// A single perturbation coefficient: a^zone_{i,j} (is_b = false) or b^zone_{i,j}.
struct CoefficientRef {
  bool is_b = true;
  Zone zone = Zone::one;
  int i = 0;
  int j = 0;

  void set(PerturbationSpec& spec, double value) const;
  double get(const PerturbationSpec& spec) const;
  std::string name() const;
};

/// Coefficients driven by the realization; all others stay zero.
///   four-zone: (b²₀₁, b²₀₀, a¹₀₀, a²₁₀, b¹₀₁)
///   two-zone:  (b⁴₀₁, b¹₀₁, a¹₁₀, b¹₀₀)
std::vector<CoefficientRef> free_coefficients(Mode mode);

/// ∂(series)/∂(free coefficients), assembled from unit perturbations.
Eigen::MatrixXd series_jacobian(Mode mode);

/// Degree-1 spec whose series() equals the requested coefficients.
PerturbationSpec invert_series(const std::vector<double>& series, Mode mode);

/// Series coefficients whose truncated Melnikov polynomial has the given
/// positive roots, scaled so the largest coefficient has magnitude 1.
std::vector<double> target_series(const std::vector<double>& roots, Mode mode);

struct RealizeOptions {
  double u_cap = 0.5;
  int max_retries = 6;
  /// After the series inversion, re-solve the free coefficients so the full
  /// M(u) vanishes exactly at the targets (keeping the series solution's scale).
  bool polish = true;
  double target_rel_tol = 0.1;
  ZeroScanOptions scan{};
};

struct Realization {
  PerturbationSpec spec;
  std::vector<double> targets;  // targets actually realized (after any rescaling)
  ZeroReport report;
  int attempts = 0;
};

class RealizationFailure : public std::runtime_error {
 public:
  RealizationFailure(const std::string& what, ZeroReport last)
      : std::runtime_error(what), last_(std::move(last)) {}
  const ZeroReport& last_report() const { return last_; }

 private:
  ZeroReport last_;
};

/// Degree-1 perturbation whose Melnikov function has exactly the maximal
/// number of positive zeros (4 four-zone, 3 two-zone) near the targets,
/// certified by count_zeros. Halves the targets and retries on failure.
Realization realize_max_zeros(std::vector<double> targets, Mode mode, const RealizeOptions& opts = {});

}  // namespace pwmel
