#pragma once

#include <array>
#include <string>
#include <vector>

#include "pwmel/basis_integrals.hpp"
#include "pwmel/perturbation.hpp"
#include "pwmel/quadrature.hpp"
#include "pwmel/rational.hpp"

namespace pwmel {

/// Gradient-ratio factors weighting each arc integral. Four entries in
/// four-zone mode (arcs AB, BC, CD, DA), two in the two-zone modes (zone 1 arc,
/// zone 4 arc). For the Hamiltonian ½(x² + y²), shared by every zone, all equal 1.
std::vector<double> phi_factors(double h, Mode mode);

/// M(h) by adaptive quadrature of g_k dx − f_k dy over each flow-oriented arc.
double melnikov_direct(const PerturbationSpec& spec, double h, const QuadratureOptions& opts = {});

/// Zone → (flow-oriented arc) pairs integrated by melnikov_direct.
std::vector<std::pair<Zone, ArcLabel>> zone_arcs(Mode mode);

/// M(h) = α(h)·X₁ + β(h)·X₂ + γ(h)·X₃ + δ(h)·X₄ + φ(u) with exact rational
/// polynomials. The base integrals X are (I01, I11, J00, J01) in four-zone mode
/// and (U00, U01, V00, V01) in the two-zone modes. Two-zone-lower is stored as
/// the negated form of its mirror image, so its X refer to the mirrored arcs
/// (their values coincide with the upper ones at every h).
struct CanonicalForm {
  Mode mode = Mode::four_zone;
  int n = 0;
  RationalPoly alpha, beta, gamma, delta;  // in h
  RationalPoly phi;                        // in u

  std::array<BaseIntegral, 4> bases() const;
  bool is_zero() const;
};

CanonicalForm canonical_form(const PerturbationSpec& spec);

long double evaluate(const CanonicalForm& cf, double h);

struct DegreeBounds {
  int alpha, beta, gamma, delta, phi;
};

DegreeBounds degree_bounds(int n, Mode mode);

/// Empty string when every degree bound holds, otherwise a description of the
/// first violation. Two-zone forms must also have φ = u³·q(u²).
std::string degree_violation(const CanonicalForm& cf);

/// W(u) = ∫₀^{1/sqrt(1+u²)} sqrt(1 − t²) dt in closed form.
double eval_W(double u);
long double eval_W(long double u);
/// W(u) − π/4 + u³/3 without cancellation (series below u = 1/2).
long double W_remainder(long double u);

/// M(u) = u·P(u) + (u⁴ + u²)·Qc(u⁴ + u²)·W(u), with P over Q + Qπ.
struct UForm {
  Mode mode = Mode::four_zone;
  int n = 0;
  PiPoly P;         // in u
  RationalPoly Qc;  // in v = u⁴ + u²

  UForm() = default;
  UForm(Mode mode, int n, PiPoly P, RationalPoly Qc);

  long double operator()(long double u) const;
  /// Sum of absolute term sizes at u: the scale against which M(u) is "small".
  long double magnitude(long double u) const;
  bool is_zero() const { return P.is_zero() && Qc.is_zero(); }
  const std::vector<long double>& p_numeric() const { return p_numeric_; }
  const std::vector<long double>& q_numeric() const { return q_numeric_; }

 private:
  std::vector<long double> p_numeric_;
  std::vector<long double> q_numeric_;
};

UForm u_form(const CanonicalForm& cf);

inline UForm u_form(const PerturbationSpec& spec) { return u_form(canonical_form(spec)); }

/// Evaluates the u-form at u = u_of_h(h).
double melnikov_canonical(const UForm& uf, double h);

}  // namespace pwmel
