#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pwmel/basis_integrals.hpp"

namespace pwmel {

struct IdentityCheck {
  std::string name;
  bool passed = false;
  int cases = 0;
  double max_error = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

/// Numerical identity suite: Green's formula for dy moments, both level-curve
/// recurrences, half-turn symmetry and vanishing moments, Φ ≡ 1, base-integral
/// closed forms and the small reduction table, all checked against quadrature.
std::vector<IdentityCheck> run_identities(std::uint64_t seed = 1);

/// Small I-family reductions in closed form: h^p·I01 coefficient plus a
/// boundary polynomial in u.
struct TableEntry {
  MomentId id;
  ReducedMoment expected;
};

const std::vector<TableEntry>& reduction_table();

/// Relative error of a reduction against arc quadrature at level h, scaled by
/// max(|a|, |b|, h^((i+j+1)/2)).
double reduction_vs_quadrature(const MomentId& id, double h);

}  // namespace pwmel
