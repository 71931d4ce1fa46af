#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pwmel/melnikov.hpp"
#include "pwmel/simulator.hpp"
#include "pwmel/zeros.hpp"

namespace pwmel {

/// Every kernel has a plain serial loop (the reference) and an OpenMP loop
/// over the same per-item work; results are identical element by element.
enum class Execution { serial, parallel };

std::vector<double> melnikov_direct_grid(const PerturbationSpec& spec, const std::vector<double>& hs, Execution exec,
                                         const QuadratureOptions& opts = {});

std::vector<double> melnikov_canonical_grid(const UForm& uf, const std::vector<double>& hs, Execution exec);

struct DisplacementSample {
  double h = 0.0;
  double d = 0.0;
  bool ok = false;
  std::string error;
};

std::vector<DisplacementSample> displacement_grid(const PerturbationSpec& spec, const SimConfig& cfg,
                                                  const std::vector<double>& hs, Execution exec);

/// Spec with every coefficient of the mode's zones uniform in [−1, 1]. The
/// stream depends only on (seed, index), so sweeps are order-independent.
PerturbationSpec random_spec(int n, Mode mode, std::uint64_t seed, std::uint64_t index);

struct SweepEntry {
  int count = 0;
  bool resolution_failure = false;
  std::string message;
};

struct SweepSummary {
  int n = 0;
  Mode mode = Mode::four_zone;
  int bound = 0;
  int max_count = 0;
  int violations = 0;
  int resolution_failures = 0;
  std::vector<SweepEntry> entries;
};

/// count_zeros over `specs` random specs, compared with theoretical_bound.
SweepSummary bound_sweep(int n, Mode mode, int specs, std::uint64_t seed, Execution exec,
                         const ZeroScanOptions& scan = {});

struct AgreementSummary {
  int evaluations = 0;
  double worst_relative = 0.0;  // |direct − canonical| / max(|direct|, scale)
  int degree_violations = 0;
  std::string first_violation;
};

/// Direct quadrature against the canonical form for random specs at the given h.
AgreementSummary dual_path_sweep(int n, Mode mode, int specs, const std::vector<double>& hs, std::uint64_t seed,
                                 Execution exec, const QuadratureOptions& opts = {});

}  // namespace pwmel
