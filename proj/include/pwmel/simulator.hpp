#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "pwmel/perturbation.hpp"

namespace pwmel {

struct SimConfig {
  double eps = 1e-3;
  double rtol = 1e-10;
  double atol = 1e-12;
  double event_tol = 1e-12;
  long max_steps = 200000;
};

/// Switching curves: upper is y = x², lower is y = −x².
enum class Curve { upper, lower };

std::string_view to_string(Curve c);

struct FlowState {
  double x = 0.0;
  double y = 0.0;
  Zone zone = Zone::one;
  double t = 0.0;
};

struct Crossing {
  Curve curve = Curve::upper;
  Point point;
  double t = 0.0;
  Zone from = Zone::one;
  Zone to = Zone::one;
  double normal_speed = 0.0;  // (∇e · F)/|∇e| with e = y ∓ x², field of the zone being left
};

struct ReturnMapSample {
  double h_in = 0.0;
  double h_out = 0.0;
  double d = 0.0;  // h_out − h_in, with h = x² + y²
  double period = 0.0;
  long steps = 0;
  std::vector<Crossing> crossings;
};

class IntegrationFailure : public std::runtime_error {
 public:
  IntegrationFailure(const std::string& what, FlowState last, std::vector<Crossing> trace)
      : std::runtime_error(what), last_(last), trace_(std::move(trace)) {}
  const FlowState& last_state() const { return last_; }
  const std::vector<Crossing>& partial_trace() const { return trace_; }

 private:
  FlowState last_;
  std::vector<Crossing> trace_;
};

/// One revolution of ẋ = y + ε f_k, ẏ = −x + ε g_k from (√h0, 0) back to the
/// half-line {y = 0, x > 0}. Dormand–Prince 5(4) with dense output; switching
/// crossings are located on the interpolant and the integration restarts on
/// the far side of each curve.
ReturnMapSample return_map(const PerturbationSpec& spec, const SimConfig& cfg, double h0);

/// Crossing order expected in one revolution for the mode.
std::vector<std::pair<Curve, int>> expected_crossings(Mode mode);  // (curve, sign of x)

struct LimitCycle {
  double h = 0.0;
  double u = 0.0;
  bool stable = false;  // d > 0 below h and d < 0 above
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

struct LimitCycleOptions {
  int grid_points = 120;
  bool log_grid = true;
  double h_rel_tol = 1e-10;
  int max_iterations = 80;
  bool parallel = true;
};

struct SampleFailure {
  double h = 0.0;
  std::string message;
};

struct LimitCycleReport {
  std::vector<LimitCycle> cycles;
  std::vector<double> grid;
  std::vector<double> displacement;  // NaN where the sample failed
  std::vector<SampleFailure> failures;
};

/// Sign changes of the displacement on a grid over [h_lo, h_hi], refined by
/// Illinois iteration. Failed samples are skipped and reported.
LimitCycleReport find_limit_cycles(const PerturbationSpec& spec, const SimConfig& cfg, double h_lo, double h_hi,
                                   const LimitCycleOptions& opts = {});

struct EpsilonResult {
  double eps = 0.0;
  std::vector<LimitCycle> cycles;
  int count = 0;
  double drift = 0.0;  // max relative |h*(ε) − h*_M| over matched pairs, +inf on a count mismatch
  std::vector<SampleFailure> failures;
};

struct CrossValidationReport {
  std::vector<double> melnikov_levels;  // h of the zeros of M
  double h_lo = 0.0;
  double h_hi = 0.0;
  std::vector<EpsilonResult> runs;
  bool count_match = false;     // at the smallest ε
  bool drift_decreasing = false;
  bool passed = false;
  std::vector<std::string> notes;
};

/// Compares limit cycles of the simulated return map at each ε against the
/// zeros of M. The h-window spans 0.5·min to 1.5·max of the Melnikov levels,
/// or [0.01, 10] when M has no positive zero.
CrossValidationReport cross_validate(const PerturbationSpec& spec, const std::vector<double>& eps_list,
                                     const SimConfig& base = {}, const LimitCycleOptions& opts = {});

}  // namespace pwmel
