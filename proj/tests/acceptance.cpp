// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pwmel/basis_integrals.hpp"
#include "pwmel/identities.hpp"
#include "pwmel/kernels.hpp"
#include "pwmel/melnikov.hpp"
#include "pwmel/quadrature.hpp"
#include "pwmel/simulator.hpp"
#include "pwmel/zeros.hpp"

using namespace pwmel;

namespace {

constexpr double pi = std::numbers::pi;
const Mode kModes[] = {Mode::four_zone, Mode::two_zone_upper, Mode::two_zone_lower};

int failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

void report(int id, bool ok, const std::string& what, const Timer& t) {
  if (!ok) ++failures;
  std::printf("[%s] %2d %s (%.1fs)\n", ok ? "PASS" : "FAIL", id, what.c_str(), t.seconds());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

void criterion1() {
  Timer t;
  const double h = 2.0;
  const BaseValues b = base_integrals(h);
  struct Row {
    double closed, expected, quad;
  };
  const Row rows[] = {
      {b.J00, -2.0, arc_moment(make_arc(ArcLabel::BC, h), 0, 0, Form::dx)},
      {b.I11, 2.0 / 3, arc_moment(make_arc(ArcLabel::AB, h), 1, 1, Form::dx)},
      {b.I01, pi / 2 - 1, arc_moment(make_arc(ArcLabel::AB, h), 0, 1, Form::dx)},
      {b.J01, 1 + pi / 2, arc_moment(make_arc(ArcLabel::BC, h), 0, 1, Form::dx)},
      {b.U01, 3 * pi / 2 - 1, arc_moment(make_arc(ArcLabel::AD_lower, h), 0, 1, Form::dx)},
  };
  double worst = 0;
  for (const Row& r : rows) worst = std::max({worst, std::fabs(r.closed - r.expected), std::fabs(r.quad - r.expected)});
  report(1, worst <= 1e-10, "base integrals J00 I11 I01 J01 U01 at h=2, max abs error " + fmt("%.2e", worst), t);
}

void criterion2() {
  Timer t;
  double worst = 0;
  bool exact = true;
  for (const TableEntry& e : reduction_table()) {
    const ReducedMoment& r = reduce_moment(e.id);
    exact = exact && r.base == e.expected.base && r.base_coeff == e.expected.base_coeff &&
            r.base_power == e.expected.base_power && r.boundary == e.expected.boundary;
    for (double h : {0.5, 2.0, 5.0}) worst = std::max(worst, reduction_vs_quadrature(e.id, h));
  }
  report(2,
         worst <= 1e-9 && exact && reduction_table().size() == 5,
         "reduction table I03 I21 I05 I23 I41 vs quadrature at h={0.5,2,5}, max rel error " + fmt("%.2e", worst) +
             (exact ? ", exact forms match" : ", exact forms DIFFER"),
         t);
}

void criterion3() {
  Timer t;
  double worst = 0;
  int cases = 0;
  for (Mode m : kModes) {
    for (int k = 0; k <= 600; ++k) {
      const double h = std::pow(10.0, -3.0 + 6.0 * k / 600);
      for (double phi : phi_factors(h, m)) {
        worst = std::max(worst, std::fabs(phi - 1.0));
        ++cases;
      }
    }
  }
  report(3, worst <= 1e-12,
         "phi factors on log grid [1e-3,1e3], " + std::to_string(cases) + " values, max |phi-1| " + fmt("%.2e", worst), t);
}

struct DualPathTotals {
  int evaluations = 0;
  double worst = 0;
  int degree_violations = 0;
  std::string first_violation;
};

DualPathTotals dual_path_totals() {
  static const DualPathTotals totals = [] {
    DualPathTotals d;
    const std::vector<double> hs = {0.01, 0.2, 1.5, 12.0, 90.0};
    for (Mode m : kModes) {
      for (int n = 1; n <= 5; ++n) {
        const AgreementSummary s = dual_path_sweep(n, m, 100, hs, 1000 + n, Execution::parallel);
        d.evaluations += s.evaluations;
        d.worst = std::max(d.worst, s.worst_relative);
        d.degree_violations += s.degree_violations;
        if (d.first_violation.empty()) d.first_violation = s.first_violation;
      }
    }
    return d;
  }();
  return totals;
}

void criterion4() {
  Timer t;
  const DualPathTotals d = dual_path_totals();
  report(4, d.worst <= 1e-8 && d.evaluations == 7500,
         "dual-path agreement, " + std::to_string(d.evaluations) + " evaluations, worst rel " + fmt("%.2e", d.worst), t);
}

void criterion5() {
  Timer t;
  const DualPathTotals d = dual_path_totals();
  report(5, d.degree_violations == 0,
         "degree bounds over the criterion-4 specs, violations " + std::to_string(d.degree_violations) +
             (d.first_violation.empty() ? "" : " (" + d.first_violation + ")"),
         t);
}

void criterion6() {
  Timer t;
  long double worst = 0;
  for (int k = 1; k <= 100000; ++k) {
    for (long double u : {0.1L * k / 100000.0L, std::pow(10.0L, -12.0L + 11.0L * k / 100000.0L)}) {
      worst = std::max(worst, std::fabs(W_remainder(u)) / (u * u * u * u));
    }
  }
  report(6, worst <= 2.0L, "W(u) Taylor remainder on (0,0.1], max |R|/u^4 " + fmt("%.4f", double(worst)), t);
}

void criterion7() {
  Timer t;
  const double four = series_jacobian(Mode::four_zone).determinant();
  const double upper = series_jacobian(Mode::two_zone_upper).determinant();
  const double lower = series_jacobian(Mode::two_zone_lower).determinant();
  const double target = 8 * pi / 3;
  const double err = std::max({std::fabs(std::fabs(four) - target), std::fabs(std::fabs(upper) - target),
                               std::fabs(std::fabs(lower) - target)});
  char buf[200];
  std::snprintf(buf, sizeof buf, "Jacobian |det| = 8pi/3: signed four-zone %.12f, two-zone-upper %.12f, two-zone-lower %.12f",
                four, upper, lower);
  report(7, err <= 1e-10, buf, t);
}

int sign_changes(const UForm& uf, double u_max, int points) {
  int changes = 0;
  int previous = 0;
  for (int k = 1; k <= points; ++k) {
    const long double u = u_max * k / points;
    const long double v = uf(u);
    const int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
    if (s != 0 && previous != 0 && s != previous) ++changes;
    if (s != 0) previous = s;
  }
  return changes;
}

const Realization& realized(Mode m) {
  static const Realization four = realize_max_zeros({0.1, 0.2, 0.3, 0.4}, Mode::four_zone);
  static const Realization upper = realize_max_zeros({0.1, 0.2, 0.3}, Mode::two_zone_upper);
  static const Realization lower = realize_max_zeros({0.1, 0.2, 0.3}, Mode::two_zone_lower);
  return m == Mode::four_zone ? four : (m == Mode::two_zone_upper ? upper : lower);
}

void criterion8() {
  Timer t;
  bool ok = true;
  std::string detail;
  const std::vector<std::vector<double>> requested = {{0.1, 0.2, 0.3, 0.4}, {0.1, 0.2, 0.3}, {0.1, 0.2, 0.3}};
  for (int k = 0; k < 3; ++k) {
    const Mode m = kModes[k];
    try {
      const Realization& r = realized(m);
      const UForm uf = u_form(r.spec);
      const ZeroReport z = count_zeros(uf);
      const int expected = static_cast<int>(requested[k].size());
      bool within = z.count == expected && static_cast<int>(z.zeros.size()) == expected;
      double worst = 0;
      for (int i = 0; within && i < expected; ++i) {
        const double rel = std::fabs(z.zeros[i].u - requested[k][i]) / requested[k][i];
        worst = std::max(worst, rel);
        within = within && z.zeros[i].multiplicity == Multiplicity::odd_simple;
      }
      within = within && worst <= 0.1;
      const int scan = sign_changes(uf, 10.0, 1000000);
      within = within && scan == expected;
      ok = ok && within;
      detail += std::string(k ? "; " : "") + std::string(to_string(m)) + " " + std::to_string(z.count) + " zeros, scan " +
                std::to_string(scan) + ", worst rel offset " + fmt("%.1e", worst);
    } catch (const std::exception& e) {
      ok = false;
      detail += std::string(k ? "; " : "") + std::string(to_string(m)) + " failed: " + e.what();
    }
  }
  report(8, ok, "realization " + detail, t);
}

void criterion9() {
  Timer t;
  int total = 0, violations = 0, resolution = 0;
  std::string maxima;
  for (Mode m : kModes) {
    for (int n = 1; n <= 5; ++n) {
      const SweepSummary s = bound_sweep(n, m, 500, 2000 + n, Execution::parallel);
      total += static_cast<int>(s.entries.size());
      violations += s.violations;
      resolution += s.resolution_failures;
      for (std::size_t i = 0; i < s.entries.size(); ++i) {
        if (s.entries[i].resolution_failure) {
          std::printf("      resolution failure: %s n=%d spec %zu: %s\n", std::string(to_string(m)).c_str(), n, i,
                      s.entries[i].message.c_str());
        }
      }
      maxima += " " + std::to_string(s.max_count) + "/" + std::to_string(s.bound);
    }
  }
  const double rate = double(resolution) / total;
  report(9, violations == 0 && rate < 0.01,
         "bound sweep, " + std::to_string(total) + " specs, violations " + std::to_string(violations) +
             ", resolution failures " + std::to_string(resolution) + ", max/bound per (mode,n):" + maxima,
         t);
}

void criterion10() {
  Timer t;
  bool ok = true;
  std::string detail;
  for (Mode m : kModes) {
    try {
      const CrossValidationReport rep = cross_validate(realized(m).spec, {1e-2, 1e-3});
      const int expected = m == Mode::four_zone ? 4 : 3;
      bool good = rep.passed && rep.runs.size() == 2;
      for (const auto& run : rep.runs) good = good && run.count == expected;
      ok = ok && good;
      detail += std::string(to_string(m)) + " counts";
      for (const auto& run : rep.runs) detail += " " + std::to_string(run.count);
      detail += " drift";
      for (const auto& run : rep.runs) detail += fmt(" %.1e", run.drift);
      detail += "; ";
    } catch (const std::exception& e) {
      ok = false;
      detail += std::string(to_string(m)) + " failed: " + e.what() + "; ";
    }
  }
  SimConfig still;
  still.eps = 0.0;
  double drift = 0;
  for (Mode m : kModes) {
    const PerturbationSpec s = random_spec(3, m, 77, 0);
    for (double h : {0.01, 0.5, 2.0, 10.0, 50.0}) drift = std::max(drift, std::fabs(return_map(s, still, h).d) / h);
  }
  ok = ok && drift < 1e-9;
  report(10, ok, "simulation cross-validation: " + detail + "unperturbed drift " + fmt("%.1e", drift), t);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
