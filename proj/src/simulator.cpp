#include "pwmel/simulator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "pwmel/kernels.hpp"
#include "pwmel/melnikov.hpp"
#include "pwmel/zeros.hpp"

namespace pwmel {

std::string_view to_string(Curve c) { return c == Curve::upper ? "y=x^2" : "y=-x^2"; }

std::vector<std::pair<Curve, int>> expected_crossings(Mode mode) {
  switch (mode) {
    case Mode::four_zone:
      return {{Curve::lower, 1}, {Curve::lower, -1}, {Curve::upper, -1}, {Curve::upper, 1}};
    case Mode::two_zone_upper:
      return {{Curve::upper, -1}, {Curve::upper, 1}};
    case Mode::two_zone_lower:
      return {{Curve::lower, 1}, {Curve::lower, -1}};
  }
  return {};
}

namespace {

using Vec = std::array<double, 2>;

constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

struct Field {
  const PerturbationSpec& spec;
  double eps;

  Vec operator()(Zone z, const Vec& p) const {
    return {p[1] + eps * spec.f(z, p[0], p[1]), -p[0] + eps * spec.g(z, p[0], p[1])};
  }
};

// Hairer's continuous extension of the Dormand–Prince pair.
struct Dense {
  std::array<Vec, 5> r;

  Vec operator()(double theta) const {
    const double t1 = 1.0 - theta;
    Vec out;
    for (int i = 0; i < 2; ++i) out[i] = r[0][i] + theta * (r[1][i] + t1 * (r[2][i] + theta * (r[3][i] + t1 * r[4][i])));
    return out;
  }
};

double curve_event(Curve c, const Vec& p) { return c == Curve::upper ? p[1] - p[0] * p[0] : p[1] + p[0] * p[0]; }

double normal_speed(Curve c, const Vec& p, const Vec& f) {
  const double gx = c == Curve::upper ? -2.0 * p[0] : 2.0 * p[0];
  return (gx * f[0] + f[1]) / std::hypot(gx, 1.0);
}

Zone classify(const Vec& p, Mode mode) {
  const double up = p[1] - p[0] * p[0];
  const double lo = p[1] + p[0] * p[0];
  switch (mode) {
    case Mode::two_zone_upper:
      return up > 0.0 ? Zone::four : Zone::one;
    case Mode::two_zone_lower:
      return lo < 0.0 ? Zone::four : Zone::one;
    case Mode::four_zone:
      break;
  }
  if (up > 0.0) return Zone::four;
  if (lo < 0.0) return Zone::two;
  return p[0] > 0.0 ? Zone::one : Zone::three;
}

std::vector<Curve> active_curves(Mode mode) {
  switch (mode) {
    case Mode::four_zone:
      return {Curve::upper, Curve::lower};
    case Mode::two_zone_upper:
      return {Curve::upper};
    case Mode::two_zone_lower:
      return {Curve::lower};
  }
  return {};
}

// Illinois iteration for a sign change of g on [a, b]; returns a point on b's
// side of the root with |g| < tol (or a bracket at machine resolution).
template <class G>
double locate(G&& g, double a, double b, double tol) {
  double fa = g(a);
  double fb = g(b);
  double gb = fb;
  int side = 0;
  for (int it = 0; it < 200; ++it) {
    if (std::fabs(gb) < tol || b - a <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(b))) break;
    double c = (a * fb - b * fa) / (fb - fa);
    if (!(c > a && c < b)) c = 0.5 * (a + b);
    const double fc = g(c);
    if (fc != 0.0 && (fc < 0.0) == (gb < 0.0)) {
      b = c;
      fb = gb = fc;
      if (side == 1) fa *= 0.5;
      side = 1;
    } else {
      a = c;
      fa = fc;
      if (side == -1) fb *= 0.5;
      side = -1;
    }
  }
  return b;
}

}  // namespace

ReturnMapSample return_map(const PerturbationSpec& spec, const SimConfig& cfg, double h0) {
  if (!(h0 > 0.0)) throw DomainError("return_map: h0 must be positive");
  if (!(cfg.rtol > 0.0) || !(cfg.atol > 0.0) || !(cfg.event_tol > 0.0)) {
    throw DomainError("return_map: tolerances must be positive");
  }
  const Mode mode = spec.mode();
  const Field F{spec, cfg.eps};
  const auto expected = expected_crossings(mode);
  const auto curves = active_curves(mode);
  const double max_step = 0.25 * std::atan(u_of_h(h0));

  ReturnMapSample out;
  out.h_in = h0;
  Vec y{std::sqrt(h0), 0.0};
  Zone zone = Zone::one;
  double t = 0.0;
  double step = 0.1 * max_step;
  Vec k1 = F(zone, y);

  auto fail = [&](const std::string& why) {
    std::ostringstream msg;
    msg << "return_map(h0 = " << h0 << "): " << why;
    throw IntegrationFailure(msg.str(), FlowState{y[0], y[1], zone, t}, out.crossings);
  };

  while (true) {
    if (out.steps >= cfg.max_steps) fail("max_steps exceeded");
    ++out.steps;
    step = std::min(step, max_step);
    const double hs = step;
    auto at = [&](std::initializer_list<std::pair<double, const Vec*>> terms) {
      Vec v = y;
      for (const auto& [c, k] : terms) {
        v[0] += hs * c * (*k)[0];
        v[1] += hs * c * (*k)[1];
      }
      return v;
    };
    const Vec k2 = F(zone, at({{a21, &k1}}));
    const Vec k3 = F(zone, at({{a31, &k1}, {a32, &k2}}));
    const Vec k4 = F(zone, at({{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const Vec k5 = F(zone, at({{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const Vec k6 = F(zone, at({{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    const Vec y_new = at({{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
    const Vec k7 = F(zone, y_new);

    double err = 0.0;
    for (int i = 0; i < 2; ++i) {
      const double e = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = cfg.atol + cfg.rtol * std::max(std::fabs(y[i]), std::fabs(y_new[i]));
      err += (e / sc) * (e / sc);
    }
    err = std::sqrt(0.5 * err);
    if (!std::isfinite(err)) fail("non-finite state");
    if (err > 1.0) {
      step = hs * std::max(0.2, 0.9 * std::pow(err, -0.2));
      continue;
    }

    Dense dense;
    for (int i = 0; i < 2; ++i) {
      const double diff = y_new[i] - y[i];
      const double bspl = hs * k1[i] - diff;
      dense.r[0][i] = y[i];
      dense.r[1][i] = diff;
      dense.r[2][i] = bspl;
      dense.r[3][i] = diff - hs * k7[i] - bspl;
      dense.r[4][i] = hs * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
    }
    const Vec y_mid = dense(0.5);

    // Earliest switching-curve sign change inside the step.
    double theta_hit = 2.0;
    Curve hit = Curve::upper;
    for (Curve c : curves) {
      const double g0 = curve_event(c, y);
      const double gm = curve_event(c, y_mid);
      const double g1 = curve_event(c, y_new);
      double lo = 0.0, hi = 0.0;
      if ((g0 < 0.0) != (gm < 0.0)) {
        hi = 0.5;
      } else if ((gm < 0.0) != (g1 < 0.0)) {
        lo = 0.5;
        hi = 1.0;
      } else {
        continue;
      }
      const double theta = locate([&](double s) { return curve_event(c, dense(s)); }, lo, hi, cfg.event_tol);
      if (theta < theta_hit) {
        theta_hit = theta;
        hit = c;
      }
    }

    const bool armed = out.crossings.size() == expected.size();
    const bool section = armed && y[1] > 0.0 && (y_mid[1] <= 0.0 || y_new[1] <= 0.0);

    if (theta_hit <= 1.0) {
      if (armed) fail("extra switching crossing before the return section");
      const Vec p = dense(theta_hit);
      const std::size_t k = out.crossings.size();
      const int xs = p[0] > 0.0 ? 1 : -1;
      if (hit != expected[k].first || xs != expected[k].second) fail("crossing order differs from the zone topology");
      const Zone next = classify(p, mode);
      const double v_old = normal_speed(hit, p, F(zone, p));
      const double v_new = normal_speed(hit, p, F(next, p));
      if (std::fabs(v_old) <= cfg.event_tol || std::fabs(v_new) <= cfg.event_tol || (v_old < 0.0) != (v_new < 0.0)) {
        fail("non-transversal crossing");
      }
      if (next == zone) fail("crossing did not change zone");
      t += theta_hit * hs;
      out.crossings.push_back(Crossing{hit, Point{p[0], p[1]}, t, zone, next, v_old});
      y = p;
      zone = next;
      k1 = F(zone, y);
    } else if (section) {
      const double theta = y_mid[1] <= 0.0
                               ? locate([&](double s) { return dense(s)[1]; }, 0.0, 0.5, cfg.event_tol)
                               : locate([&](double s) { return dense(s)[1]; }, 0.5, 1.0, cfg.event_tol);
      const Vec p = dense(theta);
      if (!(p[0] > 0.0)) fail("return section reached with x <= 0");
      t += theta * hs;
      out.h_out = p[0] * p[0] + p[1] * p[1];
      out.d = out.h_out - out.h_in;
      out.period = t;
      return out;
    } else {
      y = y_new;
      t += hs;
      k1 = k7;
    }
    step = hs * std::min(5.0, 0.9 * std::pow(std::max(err, 1e-10), -0.2));
  }
}

namespace {

std::vector<double> make_grid(double lo, double hi, int n, bool log_spacing) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) {
    const double s = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
    g[i] = log_spacing ? lo * std::exp(s * std::log(hi / lo)) : lo + s * (hi - lo);
  }
  g.back() = hi;
  return g;
}

double noise_floor(const SimConfig& cfg, double h) { return 10.0 * (cfg.rtol * h + cfg.atol); }

}  // namespace

LimitCycleReport find_limit_cycles(const PerturbationSpec& spec, const SimConfig& cfg, double h_lo, double h_hi,
                                   const LimitCycleOptions& opts) {
  if (!(h_lo > 0.0) || !(h_hi > h_lo)) throw DomainError("find_limit_cycles: need 0 < h_lo < h_hi");
  if (opts.grid_points < 2) throw DomainError("find_limit_cycles: need at least 2 grid points");

  LimitCycleReport report;
  report.grid = make_grid(h_lo, h_hi, opts.grid_points, opts.log_grid);
  const auto samples =
      displacement_grid(spec, cfg, report.grid, opts.parallel ? Execution::parallel : Execution::serial);
  for (const auto& s : samples) {
    report.displacement.push_back(s.ok ? s.d : std::numeric_limits<double>::quiet_NaN());
    if (!s.ok) report.failures.push_back({s.h, s.error});
  }

  // Brackets between consecutive samples whose displacement clears the noise floor.
  std::vector<std::size_t> significant;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].ok && std::fabs(samples[i].d) > noise_floor(cfg, samples[i].h)) significant.push_back(i);
  }
  for (std::size_t k = 0; k + 1 < significant.size(); ++k) {
    const auto& A = samples[significant[k]];
    const auto& B = samples[significant[k + 1]];
    if ((A.d < 0.0) == (B.d < 0.0)) continue;

    double a = A.h, b = B.h, fa = A.d, fb = B.d;
    int side = 0;
    for (int it = 0; it < opts.max_iterations && b - a > opts.h_rel_tol * b; ++it) {
      double c = (a * fb - b * fa) / (fb - fa);
      if (!(c > a && c < b)) c = 0.5 * (a + b);
      double fc;
      try {
        fc = return_map(spec, cfg, c).d;
      } catch (const IntegrationFailure& e) {
        report.failures.push_back({c, e.what()});
        break;
      }
      if (fc == 0.0) {
        a = b = c;
        break;
      }
      if ((fc < 0.0) == (fa < 0.0)) {
        a = c;
        fa = fc;
        if (side == -1) fb *= 0.5;
        side = -1;
      } else {
        b = c;
        fb = fc;
        if (side == 1) fa *= 0.5;
        side = 1;
      }
    }
    LimitCycle lc;
    lc.bracket_lo = a;
    lc.bracket_hi = b;
    lc.h = 0.5 * (a + b);
    lc.u = u_of_h(lc.h);
    lc.stable = A.d > 0.0 && B.d < 0.0;
    report.cycles.push_back(lc);
  }
  return report;
}

CrossValidationReport cross_validate(const PerturbationSpec& spec, const std::vector<double>& eps_list,
                                     const SimConfig& base, const LimitCycleOptions& opts) {
  if (eps_list.empty()) throw DomainError("cross_validate: empty eps list");
  for (std::size_t k = 1; k < eps_list.size(); ++k) {
    if (!(std::fabs(eps_list[k]) < std::fabs(eps_list[k - 1]))) {
      throw DomainError("cross_validate: eps list must be decreasing in magnitude");
    }
  }

  CrossValidationReport rep;
  const UForm uf = u_form(spec);
  if (!uf.is_zero()) {
    try {
      const ZeroReport zr = count_zeros(uf);
      for (const auto& z : zr.zeros) {
        if (z.multiplicity == Multiplicity::odd_simple) {
          rep.melnikov_levels.push_back(z.h);
        } else {
          rep.notes.push_back("even-suspected zero of M at h = " + std::to_string(z.h) + " not expected to persist");
        }
      }
    } catch (const ResolutionFailure& e) {
      rep.notes.push_back(e.what());
    }
  }
  if (rep.melnikov_levels.empty()) {
    rep.h_lo = 0.01;
    rep.h_hi = 10.0;
  } else {
    rep.h_lo = 0.5 * rep.melnikov_levels.front();
    rep.h_hi = 1.5 * rep.melnikov_levels.back();
  }

  for (double eps : eps_list) {
    SimConfig cfg = base;
    cfg.eps = eps;
    const LimitCycleReport lc = find_limit_cycles(spec, cfg, rep.h_lo, rep.h_hi, opts);
    EpsilonResult r;
    r.eps = eps;
    r.cycles = lc.cycles;
    r.count = static_cast<int>(lc.cycles.size());
    r.failures = lc.failures;
    if (r.count == static_cast<int>(rep.melnikov_levels.size())) {
      for (int k = 0; k < r.count; ++k) {
        const double hm = rep.melnikov_levels[k];
        r.drift = std::max(r.drift, std::fabs(r.cycles[k].h - hm) / hm);
      }
    } else {
      r.drift = std::numeric_limits<double>::infinity();
    }
    rep.runs.push_back(std::move(r));
  }

  rep.count_match = rep.runs.back().count == static_cast<int>(rep.melnikov_levels.size());
  rep.drift_decreasing = true;
  for (std::size_t k = 1; k < rep.runs.size(); ++k) {
    if (!rep.melnikov_levels.empty() && !(rep.runs[k].drift < rep.runs[k - 1].drift)) rep.drift_decreasing = false;
  }
  rep.passed = rep.count_match && rep.drift_decreasing &&
               (rep.melnikov_levels.empty() || rep.runs.back().drift < 0.05);
  if (!rep.count_match) rep.notes.push_back("limit-cycle count differs from the zero count of M at the smallest eps");
  return rep;
}

}  // namespace pwmel
