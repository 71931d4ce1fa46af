#include "pwmel/identities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "pwmel/melnikov.hpp"

namespace pwmel {

namespace {

constexpr QuadratureOptions kTight{1e-13, 1 << 16};

double natural_scale(int i, int j, double h) { return std::pow(h, 0.5 * (i + j + 1)); }

double rel_error(double a, double b, double scale) {
  return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), scale});
}

double endpoint_value(const Arc& arc, int a, int b) {
  return static_cast<double>(endpoint_difference(arc.start, arc.end, a, b).evaluate(u_of_h(arc.h)));
}

struct Tracker {
  IdentityCheck check;
  std::string worst_case;

  Tracker(std::string name, double tol) {
    check.name = std::move(name);
    check.tolerance = tol;
  }

  void add(double err, const std::string& where) {
    if (std::isnan(err)) err = std::numeric_limits<double>::infinity();
    if (check.cases++ == 0 || err > check.max_error) {
      check.max_error = err;
      worst_case = where;
    }
  }

  IdentityCheck finish() {
    check.passed = check.cases > 0 && check.max_error <= check.tolerance;
    check.detail = "worst: " + worst_case;
    return check;
  }
};

std::string label(const char* what, int i, int j, double h) {
  std::ostringstream s;
  s << what << "(" << i << "," << j << ") at h=" << h;
  return s.str();
}

}  // namespace

const std::vector<TableEntry>& reduction_table() {
  static const std::vector<TableEntry> table = [] {
    auto entry = [](int i, int j, Rational c, int power, std::vector<std::pair<int, Rational>> terms) {
      ReducedMoment rm;
      rm.base = BaseIntegral::I01;
      rm.base_coeff = c;
      rm.base_power = power;
      for (auto& [k, v] : terms) rm.boundary.add_term(v, k);
      return TableEntry{{MomentFamily::I, i, j}, rm};
    };
    return std::vector<TableEntry>{
        entry(0, 3, Rational(3, 4), 1, {{7, Rational(-1, 2)}}),
        entry(2, 1, Rational(1, 4), 1, {{7, Rational(1, 2)}}),
        entry(0, 5, Rational(5, 8), 2, {{11, Rational(-3, 4)}, {9, Rational(-5, 12)}}),
        entry(2, 3, Rational(1, 8), 2, {{11, Rational(1, 4)}, {9, Rational(-1, 12)}}),
        entry(4, 1, Rational(1, 8), 2, {{11, Rational(1, 4)}, {9, Rational(7, 12)}}),
    };
  }();
  return table;
}

double reduction_vs_quadrature(const MomentId& id, double h) {
  const double reduced = moment(id, h);
  const double quad = arc_moment(make_arc(arc_of(id.family), h), id.i, id.j, Form::dx, kTight);
  return rel_error(reduced, quad, natural_scale(id.i, id.j, h));
}

std::vector<IdentityCheck> run_identities(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> log_h(std::log(0.05), std::log(20.0));
  std::uniform_int_distribution<int> degree(0, 7);
  const MomentFamily families[] = {MomentFamily::I, MomentFamily::J, MomentFamily::I_tilde,
                                   MomentFamily::J_tilde, MomentFamily::U, MomentFamily::V};
  std::vector<IdentityCheck> out;

  {
    Tracker t("reduction-vs-quadrature", 1e-9);
    for (int k = 0; k < 60; ++k) {
      const MomentFamily fam = families[k % 6];
      const int d = degree(rng);
      const int i = std::uniform_int_distribution<int>(0, d)(rng);
      const double h = std::exp(log_h(rng));
      t.add(reduction_vs_quadrature({fam, i, d - i}, h), label(to_string(fam).data(), i, d - i, h));
    }
    out.push_back(t.finish());
  }

  {
    Tracker t("green-dy-moments", 1e-9);
    for (int k = 0; k < 60; ++k) {
      const MomentFamily fam = families[k % 6];
      const int d = degree(rng);
      const int i = std::uniform_int_distribution<int>(0, d)(rng);
      const double h = std::exp(log_h(rng));
      const MomentId id{fam, i, d - i};
      const double reduced = static_cast<double>(evaluate(reduce_dy_moment(id), h));
      const double quad = arc_moment(make_arc(arc_of(fam), h), i, d - i, Form::dy, kTight);
      t.add(rel_error(reduced, quad, natural_scale(i, d - i, h)), label(to_string(fam).data(), i, d - i, h));
    }
    out.push_back(t.finish());
  }

  {
    Tracker tj("recurrence-in-j", 1e-9);
    Tracker ti("recurrence-in-i", 1e-9);
    for (int k = 0; k < 48; ++k) {
      const Arc arc = make_arc(arc_of(families[k % 6]), std::exp(log_h(rng)));
      const double h = arc.h;
      const int i = std::uniform_int_distribution<int>(0, 4)(rng);
      const int j = std::uniform_int_distribution<int>(2, 5)(rng);
      auto K = [&](int a, int b) { return arc_moment(arc, a, b, Form::dx, kTight); };
      const double lhs_j = K(i, j);
      const double rhs_j = (j * h * K(i, j - 2) + endpoint_value(arc, i + 1, j)) / (i + j + 1);
      tj.add(rel_error(lhs_j, rhs_j, natural_scale(i, j, h)), label(to_string(arc.label).data(), i, j, h));
      const int ii = j;  // reuse the draw as an i ≥ 2 index
      const int jj = i;
      const double lhs_i = K(ii, jj);
      const double rhs_i = ((ii - 1) * h * K(ii - 2, jj) - endpoint_value(arc, ii - 1, jj + 2)) / (ii + jj + 1);
      ti.add(rel_error(lhs_i, rhs_i, natural_scale(ii, jj, h)), label(to_string(arc.label).data(), ii, jj, h));
    }
    out.push_back(tj.finish());
    out.push_back(ti.finish());
  }

  {
    Tracker t("half-turn-symmetry", 1e-10);
    for (int k = 0; k < 40; ++k) {
      const double h = std::exp(log_h(rng));
      const int d = degree(rng);
      const int i = std::uniform_int_distribution<int>(0, d)(rng);
      const int j = d - i;
      const double sign = ((i + j + 1) % 2 == 0) ? 1.0 : -1.0;
      const bool use_i = k % 2 == 0;
      const Arc a = make_arc(use_i ? ArcLabel::AB : ArcLabel::BC, h);
      const Arc b = make_arc(use_i ? ArcLabel::CD : ArcLabel::DA, h);
      const double lhs = arc_moment(b, i, j, Form::dx, kTight);
      const double rhs = sign * arc_moment(a, i, j, Form::dx, kTight);
      t.add(rel_error(lhs, rhs, natural_scale(i, j, h)), label(use_i ? "I~" : "J~", i, j, h));
    }
    out.push_back(t.finish());
  }

  {
    Tracker t("vanishing-moments", 1e-11);
    for (int k = 0; k < 40; ++k) {
      const double h = std::exp(log_h(rng));
      const bool use_i = k % 2 == 0;
      // I_{i,j} vanishes for even j, J_{i,j} for odd i.
      const int i = use_i ? std::uniform_int_distribution<int>(0, 4)(rng) : 2 * std::uniform_int_distribution<int>(0, 2)(rng) + 1;
      const int j = use_i ? 2 * std::uniform_int_distribution<int>(0, 2)(rng) : std::uniform_int_distribution<int>(0, 4)(rng);
      const double v = arc_moment(make_arc(use_i ? ArcLabel::AB : ArcLabel::BC, h), i, j, Form::dx, kTight);
      t.add(std::fabs(v) / natural_scale(i, j, h), label(use_i ? "I" : "J", i, j, h));
    }
    out.push_back(t.finish());
  }

  {
    Tracker t("phi-factors-identically-one", 1e-12);
    for (Mode mode : {Mode::four_zone, Mode::two_zone_upper, Mode::two_zone_lower}) {
      for (int k = 0; k <= 60; ++k) {
        const double h = std::pow(10.0, -3.0 + 6.0 * k / 60.0);
        for (double phi : phi_factors(h, mode)) {
          t.add(std::fabs(phi - 1.0), std::string(to_string(mode)) + " h=" + std::to_string(h));
        }
      }
    }
    out.push_back(t.finish());
  }

  {
    Tracker t("base-integral-closed-forms", 1e-10);
    const std::pair<BaseIntegral, MomentId> pairs[] = {
        {BaseIntegral::I01, {MomentFamily::I, 0, 1}}, {BaseIntegral::I11, {MomentFamily::I, 1, 1}},
        {BaseIntegral::J00, {MomentFamily::J, 0, 0}}, {BaseIntegral::J01, {MomentFamily::J, 0, 1}},
        {BaseIntegral::U00, {MomentFamily::U, 0, 0}}, {BaseIntegral::U01, {MomentFamily::U, 0, 1}},
        {BaseIntegral::V00, {MomentFamily::V, 0, 0}}, {BaseIntegral::V01, {MomentFamily::V, 0, 1}}};
    for (int k = 0; k < 10; ++k) {
      const double h = std::exp(log_h(rng));
      const BaseValues b = base_integrals(h);
      for (const auto& [base, id] : pairs) {
        const double quad = arc_moment(make_arc(arc_of(id.family), h), id.i, id.j, Form::dx, kTight);
        t.add(rel_error(b[base], quad, natural_scale(id.i, id.j, h)),
              std::string(to_string(base)) + " h=" + std::to_string(h));
      }
    }
    out.push_back(t.finish());
  }

  {
    Tracker t("small-reduction-table", 1e-9);
    for (const auto& e : reduction_table()) {
      const ReducedMoment& got = reduce_moment(e.id);
      const bool exact = got.base == e.expected.base && got.base_coeff == e.expected.base_coeff &&
                         got.base_power == e.expected.base_power && got.boundary == e.expected.boundary;
      for (double h : {0.5, 2.0, 5.0}) {
        const double table_value = static_cast<double>(evaluate(e.expected, h));
        const double quad = arc_moment(make_arc(ArcLabel::AB, h), e.id.i, e.id.j, Form::dx, kTight);
        const double err = exact ? rel_error(table_value, quad, natural_scale(e.id.i, e.id.j, h))
                                 : std::numeric_limits<double>::infinity();
        t.add(err, label("I", e.id.i, e.id.j, h));
      }
    }
    out.push_back(t.finish());
  }

  {
    Tracker t("W-taylor-remainder", 2.0);
    for (int k = 1; k <= 1000; ++k) {
      for (long double u : {0.1L * k / 1000.0L, std::pow(10.0L, -8.0L + 7.0L * k / 1000.0L)}) {
        t.add(static_cast<double>(std::fabs(W_remainder(u) / (u * u * u * u))), "u=" + std::to_string(static_cast<double>(u)));
      }
    }
    out.push_back(t.finish());
  }

  {
    // Series remainder against the closed form where the subtraction is well conditioned.
    Tracker t("W-remainder-series-vs-closed-form", 1e-9);
    for (int k = 0; k <= 1000; ++k) {
      const long double u = std::pow(10.0L, -2.0L + 2.0L * k / 1000.0L);
      const long double direct = eval_W(u) - std::numbers::pi_v<long double> / 4 + u * u * u / 3;
      const long double series = W_remainder(u);
      t.add(static_cast<double>(std::fabs(direct - series) / (u * u * u * u)), "u=" + std::to_string(static_cast<double>(u)));
    }
    out.push_back(t.finish());
  }

  return out;
}

}  // namespace pwmel
