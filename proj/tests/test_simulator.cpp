#include <doctest.h>

#include <cmath>

#include "pwmel/kernels.hpp"
#include "pwmel/simulator.hpp"

using namespace pwmel;

namespace {

const Realization& realized(Mode m) {
  static const Realization four = realize_max_zeros({0.1, 0.2, 0.3, 0.4}, Mode::four_zone);
  static const Realization upper = realize_max_zeros({0.1, 0.2, 0.3}, Mode::two_zone_upper);
  static const Realization lower = realize_max_zeros({0.1, 0.2, 0.3}, Mode::two_zone_lower);
  return m == Mode::four_zone ? four : (m == Mode::two_zone_upper ? upper : lower);
}

SimConfig with_eps(double eps) {
  SimConfig c;
  c.eps = eps;
  return c;
}

}  // namespace

TEST_CASE("unperturbed flow closes") {
  const PerturbationSpec s = random_spec(3, Mode::four_zone, 4, 0);
  const ReturnMapSample r = return_map(s, with_eps(0.0), 2.0);
  CHECK(std::fabs(r.d) < 1e-9);
  CHECK(r.period == doctest::Approx(2 * M_PI).epsilon(1e-9));
  for (double h : {0.5, 2.0, 10.0}) CHECK(std::fabs(return_map(s, with_eps(0.0), h).d) <= 1e-9 * h);
}

TEST_CASE("zero perturbation gives zero displacement") {
  for (Mode m : {Mode::four_zone, Mode::two_zone_upper, Mode::two_zone_lower}) {
    CHECK(std::fabs(return_map(PerturbationSpec(2, m), with_eps(1e-3), 1.0).d) < 1e-9);
  }
}

TEST_CASE("crossing sequence follows the zone topology") {
  for (Mode m : {Mode::four_zone, Mode::two_zone_upper, Mode::two_zone_lower}) {
    const PerturbationSpec s = random_spec(2, m, 6, 1);
    for (double h : {0.01, 1.0, 30.0}) {
      const SimConfig cfg = with_eps(1e-3);
      const ReturnMapSample r = return_map(s, cfg, h);
      const auto expected = expected_crossings(m);
      REQUIRE(r.crossings.size() == expected.size());
      for (std::size_t k = 0; k < expected.size(); ++k) {
        const Crossing& c = r.crossings[k];
        CHECK(c.curve == expected[k].first);
        CHECK((c.point.x > 0 ? 1 : -1) == expected[k].second);
        CHECK(std::fabs(c.normal_speed) > cfg.event_tol);
        const double on_curve = c.curve == Curve::upper ? c.point.y - c.point.x * c.point.x : c.point.y + c.point.x * c.point.x;
        CHECK(std::fabs(on_curve) < cfg.event_tol);
        CHECK(c.from != c.to);
        if (k > 0) CHECK(r.crossings[k - 1].to == c.from);
      }
      CHECK(r.crossings.front().from == Zone::one);
      CHECK(r.crossings.back().to == Zone::one);
    }
  }
}

TEST_CASE("displacement has the sign of eps·M between adjacent zeros") {
  for (Mode m : {Mode::four_zone, Mode::two_zone_upper}) {
    const Realization& r = realized(m);
    const UForm uf = u_form(r.spec);
    const auto& z = r.report.zeros;
    for (std::size_t k = 0; k + 1 < z.size(); ++k) {
      const double h = 0.5 * (z[k].h + z[k + 1].h);
      const double M = melnikov_canonical(uf, h);
      for (double eps : {1e-3, -1e-3}) {
        const double d = return_map(r.spec, with_eps(eps), h).d;
        CHECK((d > 0) == (eps * M > 0));
      }
    }
  }
}

TEST_CASE("displacement is 2·eps·M to first order") {
  const PerturbationSpec s = random_spec(2, Mode::four_zone, 12, 3);
  const double h = 1.3;
  const double M = melnikov_direct(s, h);
  REQUIRE(std::fabs(M) > 1e-3);
  double lo = 1e300, hi = -1e300;
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    const double ratio = return_map(s, with_eps(eps), h).d / eps;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  CHECK((hi - lo) / std::fabs(hi) < 0.1);
  CHECK(return_map(s, with_eps(1e-4), h).d / (1e-4 * M) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("limit cycles of the zero spec") {
  CHECK(find_limit_cycles(PerturbationSpec(1, Mode::four_zone), with_eps(1e-3), 0.01, 10.0).cycles.empty());
}

TEST_CASE("realized specs have the predicted limit cycles") {
  for (Mode m : {Mode::four_zone, Mode::two_zone_upper, Mode::two_zone_lower}) {
    const Realization& r = realized(m);
    const auto& z = r.report.zeros;
    const LimitCycleReport lc = find_limit_cycles(r.spec, with_eps(1e-3), 0.5 * z.front().h, 1.5 * z.back().h);
    REQUIRE(lc.cycles.size() == z.size());
    CHECK(lc.failures.empty());
    for (std::size_t k = 0; k < z.size(); ++k) {
      CHECK(std::fabs(lc.cycles[k].h - z[k].h) <= 0.05 * z[k].h);
      if (k > 0) CHECK(lc.cycles[k].stable != lc.cycles[k - 1].stable);
    }
  }
}

TEST_CASE("serial and parallel cycle searches agree") {
  const Realization& r = realized(Mode::two_zone_upper);
  LimitCycleOptions serial;
  serial.parallel = false;
  serial.grid_points = 40;
  LimitCycleOptions parallel = serial;
  parallel.parallel = true;
  const auto a = find_limit_cycles(r.spec, with_eps(1e-3), 0.005, 0.15, serial);
  const auto b = find_limit_cycles(r.spec, with_eps(1e-3), 0.005, 0.15, parallel);
  REQUIRE(a.cycles.size() == b.cycles.size());
  for (std::size_t k = 0; k < a.cycles.size(); ++k) CHECK(a.cycles[k].h == b.cycles[k].h);
}

TEST_CASE("cross validation") {
  SUBCASE("zero spec") {
    const auto rep = cross_validate(PerturbationSpec(1, Mode::four_zone), {1e-2, 1e-3});
    REQUIRE(rep.runs.size() == 2);
    CHECK(rep.runs[0].count == 0);
    CHECK(rep.runs[1].count == 0);
    CHECK(rep.passed);
  }
  SUBCASE("b1_01 spec") {
    PerturbationSpec s(1, Mode::four_zone);
    s.set_b(Zone::one, 0, 1, 1.0);
    const int expected = count_zeros(u_form(s)).count;
    const auto rep = cross_validate(s, {1e-2, 1e-3});
    for (const auto& run : rep.runs) CHECK(run.count == expected);
  }
  SUBCASE("realized four-zone spec") {
    const auto rep = cross_validate(realized(Mode::four_zone).spec, {1e-2, 1e-3});
    CHECK(rep.runs[0].count == 4);
    CHECK(rep.runs[1].count == 4);
    CHECK(rep.runs[1].drift < rep.runs[0].drift);
    CHECK(rep.passed);
  }
  CHECK_THROWS_AS(cross_validate(PerturbationSpec(1, Mode::four_zone), {1e-3, 1e-2}), DomainError);
}

TEST_CASE("integration failures carry the partial trace") {
  SimConfig cfg = with_eps(1e-3);
  cfg.max_steps = 40;
  try {
    return_map(random_spec(1, Mode::four_zone, 1, 1), cfg, 1.0);
    FAIL("expected IntegrationFailure");
  } catch (const IntegrationFailure& e) {
    CHECK(e.partial_trace().size() < 4);
    CHECK(std::isfinite(e.last_state().x));
  }
  CHECK_THROWS_AS(return_map(PerturbationSpec(1, Mode::four_zone), cfg, 0.0), DomainError);
  CHECK_THROWS_AS(find_limit_cycles(PerturbationSpec(1, Mode::four_zone), cfg, 1.0, 0.5), DomainError);
}
