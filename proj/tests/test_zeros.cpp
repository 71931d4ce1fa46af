#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pwmel/kernels.hpp"
#include "pwmel/zeros.hpp"

using namespace pwmel;
constexpr double pi = std::numbers::pi;

namespace {

UForm from_p(std::vector<Rational> p) { return UForm(Mode::four_zone, 3, PiPoly(RationalPoly(std::move(p)), {}), {}); }

void check_report_invariants(const UForm& uf, const ZeroReport& r) {
  int count = 0;
  for (std::size_t k = 0; k < r.zeros.size(); ++k) {
    const auto& z = r.zeros[k];
    CHECK(z.h == doctest::Approx(z.u * z.u * z.u * z.u + z.u * z.u).epsilon(1e-15));
    CHECK(z.bracket_lo <= z.u);
    CHECK(z.u <= z.bracket_hi);
    if (k > 0) CHECK(r.zeros[k - 1].bracket_hi < z.bracket_lo);
    if (z.multiplicity == Multiplicity::odd_simple && z.bracket_lo < z.bracket_hi) {
      CHECK(uf(z.bracket_lo) * uf(z.bracket_hi) <= 0.0L);
    }
    count += z.multiplicity == Multiplicity::odd_simple ? 1 : 2;
  }
  CHECK(count == r.count);
}

}  // namespace

TEST_CASE("zero spec has no zeros") {
  const ZeroReport r = count_zeros(u_form(PerturbationSpec(2, Mode::four_zone)));
  CHECK(r.count == 0);
  CHECK(r.zeros.empty());
  CHECK(r.bound_satisfied);
}

TEST_CASE("b1_01 spec matches a dense sign scan") {
  PerturbationSpec s(1, Mode::four_zone);
  s.set_b(Zone::one, 0, 1, 1.0);
  // Independent evaluation of (π/2)(u⁴ + u²) − 2(u⁴ + u²)W(u).
  auto M = [](double u) {
    const double v = u * u * u * u + u * u;
    const double t = 1 / std::sqrt(1 + u * u);
    const double W = 0.5 * (t * std::sqrt(1 - t * t) + std::asin(t));
    return pi / 2 * v - 2 * v * W;
  };
  int changes = 0;
  double prev = M(1e-5);
  for (int k = 1; k <= 1000000; ++k) {
    const double cur = M(10.0 * k / 1000000);
    if ((cur < 0) != (prev < 0)) ++changes;
    prev = cur;
  }
  const ZeroReport r = count_zeros(u_form(s));
  CHECK(r.count == changes);
  check_report_invariants(u_form(s), r);
}

TEST_CASE("theoretical bounds") {
  CHECK(theoretical_bound(1, Mode::four_zone) == 4);
  CHECK(theoretical_bound(2, Mode::four_zone) == 8);
  CHECK(theoretical_bound(3, Mode::two_zone_upper) == 15);
  CHECK(theoretical_bound(1, Mode::two_zone_lower) == 3);
  CHECK(theoretical_bound(5, Mode::four_zone) == 24);
  CHECK_THROWS_AS(theoretical_bound(0, Mode::four_zone), Unsupported);
}

TEST_CASE("lambda coefficients") {
  PerturbationSpec s(1, Mode::four_zone);
  s.set_a(Zone::two, 1, 0, 1.0);
  const LambdaCoeffs L = lambda_coeffs(s);
  CHECK(L.lambda[3] == doctest::Approx(-2.0));
  CHECK(L.lambda[0] == doctest::Approx(2.0));
  CHECK(L.lambda[1] == 0.0);
  CHECK(L.lambda[2] == 0.0);
  CHECK(L.lambda[4] == 0.0);
  CHECK(L.mu2 == doctest::Approx(pi / 2));
  CHECK(L.mu4 == doctest::Approx(pi / 2));
  CHECK(L.mu5 == doctest::Approx(-2.0 / 3));

  const LambdaCoeffs Z = lambda_coeffs(PerturbationSpec(1, Mode::four_zone));
  for (double v : Z.series()) CHECK(v == 0.0);

  PerturbationSpec t(1, Mode::two_zone_upper);
  t.set_b(Zone::four, 0, 0, 1.0);
  const LambdaCoeffs T = lambda_coeffs(t);
  CHECK(T.tau0 == doctest::Approx(2.0));
  CHECK(T.tau1 == 0.0);
  CHECK(T.tau2 == 0.0);
  CHECK(T.tau4 == 0.0);

  CHECK_THROWS_AS(lambda_coeffs(PerturbationSpec(2, Mode::four_zone)), Unsupported);
}

TEST_CASE("series inversion round trip") {
  const std::vector<double> four{0.3, -1.2, 0.7, 2.0, -0.4};
  auto back = lambda_coeffs(invert_series(four, Mode::four_zone)).series();
  for (std::size_t k = 0; k < four.size(); ++k) CHECK(std::fabs(back[k] - four[k]) < 1e-12);
  const std::vector<double> two{-0.5, 0.25, 1.5, 0.8};
  for (Mode m : {Mode::two_zone_upper, Mode::two_zone_lower}) {
    back = lambda_coeffs(invert_series(two, m)).series();
    for (std::size_t k = 0; k < two.size(); ++k) CHECK(std::fabs(back[k] - two[k]) < 1e-12);
  }
  const auto spec = invert_series(four, Mode::four_zone);
  CHECK(spec.a(Zone::three, 0, 0) == 0.0);
  CHECK(spec.b(Zone::four, 0, 1) == 0.0);
}

TEST_CASE("Jacobian determinants have magnitude 8π/3") {
  const double target = 8 * pi / 3;
  CHECK(series_jacobian(Mode::four_zone).determinant() == doctest::Approx(-target).epsilon(1e-12));
  CHECK(series_jacobian(Mode::two_zone_upper).determinant() == doctest::Approx(-target).epsilon(1e-12));
  CHECK(series_jacobian(Mode::two_zone_lower).determinant() == doctest::Approx(target).epsilon(1e-12));
  CHECK(series_jacobian(Mode::four_zone).rows() == 5);
  CHECK(series_jacobian(Mode::two_zone_upper).rows() == 4);
}

TEST_CASE("target series") {
  const auto s = target_series({0.1, 0.2, 0.3, 0.4}, Mode::four_zone);
  REQUIRE(s.size() == 5);
  CHECK(s[4] == doctest::Approx(1.0));
  CHECK(s[0] == doctest::Approx(0.0024));
  const auto t = target_series({0.1, 0.2, 0.3}, Mode::two_zone_upper);
  REQUIRE(t.size() == 4);
  double largest = 0;
  for (double v : t) largest = std::max(largest, std::fabs(v));
  CHECK(largest == doctest::Approx(1.0));
  // τ₀ + τ₁u + τ₂u² + τ₁u³ + τ₄u⁴ vanishes at the roots
  for (double r : {0.1, 0.2, 0.3}) CHECK(std::fabs(t[0] + t[1] * r + t[2] * r * r + t[1] * r * r * r + t[3] * r * r * r * r) < 1e-14);
  CHECK_THROWS_AS(target_series({0.1, 0.2}, Mode::two_zone_upper), DomainError);
}

TEST_CASE("realization hits the targets") {
  const Realization four = realize_max_zeros({0.1, 0.2, 0.3, 0.4}, Mode::four_zone);
  CHECK(four.report.count == 4);
  REQUIRE(four.report.zeros.size() == 4);
  const double targets[] = {0.1, 0.2, 0.3, 0.4};
  for (int k = 0; k < 4; ++k) CHECK(std::fabs(four.report.zeros[k].u - targets[k]) <= 0.1 * targets[k]);
  check_report_invariants(u_form(four.spec), four.report);

  for (Mode m : {Mode::two_zone_upper, Mode::two_zone_lower}) {
    const Realization two = realize_max_zeros({0.3, 0.1, 0.2}, m);
    CHECK(two.report.count == 3);
    CHECK(two.spec.mode() == m);
    CHECK(count_zeros(u_form(two.spec)).count == 3);
  }
}

TEST_CASE("unpolished realization keeps the series coefficients") {
  RealizeOptions opts;
  opts.polish = false;
  const Realization r = realize_max_zeros({0.1, 0.2, 0.3}, Mode::two_zone_upper, opts);
  const auto want = target_series(r.targets, Mode::two_zone_upper);
  const auto got = lambda_coeffs(r.spec).series();
  for (std::size_t k = 0; k < want.size(); ++k) CHECK(std::fabs(got[k] - want[k]) < 1e-12);
  CHECK(r.report.count == 3);
}

TEST_CASE("realization preconditions and failure") {
  CHECK_THROWS_AS(realize_max_zeros({0.1, 0.2, 0.3}, Mode::four_zone), DomainError);
  CHECK_THROWS_AS(realize_max_zeros({0.1, 0.2, 0.6}, Mode::two_zone_upper), DomainError);
  CHECK_THROWS_AS(realize_max_zeros({0.1, 0.1, 0.2}, Mode::two_zone_upper), DomainError);
  RealizeOptions impossible;
  impossible.max_retries = 1;
  impossible.target_rel_tol = -1.0;
  try {
    realize_max_zeros({0.1, 0.2, 0.3}, Mode::two_zone_upper, impossible);
    FAIL("expected RealizationFailure");
  } catch (const RealizationFailure& e) {
    CHECK(e.last_report().count == 3);
  }
}

TEST_CASE("double root is reported as even-suspected") {
  const UForm uf = from_p({Rational(1, 4), -1, 1});  // M = u(u − 1/2)²
  const ZeroReport r = count_zeros(uf);
  REQUIRE(r.zeros.size() == 1);
  CHECK(r.zeros[0].multiplicity == Multiplicity::even_suspected);
  CHECK(r.zeros[0].u == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(r.count == 2);
}

TEST_CASE("near-tangency") {
  CHECK_THROWS_AS(count_zeros(from_p({Rational(1, 4) + Rational(1, 1000000000), -1, 1})), ResolutionFailure);
  CHECK(count_zeros(from_p({Rational(1, 4) + Rational(1, 1000), -1, 1})).count == 0);
  // Two simple zeros closer than the scan spacing are still separated.
  const Rational d(1, 100000);
  const ZeroReport r = count_zeros(from_p({Rational(1, 4) - d * d, -1, 1}));
  CHECK(r.count == 2);
  CHECK(r.zeros.size() == 2);
}

TEST_CASE("zeros beyond u_max come from the tail scan") {
  const ZeroReport r = count_zeros(from_p({-50, 1}));  // M = u(u − 50)
  CHECK(r.count == 1);
  REQUIRE(r.zeros.size() == 1);
  CHECK(r.zeros[0].u == doctest::Approx(50.0));
  CHECK_FALSE(r.warnings.empty());
}

TEST_CASE("scan preconditions") {
  ZeroScanOptions bad;
  bad.u_max = 0;
  CHECK_THROWS_AS(count_zeros(from_p({1}), bad), DomainError);
  const auto g = scan_grid(10.0, 4096);
  for (std::size_t k = 1; k < g.size(); ++k) CHECK(g[k] > g[k - 1]);
  CHECK(g.front() == doctest::Approx(1e-5));
  CHECK(g.back() == 10.0);
}

TEST_CASE("zeros in u map to sign changes of M in h") {
  const Realization r = realize_max_zeros({0.1, 0.2, 0.3, 0.4}, Mode::four_zone);
  for (const auto& z : r.report.zeros) {
    const double lo = melnikov_direct(r.spec, h_of_u(z.u * (1 - 1e-4)));
    const double hi = melnikov_direct(r.spec, h_of_u(z.u * (1 + 1e-4)));
    CHECK(lo * hi < 0.0);
  }
}

TEST_CASE("Rolle instance between consecutive zeros") {
  const Realization r = realize_max_zeros({0.1, 0.2, 0.3, 0.4}, Mode::four_zone);
  const UForm uf = u_form(r.spec);
  const double qc = to_double(uf.Qc.coeff(0));
  REQUIRE(qc != 0.0);
  auto g = [&](double u) { return static_cast<double>(uf(u)) / ((u * u * u * u + u * u) * qc); };
  for (std::size_t k = 0; k + 1 < r.report.zeros.size(); ++k) {
    const double a = r.report.zeros[k].u, b = r.report.zeros[k + 1].u;
    bool changed = false;
    double prev = 0;
    for (int s = 1; s < 200; ++s) {
      const double u = a + (b - a) * s / 200, e = 1e-7 * u;
      const double d = (g(u + e) - g(u - e)) / (2 * e);
      if (s > 1 && (d < 0) != (prev < 0)) changed = true;
      prev = d;
    }
    CHECK(changed);
  }
}

TEST_CASE("two-zone derivative identity") {
  const PerturbationSpec s = random_spec(1, Mode::two_zone_upper, 77, 0);
  const UForm uf = u_form(s);
  auto a = [&](int z, int i, int j) { return s.a(static_cast<Zone>(z), i, j); };
  auto b = [&](int z, int i, int j) { return s.b(static_cast<Zone>(z), i, j); };
  auto g = [&](double u) { return static_cast<double>(uf(u)) / (u * u + u * u * u * u); };
  for (double u : {0.3, 0.7, 1.5}) {
    const double e = 1e-5;
    const double fd = (g(u + e) - g(u - e)) / (2 * e);
    const double bracket = (b(4, 0, 1) - b(1, 0, 1)) * std::pow(u, 4) -
                           (a(1, 1, 0) - a(4, 1, 0) - 3 * b(4, 0, 0) + 3 * b(1, 0, 0)) * u * u + b(4, 0, 0) - b(1, 0, 0);
    const double exact = -2 / std::pow(u + u * u * u, 2) * bracket;
    CHECK(fd == doctest::Approx(exact).epsilon(1e-7).scale(1.0));
  }
}

TEST_CASE("random specs never exceed the bound") {
  for (Mode m : {Mode::four_zone, Mode::two_zone_upper, Mode::two_zone_lower}) {
    for (int n = 1; n <= 5; ++n) {
      const SweepSummary s = bound_sweep(n, m, 60, 31337, Execution::parallel);
      CHECK(s.violations == 0);
      CHECK(s.max_count <= s.bound);
      CHECK(s.resolution_failures == 0);
    }
  }
}
