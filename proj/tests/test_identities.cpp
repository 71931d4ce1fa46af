#include <doctest.h>

#include <set>

#include "pwmel/identities.hpp"

using namespace pwmel;

TEST_CASE("identity suite passes") {
  const auto checks = run_identities(7);
  std::set<std::string> names;
  for (const auto& c : checks) {
    INFO(c.name << ": " << c.detail << " max_error=" << c.max_error);
    CHECK(c.passed);
    CHECK(c.cases > 0);
    CHECK(c.max_error <= c.tolerance);
    names.insert(c.name);
  }
  CHECK(names.size() == checks.size());
  CHECK(names.count("half-turn-symmetry") == 1);
  CHECK(names.count("phi-factors-identically-one") == 1);
}

TEST_CASE("reduction table agrees with quadrature") {
  for (const auto& e : reduction_table()) {
    for (double h : {0.5, 2.0, 5.0}) CHECK(reduction_vs_quadrature(e.id, h) < 1e-9);
  }
  CHECK(reduction_table().size() == 5);
}
