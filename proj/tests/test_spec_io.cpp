#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <string>

#include "pwmel/kernels.hpp"
#include "pwmel/spec_io.hpp"

using namespace pwmel;

namespace {

std::string parse_error_of(const std::string& text) {
  try {
    parse_spec(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("parse a small spec") {
  const PerturbationSpec s = parse_spec(R"({"n": 1, "mode": "four-zone",
    "zones": {"1": {"b": [[0, 1, 1.0]]}, "3": {"a": [[1, 0, -0.5]]}}})");
  CHECK(s.degree() == 1);
  CHECK(s.mode() == Mode::four_zone);
  CHECK(s.b(Zone::one, 0, 1) == 1.0);
  CHECK(s.a(Zone::three, 1, 0) == -0.5);
  CHECK(s.a(Zone::two, 0, 0) == 0.0);
  CHECK(parse_spec(R"({"n": 2, "mode": "two-zone-lower"})") == PerturbationSpec(2, Mode::two_zone_lower));
}

TEST_CASE("round trip is bit exact") {
  for (Mode m : {Mode::four_zone, Mode::two_zone_upper, Mode::two_zone_lower}) {
    for (int n = 0; n <= 4; ++n) {
      PerturbationSpec s = random_spec(n, m, 21, n);
      s.set_a(s.zones().front(), 0, 0, 0.1 + 0.2);
      s.set_b(s.zones().back(), 0, 0, -1e-300);
      const PerturbationSpec back = parse_spec(spec_to_json(s).dump());
      CHECK(back == s);
      for (Zone z : s.zones()) {
        for (int d = 0; d <= n; ++d) {
          for (int i = 0; i <= d; ++i) {
            CHECK(std::signbit(back.a(z, i, d - i)) == std::signbit(s.a(z, i, d - i)));
            CHECK(std::signbit(back.b(z, i, d - i)) == std::signbit(s.b(z, i, d - i)));
          }
        }
      }
    }
  }
}

TEST_CASE("file round trip") {
  const std::string path = "pwmel_spec_io_roundtrip.json";
  const PerturbationSpec s = random_spec(3, Mode::two_zone_upper, 2, 2);
  write_spec_file(path, s);
  CHECK(read_spec_file(path) == s);
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_spec_file("does/not/exist.json"), ParseError);
}

TEST_CASE("malformed documents name the offending place") {
  CHECK(contains(parse_error_of("{\"n\": 1,\n  \"mode\": }"), "line 2"));
  CHECK(contains(parse_error_of(R"({"n": 1, "mode": "four-zone", "extra": 1})"), "extra: unknown key"));
  CHECK(contains(parse_error_of(R"({"mode": "four-zone"})"), "n: missing"));
  CHECK(contains(parse_error_of(R"({"n": 1, "mode": "three-zone"})"), "mode"));
  CHECK(contains(parse_error_of(R"({"n": -1, "mode": "four-zone"})"), "n:"));
  CHECK(contains(parse_error_of(R"({"n": 1, "mode": "two-zone-upper", "zones": {"2": {}}})"),
                 "zones.2: zone not present"));
  CHECK(contains(parse_error_of(R"({"n": 1, "mode": "four-zone", "zones": {"5": {}}})"), "zones.5"));
  CHECK(contains(parse_error_of(R"({"n": 1, "mode": "four-zone", "zones": {"1": {"c": []}}})"), "zones.1.c"));
  CHECK(contains(parse_error_of(R"({"n": 1, "mode": "four-zone", "zones": {"1": {"a": [[1, 1, 2.0]]}}})"),
                 "zones.1.a[0]: i + j exceeds"));
  CHECK(contains(parse_error_of(R"({"n": 1, "mode": "four-zone", "zones": {"1": {"b": [[0, 1, 1], [0, 1, 2]]}}})"),
                 "zones.1.b[1]: repeated"));
  CHECK(contains(parse_error_of(R"({"n": 1, "mode": "four-zone", "zones": {"1": {"b": [[0, 1, "x"]]}}})"),
                 "zones.1.b[0][2]"));
  CHECK(contains(parse_error_of(R"({"n": 1, "mode": "four-zone", "zones": {"1": {"b": [[0, 1, 1e999]]}}})"),
                 "overflow"));
  CHECK(contains(parse_error_of(R"({"n": 1, "mode": "four-zone", "zones": {"1": {"b": [[0.5, 1, 1]]}}})"),
                 "zones.1.b[0][0]"));
  CHECK(contains(parse_error_of("[1, 2]"), "expected an object"));
}

TEST_CASE("report emitters") {
  PerturbationSpec s(1, Mode::four_zone);
  s.set_b(Zone::one, 0, 1, 1.0);
  const auto cf = to_json(canonical_form(s));
  CHECK(cf.dump().size() > 10);
  const auto uf = to_json(u_form(s));
  CHECK(uf.contains("P"));
  const auto zr = to_json(count_zeros(u_form(s)));
  CHECK(zr["count"] == 0);
  CHECK(zr["bound"] == 4);
  SimConfig cfg;
  const auto rm = to_json(return_map(s, cfg, 1.0));
  CHECK(rm["crossings"].size() == 4);
  CHECK(rm["d"].is_number());
}
