#include "pwmel/spec_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace pwmel {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& why) {
  throw ParseError("spec: " + (path.empty() ? std::string("<root>") : path) + ": " + why);
}

int as_index(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected a non-negative integer");
  const auto k = v.get<long long>();
  if (k < 0 || k > 1000) fail(path, "index out of range");
  return static_cast<int>(k);
}

void read_table(const json& entries, const std::string& path, PerturbationSpec& spec, Zone zone, bool is_b) {
  if (!entries.is_array()) fail(path, "expected a list of [i, j, value] entries");
  std::set<std::pair<int, int>> seen;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const std::string where = path + "[" + std::to_string(k) + "]";
    const json& e = entries[k];
    if (!e.is_array() || e.size() != 3) fail(where, "expected [i, j, value]");
    const int i = as_index(e[0], where + "[0]");
    const int j = as_index(e[1], where + "[1]");
    if (!e[2].is_number()) fail(where + "[2]", "expected a number");
    if (i + j > spec.degree()) fail(where, "i + j exceeds n = " + std::to_string(spec.degree()));
    if (!seen.insert({i, j}).second) fail(where, "repeated entry for (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    const double value = e[2].get<double>();
    if (!std::isfinite(value)) fail(where + "[2]", "coefficient must be finite");
    if (is_b) {
      spec.set_b(zone, i, j, value);
    } else {
      spec.set_a(zone, i, j, value);
    }
  }
}

std::string poly_json_text(const RationalPoly& p, const char* var) { return p.to_string(var); }

json rational_coefficients(const RationalPoly& p) {
  json out = json::array();
  for (const auto& c : p.coefficients()) out.push_back(c.get_str());
  return out;
}

json poly_json(const RationalPoly& p, const char* var) {
  return {{"coefficients", rational_coefficients(p)}, {"text", poly_json_text(p, var)}, {"degree", p.degree()}};
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json crossing_json(const Crossing& c) {
  return {{"curve", std::string(to_string(c.curve))}, {"x", c.point.x}, {"y", c.point.y}, {"t", c.t},
          {"from", index(c.from)}, {"to", index(c.to)}, {"normal_speed", c.normal_speed}};
}

json cycles_json(const std::vector<LimitCycle>& cycles) {
  json out = json::array();
  for (const auto& c : cycles) {
    out.push_back({{"h", c.h}, {"u", c.u}, {"stable", c.stable}, {"bracket", {c.bracket_lo, c.bracket_hi}}});
  }
  return out;
}

json failures_json(const std::vector<SampleFailure>& failures) {
  json out = json::array();
  for (const auto& f : failures) out.push_back({{"h", f.h}, {"message", f.message}});
  return out;
}

}  // namespace

PerturbationSpec parse_spec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    std::size_t line = 1, column = 1;
    for (std::size_t k = 0; k + 1 < upto; ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::ostringstream msg;
    msg << "spec: line " << line << ", column " << column << ": malformed JSON";
    throw ParseError(msg.str());
  } catch (const json::exception& e) {
    throw ParseError(std::string("spec: malformed JSON: ") + e.what());
  }

  if (!doc.is_object()) fail("", "expected an object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "n" && key != "mode" && key != "zones") fail(key, "unknown key");
  }
  if (!doc.contains("n")) fail("n", "missing");
  if (!doc.contains("mode")) fail("mode", "missing");
  const int n = as_index(doc["n"], "n");
  if (!doc["mode"].is_string()) fail("mode", "expected a string");
  Mode mode;
  try {
    mode = mode_from_string(doc["mode"].get<std::string>());
  } catch (const std::exception& e) {
    fail("mode", e.what());
  }

  PerturbationSpec spec(n, mode);
  if (!doc.contains("zones")) return spec;
  const json& zones = doc["zones"];
  if (!zones.is_object()) fail("zones", "expected an object keyed by zone number");
  for (const auto& [key, body] : zones.items()) {
    const std::string path = "zones." + key;
    if (key.size() != 1 || key[0] < '1' || key[0] > '4') fail(path, "zone must be one of 1, 2, 3, 4");
    const Zone zone = static_cast<Zone>(key[0] - '0');
    if (!spec.has_zone(zone)) fail(path, "zone not present in mode " + std::string(to_string(mode)));
    if (!body.is_object()) fail(path, "expected an object with \"a\" and/or \"b\"");
    for (const auto& [table, entries] : body.items()) {
      if (table != "a" && table != "b") fail(path + "." + table, "unknown key");
      read_table(entries, path + "." + table, spec, zone, table == "b");
    }
  }
  return spec;
}

PerturbationSpec read_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("spec: cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_spec(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

json spec_to_json(const PerturbationSpec& spec) {
  json zones = json::object();
  const int n = spec.degree();
  for (Zone z : spec.zones()) {
    json a = json::array(), b = json::array();
    for (int d = 0; d <= n; ++d) {
      for (int i = d; i >= 0; --i) {
        const int j = d - i;
        const double av = spec.a(z, i, j), bv = spec.b(z, i, j);
        if (av != 0.0 || std::signbit(av)) a.push_back({i, j, av});
        if (bv != 0.0 || std::signbit(bv)) b.push_back({i, j, bv});
      }
    }
    json body = json::object();
    if (!a.empty()) body["a"] = a;
    if (!b.empty()) body["b"] = b;
    if (!body.empty()) zones[std::to_string(index(z))] = body;
  }
  return {{"n", n}, {"mode", std::string(to_string(spec.mode()))}, {"zones", zones}};
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  if (!out) throw std::runtime_error("write to " + path + " failed");
}

void write_spec_file(const std::string& path, const PerturbationSpec& spec) {
  write_text_file(path, spec_to_json(spec).dump(2) + "\n");
}

json to_json(const CanonicalForm& cf) {
  json bases = json::array();
  for (auto b : cf.bases()) bases.push_back(std::string(to_string(b)));
  return {{"mode", std::string(to_string(cf.mode))},
          {"n", cf.n},
          {"bases", bases},
          {"alpha", poly_json(cf.alpha, "h")},
          {"beta", poly_json(cf.beta, "h")},
          {"gamma", poly_json(cf.gamma, "h")},
          {"delta", poly_json(cf.delta, "h")},
          {"phi", poly_json(cf.phi, "u")}};
}

json to_json(const UForm& uf) {
  json p = json::array();
  for (const auto& c : uf.P.coefficients()) {
    p.push_back({{"rational", c.rational.get_str()}, {"pi", c.pi_multiple.get_str()}, {"value", static_cast<double>(c.value())}});
  }
  return {{"mode", std::string(to_string(uf.mode))},
          {"n", uf.n},
          {"shape", "M(u) = u*P(u) + v*Qc(v)*W(u), v = u^4 + u^2"},
          {"P", p},
          {"Qc", poly_json(uf.Qc, "v")}};
}

json to_json(const ZeroReport& report) {
  json zeros = json::array();
  for (const auto& z : report.zeros) {
    zeros.push_back({{"u", z.u},
                     {"h", z.h},
                     {"bracket", {z.bracket_lo, z.bracket_hi}},
                     {"bracket_width", z.bracket_width()},
                     {"multiplicity", z.multiplicity == Multiplicity::odd_simple ? "odd-simple" : "even-suspected"}});
  }
  json out = {{"zeros", zeros}, {"count", report.count}, {"bound_satisfied", report.bound_satisfied},
              {"warnings", report.warnings}};
  out["bound"] = report.bound >= 0 ? json(report.bound) : json(nullptr);
  return out;
}

json to_json(const ReturnMapSample& s) {
  json trace = json::array();
  for (const auto& c : s.crossings) trace.push_back(crossing_json(c));
  return {{"h_in", s.h_in}, {"h_out", s.h_out}, {"d", s.d}, {"period", s.period}, {"steps", s.steps},
          {"crossings", trace}};
}

json to_json(const LimitCycleReport& r) {
  json samples = json::array();
  for (std::size_t i = 0; i < r.grid.size(); ++i) samples.push_back({r.grid[i], number_or_null(r.displacement[i])});
  return {{"cycles", cycles_json(r.cycles)}, {"samples", samples}, {"failures", failures_json(r.failures)}};
}

json to_json(const CrossValidationReport& r) {
  json runs = json::array();
  for (const auto& run : r.runs) {
    runs.push_back({{"eps", run.eps},
                    {"count", run.count},
                    {"drift", number_or_null(run.drift)},
                    {"cycles", cycles_json(run.cycles)},
                    {"failures", failures_json(run.failures)}});
  }
  return {{"melnikov_levels", r.melnikov_levels},
          {"h_range", {r.h_lo, r.h_hi}},
          {"runs", runs},
          {"count_match", r.count_match},
          {"drift_decreasing", r.drift_decreasing},
          {"passed", r.passed},
          {"notes", r.notes}};
}

}  // namespace pwmel
