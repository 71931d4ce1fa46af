// pwmel command-line front end.
#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "pwmel/errors.hpp"
#include "pwmel/identities.hpp"
#include "pwmel/kernels.hpp"
#include "pwmel/melnikov.hpp"
#include "pwmel/simulator.hpp"
#include "pwmel/spec_io.hpp"
#include "pwmel/zeros.hpp"

using namespace pwmel;
using json = nlohmann::ordered_json;

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

double parse_number(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ParseError(what + ": '" + text + "' is not a number");
  }
  if (used != text.size() || !std::isfinite(v)) throw ParseError(what + ": '" + text + "' is not a finite number");
  return v;
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  for (const auto& p : split(text, ',')) out.push_back(parse_number(p, what));
  if (out.empty()) throw ParseError(what + ": empty list");
  return out;
}

std::vector<double> parse_grid(const std::string& text, bool log_spacing) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw ParseError("--h-grid: expected LO:HI:COUNT");
  const double lo = parse_number(parts[0], "--h-grid LO");
  const double hi = parse_number(parts[1], "--h-grid HI");
  const double count = parse_number(parts[2], "--h-grid COUNT");
  if (count < 2 || count != std::floor(count)) throw ParseError("--h-grid: COUNT must be an integer >= 2");
  if (!(lo < hi)) throw ParseError("--h-grid: need LO < HI");
  if (log_spacing && !(lo > 0.0)) throw ParseError("--h-grid: --log needs LO > 0");
  const int n = static_cast<int>(count);
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) {
    const double s = static_cast<double>(i) / (n - 1);
    grid[i] = log_spacing ? lo * std::exp(s * std::log(hi / lo)) : lo + s * (hi - lo);
  }
  grid.back() = hi;
  return grid;
}

std::pair<double, double> parse_range(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw ParseError("--h-range: expected LO:HI");
  return {parse_number(parts[0], "--h-range LO"), parse_number(parts[1], "--h-range HI")};
}

std::string full(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

void emit_json(const json& doc, const std::string& out) {
  if (out.empty()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    write_text_file(out, doc.dump(2) + "\n");
    std::cout << "wrote " << out << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Melnikov-function toolkit for a piecewise-perturbed linear center"};
  app.set_help_flag("--help", "print this help message and exit");
  app.require_subcommand(1);

  std::string spec_path, out_path, h_grid, method = "both", mode_text, targets_text, h_range, eps_list;
  double h = 0.0, u_max = 10.0, tol = 1e-12, eps = 1e-3;
  bool log_spacing = false;
  int n = 1;
  std::uint64_t seed = 1;

  auto* eval = app.add_subcommand("eval", "evaluate M(h) by quadrature and/or canonical form");
  eval->add_option("--spec", spec_path, "spec file")->required();
  auto* h_opt = eval->add_option("--h", h, "energy level");
  auto* grid_opt = eval->add_option("--h-grid", h_grid, "LO:HI:COUNT");
  h_opt->excludes(grid_opt);
  eval->add_flag("--log", log_spacing, "geometric grid spacing");
  eval->add_option("--method", method, "direct|canonical|both")
      ->check(CLI::IsMember({"direct", "canonical", "both"}));
  eval->add_option("--out", out_path, "CSV output file");

  auto* structure = app.add_subcommand("structure", "canonical form and u-form with exact coefficients");
  structure->add_option("--spec", spec_path, "spec file")->required();
  structure->add_option("--out", out_path, "JSON output file");

  auto* zeros = app.add_subcommand("zeros", "positive zeros of M in u");
  zeros->add_option("--spec", spec_path, "spec file")->required();
  zeros->add_option("--u-max", u_max, "scan limit in u")->check(CLI::PositiveNumber);
  zeros->add_option("--tol", tol, "bracket width / tangency tolerance")->check(CLI::PositiveNumber);
  zeros->add_option("--out", out_path, "JSON output file");

  auto* bound = app.add_subcommand("bound", "theoretical upper bound on the number of zeros");
  bound->add_option("--n", n, "degree")->required();
  bound->add_option("--mode", mode_text, "four-zone|two-zone-upper|two-zone-lower")->required();

  auto* realize = app.add_subcommand("realize", "degree-1 spec with the maximal number of zeros");
  realize->add_option("--mode", mode_text, "four-zone|two-zone-upper|two-zone-lower")->required();
  realize->add_option("--targets", targets_text, "comma-separated target zeros in u")->required();
  realize->add_option("--out", out_path, "spec output file");

  auto* simulate = app.add_subcommand("simulate", "one return-map revolution with crossing trace");
  simulate->add_option("--spec", spec_path, "spec file")->required();
  simulate->add_option("--eps", eps, "perturbation size")->required();
  simulate->add_option("--h", h, "starting level x^2 + y^2")->required();

  auto* cycles = app.add_subcommand("cycles", "limit cycles of the return map");
  cycles->add_option("--spec", spec_path, "spec file")->required();
  cycles->add_option("--eps", eps, "perturbation size")->required();
  cycles->add_option("--h-range", h_range, "LO:HI")->required();
  cycles->add_option("--out", out_path, "JSON output file");

  auto* verify = app.add_subcommand("verify", "cross-validate simulated cycles against zeros of M");
  verify->add_option("--spec", spec_path, "spec file")->required();
  verify->add_option("--eps-list", eps_list, "decreasing list E1,E2,...")->required();
  verify->add_option("--out", out_path, "JSON output file");

  auto* identities = app.add_subcommand("identities", "numerical identity suite");
  identities->add_option("--seed", seed, "random seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (eval->parsed()) {
      if (h_opt->count() == 0 && grid_opt->count() == 0) throw ParseError("eval: give --h or --h-grid");
      const PerturbationSpec spec = read_spec_file(spec_path);
      const std::vector<double> hs = h_opt->count() ? std::vector<double>{h} : parse_grid(h_grid, log_spacing);
      for (double level : hs) {
        if (!(level > 0.0)) throw DomainError("eval: h must be positive");
      }
      const bool direct = method != "canonical", canonical = method != "direct";
      std::vector<double> d, c;
      if (direct) d = melnikov_direct_grid(spec, hs, Execution::parallel);
      if (canonical) c = melnikov_canonical_grid(u_form(spec), hs, Execution::parallel);
      std::ostringstream csv;
      csv << "h,u";
      if (direct) csv << ",direct";
      if (canonical) csv << ",canonical";
      if (direct && canonical) csv << ",difference";
      csv << "\n";
      for (std::size_t i = 0; i < hs.size(); ++i) {
        csv << full(hs[i]) << "," << full(u_of_h(hs[i]));
        if (direct) csv << "," << full(d[i]);
        if (canonical) csv << "," << full(c[i]);
        if (direct && canonical) csv << "," << full(d[i] - c[i]);
        csv << "\n";
      }
      std::cout << csv.str();
      if (!out_path.empty()) write_text_file(out_path, csv.str());
    } else if (structure->parsed()) {
      const CanonicalForm cf = canonical_form(read_spec_file(spec_path));
      const std::string violation = degree_violation(cf);
      emit_json({{"canonical_form", to_json(cf)},
                 {"u_form", to_json(u_form(cf))},
                 {"degree_bounds", violation.empty() ? std::string("satisfied") : violation}},
                out_path);
    } else if (zeros->parsed()) {
      ZeroScanOptions opts;
      opts.u_max = u_max;
      opts.tol = tol;
      emit_json(to_json(count_zeros(u_form(read_spec_file(spec_path)), opts)), out_path);
    } else if (bound->parsed()) {
      std::cout << theoretical_bound(n, mode_from_string(mode_text)) << "\n";
    } else if (realize->parsed()) {
      const Realization r = realize_max_zeros(parse_list(targets_text, "--targets"), mode_from_string(mode_text));
      json doc = {{"spec", spec_to_json(r.spec)},
                  {"targets", r.targets},
                  {"attempts", r.attempts},
                  {"zeros", to_json(r.report)}};
      if (!out_path.empty()) {
        write_spec_file(out_path, r.spec);
        doc["written"] = out_path;
      }
      std::cout << doc.dump(2) << "\n";
    } else if (simulate->parsed()) {
      SimConfig cfg;
      cfg.eps = eps;
      std::cout << to_json(return_map(read_spec_file(spec_path), cfg, h)).dump(2) << "\n";
    } else if (cycles->parsed()) {
      SimConfig cfg;
      cfg.eps = eps;
      const auto [lo, hi] = parse_range(h_range);
      emit_json(to_json(find_limit_cycles(read_spec_file(spec_path), cfg, lo, hi)), out_path);
    } else if (verify->parsed()) {
      emit_json(to_json(cross_validate(read_spec_file(spec_path), parse_list(eps_list, "--eps-list"))), out_path);
    } else if (identities->parsed()) {
      bool all = true;
      for (const auto& c : run_identities(seed)) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << "  cases=" << c.cases << "  max_err=" << c.max_error
                  << "  tol=" << c.tolerance << "  (" << c.detail << ")\n";
        all = all && c.passed;
      }
      return all ? 0 : 1;
    }
  } catch (const IntegrationFailure& e) {
    std::cerr << "error: " << e.what() << " (after " << e.partial_trace().size() << " crossings)\n";
    return 3;
  } catch (const RealizationFailure& e) {
    std::cerr << "error: " << e.what() << "\n" << to_json(e.last_report()).dump(2) << "\n";
    return 3;
  } catch (const ResolutionFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
