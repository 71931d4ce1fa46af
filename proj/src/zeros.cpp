#include "pwmel/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace pwmel {

namespace {

int sign_of(long double v) { return (v > 0.0L) - (v < 0.0L); }

double bisect_width(double tol, double u) {
  return std::max(tol, 8.0 * std::numeric_limits<double>::epsilon() * u);
}

ZeroEstimate make_zero(double lo, double hi, Multiplicity m) {
  ZeroEstimate z;
  z.bracket_lo = lo;
  z.bracket_hi = hi;
  z.u = 0.5 * (lo + hi);
  z.h = h_of_u(z.u);
  z.multiplicity = m;
  return z;
}

class Scanner {
 public:
  Scanner(const UForm& uf, const ZeroScanOptions& opts) : uf_(uf), opts_(opts) {}

  long double operator()(double u) const { return uf_(static_cast<long double>(u)); }

  void sign_changes(const std::vector<double>& u, const std::vector<long double>& v,
                    std::vector<ZeroEstimate>& out) const {
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
      if (v[i] == 0.0L) continue;
      if (sign_of(v[i]) * sign_of(v[i + 1]) < 0) {
        auto [lo, hi] = bisect_bracket(*this, u[i], u[i + 1], v[i], bisect_width(opts_.tol, u[i + 1]));
        out.push_back(make_zero(lo, hi, Multiplicity::odd_simple));
      }
    }
  }

  // Zoom into a local minimum of |M| that shows no sign change on the scan grid.
  void refine_minimum(double lo, double hi, std::vector<ZeroEstimate>& out) const {
    const int k = 2 * opts_.refine_factor;
    std::vector<double> u(k + 1);
    std::vector<long double> v(k + 1);
    long double previous = std::numeric_limits<long double>::infinity();
    double u_min = 0.5 * (lo + hi);
    long double v_min = previous;

    for (int depth = 1; depth <= opts_.max_depth; ++depth) {
      for (int i = 0; i <= k; ++i) {
        u[i] = (i == k) ? hi : lo + (hi - lo) * i / k;
        v[i] = (*this)(u[i]);
      }
      const std::size_t before = out.size();
      sign_changes(u, v, out);
      if (out.size() > before) return;

      int m = 0;
      for (int i = 1; i <= k; ++i) {
        if (std::fabs(v[i]) < std::fabs(v[m])) m = i;
      }
      u_min = u[m];
      v_min = std::fabs(v[m]);
      if (v_min == 0.0L) {
        out.push_back(make_zero(u[m], u[m], Multiplicity::even_suspected));
        return;
      }
      if (m == 0 || m == k) break;
      lo = u[m - 1];
      hi = u[m + 1];

      const long double scale = uf_.magnitude(u_min);
      if (v_min > std::sqrt(opts_.tol) * scale && previous - v_min < 1e-2L * v_min) return;
      previous = v_min;
    }

    const long double scale = uf_.magnitude(u_min);
    if (v_min <= opts_.tol * scale) {
      out.push_back(make_zero(lo, hi, Multiplicity::even_suspected));
    } else if (v_min <= std::sqrt(opts_.tol) * scale) {
      std::ostringstream msg;
      msg << "unresolved near-tangency of M on [" << lo << ", " << hi << "]: |M|/scale = "
          << static_cast<double>(v_min / scale);
      throw ResolutionFailure(msg.str(), lo, hi);
    }
  }

 private:
  const UForm& uf_;
  const ZeroScanOptions& opts_;
};

}  // namespace

std::vector<double> scan_grid(double u_max, int points) {
  if (!(u_max > 0.0) || points < 8) throw DomainError("scan_grid: need u_max > 0 and at least 8 points");
  const int half = points / 2;
  std::vector<double> grid;
  grid.reserve(points);
  const double u_min = 1e-6 * u_max;
  const double ratio = std::log(u_max / u_min);
  for (int i = 0; i < half; ++i) grid.push_back(u_min * std::exp(ratio * i / (half - 1)));
  const int rest = points - half;
  for (int i = 1; i <= rest; ++i) grid.push_back(u_max * i / rest);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  grid.back() = u_max;
  return grid;
}

ZeroReport count_zeros(const UForm& uf, const ZeroScanOptions& opts) {
  if (!(opts.u_max > 0.0) || !(opts.tol > 0.0)) throw DomainError("count_zeros: need u_max > 0 and tol > 0");

  ZeroReport report;
  report.bound = uf.n >= 1 ? theoretical_bound(uf.n, uf.mode) : -1;
  if (uf.is_zero()) {
    report.warnings.push_back("M vanishes identically; no isolated zeros reported");
    return report;
  }

  const Scanner M(uf, opts);
  const auto grid = scan_grid(opts.u_max, opts.scan_points);
  std::vector<long double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = M(grid[i]);

  std::vector<ZeroEstimate> found;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (values[i] != 0.0L) continue;
    const int left = i > 0 ? sign_of(values[i - 1]) : 0;
    const int right = i + 1 < grid.size() ? sign_of(values[i + 1]) : 0;
    found.push_back(make_zero(grid[i], grid[i],
                              left * right < 0 ? Multiplicity::odd_simple : Multiplicity::even_suspected));
  }
  M.sign_changes(grid, values, found);
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const int s = sign_of(values[i]);
    if (s == 0 || sign_of(values[i - 1]) != s || sign_of(values[i + 1]) != s) continue;
    const long double a = std::fabs(values[i]);
    if (a <= std::fabs(values[i - 1]) && a <= std::fabs(values[i + 1])) M.refine_minimum(grid[i - 1], grid[i + 1], found);
  }

  // Tail: zeros past u_max show up as sign changes on a coarse geometric grid.
  const auto& p = uf.p_numeric();
  long double largest = 0.0L;
  for (auto c : p) largest = std::max(largest, std::fabs(c));
  if (p.empty() || std::fabs(p.back()) <= 1e-12L * largest) {
    report.warnings.push_back("leading coefficient of P is negligible; tail scan extended");
  }
  std::vector<double> tail{opts.u_max};
  const double ratio = std::log(opts.tail_factor);
  for (int i = 1; i <= opts.tail_points; ++i) tail.push_back(opts.u_max * std::exp(ratio * i / opts.tail_points));
  std::vector<long double> tail_values(tail.size());
  for (std::size_t i = 0; i < tail.size(); ++i) tail_values[i] = M(tail[i]);
  const std::size_t before_tail = found.size();
  M.sign_changes(tail, tail_values, found);
  for (std::size_t i = before_tail; i < found.size(); ++i) {
    std::ostringstream msg;
    msg << "zero beyond u_max at u = " << found[i].u;
    report.warnings.push_back(msg.str());
  }

  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.u < b.u; });
  for (const auto& z : found) {
    if (!report.zeros.empty()) {
      const auto& last = report.zeros.back();
      if (z.bracket_lo <= last.bracket_hi || z.u - last.u <= 4.0 * bisect_width(opts.tol, z.u)) continue;
    }
    report.zeros.push_back(z);
  }
  for (const auto& z : report.zeros) report.count += z.multiplicity == Multiplicity::odd_simple ? 1 : 2;
  report.bound_satisfied = report.bound < 0 || report.count <= report.bound;
  return report;
}

int theoretical_bound(int n, Mode mode) {
  if (n < 1) throw Unsupported("theoretical_bound: defined for n >= 1");
  if (n == 1) return mode == Mode::four_zone ? 4 : 3;
  return 2 * n + 5 * ((n - 1) / 2) + 4;
}

std::vector<double> LambdaCoeffs::series() const {
  if (mode == Mode::four_zone) return {lambda[1], mu2, lambda[3], mu4, mu5};
  return {tau0, tau1, tau2, tau4};
}

LambdaCoeffs lambda_coeffs(const PerturbationSpec& spec) {
  if (spec.degree() != 1) throw Unsupported("lambda_coeffs: requires a degree-1 spec");
  const UForm uf = u_form(spec);
  const auto c = [&](int k) { return static_cast<double>(uf.P.coeff(k).value()); };  // u^{k+1}
  const double q = uf.Qc.is_zero() ? 0.0 : to_double(uf.Qc.coeff(0));
  if (uf.P.degree() > 3 || uf.Qc.degree() > 0) throw std::logic_error("lambda_coeffs: degree-1 form out of shape");

  constexpr double pi = std::numbers::pi;
  LambdaCoeffs out;
  out.mode = spec.mode();
  if (spec.mode() == Mode::four_zone) {
    out.lambda[0] = q;
    for (int k = 0; k < 4; ++k) out.lambda[k + 1] = c(k);
    out.mu2 = out.lambda[2] + pi * q / 4.0;
    out.mu4 = out.lambda[4] + pi * q / 4.0;
    out.mu5 = -q / 3.0;
  } else {
    if (!(uf.P.coeff(1) == uf.P.coeff(3))) throw std::logic_error("lambda_coeffs: u² and u⁴ coefficients differ");
    out.tau0 = c(0);
    out.tau1 = c(1) + pi * q / 4.0;
    out.tau2 = c(2);
    out.tau4 = -q / 3.0;
  }
  return out;
}

void CoefficientRef::set(PerturbationSpec& spec, double value) const {
  if (is_b) {
    spec.set_b(zone, i, j, value);
  } else {
    spec.set_a(zone, i, j, value);
  }
}

double CoefficientRef::get(const PerturbationSpec& spec) const {
  return is_b ? spec.b(zone, i, j) : spec.a(zone, i, j);
}

std::string CoefficientRef::name() const {
  std::ostringstream s;
  s << (is_b ? 'b' : 'a') << index(zone) << '_' << i << j;
  return s.str();
}

std::vector<CoefficientRef> free_coefficients(Mode mode) {
  if (mode == Mode::four_zone) {
    return {{true, Zone::two, 0, 1}, {true, Zone::two, 0, 0}, {false, Zone::one, 0, 0},
            {false, Zone::two, 1, 0}, {true, Zone::one, 0, 1}};
  }
  return {{true, Zone::four, 0, 1}, {true, Zone::one, 0, 1}, {false, Zone::one, 1, 0}, {true, Zone::one, 0, 0}};
}

Eigen::MatrixXd series_jacobian(Mode mode) {
  const auto coeffs = free_coefficients(mode);
  const int m = static_cast<int>(coeffs.size());
  Eigen::MatrixXd J(m, m);
  for (int col = 0; col < m; ++col) {
    PerturbationSpec unit(1, mode);
    coeffs[col].set(unit, 1.0);
    const auto s = lambda_coeffs(unit).series();
    for (int row = 0; row < m; ++row) J(row, col) = s[row];
  }
  return J;
}

PerturbationSpec invert_series(const std::vector<double>& series, Mode mode) {
  const auto coeffs = free_coefficients(mode);
  if (series.size() != coeffs.size()) throw DomainError("invert_series: wrong number of series coefficients");
  const Eigen::MatrixXd J = series_jacobian(mode);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(J);
  if (!lu.isInvertible()) throw DomainError("invert_series: singular Jacobian");
  const Eigen::VectorXd x = lu.solve(Eigen::Map<const Eigen::VectorXd>(series.data(), series.size()));
  PerturbationSpec spec(1, mode);
  for (std::size_t k = 0; k < coeffs.size(); ++k) coeffs[k].set(spec, x[k]);
  return spec;
}

std::vector<double> target_series(const std::vector<double>& roots, Mode mode) {
  const std::size_t want = mode == Mode::four_zone ? 4 : 3;
  if (roots.size() != want) throw DomainError("target_series: wrong number of roots");
  std::vector<double> c;
  if (mode == Mode::four_zone) {
    c = {1.0};
    for (double r : roots) {
      std::vector<double> next(c.size() + 1, 0.0);
      for (std::size_t k = 0; k < c.size(); ++k) {
        next[k + 1] += c[k];
        next[k] -= r * c[k];
      }
      c = std::move(next);
    }
  } else {
    // The two-zone series ties the u and u³ coefficients together, so the
    // cubic with the requested roots gets a fourth (negative) root −b/a.
    const double s1 = roots[0] + roots[1] + roots[2];
    const double s2 = roots[0] * roots[1] + roots[0] * roots[2] + roots[1] * roots[2];
    const double s3 = roots[0] * roots[1] * roots[2];
    const double a = 1.0 - s2;
    const double b = s1 - s3;
    if (!(a > 0.0) || !(b / a > 0.0)) throw DomainError("target_series: roots too large for the two-zone series");
    c = {-b * s3, b * s2 - a * s3, a * s2 - b * s1, a};
  }
  double largest = 0.0;
  for (double v : c) largest = std::max(largest, std::fabs(v));
  for (double& v : c) v /= largest;
  return c;
}

namespace {

// Re-solve the free coefficients so M(t_k) = 0 exactly, with x·x_s = |x_s|²
// fixing the scale.
PerturbationSpec polish(const PerturbationSpec& seed, const std::vector<double>& targets) {
  const Mode mode = seed.mode();
  const auto coeffs = free_coefficients(mode);
  const int m = static_cast<int>(coeffs.size());
  Eigen::MatrixXd A(m, m);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd xs(m);
  for (int col = 0; col < m; ++col) {
    xs[col] = coeffs[col].get(seed);
    PerturbationSpec unit(1, mode);
    coeffs[col].set(unit, 1.0);
    const UForm uf = u_form(unit);
    for (std::size_t k = 0; k < targets.size(); ++k) A(k, col) = static_cast<double>(uf(targets[k]));
  }
  A.row(m - 1) = xs.transpose();
  rhs[m - 1] = xs.squaredNorm();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  if (!lu.isInvertible()) return seed;
  const Eigen::VectorXd x = lu.solve(rhs);
  PerturbationSpec spec(1, mode);
  for (int k = 0; k < m; ++k) coeffs[k].set(spec, x[k]);
  return spec;
}

bool verified(const ZeroReport& r, const std::vector<double>& targets, double rel_tol) {
  if (r.count != static_cast<int>(targets.size()) || r.zeros.size() != targets.size()) return false;
  for (std::size_t k = 0; k < targets.size(); ++k) {
    if (r.zeros[k].multiplicity != Multiplicity::odd_simple) return false;
    if (std::fabs(r.zeros[k].u - targets[k]) > rel_tol * targets[k]) return false;
  }
  return true;
}

}  // namespace

Realization realize_max_zeros(std::vector<double> targets, Mode mode, const RealizeOptions& opts) {
  const std::size_t want = mode == Mode::four_zone ? 4 : 3;
  if (targets.size() != want) {
    throw DomainError("realize_max_zeros: " + std::string(to_string(mode)) + " needs exactly " +
                      std::to_string(want) + " targets");
  }
  std::sort(targets.begin(), targets.end());
  for (std::size_t k = 0; k < targets.size(); ++k) {
    if (!(targets[k] > 0.0) || targets[k] > opts.u_cap) {
      throw DomainError("realize_max_zeros: targets must lie in (0, u_cap]");
    }
    if (k > 0 && targets[k] == targets[k - 1]) throw DomainError("realize_max_zeros: targets must be distinct");
  }

  ZeroReport last;
  for (int attempt = 1; attempt <= opts.max_retries + 1; ++attempt) {
    PerturbationSpec spec = invert_series(target_series(targets, mode), mode);
    if (opts.polish) spec = polish(spec, targets);
    try {
      last = count_zeros(u_form(spec), opts.scan);
    } catch (const ResolutionFailure& e) {
      last = ZeroReport{};
      last.warnings.push_back(e.what());
    }
    if (verified(last, targets, opts.target_rel_tol)) return Realization{spec, targets, last, attempt};
    for (double& t : targets) t *= 0.5;
  }
  throw RealizationFailure("realize_max_zeros: verification failed after all retries", last);
}

}  // namespace pwmel
