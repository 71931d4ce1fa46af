#include "pwmel/perturbation.hpp"

#include <algorithm>
#include <string>

#include "pwmel/errors.hpp"

namespace pwmel {
namespace {

const std::vector<Zone> kFourZones = {Zone::one, Zone::two, Zone::three, Zone::four};
const std::vector<Zone> kTwoZones = {Zone::one, Zone::four};

}  // namespace

PerturbationSpec::PerturbationSpec(int n, Mode mode) : n_(n), mode_(mode) {
  if (n < 0) throw DomainError("PerturbationSpec: degree must be non-negative");
  const auto size = static_cast<std::size_t>(triangle_size(n));
  for (auto& t : a_) t.assign(size, 0.0);
  for (auto& t : b_) t.assign(size, 0.0);
}

const std::vector<Zone>& PerturbationSpec::zones() const {
  return is_two_zone(mode_) ? kTwoZones : kFourZones;
}

bool PerturbationSpec::has_zone(Zone zone) const {
  const auto& z = zones();
  return std::find(z.begin(), z.end(), zone) != z.end();
}

int PerturbationSpec::slot(int i, int j) const {
  if (i < 0 || j < 0 || i + j > n_) {
    throw DomainError("PerturbationSpec: index (" + std::to_string(i) + ", " + std::to_string(j) +
                      ") outside the degree-" + std::to_string(n_) + " triangle");
  }
  // Rows by total degree d = i + j, ordered by i inside a row.
  const int d = i + j;
  return d * (d + 1) / 2 + i;
}

const std::vector<double>& PerturbationSpec::table(Zone zone, bool g) const {
  const int k = index(zone);
  if (k < 1 || k > 4) throw DomainError("PerturbationSpec: zone out of range");
  return g ? b_[static_cast<std::size_t>(k - 1)] : a_[static_cast<std::size_t>(k - 1)];
}

std::vector<double>& PerturbationSpec::table(Zone zone, bool g) {
  if (!has_zone(zone)) {
    throw DomainError("PerturbationSpec: zone " + std::to_string(index(zone)) + " not present in " +
                      std::string(to_string(mode_)) + " mode");
  }
  const int k = index(zone);
  return g ? b_[static_cast<std::size_t>(k - 1)] : a_[static_cast<std::size_t>(k - 1)];
}

void PerturbationSpec::set_a(Zone zone, int i, int j, double value) {
  table(zone, false)[static_cast<std::size_t>(slot(i, j))] = value;
}

void PerturbationSpec::set_b(Zone zone, int i, int j, double value) {
  table(zone, true)[static_cast<std::size_t>(slot(i, j))] = value;
}

double PerturbationSpec::evaluate(const std::vector<double>& c, double x, double y) const {
  // Horner in x inside each fixed power of y.
  double result = 0.0;
  double ypow = 1.0;
  for (int j = 0; j <= n_; ++j) {
    double inner = 0.0;
    for (int i = n_ - j; i >= 0; --i) inner = inner * x + c[static_cast<std::size_t>(slot(i, j))];
    result += inner * ypow;
    ypow *= y;
  }
  return result;
}

bool PerturbationSpec::is_zero() const {
  auto zero = [](const std::vector<double>& t) {
    return std::all_of(t.begin(), t.end(), [](double v) { return v == 0.0; });
  };
  return std::all_of(a_.begin(), a_.end(), zero) && std::all_of(b_.begin(), b_.end(), zero);
}

PerturbationSpec& PerturbationSpec::operator+=(const PerturbationSpec& other) {
  if (other.n_ != n_ || other.mode_ != mode_) {
    throw DomainError("PerturbationSpec: cannot add specs of different degree or mode");
  }
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t s = 0; s < a_[k].size(); ++s) {
      a_[k][s] += other.a_[k][s];
      b_[k][s] += other.b_[k][s];
    }
  }
  return *this;
}

PerturbationSpec& PerturbationSpec::operator*=(double s) {
  for (auto& t : a_) for (auto& v : t) v *= s;
  for (auto& t : b_) for (auto& v : t) v *= s;
  return *this;
}

bool operator==(const PerturbationSpec& a, const PerturbationSpec& b) {
  return a.n_ == b.n_ && a.mode_ == b.mode_ && a.a_ == b.a_ && a.b_ == b.b_;
}

PerturbationSpec reflect_vertically(const PerturbationSpec& spec) {
  Mode mirrored = spec.mode();
  if (spec.mode() == Mode::two_zone_lower) mirrored = Mode::two_zone_upper;
  else if (spec.mode() == Mode::two_zone_upper) mirrored = Mode::two_zone_lower;

  PerturbationSpec out(spec.degree(), mirrored);
  for (Zone z : spec.zones()) {
    // Zones 2 (below y = −x²) and 4 (above y = x²) trade places in the four-zone picture.
    Zone target = z;
    if (spec.mode() == Mode::four_zone && z == Zone::two) target = Zone::four;
    if (spec.mode() == Mode::four_zone && z == Zone::four) target = Zone::two;
    for (int d = 0; d <= spec.degree(); ++d) {
      for (int i = 0; i <= d; ++i) {
        const int j = d - i;
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        out.set_a(target, i, j, -sign * spec.a(z, i, j));
        out.set_b(target, i, j, sign * spec.b(z, i, j));
      }
    }
  }
  return out;
}

}  // namespace pwmel
