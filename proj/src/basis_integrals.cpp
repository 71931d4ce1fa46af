#include "pwmel/basis_integrals.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <tuple>

#include "pwmel/errors.hpp"
#include "pwmel/geometry.hpp"

namespace pwmel {
namespace {

int parity_sign(int k) { return (k % 2 == 0) ? 1 : -1; }

int int_pow_sign(int s, int k) { return (s < 0 && k % 2 == 1) ? -1 : 1; }

/// The base reached by the even-step recurrences from (i mod 2, j mod 2), or
/// none when that residue moment is a pure end-point term.
BaseIntegral base_for(MomentFamily family, int i0, int j0) {
  if (i0 == 0 && j0 == 1) {
    switch (family) {
      case MomentFamily::I:
        return BaseIntegral::I01;
      case MomentFamily::J:
        return BaseIntegral::J01;
      case MomentFamily::U:
        return BaseIntegral::U01;
      case MomentFamily::V:
        return BaseIntegral::V01;
      default:
        break;
    }
  }
  if (i0 == 0 && j0 == 0) {
    switch (family) {
      case MomentFamily::J:
        return BaseIntegral::J00;
      case MomentFamily::U:
        return BaseIntegral::U00;
      case MomentFamily::V:
        return BaseIntegral::V00;
      default:
        break;
    }
  }
  if (i0 == 1 && j0 == 1 && family == MomentFamily::I) return BaseIntegral::I11;
  return BaseIntegral::none;
}

class ReductionCache {
 public:
  const ReducedMoment* find(const std::tuple<int, int, int>& key) const {
    std::shared_lock lock(mutex_);
    auto it = table_.find(key);
    return it == table_.end() ? nullptr : &it->second;
  }
  const ReducedMoment& insert(const std::tuple<int, int, int>& key, ReducedMoment value) {
    std::unique_lock lock(mutex_);
    // std::map nodes are stable, so references handed out earlier stay valid.
    return table_.try_emplace(key, std::move(value)).first->second;
  }
  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return table_.size();
  }

 private:
  mutable std::shared_mutex mutex_;
  std::map<std::tuple<int, int, int>, ReducedMoment> table_;
};

ReductionCache& cache() {
  static ReductionCache instance;
  return instance;
}

ReducedMoment boundary_only(RationalPoly p) {
  ReducedMoment rm;
  rm.boundary = std::move(p);
  return rm;
}

ReducedMoment add(ReducedMoment a, const ReducedMoment& b) {
  if (b.base_coeff != 0) {
    if (a.base_coeff == 0) {
      a.base = b.base;
      a.base_power = b.base_power;
      a.base_coeff = b.base_coeff;
    } else {
      if (a.base != b.base || a.base_power != b.base_power) {
        throw std::logic_error("reduce_moment: mismatched bases in one recurrence chain");
      }
      a.base_coeff += b.base_coeff;
    }
  }
  a.boundary += b.boundary;
  return a;
}

ReducedMoment reduce_direct(MomentFamily family, int i, int j);

const ReducedMoment& reduce_cached(MomentFamily family, int i, int j) {
  const auto key = std::make_tuple(static_cast<int>(family), i, j);
  if (const auto* hit = cache().find(key)) return *hit;
  return cache().insert(key, reduce_direct(family, i, j));
}

// Families with their own arc (I, J, U, V); the tilde families go through the
// half-turn symmetry in reduce_moment.
ReducedMoment reduce_direct(MomentFamily family, int i, int j) {
  const Arc arc = make_arc(arc_of(family), 1.0);  // only the corner signs are used
  const CornerSign s0 = arc.start;
  const CornerSign s1 = arc.end;

  if (j >= 2) {
    // K_{i,j} = [ j·h·K_{i,j−2} + [x^{i+1} y^j] ] / (i + j + 1)
    ReducedMoment rm = reduce_cached(family, i, j - 2).times_h();
    rm *= Rational(j);
    rm = add(std::move(rm), boundary_only(endpoint_difference(s0, s1, i + 1, j)));
    rm *= Rational(1, i + j + 1);
    return rm;
  }
  if (i >= 2) {
    // K_{i,j} = [ (i−1)·h·K_{i−2,j} − [x^{i−1} y^{j+2}] ] / (i + j + 1)
    ReducedMoment rm = reduce_cached(family, i - 2, j).times_h();
    rm *= Rational(i - 1);
    rm = add(std::move(rm), boundary_only(-endpoint_difference(s0, s1, i - 1, j + 2)));
    rm *= Rational(1, i + j + 1);
    return rm;
  }

  const BaseIntegral base = base_for(family, i, j);
  if (base != BaseIntegral::none) {
    ReducedMoment rm;
    rm.base = base;
    rm.base_coeff = 1;
    return rm;
  }
  // Residues that are exact differentials on the circle:
  //   ∫dx = [x],  ∫x dx = [x²/2],  ∫xy dx = −∫y² dy = −[y³/3],  ∫y dx is always a base.
  if (i == 0 && j == 0) return boundary_only(endpoint_difference(s0, s1, 1, 0));
  if (i == 1 && j == 0) return boundary_only(endpoint_difference(s0, s1, 2, 0) * Rational(1, 2));
  return boundary_only(endpoint_difference(s0, s1, 0, 3) * Rational(-1, 3));
}

}  // namespace

std::string_view to_string(MomentFamily family) {
  switch (family) {
    case MomentFamily::I:
      return "I";
    case MomentFamily::J:
      return "J";
    case MomentFamily::I_tilde:
      return "I~";
    case MomentFamily::J_tilde:
      return "J~";
    case MomentFamily::U:
      return "U";
    case MomentFamily::V:
      return "V";
  }
  return "?";
}

ArcLabel arc_of(MomentFamily family) {
  switch (family) {
    case MomentFamily::I:
      return ArcLabel::AB;
    case MomentFamily::J:
      return ArcLabel::BC;
    case MomentFamily::I_tilde:
      return ArcLabel::CD;
    case MomentFamily::J_tilde:
      return ArcLabel::DA;
    case MomentFamily::U:
      return ArcLabel::AD_lower;
    case MomentFamily::V:
      return ArcLabel::DA;
  }
  return ArcLabel::AB;
}

std::string_view to_string(BaseIntegral base) {
  switch (base) {
    case BaseIntegral::none:
      return "none";
    case BaseIntegral::I01:
      return "I01";
    case BaseIntegral::I11:
      return "I11";
    case BaseIntegral::J00:
      return "J00";
    case BaseIntegral::J01:
      return "J01";
    case BaseIntegral::U00:
      return "U00";
    case BaseIntegral::U01:
      return "U01";
    case BaseIntegral::V00:
      return "V00";
    case BaseIntegral::V01:
      return "V01";
  }
  return "?";
}

double BaseValues::operator[](BaseIntegral base) const {
  switch (base) {
    case BaseIntegral::none:
      return 0.0;
    case BaseIntegral::I01:
      return I01;
    case BaseIntegral::I11:
      return I11;
    case BaseIntegral::J00:
      return J00;
    case BaseIntegral::J01:
      return J01;
    case BaseIntegral::U00:
      return U00;
    case BaseIntegral::U01:
      return U01;
    case BaseIntegral::V00:
      return V00;
    case BaseIntegral::V01:
      return V01;
  }
  return 0.0;
}

double half_chord_area(double h) {
  const double u = u_of_h(h);
  const double chord = std::sqrt(std::max(0.0, h - u * u));
  // x·sqrt(h − x²)/2 + (h/2)·asin(x/√h) at x = u; asin written as atan2 for accuracy near √h.
  return 0.5 * (u * chord + h * std::atan2(u, chord));
}

BaseValues base_integrals(double h) {
  const double u = u_of_h(h);
  const double w = u * u;
  const double area = half_chord_area(h);
  constexpr double pi = std::numbers::pi;

  BaseValues v;
  v.J00 = -2.0 * u;
  v.I11 = (2.0 / 3.0) * std::pow(std::max(0.0, h - w), 1.5);
  v.I01 = 0.5 * pi * h - 2.0 * area;
  v.J01 = 2.0 * area;
  v.U00 = -2.0 * u;
  v.V00 = 2.0 * u;
  v.U01 = pi * h - v.J01;
  v.V01 = v.J01;
  return v;
}

ReducedMoment& ReducedMoment::operator*=(const Rational& s) {
  base_coeff *= s;
  boundary *= s;
  if (base_coeff == 0) {
    base = BaseIntegral::none;
    base_power = 0;
  }
  return *this;
}

ReducedMoment ReducedMoment::times_h() const {
  static const RationalPoly h_in_u({0, 0, 1, 0, 1});
  ReducedMoment out = *this;
  if (base_coeff != 0) ++out.base_power;
  out.boundary = boundary * h_in_u;
  return out;
}

RationalPoly endpoint_difference(const CornerSign& start, const CornerSign& end, int a, int b) {
  const int s_end = int_pow_sign(end.sx, a) * int_pow_sign(end.sy, b);
  const int s_start = int_pow_sign(start.sx, a) * int_pow_sign(start.sy, b);
  return RationalPoly::monomial(Rational(s_end - s_start), a + 2 * b);
}

const ReducedMoment& reduce_moment(const MomentId& id) {
  if (id.i < 0 || id.j < 0) throw DomainError("reduce_moment: negative exponent");
  switch (id.family) {
    case MomentFamily::I_tilde:
    case MomentFamily::J_tilde: {
      // Half-turn (x, y) → (−x, −y) carries AB onto CD and BC onto DA,
      // preserving orientation: K~_{i,j} = (−1)^{i+j+1} K_{i,j}.
      const auto key = std::make_tuple(static_cast<int>(id.family), id.i, id.j);
      if (const auto* hit = cache().find(key)) return *hit;
      const MomentFamily plain =
          id.family == MomentFamily::I_tilde ? MomentFamily::I : MomentFamily::J;
      ReducedMoment rm = reduce_cached(plain, id.i, id.j);
      rm *= Rational(parity_sign(id.i + id.j + 1));
      return cache().insert(key, std::move(rm));
    }
    default:
      return reduce_cached(id.family, id.i, id.j);
  }
}

ReducedMoment reduce_dy_moment(const MomentId& id) {
  if (id.i < 0 || id.j < 0) throw DomainError("reduce_dy_moment: negative exponent");
  if (id.family == MomentFamily::I_tilde || id.family == MomentFamily::J_tilde) {
    const MomentFamily plain = id.family == MomentFamily::I_tilde ? MomentFamily::I : MomentFamily::J;
    ReducedMoment rm = reduce_dy_moment({plain, id.i, id.j});
    rm *= Rational(parity_sign(id.i + id.j + 1));
    return rm;
  }
  const Arc arc = make_arc(arc_of(id.family), 1.0);
  // d(x^i y^{j+1}) = i x^{i−1} y^{j+1} dx + (j+1) x^i y^j dy
  ReducedMoment rm = boundary_only(endpoint_difference(arc.start, arc.end, id.i, id.j + 1));
  if (id.i > 0) {
    ReducedMoment inner = reduce_moment({id.family, id.i - 1, id.j + 1});
    inner *= Rational(-id.i);
    rm = add(std::move(rm), inner);
  }
  rm *= Rational(1, id.j + 1);
  return rm;
}

long double evaluate(const ReducedMoment& rm, double h, const BaseValues& bases) {
  const long double u = u_of_h(h);
  long double value = rm.boundary.evaluate(u);
  if (rm.base_coeff != 0) {
    value += to_long_double(rm.base_coeff) * std::pow(static_cast<long double>(h), rm.base_power) *
             static_cast<long double>(bases[rm.base]);
  }
  return value;
}

long double evaluate(const ReducedMoment& rm, double h) {
  return evaluate(rm, h, base_integrals(h));
}

double moment(const MomentId& id, double h) {
  return static_cast<double>(evaluate(reduce_moment(id), h));
}

std::size_t reduction_cache_size() { return cache().size(); }

}  // namespace pwmel
