#pragma once

// Rotation numbers of monotone PL circle maps.
//
// Orientation preserving maps: the orbit bound |G^n(x) - x - n rho| < 1 for
// the principal lift gives a certified interval of width 2/n; with exact
// (rational) data a periodic orbit G^q(x) = x + p pins rho = p/q exactly.
// Orientation reversing maps have exactly two fixed points and are assigned
// rotation number 0.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "primend/circle_map.hpp"
#include "primend/error.hpp"
#include "primend/scalar.hpp"

namespace primend {

/// [lo, hi] = [lo_turns / n, hi_turns / n].
struct RotInterval {
  double lo = 0.0;
  double hi = 0.0;
  std::int64_t n = 0;
  double mod1_value = 0.0;
  std::int64_t lo_turns = 0;
  std::int64_t hi_turns = 0;

  double width() const { return n > 0 ? static_cast<double>(hi_turns - lo_turns) / static_cast<double>(n) : hi - lo; }
  bool contains(double v) const { return lo <= v && v <= hi; }
};

/// Shared budget for lift evaluations inside one rot() call.
inline constexpr std::int64_t kIterationCap = 10'000'000;
inline constexpr std::int64_t kExactSearchBudget = kIterationCap / 2;

namespace detail {

// Bound on |g.lift(x) - G(x)| for x in [0,1) where g is the double copy of
// an exact map G: rounded breakpoints (about 1e-16 each) amplified by the
// steepest piece.
inline double lift_error_bound(const CircleMap<double>& g) {
  const auto bps = g.breakpoints();
  double steepest = 1.0;
  for (std::size_t i = 0; i < bps.size(); ++i) {
    const double x1 = i + 1 < bps.size() ? bps[i + 1].x : bps.front().x + 1.0;
    const double y1 = i + 1 < bps.size() ? bps[i + 1].y : bps.front().y + g.degree();
    steepest = std::max(steepest, std::fabs((y1 - bps[i].y) / (x1 - bps[i].x)));
  }
  return 1e-15 * (4.0 + 8.0 * steepest);
}

// One step of an outward-rounded orbit kept as integer part + fraction.
inline void bounded_step(const CircleMap<double>& g, double& x, std::int64_t& whole, double nudge) {
  double y = g.lift(x) + nudge;
  const double f = std::floor(y);
  whole += static_cast<std::int64_t>(f);
  x = y - f;
  if (x >= 1.0) {
    x -= 1.0;
    ++whole;
  }
}

}  // namespace detail

/// Certified enclosure of the rotation number from n steps. Two orbits
/// are pushed outward by the evaluation error bound every step; since the
/// lift is increasing they bracket the true orbit. If G^n(x) >= x + p for
/// an integer p then G^{mn}(x) >= x + mp, so rho >= p/n; likewise from
/// above. The bounds are therefore floor(lower displacement) / n and
/// ceil(upper displacement) / n: width at most 2/n, usually 1/n. Near a
/// semi-stable periodic orbit the upper orbit can slip past it, which
/// widens the enclosure but never invalidates it.
template <Scalar T>
RotInterval rot_interval(const CircleMap<T>& m, std::int64_t n, const T& x0 = T(0)) {
  if (m.orientation() == Orientation::Reversing) {
    throw Error(ErrorCode::OrientationReversing, "rot_interval needs an orientation preserving map");
  }
  if (n < 1) throw Error(ErrorCode::ParseError, "iterate count must be positive");
  const CircleMap<double> g = m.to_double();
  const double eps = detail::lift_error_bound(g);
  const double start = frac(to_double(x0));
  double lo_x = start;
  double hi_x = start;
  std::int64_t lo_k = 0;
  std::int64_t hi_k = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    detail::bounded_step(g, lo_x, lo_k, -eps);
    detail::bounded_step(g, hi_x, hi_k, eps);
  }
  const double nd = static_cast<double>(n);
  RotInterval r;
  r.n = n;
  // Both fractional parts lie in [0, 1), so the displacement floors and
  // ceilings only need the sign of the fractional difference.
  r.lo_turns = lo_k + (lo_x < start ? -1 : 0);
  r.hi_turns = hi_k + (hi_x > start ? 1 : 0);
  r.lo = static_cast<double>(r.lo_turns) / nd;
  r.hi = static_cast<double>(r.hi_turns) / nd;
  r.mod1_value = frac(0.5 * (r.lo + r.hi));
  return r;
}

namespace detail {

// Range [min, max] of G^q(x) - x over one period. G^q - id is piecewise
// linear with the same breakpoints as G^q, so both extremes sit on them.
// Each breakpoint produced while squaring costs one unit of budget.
template <Scalar T>
struct OffsetLift {
  CircleMap<T> map;  // principal lift
  T offset;          // true lift = map.lift(x) + offset
};

// compose() returns a principal lift; the integer it dropped is recovered
// by comparing against the true composite at 0.
template <Scalar T>
OffsetLift<T> compose_lifts(const OffsetLift<T>& f, const OffsetLift<T>& g) {
  CircleMap<T> c = compose(f.map, g.map);
  const T dropped = f.map.lift(g.map.lift(T(0))) - c.lift(T(0));
  T offset = dropped + from_int<T>(f.map.degree()) * g.offset + f.offset;
  return {std::move(c), std::move(offset)};
}

// Range [min, max] of G^q(x) - x over one period. G^q - id is piecewise
// linear with the same breakpoints as G^q, so both extremes sit on them.
// Each breakpoint produced while squaring costs one unit of budget.
template <Scalar T>
std::optional<std::pair<T, T>> displacement_range(const CircleMap<T>& g, long long q,
                                                  std::int64_t& budget) {
  OffsetLift<T> result{CircleMap<T>::identity(), T(0)};
  OffsetLift<T> base{g, T(0)};
  long long n = q;
  while (n > 0) {
    if (n & 1) {
      result = compose_lifts(base, result);
      budget -= static_cast<std::int64_t>(result.map.breakpoints().size());
    }
    n >>= 1;
    if (n > 0) {
      base = compose_lifts(base, base);
      budget -= static_cast<std::int64_t>(base.map.breakpoints().size());
    }
    if (budget < 0) return std::nullopt;
  }
  const auto bps = result.map.breakpoints();
  T lo = bps.front().y - bps.front().x;
  T hi = lo;
  for (const auto& bp : bps) {
    const T d = bp.y - bp.x;
    if (d < lo) lo = d;
    if (d > hi) hi = d;
  }
  return std::pair<T, T>{lo + result.offset, hi + result.offset};
}

}  // namespace detail

/// Exact rational rotation number (reported mod 1) when some q <= q_max
/// admits a periodic orbit. Candidates p/q are drawn from a float interval
/// estimate in order of increasing q; each is then settled in exact
/// arithmetic. When `budget` runs out the search gives up and returns
/// nullopt; `exhausted` (if given) records that.
template <Scalar T>
std::optional<Rational> rot_exact_rational(const CircleMap<T>& m, long long q_max,
                                           std::int64_t* budget = nullptr,
                                           bool* exhausted = nullptr) {
  if constexpr (!is_exact_v<T>) {
    (void)m;
    (void)q_max;
    (void)budget;
    (void)exhausted;
    throw Error(ErrorCode::FloatDataUnsupported, "exact rotation search needs rational breakpoints");
  } else {
    if (m.orientation() == Orientation::Reversing) {
      throw Error(ErrorCode::OrientationReversing, "rot_exact_rational needs an orientation preserving map");
    }
    if (q_max < 1) throw Error(ErrorCode::ParseError, "q_max must be positive");
    std::int64_t local_budget = kExactSearchBudget;
    std::int64_t& left = budget ? *budget : local_budget;
    if (exhausted) *exhausted = false;

    const long long estimate_n = std::clamp<long long>(4 * q_max * q_max, 64, 1'000'000);
    if (left < estimate_n) {
      if (exhausted) *exhausted = true;
      return std::nullopt;
    }
    left -= estimate_n;
    const RotInterval iv = rot_interval(m, estimate_n, Rational(0));
    const double margin = 1e-12;  // rounding in the final division
    const double lo = iv.lo - margin;
    const double hi = iv.hi + margin;

    // A periodic orbit G^q(x) = x + p exists iff the integer p lies in the
    // range of G^q(x) - x; then rho = p/q. Scanning q upward, the first hit
    // is the reduced fraction.
    for (long long q = 1; q <= q_max; ++q) {
      const double qd = static_cast<double>(q);
      if (std::ceil(lo * qd) > std::floor(hi * qd)) continue;
      auto range = detail::displacement_range(m, q, left);
      if (!range) {
        if (exhausted) *exhausted = true;
        return std::nullopt;
      }
      const Rational p = -floor_of(Rational(-range->first));  // ceil(min)
      if (p <= range->second) {
        Rational r(p / from_int<Rational>(q));
        r.canonicalize();
        return frac(r);
      }
    }
    return std::nullopt;
  }
}

/// Fixed points of an orientation reversing map: G(x) - x is strictly
/// decreasing with G(x+1) - (x+1) = G(x) - x - 2, so it meets each of the
/// integers 0 and -1 exactly once on [0,1).
template <Scalar T>
std::vector<T> reversing_fixed_points(const CircleMap<T>& m) {
  if (m.orientation() != Orientation::Reversing) {
    throw Error(ErrorCode::ParseError, "fixed-point rule applies to reversing maps only");
  }
  const auto bps = m.breakpoints();
  std::vector<T> fixed;
  for (long long target : {0LL, -1LL}) {
    const T level = from_int<T>(target);
    for (std::size_t i = 0; i < bps.size(); ++i) {
      const Breakpoint<T>& a = bps[i];
      const Breakpoint<T> b = (i + 1 < bps.size()) ? bps[i + 1]
                                                   : Breakpoint<T>{T(1), bps.front().y - 1};
      const T phi_a = a.y - a.x - level;
      const T phi_b = b.y - b.x - level;
      // Half-open pieces [a, b) so a crossing at a breakpoint counts once.
      if (phi_a == 0) {
        fixed.push_back(a.x);
        break;
      }
      if (phi_a > 0 && phi_b < 0) {
        fixed.push_back(a.x + phi_a * (b.x - a.x) / (phi_a - phi_b));
        break;
      }
    }
  }
  std::sort(fixed.begin(), fixed.end());
  if (fixed.size() != 2) {
    throw Error(ErrorCode::NotMonotone, "reversing map without exactly two fixed points");
  }
  return fixed;
}

struct RotResult {
  double value = 0.0;              ///< rotation number in [0,1)
  std::optional<Rational> exact;   ///< set when the rational path succeeded
  std::optional<RotInterval> interval;
  Orientation orientation = Orientation::Preserving;
  std::vector<double> fixed_points;  ///< reversing maps only
  std::int64_t evaluations = 0;
  bool exact_search_exhausted = false;
};

/// Rotation number mod 1 to within `tol`.
template <Scalar T>
RotResult rot(const CircleMap<T>& m, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::ParseError, "tolerance must be positive");
  RotResult out;
  out.orientation = m.orientation();
  if (m.orientation() == Orientation::Reversing) {
    for (const T& x : reversing_fixed_points(m)) out.fixed_points.push_back(to_double(x));
    out.value = 0.0;
    if constexpr (is_exact_v<T>) out.exact = Rational(0);
    return out;
  }

  std::int64_t budget = kExactSearchBudget;
  if constexpr (is_exact_v<T>) {
    const long long q_max = static_cast<long long>(std::ceil(1.0 / tol));
    bool exhausted = false;
    auto exact = rot_exact_rational(m, q_max, &budget, &exhausted);
    out.exact_search_exhausted = exhausted;
    if (exact) {
      out.exact = exact;
      out.value = exact->get_d();
      out.evaluations = kExactSearchBudget - budget;
      return out;
    }
  }
  const std::int64_t used = kExactSearchBudget - budget;
  const double wanted = std::ceil(2.0 / tol);
  if (wanted > static_cast<double>(kIterationCap - used)) {
    throw Error(ErrorCode::ToleranceUnreachable,
                "tolerance needs more than " + std::to_string(kIterationCap) + " evaluations");
  }
  const auto n = static_cast<std::int64_t>(wanted);
  out.interval = rot_interval(m, n, T(0));
  if (out.interval->width() > 2.0 * tol) {
    throw Error(ErrorCode::ToleranceUnreachable,
                "certified enclosure is wider than the tolerance (orbit slips past a semi-stable periodic orbit)");
  }
  out.value = out.interval->mod1_value;
  out.evaluations = used + n;
  return out;
}

}  // namespace primend
