#pragma once

// Circle homeomorphisms represented by piecewise-linear lifts.
//
// A map is stored through its principal lift G: R -> R, given by breakpoints
// (x_i, y_i) with 0 = x_0 < x_1 < ... < x_{k-1} < 1 and y_0 in [0,1). Between
// consecutive breakpoints G is linear; the last piece joins (x_{k-1}, y_{k-1})
// to (1, y_0 + degree), and G(x + 1) = G(x) + degree everywhere.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "primend/error.hpp"
#include "primend/scalar.hpp"

namespace primend {

enum class Orientation { Preserving, Reversing };

inline Orientation operator*(Orientation a, Orientation b) {
  return a == b ? Orientation::Preserving : Orientation::Reversing;
}

inline std::string to_string(Orientation o) {
  return o == Orientation::Preserving ? "preserving" : "reversing";
}

template <Scalar T>
struct Breakpoint {
  T x;
  T y;
  friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

/// Distance between two points of R/Z.
inline double circle_distance(double a, double b) {
  const double d = frac(a - b);
  return std::min(d, 1.0 - d);
}

/// A point of S^1 in turns, always normalized to [0,1).
template <Scalar T>
class CirclePoint {
 public:
  CirclePoint() : turns_(0) {}
  explicit CirclePoint(T value) : turns_(frac(value)) {}

  const T& turns() const { return turns_; }
  friend bool operator==(const CirclePoint&, const CirclePoint&) = default;

 private:
  T turns_;
};

namespace detail {

// Float data never lines up exactly after compose/inverse; these tolerances
// only decide whether to drop a redundant breakpoint, never validity.
inline constexpr double kCollinearTol = 1e-13;
inline constexpr double kMergeTol = 1e-15;

template <Scalar T>
bool collinear(const Breakpoint<T>& a, const Breakpoint<T>& b, const Breakpoint<T>& c) {
  T cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  if constexpr (is_exact_v<T>) {
    return cross == 0;
  } else {
    double scale = std::max({1.0, std::fabs(c.y - a.y), std::fabs(c.x - a.x)});
    return std::fabs(cross) <= kCollinearTol * scale;
  }
}

template <Scalar T>
bool same_x(const T& a, const T& b) {
  if constexpr (is_exact_v<T>) return a == b;
  else return std::fabs(a - b) <= kMergeTol;
}

}  // namespace detail

/// Monotone piecewise-linear circle map. Immutable once built.
template <Scalar T>
class CircleMap {
 public:
  /// Validates raw lift data, inserts a breakpoint at x = 0 if needed,
  /// shifts to the principal lift and drops collinear breakpoints.
  static CircleMap make(std::vector<Breakpoint<T>> points, int degree) {
    if (degree != 1 && degree != -1) {
      throw Error(ErrorCode::ParseError, "degree must be +1 or -1");
    }
    if (points.empty()) throw Error(ErrorCode::ParseError, "no breakpoints");
    for (const auto& p : points) {
      if (p.x < 0 || p.x >= 1) throw Error(ErrorCode::ParseError, "breakpoint x outside [0,1)");
    }
    std::sort(points.begin(), points.end(),
              [](const Breakpoint<T>& a, const Breakpoint<T>& b) { return a.x < b.x; });
    for (std::size_t i = 1; i < points.size(); ++i) {
      if (points[i].x == points[i - 1].x) {
        throw Error(ErrorCode::DuplicateBreakpoint, "two breakpoints share an x value");
      }
    }
    const T d = from_int<T>(degree);
    auto rises = [degree](const T& lo, const T& hi) { return degree > 0 ? lo < hi : lo > hi; };
    for (std::size_t i = 1; i < points.size(); ++i) {
      if (!rises(points[i - 1].y, points[i].y)) {
        throw Error(ErrorCode::NotMonotone, "lift values are not strictly monotone");
      }
    }
    if (!rises(points.back().y, points.front().y + d)) {
      throw Error(ErrorCode::NotMonotone, "total rise over one period is not exactly the degree");
    }

    if (points.front().x != 0) {
      // Interpolate G(0) on the wrap-around piece from (x_{k-1} - 1, y_{k-1} - d).
      const Breakpoint<T> prev{points.back().x - 1, points.back().y - d};
      const Breakpoint<T>& next = points.front();
      T y0 = prev.y + (0 - prev.x) * (next.y - prev.y) / (next.x - prev.x);
      points.insert(points.begin(), Breakpoint<T>{T(0), y0});
    }
    const T shift = floor_of(points.front().y);
    for (auto& p : points) p.y -= shift;
    if constexpr (!is_exact_v<T>) {
      // Rounding in the subtraction can land y_0 on exactly 1.
      if (points.front().y >= 1.0) {
        for (auto& p : points) p.y -= 1.0;
      }
    }

    CircleMap m;
    m.degree_ = degree;
    m.points_ = simplify(std::move(points), d);
    return m;
  }

  static CircleMap rotation(const T& alpha) { return make({{T(0), frac(alpha)}}, 1); }
  static CircleMap identity() { return rotation(T(0)); }
  /// x -> -x.
  static CircleMap reflection() { return make({{T(0), T(0)}}, -1); }

  int degree() const { return degree_; }
  Orientation orientation() const {
    return degree_ > 0 ? Orientation::Preserving : Orientation::Reversing;
  }
  std::span<const Breakpoint<T>> breakpoints() const { return points_; }

  /// Principal lift G evaluated at any real x.
  T lift(const T& x) const {
    const auto [n, f] = floor_frac(x);
    auto it = std::upper_bound(points_.begin(), points_.end(), f,
                               [](const T& v, const Breakpoint<T>& p) { return v < p.x; });
    const std::size_t i = static_cast<std::size_t>(it - points_.begin()) - 1;
    const Breakpoint<T>& a = points_[i];
    const Breakpoint<T> b = (i + 1 < points_.size())
                                ? points_[i + 1]
                                : Breakpoint<T>{T(1), points_.front().y + from_int<T>(degree_)};
    T y = a.y + (f - a.x) * (b.y - a.y) / (b.x - a.x);
    return y + n * from_int<T>(degree_);
  }

  CirclePoint<T> operator()(const CirclePoint<T>& p) const { return CirclePoint<T>(lift(p.turns())); }
  T evaluate(const T& x) const { return frac(lift(x)); }

  CircleMap inverse() const {
    std::vector<Breakpoint<T>> inv;
    inv.reserve(points_.size());
    const T d = from_int<T>(degree_);
    for (const auto& p : points_) {
      const auto [n, f] = floor_frac(p.y);
      inv.push_back({f, p.x - d * n});
    }
    if constexpr (!is_exact_v<T>) inv = merge_close(std::move(inv));
    return make(std::move(inv), degree_);
  }

  CircleMap<double> to_double() const {
    std::vector<Breakpoint<double>> pts;
    pts.reserve(points_.size());
    for (const auto& p : points_) pts.push_back({primend::to_double(p.x), primend::to_double(p.y)});
    return CircleMap<double>::make(std::move(pts), degree_);
  }

  friend bool operator==(const CircleMap&, const CircleMap&) = default;

  template <Scalar U>
  friend CircleMap<U> compose(const CircleMap<U>& f, const CircleMap<U>& g);

 private:
  template <Scalar>
  friend class CircleMap;

  static std::vector<Breakpoint<T>> simplify(std::vector<Breakpoint<T>> pts, const T& d) {
    std::vector<Breakpoint<T>> out;
    out.reserve(pts.size());
    out.push_back(pts.front());
    const Breakpoint<T> closing{T(1), pts.front().y + d};
    for (std::size_t i = 1; i < pts.size(); ++i) {
      const Breakpoint<T>& next = (i + 1 < pts.size()) ? pts[i + 1] : closing;
      if (!detail::collinear(out.back(), pts[i], next)) out.push_back(pts[i]);
    }
    return out;
  }

  static std::vector<Breakpoint<T>> merge_close(std::vector<Breakpoint<T>> pts) {
    std::sort(pts.begin(), pts.end(),
              [](const Breakpoint<T>& a, const Breakpoint<T>& b) { return a.x < b.x; });
    std::vector<Breakpoint<T>> out;
    for (const auto& p : pts) {
      if (!out.empty() && detail::same_x(out.back().x, p.x)) continue;
      out.push_back(p);
    }
    // A point just below 1 duplicates the one at 0 after wrapping.
    while (out.size() > 1 && detail::same_x(out.back().x, T(1)) && out.front().x == 0) out.pop_back();
    return out;
  }

  int degree_ = 1;
  std::vector<Breakpoint<T>> points_;
};

/// f after g. Breakpoints of the result are g's breakpoints together with the
/// g-preimages of f's breakpoints.
template <Scalar T>
CircleMap<T> compose(const CircleMap<T>& f, const CircleMap<T>& g) {
  const CircleMap<T> g_inv = g.inverse();
  std::vector<T> xs;
  xs.reserve(f.points_.size() + g.points_.size());
  for (const auto& p : g.points_) xs.push_back(p.x);
  for (const auto& p : f.points_) xs.push_back(frac(g_inv.lift(p.x)));
  std::sort(xs.begin(), xs.end());
  std::vector<Breakpoint<T>> pts;
  pts.reserve(xs.size());
  for (const T& x : xs) {
    if (!pts.empty() && detail::same_x(pts.back().x, x)) continue;
    pts.push_back({x, f.lift(g.lift(x))});
  }
  if constexpr (!is_exact_v<T>) {
    while (pts.size() > 1 && detail::same_x(pts.back().x, 1.0)) pts.pop_back();
  }
  return CircleMap<T>::make(std::move(pts), f.degree_ * g.degree_);
}

/// g composed with itself n times (n >= 0), by repeated squaring.
template <Scalar T>
CircleMap<T> power(const CircleMap<T>& g, long long n) {
  CircleMap<T> result = CircleMap<T>::identity();
  CircleMap<T> base = g;
  while (n > 0) {
    if (n & 1) result = compose(base, result);
    n >>= 1;
    if (n > 0) base = compose(base, base);
  }
  return result;
}

template <Scalar T>
CircleMap<T> conjugate(const CircleMap<T>& h, const CircleMap<T>& g) {
  return compose(h, compose(g, h.inverse()));
}

using PLMap = CircleMap<double>;
using ExactPLMap = CircleMap<Rational>;

}  // namespace primend
