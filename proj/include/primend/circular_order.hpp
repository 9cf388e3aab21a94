#pragma once

// Circular order on S^1 and on finite families of pairwise disjoint arcs,
// order-preserving bijections of such families, and the circle maps
// compatible with them.

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "primend/circle_map.hpp"
#include "primend/error.hpp"
#include "primend/rotation.hpp"
#include "primend/scalar.hpp"

namespace primend {

/// True iff x1..x4 are met in this order going once around the circle in
/// either direction (reflections are allowed).
template <Scalar T>
bool cyclic_order4(const T& x1, const T& x2, const T& x3, const T& x4) {
  const std::array<const T*, 4> xs{&x1, &x2, &x3, &x4};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (frac(T(*xs[i])) == frac(T(*xs[j]))) throw Error(ErrorCode::DuplicatePoint, "cyclic_order4 needs distinct points");
  const T d2 = frac(T(x2 - x1));
  const T d3 = frac(T(x3 - x1));
  const T d4 = frac(T(x4 - x1));
  return (d2 < d3 && d3 < d4) || (d2 > d3 && d3 > d4);
}

/// Same predicate on cyclic positions 0..m-1.
inline bool cyclic_order4_index(std::size_t i, std::size_t j, std::size_t k, std::size_t l,
                                std::size_t m) {
  auto off = [m, i](std::size_t v) { return (v + m - i) % m; };
  const std::size_t a = off(j), b = off(k), c = off(l);
  return (a < b && b < c) || (a > b && b > c);
}

enum class ArcKind { Point, Interval };

/// A point, or the open arc running counterclockwise from a to b.
template <Scalar T>
struct Arc {
  ArcKind kind = ArcKind::Point;
  T a{0};
  T b{0};
  std::string label;

  static Arc point(T at, std::string label = {}) {
    return {ArcKind::Point, frac(at), frac(at), std::move(label)};
  }
  static Arc interval(T from, T to, std::string label = {}) {
    return {ArcKind::Interval, frac(from), frac(to), std::move(label)};
  }

  bool trivial() const { return kind == ArcKind::Point; }
  /// Length in turns; 0 for points.
  T length() const { return trivial() ? T(0) : frac(T(b - a)); }
  /// A point inside the arc.
  T representative() const { return trivial() ? a : frac(T(a + length() / 2)); }
};

/// Closures of the two arcs meet.
template <Scalar T>
bool closures_meet(const Arc<T>& p, const Arc<T>& q) {
  return frac(T(q.a - p.a)) <= p.length() || frac(T(p.a - q.a)) <= q.length();
}

/// Finite family of arcs with pairwise disjoint closures, kept in
/// counterclockwise order of their start points.
template <Scalar T>
class ArcFamily {
 public:
  static ArcFamily make(std::vector<Arc<T>> arcs) {
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      auto& arc = arcs[i];
      arc.a = frac(arc.a);
      arc.b = frac(arc.b);
      if (arc.kind == ArcKind::Interval && arc.a == arc.b) {
        throw Error(ErrorCode::NotDisjoint, "interval arc with equal endpoints");
      }
      if (arc.trivial()) arc.b = arc.a;
      if (arc.label.empty()) arc.label = "J" + std::to_string(i + 1);
    }
    for (std::size_t i = 0; i < arcs.size(); ++i)
      for (std::size_t j = i + 1; j < arcs.size(); ++j) {
        if (closures_meet(arcs[i], arcs[j])) {
          throw Error(ErrorCode::NotDisjoint, "arcs " + arcs[i].label + " and " + arcs[j].label + " overlap");
        }
        if (arcs[i].label == arcs[j].label) {
          throw Error(ErrorCode::ParseError, "duplicate label " + arcs[i].label);
        }
      }
    std::sort(arcs.begin(), arcs.end(), [](const Arc<T>& x, const Arc<T>& y) { return x.a < y.a; });
    ArcFamily f;
    f.arcs_ = std::move(arcs);
    return f;
  }

  std::size_t size() const { return arcs_.size(); }
  const Arc<T>& operator[](std::size_t i) const { return arcs_[i]; }
  const std::vector<Arc<T>>& arcs() const { return arcs_; }

  std::size_t index_of(const std::string& label) const {
    for (std::size_t i = 0; i < arcs_.size(); ++i)
      if (arcs_[i].label == label) return i;
    throw Error(ErrorCode::InvalidBijection, "unknown label " + label);
  }

 private:
  std::vector<Arc<T>> arcs_;
};

/// Decided on one representative per arc: for pairwise disjoint connected
/// sets any choice of representatives gives the same cyclic order.
template <Scalar T>
bool set_order4(const Arc<T>& j1, const Arc<T>& j2, const Arc<T>& j3, const Arc<T>& j4) {
  const std::array<const Arc<T>*, 4> js{&j1, &j2, &j3, &j4};
  for (int i = 0; i < 4; ++i)
    for (int k = i + 1; k < 4; ++k)
      if (closures_meet(*js[i], *js[k])) throw Error(ErrorCode::NotDisjoint, "set_order4 needs disjoint arcs");
  return cyclic_order4(j1.representative(), j2.representative(), j3.representative(),
                       j4.representative());
}

/// A permutation of family members, stored on canonical indices.
class ArcBijection {
 public:
  template <Scalar T>
  static ArcBijection from_labels(const ArcFamily<T>& family,
                                  const std::map<std::string, std::string>& mapping) {
    std::vector<std::size_t> image(family.size(), family.size());
    for (const auto& [from, to] : mapping) {
      const std::size_t i = family.index_of(from);
      if (image[i] != family.size()) throw Error(ErrorCode::InvalidBijection, "label mapped twice");
      image[i] = family.index_of(to);
    }
    return from_indices(family, std::move(image));
  }

  template <Scalar T>
  static ArcBijection from_indices(const ArcFamily<T>& family, std::vector<std::size_t> image) {
    if (image.size() != family.size()) throw Error(ErrorCode::InvalidBijection, "bijection size mismatch");
    std::vector<bool> hit(image.size(), false);
    for (std::size_t i = 0; i < image.size(); ++i) {
      if (image[i] >= image.size()) throw Error(ErrorCode::InvalidBijection, "bijection is not total");
      if (hit[image[i]]) throw Error(ErrorCode::InvalidBijection, "bijection is not injective");
      hit[image[i]] = true;
      if (family[i].trivial() != family[image[i]].trivial()) {
        throw Error(ErrorCode::InvalidBijection, "bijection must map points to points and intervals to intervals");
      }
    }
    ArcBijection h;
    h.image_ = std::move(image);
    return h;
  }

  static ArcBijection identity(std::size_t m) {
    ArcBijection h;
    for (std::size_t i = 0; i < m; ++i) h.image_.push_back(i);
    return h;
  }

  std::size_t size() const { return image_.size(); }
  std::size_t operator()(std::size_t i) const { return image_[i]; }
  const std::vector<std::size_t>& image() const { return image_; }
  bool is_identity() const {
    for (std::size_t i = 0; i < image_.size(); ++i)
      if (image_[i] != i) return false;
    return true;
  }

  template <Scalar T>
  std::map<std::string, std::string> to_labels(const ArcFamily<T>& family) const {
    std::map<std::string, std::string> out;
    for (std::size_t i = 0; i < image_.size(); ++i) out[family[i].label] = family[image_[i]].label;
    return out;
  }

  friend bool operator==(const ArcBijection&, const ArcBijection&) = default;

 private:
  std::vector<std::size_t> image_;
};

/// Four-member test: whenever J1<J2<J3<J4, h(J3) and h(J4) must lie in one
/// component of S^1 minus h(J1) and h(J2). Families are stored in cyclic
/// order, so every comparison runs on member indices. Families with fewer
/// than four members are always order preserving.
template <Scalar T>
bool is_order_preserving(const ArcFamily<T>& family, const ArcBijection& h) {
  const std::size_t m = family.size();
  if (h.size() != m) throw Error(ErrorCode::InvalidBijection, "bijection size mismatch");
  if (m < 4) return true;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) {
          if (i == j || i == k || i == l || j == k || j == l || k == l) continue;
          if (!cyclic_order4_index(i, j, k, l, m)) continue;
          // Separated iff h(J1), h(J3), h(J2), h(J4) alternate around the circle.
          if (cyclic_order4_index(h(i), h(k), h(j), h(l), m)) return false;
        }
  return true;
}

/// Orientation of an order preserving bijection read off its action on
/// cyclic positions. Ambiguous (both hold) only when m <= 2.
inline bool index_shift_preserving(const ArcBijection& h) {
  const std::size_t m = h.size();
  for (std::size_t i = 0; i < m; ++i)
    if (h((i + 1) % m) != (h(i) + 1) % m) return false;
  return true;
}

enum class SynthesisStrategy {
  /// Linear on every member and across every complementary gap.
  Linear,
  /// Extra breakpoint inside every member and gap, sending the point one
  /// third along to the point two thirds along its image.
  Skewed,
};

namespace detail {

template <Scalar T>
struct VertexPair {
  T x;
  T image;
};

template <Scalar T>
std::vector<VertexPair<T>> member_vertices(const ArcFamily<T>& family, const ArcBijection& h,
                                           bool preserving) {
  std::vector<VertexPair<T>> v;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const Arc<T>& src = family[i];
    const Arc<T>& dst = family[h(i)];
    if (src.trivial()) {
      v.push_back({src.a, dst.a});
    } else if (preserving) {
      v.push_back({src.a, dst.a});
      v.push_back({src.b, dst.b});
    } else {
      v.push_back({src.a, dst.b});
      v.push_back({src.b, dst.a});
    }
  }
  std::sort(v.begin(), v.end(), [](const VertexPair<T>& p, const VertexPair<T>& q) { return p.x < q.x; });
  return v;
}

}  // namespace detail

/// Circle map g with g(J) = h(J) for every member.
template <Scalar T>
CircleMap<T> synthesize_compatible(const ArcFamily<T>& family, const ArcBijection& h,
                                   SynthesisStrategy strategy = SynthesisStrategy::Linear) {
  if (family.size() == 0) throw Error(ErrorCode::TooFewMembers, "empty family");
  if (!is_order_preserving(family, h)) {
    throw Error(ErrorCode::NotOrderPreserving, "no homeomorphism is compatible with this bijection");
  }
  // With fewer than three members both orientations are possible; prefer
  // the preserving one.
  const bool preserving = family.size() < 3 || index_shift_preserving(h);
  const int degree = preserving ? 1 : -1;
  const T d = from_int<T>(degree);
  const auto verts = detail::member_vertices(family, h, preserving);

  // Unwrap the images into a monotone lift.
  std::vector<Breakpoint<T>> pts;
  pts.push_back({verts.front().x, verts.front().image});
  for (std::size_t i = 1; i < verts.size(); ++i) {
    const T step = frac(T(d * (verts[i].image - verts[i - 1].image)));
    pts.push_back({verts[i].x, pts.back().y + d * step});
  }

  if (strategy == SynthesisStrategy::Skewed) {
    std::vector<Breakpoint<T>> with_extra;
    const T third = T(1) / T(3);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Breakpoint<T>& p = pts[i];
      const Breakpoint<T> next = (i + 1 < pts.size()) ? pts[i + 1]
                                                      : Breakpoint<T>{pts.front().x + 1, pts.front().y + d};
      with_extra.push_back(p);
      T x = p.x + third * (next.x - p.x);
      T y = p.y + 2 * third * (next.y - p.y);
      if (x >= 1) {
        x -= 1;
        y -= d;
      }
      with_extra.push_back({x, y});
    }
    pts = std::move(with_extra);
  }
  return CircleMap<T>::make(std::move(pts), degree);
}

template <Scalar T>
Orientation bijection_orientation(const ArcFamily<T>& family, const ArcBijection& h) {
  if (family.size() < 3) throw Error(ErrorCode::TooFewMembers, "orientation needs at least three members");
  if (!is_order_preserving(family, h)) {
    throw Error(ErrorCode::NotOrderPreserving, "orientation is only defined for order preserving bijections");
  }
  const Orientation o = index_shift_preserving(h) ? Orientation::Preserving : Orientation::Reversing;
  const Orientation linear = synthesize_compatible(family, h, SynthesisStrategy::Linear).orientation();
  const Orientation skewed = synthesize_compatible(family, h, SynthesisStrategy::Skewed).orientation();
  if (linear != o || skewed != o) {
    throw Error(ErrorCode::NotOrderPreserving, "compatible maps disagree on orientation");
  }
  return o;
}

/// Rotation number of any map compatible with h.
template <Scalar T>
RotResult rot_of_bijection(const ArcFamily<T>& family, const ArcBijection& h, double tol,
                           SynthesisStrategy strategy = SynthesisStrategy::Linear) {
  return rot(synthesize_compatible(family, h, strategy), tol);
}

using ExactArc = Arc<Rational>;
using ExactArcFamily = ArcFamily<Rational>;

}  // namespace primend
