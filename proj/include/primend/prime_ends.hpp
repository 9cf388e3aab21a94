#pragma once

// Boundary structure of slit domains seen from the walk circle: which walk
// positions land on cut points of the boundary, the finite set of run
// endpoints that every automorphism must permute, and the rotation number
// of an automorphism read off from its action on the walk.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "primend/circle_map.hpp"
#include "primend/circular_order.hpp"
#include "primend/ends.hpp"
#include "primend/error.hpp"
#include "primend/polygon_domain.hpp"
#include "primend/rotation.hpp"

namespace primend {

/// Maximal cyclic run on the doubled walk cycle. Half-index 2i is walk
/// vertex i (circle point i/L); half-index 2i+1 is the open edge between
/// walk vertices i and i+1.
struct CutpointRun {
  std::size_t first = 0;
  std::size_t count = 0;
};

struct CutpointSet {
  std::size_t walk_length = 0;
  std::vector<char> member;  ///< indexed by half-index, size 2L
  std::vector<CutpointRun> runs;

  bool empty() const { return runs.empty(); }
  bool full() const { return runs.size() == 1 && runs.front().count == member.size(); }
  bool contains_half(std::size_t k) const { return member[k % member.size()] != 0; }
  /// Circle coordinate of a half-index.
  Rational coordinate(std::size_t k) const {
    Rational r(static_cast<long>(k % member.size()), static_cast<long>(member.size()));
    r.canonicalize();
    return r;
  }
};

/// Walk positions whose boundary point is a cut point: vertices visited
/// at least twice and both sides of every slit edge.
inline CutpointSet cutpoint_set(const BoundaryWalk& w) {
  CutpointSet out;
  const std::size_t L = w.length();
  const std::size_t n = 2 * L;
  out.walk_length = L;
  out.member.assign(n, 0);
  for (std::size_t i = 0; i < L; ++i) {
    out.member[2 * i] = w.multiplicity(w[i].vertex) >= 2;
    out.member[2 * i + 1] = w.on_slit(i);
  }
  std::size_t start = n;
  for (std::size_t k = 0; k < n; ++k)
    if (out.member[k] && !out.member[(k + n - 1) % n]) {
      start = k;
      break;
    }
  if (start == n) {
    if (out.member[0]) out.runs.push_back({0, n});
    return out;
  }
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t k = (start + t) % n;
    if (!out.member[k]) continue;
    if (out.runs.empty() || !out.member[(k + n - 1) % n] || k == start) {
      out.runs.push_back({k, 1});
    } else {
      ++out.runs.back().count;
    }
  }
  std::sort(out.runs.begin(), out.runs.end(), [](const CutpointRun& a, const CutpointRun& b) { return a.first < b.first; });
  return out;
}

struct BHatPoint {
  std::size_t position = 0;  ///< walk index
  std::size_t vertex = 0;    ///< plane vertex at that walk index
  Rational at;               ///< position / L
  std::string label;
};

/// Isolated points of B together with the endpoints of its nontrivial
/// runs. An endpoint counts even when it is not itself in B (slit tips).
struct BHat {
  std::size_t walk_length = 0;
  std::vector<BHatPoint> points;  ///< sorted by position

  std::size_t size() const { return points.size(); }
  std::optional<std::size_t> find(std::size_t position) const {
    for (std::size_t k = 0; k < points.size(); ++k)
      if (points[k].position == position) return k;
    return std::nullopt;
  }
  /// The points as a family of degenerate arcs.
  ExactArcFamily family() const {
    std::vector<ExactArc> arcs;
    for (const auto& p : points) arcs.push_back(ExactArc::point(p.at, p.label));
    return ExactArcFamily::make(std::move(arcs));
  }
};

inline BHat b_hat(const CutpointSet& c, const BoundaryWalk& w) {
  if (c.empty()) throw Error(ErrorCode::EmptyB, "boundary has no cut points (simple closed curve)");
  if (c.full()) throw Error(ErrorCode::EmptyB, "every walk position is a cut point");
  const std::size_t L = c.walk_length;
  const std::size_t n = 2 * L;
  std::vector<std::size_t> positions;
  for (const CutpointRun& r : c.runs) {
    const std::size_t last = (r.first + r.count - 1) % n;
    positions.push_back((r.first % 2 == 0 ? r.first : r.first - 1) / 2);
    positions.push_back((last % 2 == 0 ? last : last + 1) / 2 % L);
  }
  std::sort(positions.begin(), positions.end());
  positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
  BHat out;
  out.walk_length = L;
  for (std::size_t k = 0; k < positions.size(); ++k) {
    Rational at(static_cast<long>(positions[k]), static_cast<long>(L));
    at.canonicalize();
    out.points.push_back({positions[k], w[positions[k]].vertex, at, "b" + std::to_string(k + 1)});
  }
  return out;
}

inline BHat b_hat(const PolygonalDomain& d) {
  const BoundaryWalk w = boundary_walk(d);
  return b_hat(cutpoint_set(w), w);
}

/// Symmetry of a slit domain: a rigid motion of the plane or an explicit
/// permutation of the subdivision vertices.
class DomainAutomorphism {
 public:
  enum class Kind { Rotation, Reflection, VertexMap };

  static DomainAutomorphism identity() { return rotation({0, 0}, 0.0); }
  /// Counterclockwise rotation about `center` by `degrees`.
  static DomainAutomorphism rotation(Vec2 center, double degrees) {
    DomainAutomorphism a;
    a.kind_ = Kind::Rotation;
    a.center_ = center;
    a.degrees_ = degrees;
    return a;
  }
  /// Reflection in the line through `point` along `direction`.
  static DomainAutomorphism reflection(Vec2 point, Vec2 direction) {
    if (norm(direction) == 0) throw Error(ErrorCode::ParseError, "reflection direction is zero");
    DomainAutomorphism a;
    a.kind_ = Kind::Reflection;
    a.center_ = point;
    a.direction_ = (1.0 / norm(direction)) * direction;
    return a;
  }
  static DomainAutomorphism vertex_map(std::vector<std::size_t> map) {
    DomainAutomorphism a;
    a.kind_ = Kind::VertexMap;
    a.map_ = std::move(map);
    return a;
  }

  Kind kind() const { return kind_; }
  Vec2 center() const { return center_; }
  double degrees() const { return degrees_; }
  Vec2 direction() const { return direction_; }
  const std::vector<std::size_t>& map() const { return map_; }

  /// Image of a plane point (rigid kinds only).
  Vec2 apply(Vec2 p) const {
    const Vec2 v = p - center_;
    if (kind_ == Kind::Rotation) {
      constexpr double kPi = 3.141592653589793;
      const double t = degrees_ * kPi / 180.0;
      const double c = std::cos(t);
      const double s = std::sin(t);
      return center_ + Vec2{c * v.x - s * v.y, s * v.x + c * v.y};
    }
    if (kind_ == Kind::Reflection) return center_ + (2 * dot(v, direction_)) * direction_ - v;
    throw Error(ErrorCode::NotAnAutomorphism, "vertex maps do not act on plane points");
  }

 private:
  Kind kind_ = Kind::Rotation;
  Vec2 center_;
  double degrees_ = 0.0;
  Vec2 direction_{1, 0};
  std::vector<std::size_t> map_;
};

/// The vertex permutation of `a`, checked to carry outer edges to outer
/// edges and slit edges to slit edges.
inline std::vector<std::size_t> vertex_permutation(const PolygonalDomain& d, const DomainAutomorphism& a) {
  const auto& vs = d.vertices();
  const std::size_t n = vs.size();
  std::vector<std::size_t> pi;
  if (a.kind() == DomainAutomorphism::Kind::VertexMap) {
    pi = a.map();
    if (pi.size() != n) throw Error(ErrorCode::NotAnAutomorphism, "vertex map has the wrong size");
  } else {
    double extent = 1.0;
    for (const Vec2& v : vs) extent = std::max({extent, std::fabs(v.x), std::fabs(v.y)});
    const double tol = 1e-7 * extent;
    for (const Vec2& v : vs) {
      const Vec2 p = a.apply(v);
      std::optional<std::size_t> hit;
      for (std::size_t w = 0; w < n; ++w)
        if (near(vs[w], p, tol)) hit = w;
      if (!hit) throw Error(ErrorCode::NotAnAutomorphism, "a vertex is not mapped onto a vertex");
      pi.push_back(*hit);
    }
  }
  std::vector<char> seen(n, 0);
  for (std::size_t v : pi) {
    if (v >= n || seen[v]) throw Error(ErrorCode::NotAnAutomorphism, "vertex map is not a bijection");
    seen[v] = 1;
  }
  auto has_edge = [&](std::size_t u, std::size_t v, bool slit) {
    for (const auto& e : d.edges())
      if (e.slit == slit && ((e.u == u && e.v == v) || (e.u == v && e.v == u))) return true;
    return false;
  };
  for (const auto& e : d.edges())
    if (!has_edge(pi[e.u], pi[e.v], e.slit)) {
      throw Error(ErrorCode::NotAnAutomorphism, "edge " + detail::edge_name(e) + " is not mapped onto an edge");
    }
  return pi;
}

/// Preserving when the outer cycle keeps its direction.
inline Orientation plane_orientation(const PolygonalDomain& d, const std::vector<std::size_t>& pi) {
  const std::size_t n = d.outer_size();
  if (pi[1] == (pi[0] + 1) % n) return Orientation::Preserving;
  if (pi[0] == (pi[1] + 1) % n) return Orientation::Reversing;
  throw Error(ErrorCode::NotAnAutomorphism, "outer boundary is not mapped onto itself");
}

/// a after b, as a vertex map.
inline DomainAutomorphism compose(const PolygonalDomain& d, const DomainAutomorphism& a, const DomainAutomorphism& b) {
  const auto pa = vertex_permutation(d, a);
  const auto pb = vertex_permutation(d, b);
  std::vector<std::size_t> m(pb.size());
  for (std::size_t v = 0; v < pb.size(); ++v) m[v] = pa[pb[v]];
  return DomainAutomorphism::vertex_map(std::move(m));
}

inline DomainAutomorphism inverse(const PolygonalDomain& d, const DomainAutomorphism& a) {
  const auto pa = vertex_permutation(d, a);
  std::vector<std::size_t> m(pa.size());
  for (std::size_t v = 0; v < pa.size(); ++v) m[pa[v]] = v;
  return DomainAutomorphism::vertex_map(std::move(m));
}

/// Circle map induced on the walk circle. Walk edge i (from position i/L)
/// goes to the walk edge carrying its image; a reversing automorphism
/// traverses that edge backwards, so i/L lands on the end of the image
/// edge. The result is always a rotation or a reflection of the circle.
inline ExactPLMap induced_walk_map(const PolygonalDomain& d, const DomainAutomorphism& a) {
  require_valid(d);
  const auto pi = vertex_permutation(d, a);
  const Orientation o = plane_orientation(d, pi);
  const BoundaryWalk w = boundary_walk(d);
  const std::size_t L = w.length();
  std::vector<std::size_t> target(L);
  for (std::size_t i = 0; i < L; ++i) {
    const std::size_t u = pi[w[i].vertex];
    const std::size_t v = pi[w[i].next];
    const auto j = o == Orientation::Preserving ? w.index_of(u, v) : w.index_of(v, u);
    if (!j) throw Error(ErrorCode::NotAnAutomorphism, "image of a walk edge is not a walk edge");
    target[i] = o == Orientation::Preserving ? *j : (*j + 1) % L;
  }
  for (std::size_t i = 0; i < L; ++i) {
    const std::size_t expected = o == Orientation::Preserving ? (target[0] + i) % L : (target[0] + L - i % L) % L;
    if (target[i] != expected) throw Error(ErrorCode::NotAnAutomorphism, "induced walk bijection is not cyclic");
  }
  Rational shift(static_cast<long>(target[0]), static_cast<long>(L));
  shift.canonicalize();
  if (o == Orientation::Preserving) return ExactPLMap::rotation(shift);
  return ExactPLMap::make({{Rational(0), shift}}, -1);
}

/// How the induced walk map permutes B^, as a bijection of its point family.
inline ArcBijection b_hat_action(const BHat& bh, const ExactPLMap& g) {
  std::vector<std::size_t> image;
  const Rational L(static_cast<long>(bh.walk_length));
  for (const auto& p : bh.points) {
    const Rational y = g.evaluate(p.at) * L;
    if (y.get_den() != 1) throw Error(ErrorCode::NotAnAutomorphism, "B^ point is not mapped to a walk vertex");
    const auto k = bh.find(static_cast<std::size_t>(y.get_num().get_ui()));
    if (!k) throw Error(ErrorCode::NotAnAutomorphism, "B^ is not invariant under the automorphism");
    image.push_back(*k);
  }
  return ArcBijection::from_indices(bh.family(), std::move(image));
}

struct LcRotResult {
  RotResult rot;
  std::size_t b_hat_size = 0;
  Orientation plane_orientation = Orientation::Preserving;
  Orientation orientation3 = Orientation::Preserving;
  Ends ends = Ends::Fixes;
  bool two_point_rule = false;
};

/// Rotation number of the map z x t -> a(z) x (+-t) on a slit domain. With
/// |B^| != 2 it is rot of the induced walk map; with |B^| = 2 the two-point
/// rule decides from orientation, ends and whether the two points swap.
inline LcRotResult rot_lc(const PolygonalDomain& d, const DomainAutomorphism& a, Ends ends, double tol) {
  require_valid(d);
  const BoundaryWalk w = boundary_walk(d);
  const CutpointSet c = cutpoint_set(w);
  if (c.empty()) throw Error(ErrorCode::SimpleClosedCurveBoundary, "boundary is a simple closed curve: Rot undefined");
  const BHat bh = b_hat(c, w);
  const ExactPLMap g = induced_walk_map(d, a);
  const ArcBijection action = b_hat_action(bh, g);

  LcRotResult out;
  out.b_hat_size = bh.size();
  out.plane_orientation = g.orientation();
  out.ends = ends;
  out.orientation3 = out.plane_orientation * line_orientation(ends);
  if (bh.size() == 2) {
    out.two_point_rule = true;
    const Rational r = edge_rule(out.orientation3, ends, action.is_identity());
    out.rot.value = to_double(r);
    out.rot.exact = r;
    out.rot.orientation = out.plane_orientation;
    return out;
  }
  out.rot = rot(g, tol);
  return out;
}

}  // namespace primend
