#pragma once

// Polygonal slit domains: a simple counterclockwise outer polygon with trees
// of slits hanging off its vertices, and the face walk around the single
// interior face.
//
// Vertices are numbered globally: outer vertices 0..n-1 in order, then the
// points of each slit in input order. A slit's first point is joined to its
// attachment vertex, which may be an outer vertex or a point of an earlier
// slit.

#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "primend/error.hpp"
#include "primend/geometry.hpp"

namespace primend {

struct Slit {
  std::size_t attach_index = 0;
  std::vector<Vec2> points;
};

struct DomainEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  bool slit = false;
};

class PolygonalDomain {
 public:
  PolygonalDomain() = default;
  PolygonalDomain(std::vector<Vec2> outer, std::vector<Slit> slits)
      : outer_(std::move(outer)), slits_(std::move(slits)) {
    check_shape();
    build();
  }

  const std::vector<Vec2>& outer() const { return outer_; }
  const std::vector<Slit>& slits() const { return slits_; }
  std::size_t outer_size() const { return outer_.size(); }
  std::size_t vertex_count() const { return vertices_.size(); }
  const std::vector<Vec2>& vertices() const { return vertices_; }
  /// Outer edges i -> i+1 first, then slit edges parent -> child.
  const std::vector<DomainEdge>& edges() const { return edges_; }
  std::size_t outer_edge_count() const { return outer_.size(); }
  std::size_t slit_edge_count() const { return edges_.size() - outer_.size(); }
  bool is_outer(std::size_t v) const { return v < outer_.size(); }
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adjacency_[v]; }
  /// Number of slit edges at a vertex.
  std::size_t slit_degree(std::size_t v) const { return slit_degree_[v]; }

 private:
  void check_shape() const {
    if (outer_.size() < 3) throw Error(ErrorCode::ParseError, "outer polygon needs at least 3 vertices");
    std::size_t count = outer_.size();
    for (const auto& s : slits_) {
      if (s.points.empty()) throw Error(ErrorCode::ParseError, "slit without points");
      if (s.attach_index >= count) {
        throw Error(ErrorCode::ParseError, "slit attach_index " + std::to_string(s.attach_index) +
                                               " does not name an earlier vertex");
      }
      count += s.points.size();
    }
  }

  void build() {
    vertices_ = outer_;
    const std::size_t n = outer_.size();
    for (std::size_t i = 0; i < n; ++i) edges_.push_back({i, (i + 1) % n, false});
    for (const auto& s : slits_) {
      std::size_t prev = s.attach_index;
      for (const Vec2& p : s.points) {
        vertices_.push_back(p);
        const std::size_t id = vertices_.size() - 1;
        edges_.push_back({prev, id, true});
        prev = id;
      }
    }
    adjacency_.assign(vertices_.size(), {});
    slit_degree_.assign(vertices_.size(), 0);
    for (const auto& e : edges_) {
      adjacency_[e.u].push_back(e.v);
      adjacency_[e.v].push_back(e.u);
      if (e.slit) {
        ++slit_degree_[e.u];
        ++slit_degree_[e.v];
      }
    }
  }

  std::vector<Vec2> outer_;
  std::vector<Slit> slits_;
  std::vector<Vec2> vertices_;
  std::vector<DomainEdge> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<std::size_t> slit_degree_;
};

struct Violation {
  ErrorCode code;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

namespace detail {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

inline std::string edge_name(const DomainEdge& e) {
  return std::string(e.slit ? "slit" : "outer") + " edge " + std::to_string(e.u) + "-" + std::to_string(e.v);
}

}  // namespace detail

/// Checks simplicity of the outer polygon, that slits stay inside and meet
/// nothing but their attachment points, and that the interior is simply
/// connected (after identifying coincident coordinates, the edge graph has
/// exactly one independent cycle: the outer boundary).
inline ValidationReport validate_polygon(const PolygonalDomain& d) {
  ValidationReport report;
  const auto& vs = d.vertices();
  const auto& es = d.edges();
  const std::size_t n = d.outer_size();

  for (const auto& e : es) {
    if (near(vs[e.u], vs[e.v])) {
      report.violations.push_back({ErrorCode::ParseError, "zero-length " + detail::edge_name(e)});
      return report;
    }
  }
  if (signed_area2(d.outer()) <= 0) {
    report.violations.push_back({ErrorCode::ParseError, "outer polygon must be counterclockwise"});
    return report;
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const DomainEdge& a = es[i];
      const DomainEdge& b = es[j];
      const bool adjacent = a.v == b.u || b.v == a.u;
      bool bad;
      if (adjacent) {
        const std::size_t s = a.v == b.u ? a.v : a.u;
        const std::size_t p = a.u == s ? a.v : a.u;
        const std::size_t q = b.u == s ? b.v : b.u;
        bad = segments_overlap_beyond(vs[s], vs[p], vs[q]);
      } else {
        bad = segments_meet(vs[a.u], vs[a.v], vs[b.u], vs[b.v]);
      }
      if (bad) {
        report.violations.push_back({ErrorCode::SelfIntersection, "outer edges " + std::to_string(i) + " and " +
                                                                      std::to_string(j) + " intersect"});
      }
    }
  if (!report.ok()) return report;

  // Identify coincident coordinates; touching at such a point is not a
  // crossing, but may close a cycle.
  detail::UnionFind same(vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (near(vs[i], vs[j])) same.unite(i, j);

  for (std::size_t v = n; v < vs.size(); ++v) {
    bool merged_with_outer = false;
    for (std::size_t o = 0; o < n; ++o)
      if (same.find(o) == same.find(v)) merged_with_outer = true;
    if (!merged_with_outer && !strictly_inside(vs[v], d.outer())) {
      report.violations.push_back({ErrorCode::SlitCrossing, "slit vertex " + std::to_string(v) + " is not inside the outer polygon"});
    }
  }

  for (std::size_t i = n; i < es.size(); ++i)
    for (std::size_t j = 0; j < es.size(); ++j) {
      if (j >= n && j <= i) continue;
      const DomainEdge& a = es[i];
      const DomainEdge& b = es[j];
      std::optional<std::pair<std::size_t, std::size_t>> shared;
      for (std::size_t x : {a.u, a.v})
        for (std::size_t y : {b.u, b.v})
          if (same.find(x) == same.find(y)) shared = std::pair{x, y};
      bool bad;
      if (shared) {
        const std::size_t s = shared->first;
        const std::size_t p = a.u == s ? a.v : a.u;
        const std::size_t t = shared->second;
        const std::size_t q = b.u == t ? b.v : b.u;
        bad = segments_overlap_beyond(vs[s], vs[p], vs[q]);
        if (!bad) {
          // The far endpoints must not touch the other segment.
          bad = (same.find(p) != same.find(b.u) && same.find(p) != same.find(b.v) && on_segment(vs[p], vs[b.u], vs[b.v])) ||
                (same.find(q) != same.find(a.u) && same.find(q) != same.find(a.v) && on_segment(vs[q], vs[a.u], vs[a.v]));
        }
      } else {
        bad = segments_meet(vs[a.u], vs[a.v], vs[b.u], vs[b.v]);
      }
      if (bad) {
        report.violations.push_back({ErrorCode::SlitCrossing,
                                     detail::edge_name(a) + " meets " + detail::edge_name(b)});
      }
    }

  // Cyclomatic number of the identified graph.
  std::map<std::pair<std::size_t, std::size_t>, int> merged_edges;
  for (const auto& e : es) {
    std::size_t a = same.find(e.u);
    std::size_t b = same.find(e.v);
    if (a > b) std::swap(a, b);
    ++merged_edges[{a, b}];
  }
  std::size_t merged_vertices = 0;
  for (std::size_t v = 0; v < vs.size(); ++v)
    if (same.find(v) == v) ++merged_vertices;
  detail::UnionFind comp(vs.size());
  std::size_t components = merged_vertices;
  std::size_t edge_count = 0;
  for (const auto& [key, mult] : merged_edges) {
    edge_count += static_cast<std::size_t>(mult);
    if (comp.unite(key.first, key.second)) --components;
  }
  const long long cycles = static_cast<long long>(edge_count) - static_cast<long long>(merged_vertices) +
                           static_cast<long long>(components);
  if (cycles > 1) {
    report.violations.push_back({ErrorCode::NotSimplyConnected,
                                 "slits close " + std::to_string(cycles - 1) + " extra cycle(s); interior is not simply connected"});
  }
  return report;
}

inline void require_valid(const PolygonalDomain& d) {
  const auto report = validate_polygon(d);
  if (!report.ok()) throw Error(report.violations.front().code, report.violations.front().message);
}

struct WalkStep {
  std::size_t vertex = 0;  ///< start vertex of the directed edge
  std::size_t next = 0;    ///< end vertex
  std::size_t edge = 0;    ///< index into PolygonalDomain::edges()
  int side = 1;            ///< +1 along the stored edge direction, -1 against it
  Vec2 point;              ///< plane point of `vertex`
};

/// Cyclic face walk of the interior face, counterclockwise (interior on the
/// left). Position i sits at circle coordinate i/L and is the start vertex
/// of step i.
class BoundaryWalk {
 public:
  BoundaryWalk() = default;
  BoundaryWalk(std::vector<WalkStep> steps, std::size_t vertex_count, std::vector<bool> slit_edge)
      : steps_(std::move(steps)), multiplicity_(vertex_count, 0), slit_edge_(std::move(slit_edge)) {
    for (std::size_t i = 0; i < steps_.size(); ++i) {
      ++multiplicity_[steps_[i].vertex];
      index_[{steps_[i].vertex, steps_[i].next}] = i;
    }
  }

  std::size_t length() const { return steps_.size(); }
  const std::vector<WalkStep>& steps() const { return steps_; }
  const WalkStep& operator[](std::size_t i) const { return steps_[i]; }
  std::size_t multiplicity(std::size_t vertex) const { return multiplicity_[vertex]; }
  const std::vector<std::size_t>& multiplicities() const { return multiplicity_; }
  bool on_slit(std::size_t i) const { return slit_edge_[steps_[i].edge]; }

  /// Walk index of the directed edge u -> v, if the walk uses it.
  std::optional<std::size_t> index_of(std::size_t u, std::size_t v) const {
    auto it = index_.find({u, v});
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::vector<std::size_t> positions_of(std::size_t vertex) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < steps_.size(); ++i)
      if (steps_[i].vertex == vertex) out.push_back(i);
    return out;
  }

 private:
  std::vector<WalkStep> steps_;
  std::vector<std::size_t> multiplicity_;
  std::vector<bool> slit_edge_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index_;
};

/// Face walk starting with outer edge 0 -> 1. At each vertex, arriving from
/// u, leave along the first edge clockwise from the reversed arrival
/// direction; the reversed edge itself is taken only at slit tips.
inline BoundaryWalk boundary_walk(const PolygonalDomain& d) {
  require_valid(d);
  const auto& vs = d.vertices();
  const auto& es = d.edges();
  std::map<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, int>> edge_of;
  for (std::size_t k = 0; k < es.size(); ++k) {
    edge_of[{es[k].u, es[k].v}] = {k, 1};
    edge_of[{es[k].v, es[k].u}] = {k, -1};
  }
  constexpr double kTwoPi = 6.283185307179586;
  auto angle = [&](std::size_t from, std::size_t to) {
    const Vec2 dir = vs[to] - vs[from];
    return std::atan2(dir.y, dir.x);
  };

  std::vector<WalkStep> steps;
  std::size_t u = 0;
  std::size_t v = 1;
  const std::size_t limit = 2 * es.size() + 1;
  do {
    const auto [edge, side] = edge_of.at({u, v});
    steps.push_back({u, v, edge, side, vs[u]});
    const double back = angle(v, u);
    std::size_t best = u;
    double best_turn = kTwoPi + 1.0;
    for (std::size_t w : d.neighbors(v)) {
      if (w == u) continue;
      double turn = std::fmod(back - angle(v, w), kTwoPi);
      if (turn <= 0) turn += kTwoPi;
      if (turn < best_turn) {
        best_turn = turn;
        best = w;
      }
    }
    u = v;
    v = best;
    if (steps.size() > limit) throw Error(ErrorCode::NotSimplyConnected, "face walk does not close");
  } while (!(u == 0 && v == 1));

  std::vector<bool> slit_edge;
  for (const auto& e : es) slit_edge.push_back(e.slit);
  return BoundaryWalk(std::move(steps), vs.size(), std::move(slit_edge));
}

}  // namespace primend
