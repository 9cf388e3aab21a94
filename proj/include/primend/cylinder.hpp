#pragma once

// Maps of the closed cylinder over a planar domain, closure(U) x R, drawn
// from a small closed set of shapes: products h x id, vertical shears, the
// end flip t -> -t, and compositions of these. Each shape carries exactly
// what a rotation number needs: orientation, the action on the two ends,
// and how the boundary features are permuted.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <future>
#include <iterator>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "primend/circle_map.hpp"
#include "primend/circular_order.hpp"
#include "primend/ends.hpp"
#include "primend/error.hpp"
#include "primend/fixtures.hpp"
#include "primend/grid_domain.hpp"
#include "primend/polygon_domain.hpp"
#include "primend/prime_ends.hpp"
#include "primend/rotation.hpp"

namespace primend {

class CylinderMap {
 public:
  enum class Variant { Product, Shear, EndFlip, Composition };

  /// (z, t) -> (z, t).
  static CylinderMap identity() { return product_with(Orientation::Preserving); }

  /// (z, t) -> (a(z), t) for a symmetry of a slit domain.
  static CylinderMap product(const PolygonalDomain& d, const DomainAutomorphism& a) {
    CylinderMap m = product_with(primend::plane_orientation(d, vertex_permutation(d, a)));
    m.automorphism_ = a;
    return m;
  }

  /// (z, t) -> (s(z), t) for a symmetry of a grid domain.
  static CylinderMap product(const GridDomain& g, GridSymmetry s) {
    require_symmetry(g, s);
    CylinderMap m = product_with(orientation_of(s));
    m.grid_symmetry_ = s;
    return m;
  }

  /// Product whose plane part is known only through its orientation (used
  /// with caller-supplied boundary actions).
  static CylinderMap product_with(Orientation plane) {
    CylinderMap m;
    m.variant_ = Variant::Product;
    m.orientation3_ = plane;
    m.plane_orientation_ = plane;
    return m;
  }

  /// (x, y, t) -> (x, y, t + <(x, y), d>).
  static CylinderMap shear(Vec2 direction) {
    CylinderMap m;
    m.variant_ = Variant::Shear;
    m.direction_ = direction;
    return m;
  }

  /// (z, t) -> (z, -t).
  static CylinderMap end_flip() {
    CylinderMap m;
    m.variant_ = Variant::EndFlip;
    m.orientation3_ = Orientation::Reversing;
    m.ends_ = Ends::Swaps;
    return m;
  }

  /// parts[0] after parts[1] after ... (the last part acts first).
  static CylinderMap compose(std::vector<CylinderMap> parts) {
    if (parts.empty()) return identity();
    CylinderMap m;
    m.variant_ = Variant::Composition;
    for (const auto& p : parts) {
      m.orientation3_ = m.orientation3_ * p.orientation3_;
      m.plane_orientation_ = m.plane_orientation_ * p.plane_orientation_;
      m.ends_ = m.ends_ * p.ends_;
    }
    m.parts_ = std::move(parts);
    return m;
  }

  Variant variant() const { return variant_; }
  Orientation orientation3() const { return orientation3_; }
  Orientation plane_orientation() const { return plane_orientation_; }
  Ends ends() const { return ends_; }
  Vec2 shear_direction() const { return direction_; }
  const std::optional<DomainAutomorphism>& automorphism() const { return automorphism_; }
  const std::optional<GridSymmetry>& grid_symmetry() const { return grid_symmetry_; }
  const std::vector<CylinderMap>& parts() const { return parts_; }

  /// Image of a plane point under the plane part. Grid symmetries and
  /// vertex maps have no pointwise action here.
  Vec2 plane_image(Vec2 p) const {
    switch (variant_) {
      case Variant::Shear:
      case Variant::EndFlip: return p;
      case Variant::Product:
        if (grid_symmetry_ && *grid_symmetry_ != GridSymmetry::Identity) break;
        if (!automorphism_) {
          if (plane_orientation_ == Orientation::Preserving) return p;
          break;
        }
        if (automorphism_->kind() == DomainAutomorphism::Kind::VertexMap) break;
        return automorphism_->apply(p);
      case Variant::Composition: {
        Vec2 q = p;
        for (auto it = parts_.rbegin(); it != parts_.rend(); ++it) q = it->plane_image(q);
        return q;
      }
    }
    throw Error(ErrorCode::UnsupportedVariant, "plane part has no pointwise action");
  }

  /// Change in t at plane point p, for maps that move every level by a
  /// t-independent amount.
  double level_displacement(Vec2 p) const {
    switch (variant_) {
      case Variant::Product: return 0.0;
      case Variant::Shear: return dot(p, direction_);
      case Variant::EndFlip: break;
      case Variant::Composition: {
        double total = 0.0;
        Vec2 q = p;
        for (auto it = parts_.rbegin(); it != parts_.rend(); ++it) {
          total += it->level_displacement(q);
          if (std::next(it) != parts_.rend()) q = it->plane_image(q);
        }
        return total;
      }
    }
    throw Error(ErrorCode::UnsupportedVariant, "the end flip has no level displacement");
  }

  /// Composite plane automorphism of a slit domain (identity for shears
  /// and the end flip).
  DomainAutomorphism plane_automorphism(const PolygonalDomain& d) const {
    switch (variant_) {
      case Variant::Shear:
      case Variant::EndFlip: return DomainAutomorphism::identity();
      case Variant::Product:
        if (automorphism_) return *automorphism_;
        if (!grid_symmetry_ && plane_orientation_ == Orientation::Preserving) return DomainAutomorphism::identity();
        break;
      case Variant::Composition: {
        DomainAutomorphism acc = DomainAutomorphism::identity();
        for (const auto& p : parts_) acc = primend::compose(d, acc, p.plane_automorphism(d));
        return acc;
      }
    }
    throw Error(ErrorCode::UnsupportedVariant, "map has no plane automorphism of this domain");
  }

 private:
  Variant variant_ = Variant::Product;
  Orientation orientation3_ = Orientation::Preserving;
  Orientation plane_orientation_ = Orientation::Preserving;
  Ends ends_ = Ends::Fixes;
  Vec2 direction_;
  std::optional<DomainAutomorphism> automorphism_;
  std::optional<GridSymmetry> grid_symmetry_;
  std::vector<CylinderMap> parts_;
};

inline std::string to_string(CylinderMap::Variant v) {
  switch (v) {
    case CylinderMap::Variant::Product: return "product";
    case CylinderMap::Variant::Shear: return "shear";
    case CylinderMap::Variant::EndFlip: return "end-flip";
    case CylinderMap::Variant::Composition: return "composition";
  }
  return "product";
}

inline Ends ends_behavior(const CylinderMap& h) { return h.ends(); }

/// The boundary-feature bijection of H, checked to be order preserving.
template <Scalar T>
ArcBijection induced_arc_bijection(const ArcFamily<T>& family, const CylinderMap& h,
                                   const std::map<std::string, std::string>& action) {
  const ArcBijection b = action.empty() && h.variant() == CylinderMap::Variant::Product &&
                                 h.plane_orientation() == Orientation::Preserving && !h.automorphism() &&
                                 !h.grid_symmetry()
                             ? ArcBijection::identity(family.size())
                             : ArcBijection::from_labels(family, action);
  if (!is_order_preserving(family, b)) {
    throw Error(ErrorCode::OrderViolation, "induced bijection of boundary features is not order preserving");
  }
  return b;
}

/// Same, with the action computed by matching clusters under the grid
/// symmetry of a product map.
inline ArcBijection induced_arc_bijection(const GridDomain& g, const Clustering& cl, const CylinderMap& h) {
  if (h.variant() != CylinderMap::Variant::Product) {
    throw Error(ErrorCode::UnsupportedVariant, "cluster matching needs a product map");
  }
  const GridSymmetry s = h.grid_symmetry().value_or(GridSymmetry::Identity);
  return induced_arc_bijection(cl.family, h, cluster_action(g, cl, s));
}

struct CylinderRot {
  RotResult rot;
  std::size_t features = 0;  ///< |A^| or |B^|
  bool edge_rule = false;
  Orientation orientation3 = Orientation::Preserving;
  Ends ends = Ends::Fixes;
};

/// Rotation number from a family of boundary features and their induced
/// permutation. Three or more features: rot of any compatible circle map.
/// Fewer: the edge rule on orientation, ends and h = identity.
template <Scalar T>
CylinderRot rot_nonlc(const ArcFamily<T>& family, const ArcBijection& h, const CylinderMap& meta, double tol) {
  CylinderRot out;
  out.features = family.size();
  out.orientation3 = meta.orientation3();
  out.ends = meta.ends();
  if (family.size() >= 3) {
    out.rot = rot_of_bijection(family, h, tol);
    return out;
  }
  if (h.size() != family.size()) throw Error(ErrorCode::InvalidBijection, "bijection size mismatch");
  out.edge_rule = true;
  const Rational r = edge_rule(meta.orientation3(), meta.ends(), h.is_identity());
  out.rot.value = to_double(r);
  out.rot.exact = r;
  return out;
}

/// Rotation number of a cylinder map over a slit domain: its composite
/// plane automorphism goes through the prime-end pipeline.
inline CylinderRot rot_lc(const PolygonalDomain& d, const CylinderMap& h, double tol) {
  const LcRotResult r = rot_lc(d, h.plane_automorphism(d), h.ends(), tol);
  CylinderRot out;
  out.rot = r.rot;
  out.features = r.b_hat_size;
  out.edge_rule = r.two_point_rule;
  out.orientation3 = r.orientation3;
  out.ends = r.ends;
  return out;
}

/// Rotation number of a product map read from its induced boundary circle
/// map.
template <Scalar T>
RotResult rot_product(const CircleMap<T>& induced, const CylinderMap& h, double tol) {
  if (h.variant() != CylinderMap::Variant::Product) {
    throw Error(ErrorCode::UnsupportedVariant, "only product maps have an induced circle map here");
  }
  if (induced.orientation() != h.plane_orientation()) {
    throw Error(ErrorCode::ParseError, "induced circle map orientation disagrees with the product");
  }
  return rot(induced, tol);
}

struct DiagnosticRow {
  int resolution = 0;
  double window_plane = 0.0;  ///< window in plane units
  double oscillation = 0.0;   ///< max - min of the level displacement
  std::size_t region_cells = 0;
  std::size_t window_cells = 0;  ///< boundary cells inside the window
};

/// For one grid: boundary cells within lens distance `window_plane` of any
/// region cell, and the spread of H's level displacement over them.
inline DiagnosticRow diagnostic_row(const fixtures::DiagnosticFixture& f, const CylinderMap& h, double window_cells) {
  const GridDomain& g = f.grid;
  DiagnosticRow row;
  row.resolution = f.resolution;
  row.window_plane = window_cells * g.cell_size();
  row.region_cells = f.region.size();
  const int reach = static_cast<int>(std::ceil(window_cells)) + 1;
  std::vector<char> in_window(g.size(), 0);
  for (const Cell& r : f.region)
    for (int dr = -reach; dr <= reach; ++dr)
      for (int dc = -reach; dc <= reach; ++dc) {
        const Cell c{r.row + dr, r.col + dc};
        if (!g.is_boundary(c) || in_window[g.index_of(c)]) continue;
        if (lens_within(g, r, c, row.window_plane)) in_window[g.index_of(c)] = 1;
      }
  double lo = 0.0;
  double hi = 0.0;
  bool any = false;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!in_window[i]) continue;
    const double v = h.level_displacement(g.center(g.cells()[i]));
    lo = any ? std::min(lo, v) : v;
    hi = any ? std::max(hi, v) : v;
    any = true;
    ++row.window_cells;
  }
  row.oscillation = hi - lo;
  return row;
}

/// Oscillation of the level displacement near the fixture's designated
/// region, one row per resolution. Resolutions run concurrently.
inline std::vector<DiagnosticRow> equicontinuity_diagnostic(const std::string& fixture, const std::vector<int>& resolutions,
                                                            const CylinderMap& h, double window_cells) {
  if (!(window_cells > 0)) throw Error(ErrorCode::ParseError, "window must be positive");
  h.level_displacement({0, 0});  // rejects maps without a level action
  std::vector<std::future<DiagnosticRow>> jobs;
  for (int n : resolutions)
    jobs.push_back(std::async(std::launch::async, [&, n] { return diagnostic_row(fixtures::diagnostic_fixture(fixture, n), h, window_cells); }));
  std::vector<DiagnosticRow> rows;
  for (auto& j : jobs) rows.push_back(j.get());
  return rows;
}

}  // namespace primend
