#pragma once

// Polyomino domains on a square grid and the path-diameter metric on them.
//
// Rows are listed top to bottom; row 0 is the top of the picture. Cell (r, c)
// covers [c, c+1] x [R-r-1, R-r] in lattice units (y up), scaled by the
// cell size and shifted by the origin.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "primend/circular_order.hpp"
#include "primend/error.hpp"
#include "primend/geometry.hpp"
#include "primend/scalar.hpp"

namespace primend {

struct Cell {
  int row = 0;
  int col = 0;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

class GridDomain {
 public:
  /// '#' marks an occupied cell; any other character is empty. Requires an
  /// edge-connected occupied set whose complement (padded by one ring of
  /// empty cells) is edge-connected too.
  static GridDomain make(double cell_size, std::vector<std::string> rows, Vec2 origin = {0, 0}) {
    if (!(cell_size > 0)) throw Error(ErrorCode::ParseError, "cell_size must be positive");
    if (rows.empty() || rows.front().empty()) throw Error(ErrorCode::ParseError, "empty grid");
    for (const auto& r : rows)
      if (r.size() != rows.front().size()) throw Error(ErrorCode::ParseError, "grid rows differ in length");
    GridDomain g;
    g.cell_size_ = cell_size;
    g.origin_ = origin;
    g.rows_ = static_cast<int>(rows.size());
    g.cols_ = static_cast<int>(rows.front().size());
    g.mask_ = std::move(rows);
    g.index_.assign(static_cast<std::size_t>(g.rows_) * g.cols_, -1);
    for (int r = 0; r < g.rows_; ++r)
      for (int c = 0; c < g.cols_; ++c)
        if (g.mask_[r][c] == '#') {
          g.index_[g.flat(r, c)] = static_cast<int>(g.cells_.size());
          g.cells_.push_back({r, c});
        }
    if (g.cells_.empty()) throw Error(ErrorCode::ParseError, "grid has no occupied cells");
    g.check_topology();
    return g;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double cell_size() const { return cell_size_; }
  Vec2 origin() const { return origin_; }
  const std::vector<std::string>& mask() const { return mask_; }
  const std::vector<Cell>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }

  bool occupied(int r, int c) const {
    return r >= 0 && c >= 0 && r < rows_ && c < cols_ && index_[flat(r, c)] >= 0;
  }
  bool occupied(Cell x) const { return occupied(x.row, x.col); }

  /// Index of an occupied cell in cells().
  std::size_t index_of(Cell x) const {
    if (!occupied(x)) {
      throw Error(ErrorCode::CellOutsideDomain,
                  "cell (" + std::to_string(x.row) + "," + std::to_string(x.col) + ") is not occupied");
    }
    return static_cast<std::size_t>(index_[flat(x.row, x.col)]);
  }

  Vec2 center(Cell x) const {
    return {origin_.x + (x.col + 0.5) * cell_size_, origin_.y + (rows_ - x.row - 0.5) * cell_size_};
  }
  Vec2 lattice_point(int lx, int ly) const { return {origin_.x + lx * cell_size_, origin_.y + ly * cell_size_}; }

  double distance(Cell a, Cell b) const {
    const double dr = a.row - b.row;
    const double dc = a.col - b.col;
    return cell_size_ * std::sqrt(dr * dr + dc * dc);
  }

  bool is_boundary(Cell x) const {
    return occupied(x) && (!occupied(x.row - 1, x.col) || !occupied(x.row + 1, x.col) ||
                           !occupied(x.row, x.col - 1) || !occupied(x.row, x.col + 1));
  }

  std::vector<Cell> boundary_cells() const {
    std::vector<Cell> out;
    for (const Cell& c : cells_)
      if (is_boundary(c)) out.push_back(c);
    return out;
  }

 private:
  std::size_t flat(int r, int c) const { return static_cast<std::size_t>(r) * cols_ + c; }

  void check_topology() const {
    static constexpr int kDr[4] = {-1, 1, 0, 0};
    static constexpr int kDc[4] = {0, 0, -1, 1};
    std::vector<char> seen(cells_.size(), 0);
    std::deque<Cell> queue{cells_.front()};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!queue.empty()) {
      const Cell x = queue.front();
      queue.pop_front();
      for (int k = 0; k < 4; ++k) {
        const Cell y{x.row + kDr[k], x.col + kDc[k]};
        if (!occupied(y)) continue;
        const auto i = static_cast<std::size_t>(index_[flat(y.row, y.col)]);
        if (!seen[i]) {
          seen[i] = 1;
          ++reached;
          queue.push_back(y);
        }
      }
    }
    if (reached != cells_.size()) throw Error(ErrorCode::NotSimplyConnected, "occupied cells are not edge-connected");

    // Complement inside the padded box [-1, rows] x [-1, cols].
    const int pr = rows_ + 2;
    const int pc = cols_ + 2;
    std::vector<char> empty_seen(static_cast<std::size_t>(pr) * pc, 0);
    std::size_t empty_total = 0;
    for (int r = -1; r <= rows_; ++r)
      for (int c = -1; c <= cols_; ++c)
        if (!occupied(r, c)) ++empty_total;
    std::deque<std::pair<int, int>> q{{-1, -1}};
    empty_seen[0] = 1;
    std::size_t empty_reached = 1;
    while (!q.empty()) {
      const auto [r, c] = q.front();
      q.pop_front();
      for (int k = 0; k < 4; ++k) {
        const int nr = r + kDr[k];
        const int nc = c + kDc[k];
        if (nr < -1 || nc < -1 || nr > rows_ || nc > cols_ || occupied(nr, nc)) continue;
        const std::size_t f = static_cast<std::size_t>(nr + 1) * pc + (nc + 1);
        if (!empty_seen[f]) {
          empty_seen[f] = 1;
          ++empty_reached;
          q.push_back({nr, nc});
        }
      }
    }
    if (empty_reached != empty_total) throw Error(ErrorCode::NotSimplyConnected, "grid domain has a hole");
  }

  double cell_size_ = 1.0;
  Vec2 origin_;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::string> mask_;
  std::vector<int> index_;
  std::vector<Cell> cells_;
};

namespace detail {

inline constexpr double kLensSlack = 1e-9;

inline double lens_slack(const GridDomain& g) { return kLensSlack * g.cell_size(); }

}  // namespace detail

/// x and y lie in one edge-connected component of the occupied cells whose
/// centers are within eps of both x and y.
inline bool lens_within(const GridDomain& g, Cell x, Cell y, double eps) {
  g.index_of(x);
  g.index_of(y);
  const double limit = eps + detail::lens_slack(g);
  if (g.distance(x, y) > limit) return false;
  if (x == y) return true;
  static constexpr int kDr[4] = {-1, 1, 0, 0};
  static constexpr int kDc[4] = {0, 0, -1, 1};
  std::map<Cell, bool> seen{{x, true}};
  std::deque<Cell> queue{x};
  while (!queue.empty()) {
    const Cell c = queue.front();
    queue.pop_front();
    for (int k = 0; k < 4; ++k) {
      const Cell n{c.row + kDr[k], c.col + kDc[k]};
      if (!g.occupied(n) || seen.count(n)) continue;
      if (g.distance(n, x) > limit || g.distance(n, y) > limit) continue;
      if (n == y) return true;
      seen[n] = true;
      queue.push_back(n);
    }
  }
  return false;
}

/// Least eps with lens_within(g, x, y, eps). The answer is one of the values
/// max(|c - x|, |c - y|) over occupied c, so a binary search over those is
/// exact.
inline double lens_distance(const GridDomain& g, Cell x, Cell y) {
  g.index_of(x);
  g.index_of(y);
  if (x == y) return 0.0;
  const double base = g.distance(x, y);
  std::vector<double> candidates;
  for (const Cell& c : g.cells()) {
    const double v = std::max(g.distance(c, x), g.distance(c, y));
    if (v >= base) candidates.push_back(v);
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::size_t lo = 0;
  std::size_t hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (lens_within(g, x, y, candidates[mid])) hi = mid;
    else lo = mid + 1;
  }
  return candidates[lo];
}

/// Exact minimum diameter of a connected cell set containing both cells,
/// for every pair at once. Enumerates all 2^N subsets (N <= 18).
class MinDiameterTable {
 public:
  static constexpr std::size_t kMaxCells = 18;

  explicit MinDiameterTable(const GridDomain& g) : grid_(&g) {
    const std::size_t n = g.size();
    if (n > kMaxCells) {
      throw Error(ErrorCode::TooLarge, "exact diameter needs at most 18 cells, got " + std::to_string(n));
    }
    const auto& cells = g.cells();
    std::vector<std::uint32_t> adj(n, 0);
    std::vector<std::vector<int>> d2(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const int dr = cells[i].row - cells[j].row;
        const int dc = cells[i].col - cells[j].col;
        d2[i][j] = dr * dr + dc * dc;
        if (d2[i][j] == 1) adj[i] |= 1u << j;
      }
    const std::uint32_t full = n == 32 ? ~0u : (1u << n);
    constexpr int kInf = std::numeric_limits<int>::max();
    std::vector<int> diam(full, 0);
    std::vector<char> connected(full, 0);
    best_.assign(full, kInf);
    for (std::uint32_t mask = 1; mask < full; ++mask) {
      const int low = std::countr_zero(mask);
      const std::uint32_t rest = mask & (mask - 1);
      int far = diam[rest];
      for (std::uint32_t r = rest; r; r &= r - 1) far = std::max(far, d2[low][std::countr_zero(r)]);
      diam[mask] = far;
      if (rest == 0) {
        connected[mask] = 1;
      } else {
        // A connected set has a vertex whose removal keeps it connected.
        for (std::uint32_t r = mask; r; r &= r - 1) {
          const int i = std::countr_zero(r);
          const std::uint32_t without = mask & ~(1u << i);
          if (connected[without] && (adj[i] & without)) {
            connected[mask] = 1;
            break;
          }
        }
      }
      if (connected[mask]) best_[mask] = diam[mask];
    }
    // Minimum over supersets.
    for (std::size_t b = 0; b < n; ++b)
      for (std::uint32_t mask = 0; mask < full; ++mask)
        if (!(mask & (1u << b))) best_[mask] = std::min(best_[mask], best_[mask | (1u << b)]);
  }

  double operator()(Cell x, Cell y) const {
    const std::size_t i = grid_->index_of(x);
    const std::size_t j = grid_->index_of(y);
    const std::uint32_t mask = (1u << i) | (1u << j);
    return grid_->cell_size() * std::sqrt(static_cast<double>(best_[mask]));
  }

 private:
  const GridDomain* grid_;
  std::vector<int> best_;
};

inline double min_diameter_exact(const GridDomain& g, Cell x, Cell y) { return MinDiameterTable(g)(x, y); }

struct LatticePoint {
  int x = 0;
  int y = 0;
  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

struct GridWalkEdge {
  LatticePoint from;
  LatticePoint to;
  std::size_t cell = 0;  ///< index (into cells()) of the occupied cell on the left
};

/// Outline of the polyomino traversed counterclockwise. Position i sits at
/// circle coordinate i/L and is the start of edge i.
class GridWalk {
 public:
  explicit GridWalk(const GridDomain& g) {
    const int rows = g.rows();
    std::map<LatticePoint, GridWalkEdge> out;
    auto add = [&](LatticePoint a, LatticePoint b, std::size_t cell) {
      if (!out.emplace(a, GridWalkEdge{a, b, cell}).second) {
        throw Error(ErrorCode::NotSimplyConnected, "outline touches itself at a lattice point");
      }
    };
    for (std::size_t i = 0; i < g.size(); ++i) {
      const Cell c = g.cells()[i];
      const int x0 = c.col;
      const int x1 = c.col + 1;
      const int y0 = rows - c.row - 1;
      const int y1 = rows - c.row;
      if (!g.occupied(c.row + 1, c.col)) add({x0, y0}, {x1, y0}, i);
      if (!g.occupied(c.row, c.col + 1)) add({x1, y0}, {x1, y1}, i);
      if (!g.occupied(c.row - 1, c.col)) add({x1, y1}, {x0, y1}, i);
      if (!g.occupied(c.row, c.col - 1)) add({x0, y1}, {x0, y0}, i);
    }
    // Start at the lower-left corner of the leftmost cell in the bottom row.
    LatticePoint start{std::numeric_limits<int>::max(), std::numeric_limits<int>::max()};
    for (const auto& [p, e] : out)
      if (e.to.y == p.y && e.to.x > p.x && (p.y < start.y || (p.y == start.y && p.x < start.x))) start = p;
    LatticePoint at = start;
    do {
      const GridWalkEdge& e = out.at(at);
      index_[{e.from, e.to}] = edges_.size();
      edges_.push_back(e);
      at = e.to;
    } while (!(at == start) && edges_.size() <= out.size());
    if (edges_.size() != out.size()) throw Error(ErrorCode::NotSimplyConnected, "outline is not a single cycle");
  }

  std::size_t length() const { return edges_.size(); }
  const GridWalkEdge& operator[](std::size_t i) const { return edges_[i]; }
  const std::vector<GridWalkEdge>& edges() const { return edges_; }
  std::optional<std::size_t> index_of(LatticePoint a, LatticePoint b) const {
    auto it = index_.find({a, b});
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::vector<GridWalkEdge> edges_;
  std::map<std::pair<LatticePoint, LatticePoint>, std::size_t> index_;
};

struct ClusterInfo {
  std::string label;
  bool pinch = false;
  std::size_t first_edge = 0;  ///< walk index where the run starts
  std::size_t edge_count = 0;  ///< run length in walk edges
  std::vector<Cell> cells;     ///< distinct owner cells, in walk order
};

struct Clustering {
  double scale = 0.0;
  std::size_t walk_length = 0;
  ExactArcFamily family;
  std::vector<ClusterInfo> clusters;  ///< same order as family
  std::vector<std::size_t> edge_cluster;  ///< walk edge -> cluster index
};

/// Splits the outline into arcs at the scale where the path-diameter metric
/// and the plane metric disagree. A boundary cell is a pinch cell when some
/// other boundary cell lies within `scale` in the plane but not within
/// `scale` in the lens metric (the two sides of a narrow gap). Each maximal
/// run of walk edges whose owner cells share the pinch/free class becomes
/// one cluster. A run of edges i..j becomes the open arc (i/L, (j + 1/2)/L)
/// so neighbouring clusters have disjoint closures; a one-edge run becomes
/// the point i/L.
inline Clustering boundary_clusters(const GridDomain& g, double scale) {
  if (!(scale > 0)) throw Error(ErrorCode::ParseError, "scale must be positive");
  const GridWalk walk(g);
  const std::size_t L = walk.length();
  const double limit = scale + detail::lens_slack(g);
  const int reach = static_cast<int>(std::floor(limit / g.cell_size()));

  std::vector<char> pinch(g.size(), 0);
  for (const Cell& b : g.boundary_cells()) {
    const std::size_t bi = g.index_of(b);
    for (int dr = -reach; dr <= reach; ++dr)
      for (int dc = -reach; dc <= reach; ++dc) {
        const Cell o{b.row + dr, b.col + dc};
        if (!(b < o) || !g.is_boundary(o) || g.distance(b, o) > limit) continue;
        if (!lens_within(g, b, o, scale)) {
          pinch[bi] = 1;
          pinch[g.index_of(o)] = 1;
        }
      }
  }

  std::vector<char> cls(L);
  for (std::size_t i = 0; i < L; ++i) cls[i] = pinch[walk[i].cell];

  struct Run {
    std::size_t start;
    std::size_t len;
  };
  std::vector<Run> runs;
  std::size_t first = L;
  for (std::size_t i = 0; i < L; ++i)
    if (cls[i] != cls[(i + L - 1) % L]) {
      first = i;
      break;
    }
  if (first == L) {
    runs.push_back({0, L});
  } else {
    std::size_t i = first;
    do {
      std::size_t len = 1;
      while (cls[(i + len) % L] == cls[i] && len < L) ++len;
      runs.push_back({i, len});
      i = (i + len) % L;
    } while (i != first);
  }
  std::sort(runs.begin(), runs.end(), [](const Run& a, const Run& b) { return a.start < b.start; });

  Clustering out;
  out.scale = scale;
  out.walk_length = L;
  out.edge_cluster.assign(L, 0);
  std::vector<ExactArc> arcs;
  const Rational denom(static_cast<long>(L));
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const Run& r = runs[k];
    ClusterInfo info;
    info.label = "C" + std::to_string(k + 1);
    info.pinch = cls[r.start] != 0;
    info.first_edge = r.start;
    info.edge_count = r.len;
    for (std::size_t t = 0; t < r.len; ++t) {
      const std::size_t e = (r.start + t) % L;
      out.edge_cluster[e] = k;
      const Cell c = g.cells()[walk[e].cell];
      if (std::find(info.cells.begin(), info.cells.end(), c) == info.cells.end()) info.cells.push_back(c);
    }
    Rational a(static_cast<long>(r.start), static_cast<long>(L));
    a.canonicalize();
    if (r.len == 1) {
      arcs.push_back(ExactArc::point(a, info.label));
    } else {
      Rational b(static_cast<long>(2 * (r.start + r.len) - 1), static_cast<long>(2 * L));
      b.canonicalize();
      arcs.push_back(ExactArc::interval(a, b, info.label));
    }
    out.clusters.push_back(std::move(info));
  }
  out.family = ExactArcFamily::make(std::move(arcs));
  return out;
}

/// Symmetries of a grid's bounding box. Rotations are counterclockwise and
/// need a square grid.
enum class GridSymmetry { Identity, Rot90, Rot180, Rot270, FlipHorizontal, FlipVertical };

inline Orientation orientation_of(GridSymmetry s) {
  return (s == GridSymmetry::FlipHorizontal || s == GridSymmetry::FlipVertical) ? Orientation::Reversing
                                                                                : Orientation::Preserving;
}

inline std::string to_string(GridSymmetry s) {
  switch (s) {
    case GridSymmetry::Identity: return "identity";
    case GridSymmetry::Rot90: return "rot90";
    case GridSymmetry::Rot180: return "rot180";
    case GridSymmetry::Rot270: return "rot270";
    case GridSymmetry::FlipHorizontal: return "flip-horizontal";
    case GridSymmetry::FlipVertical: return "flip-vertical";
  }
  return "identity";
}

inline GridSymmetry grid_symmetry_from_string(const std::string& s) {
  for (GridSymmetry v : {GridSymmetry::Identity, GridSymmetry::Rot90, GridSymmetry::Rot180, GridSymmetry::Rot270,
                         GridSymmetry::FlipHorizontal, GridSymmetry::FlipVertical})
    if (to_string(v) == s) return v;
  throw Error(ErrorCode::ParseError, "unknown grid symmetry '" + s + "'");
}

/// Image of a lattice point under the symmetry (box [0, cols] x [0, rows]).
inline LatticePoint apply(GridSymmetry s, const GridDomain& g, LatticePoint p) {
  const int w = g.cols();
  const int h = g.rows();
  switch (s) {
    case GridSymmetry::Identity: return p;
    case GridSymmetry::Rot90: return {h - p.y, p.x};
    case GridSymmetry::Rot180: return {w - p.x, h - p.y};
    case GridSymmetry::Rot270: return {p.y, w - p.x};
    case GridSymmetry::FlipHorizontal: return {w - p.x, p.y};
    case GridSymmetry::FlipVertical: return {p.x, h - p.y};
  }
  return p;
}

inline Cell apply(GridSymmetry s, const GridDomain& g, Cell c) {
  // Map the cell's lower-left and upper-right corners and rebuild.
  const LatticePoint a = apply(s, g, LatticePoint{c.col, g.rows() - c.row - 1});
  const LatticePoint b = apply(s, g, LatticePoint{c.col + 1, g.rows() - c.row});
  const int x = std::min(a.x, b.x);
  const int y = std::min(a.y, b.y);
  return {g.rows() - y - 1, x};
}

/// Checks that the symmetry maps the occupied set onto itself.
inline void require_symmetry(const GridDomain& g, GridSymmetry s) {
  const bool rotates = s == GridSymmetry::Rot90 || s == GridSymmetry::Rot270;
  if (rotates && g.rows() != g.cols()) throw Error(ErrorCode::NotAnAutomorphism, "quarter turn needs a square grid");
  for (const Cell& c : g.cells())
    if (!g.occupied(apply(s, g, c))) throw Error(ErrorCode::NotAnAutomorphism, "symmetry does not preserve the grid domain");
}

/// How a grid symmetry permutes boundary clusters: each cluster goes to the
/// cluster holding the images of its walk edges. Orientation reversing
/// symmetries reverse edge direction.
inline std::map<std::string, std::string> cluster_action(const GridDomain& g, const Clustering& cl, GridSymmetry s) {
  require_symmetry(g, s);
  const GridWalk walk(g);
  const bool reverses = orientation_of(s) == Orientation::Reversing;
  std::vector<std::optional<std::size_t>> image(cl.clusters.size());
  for (std::size_t e = 0; e < walk.length(); ++e) {
    const LatticePoint a = apply(s, g, walk[e].from);
    const LatticePoint b = apply(s, g, walk[e].to);
    const auto j = reverses ? walk.index_of(b, a) : walk.index_of(a, b);
    if (!j) throw Error(ErrorCode::NotAnAutomorphism, "symmetry does not map the outline to itself");
    const std::size_t from = cl.edge_cluster[e];
    const std::size_t to = cl.edge_cluster[*j];
    if (image[from] && *image[from] != to) {
      throw Error(ErrorCode::NotAnAutomorphism, "cluster " + cl.clusters[from].label + " is split by the symmetry");
    }
    image[from] = to;
  }
  std::map<std::string, std::string> action;
  for (std::size_t k = 0; k < image.size(); ++k) action[cl.clusters[k].label] = cl.clusters[*image[k]].label;
  return action;
}

}  // namespace primend
