#pragma once

// Named domains used by tests, the CLI and the acceptance suite.

#include <cmath>
#include <cstddef>
#include <vector>

#include "primend/grid_domain.hpp"
#include "primend/polygon_domain.hpp"

namespace primend::fixtures {

inline PolygonalDomain unit_square() { return PolygonalDomain({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {}); }

/// [0,10]^2 with (5,0) as an outer vertex and a slit up to (5,5).
inline PolygonalDomain one_slit_square() {
  return PolygonalDomain({{0, 0}, {5, 0}, {10, 0}, {10, 10}, {0, 10}}, {{1, {{5, 5}}}});
}

/// Same square with a T-shaped slit: trunk (5,0)-(5,5)-(5,8) and a branch
/// (5,5)-(7,7). The branch point is global vertex 5.
inline PolygonalDomain t_slit_square() {
  return PolygonalDomain({{0, 0}, {5, 0}, {10, 0}, {10, 10}, {0, 10}}, {{1, {{5, 5}, {5, 8}}}, {5, {{7, 7}}}});
}

/// Regular 2k-gon of radius 10 about the origin with a radial slit of
/// length 5 pointing inward from every even vertex. Rotation by 360/k
/// degrees about the origin is a symmetry.
inline PolygonalDomain pinwheel(int k) {
  constexpr double kPi = 3.141592653589793;
  std::vector<Vec2> outer;
  std::vector<Slit> slits;
  for (int j = 0; j < 2 * k; ++j) {
    const double t = kPi * j / k;
    outer.push_back({10 * std::cos(t), 10 * std::sin(t)});
  }
  for (int i = 0; i < k; ++i) {
    const double t = 2 * kPi * i / k;
    slits.push_back({static_cast<std::size_t>(2 * i), {{5 * std::cos(t), 5 * std::sin(t)}}});
  }
  return PolygonalDomain(std::move(outer), std::move(slits));
}

/// Fully occupied rows x cols grid.
inline GridDomain rectangle_grid(int rows, int cols, double cell_size = 1.0) {
  return GridDomain::make(cell_size, std::vector<std::string>(rows, std::string(cols, '#')));
}

/// 1 x 5 strip.
inline GridDomain strip5() { return GridDomain::make(1.0, {"#####"}); }

/// Three cells up, three across: an L of five cells.
inline GridDomain l_shape() { return GridDomain::make(1.0, {"#..", "#..", "###"}); }

/// Twelve-cell U: prongs of four cells joined by a base row of four.
inline GridDomain u_shape12() { return GridDomain::make(1.0, {"#..#", "#..#", "#..#", "#..#", "####"}); }

/// 7 x 7 U: prongs two cells wide, a three-cell slot down to the base.
inline GridDomain u_shape7() {
  return GridDomain::make(1.0, {"##...##", "##...##", "##...##", "##...##", "##...##", "#######", "#######"});
}

/// n x n comb on the unit square: a spine of n/4 rows at the bottom and
/// `teeth` teeth separated by one-column gaps reaching down to the spine.
inline GridDomain comb(int n, int teeth) {
  if (teeth < 1 || n < 2 * teeth || n < 4) throw Error(ErrorCode::ParseError, "comb too small for its teeth");
  const int width = (n - (teeth - 1)) / teeth;
  std::vector<std::string> rows(n, std::string(n, '#'));
  for (int k = 1; k < teeth; ++k) {
    const int gap = k * width + (k - 1);
    for (int r = 0; r < n - n / 4; ++r) rows[r][gap] = '.';
  }
  return GridDomain::make(1.0 / n, std::move(rows));
}

/// Odd n x n square with a one-cell-wide slot of the given depth cut into
/// the middle of each side; invariant under quarter turns.
inline GridDomain notched_square(int n, int depth) {
  if (n % 2 == 0 || depth < 1 || 2 * depth >= n) throw Error(ErrorCode::ParseError, "notched square needs odd n > 2*depth");
  const int mid = n / 2;
  std::vector<std::string> rows(n, std::string(n, '#'));
  for (int d = 0; d < depth; ++d) {
    rows[d][mid] = '.';
    rows[n - 1 - d][mid] = '.';
    rows[mid][d] = '.';
    rows[mid][n - 1 - d] = '.';
  }
  return GridDomain::make(1.0 / n, std::move(rows));
}

/// A resolution-indexed domain together with the cells that approach the
/// boundary feature under study.
struct DiagnosticFixture {
  std::string name;
  int resolution = 0;
  GridDomain grid;
  std::vector<Cell> region;
};

/// Column c of the Warsaw approximation covers x in [c/n, (c+1)/n] and is
/// filled from y = -1.5 up to the largest value of sin(1/x) on that range.
/// Near x = 0 every column reaches y = 1, so the left edge of the grid
/// approximates the limit bar {0} x [-1, 1].
inline double warsaw_column_top(int c, int n) {
  constexpr double kPi = 3.141592653589793;
  if (c == 0) return 1.0;
  const double lo = static_cast<double>(n) / (c + 1);
  const double hi = static_cast<double>(n) / c;
  const double k = std::ceil((lo - kPi / 2) / (2 * kPi));
  if (kPi / 2 + 2 * kPi * k <= hi) return 1.0;
  return std::max(std::sin(lo), std::sin(hi));
}

/// Warsaw-circle interior at resolution n (n even): cell size 1/n,
/// x in [0, 1], y in [-1.5, 1]. The region is every cell within 2/n of the
/// limit bar (center x < 2/n, center y >= -1).
inline DiagnosticFixture warsaw(int n) {
  if (n < 4 || n % 2) throw Error(ErrorCode::ParseError, "warsaw resolution must be even and >= 4");
  const int rows = 5 * n / 2;
  std::vector<std::string> mask(rows, std::string(n, '.'));
  for (int c = 0; c < n; ++c) {
    const double top = warsaw_column_top(c, n);
    for (int r = 0; r < rows; ++r) {
      const double cy = -1.5 + (rows - r - 0.5) / n;
      if (cy <= top) mask[r][c] = '#';
    }
  }
  DiagnosticFixture f{"warsaw", n, GridDomain::make(1.0 / n, std::move(mask), {0.0, -1.5}), {}};
  for (const Cell& c : f.grid.cells()) {
    const Vec2 p = f.grid.center(c);
    if (p.x < 2.0 / n && p.y >= -1.0) f.region.push_back(c);
  }
  return f;
}

/// Unit square at resolution n (n even); the region is the boundary cell
/// nearest to the left-edge midpoint (0, 1/2).
inline DiagnosticFixture square(int n) {
  if (n < 4 || n % 2) throw Error(ErrorCode::ParseError, "square resolution must be even and >= 4");
  DiagnosticFixture f{"square", n, rectangle_grid(n, n, 1.0 / n), {}};
  f.region.push_back({n / 2, 0});
  return f;
}

inline DiagnosticFixture diagnostic_fixture(const std::string& name, int n) {
  if (name == "warsaw") return warsaw(n);
  if (name == "square") return square(n);
  throw Error(ErrorCode::UnknownFixture, "unknown fixture '" + name + "'");
}

}  // namespace primend::fixtures
