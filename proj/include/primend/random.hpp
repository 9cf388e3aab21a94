#pragma once

// Seeded generators for test and benchmark maps. Only the raw engine output
// is used (its sequence is fixed by the standard), so maps are identical
// across platforms.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "primend/circle_map.hpp"
#include "primend/grid_domain.hpp"

namespace primend {

class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0,1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }

 private:
  std::mt19937_64 engine_;
};

/// Orientation preserving PL map with `k` breakpoints (k >= 1). Slopes stay
/// within a factor of about 6 of each other.
inline PLMap random_pl_map(std::uint64_t seed, int k) {
  SeededRng rng(seed);
  std::vector<double> xs{0.0};
  while (static_cast<int>(xs.size()) < k) {
    double x = rng.uniform();
    if (x > 0.0 && std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
  }
  std::sort(xs.begin(), xs.end());
  std::vector<double> rise(xs.size());
  double total = 0.0;
  for (auto& r : rise) {
    r = 0.2 + rng.uniform();
    total += r;
  }
  double y = rng.uniform();
  std::vector<Breakpoint<double>> pts;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    pts.push_back({xs[i], y});
    y += rise[i] / total;
  }
  return PLMap::make(std::move(pts), 1);
}

/// Same shape as random_pl_map but with every coordinate a multiple of
/// 1/denominator, so exact arithmetic stays cheap.
inline ExactPLMap random_exact_pl_map(std::uint64_t seed, int k, long long denominator) {
  SeededRng rng(seed);
  std::set<long long> xs{0};
  while (static_cast<long long>(xs.size()) < std::min<long long>(k, denominator)) {
    xs.insert(static_cast<long long>(rng.below(static_cast<std::uint64_t>(denominator))));
  }
  // Rises: positive integers summing to the denominator.
  const long long n = static_cast<long long>(xs.size());
  std::set<long long> cuts;
  while (static_cast<long long>(cuts.size()) < n - 1) {
    cuts.insert(1 + static_cast<long long>(rng.below(static_cast<std::uint64_t>(denominator - 1))));
  }
  std::vector<long long> ys{static_cast<long long>(rng.below(static_cast<std::uint64_t>(denominator)))};
  for (long long c : cuts) ys.push_back(ys.front() + c);
  std::vector<Breakpoint<Rational>> pts;
  auto it = xs.begin();
  for (std::size_t i = 0; i < ys.size(); ++i, ++it) {
    Rational x(from_int<Rational>(*it) / from_int<Rational>(denominator));
    Rational yv(from_int<Rational>(ys[i]) / from_int<Rational>(denominator));
    x.canonicalize();
    yv.canonicalize();
    pts.push_back({x, yv});
  }
  return ExactPLMap::make(std::move(pts), 1);
}

/// Simply connected polyomino of exactly `cells` cells grown from one cell
/// by random edge-adjacent additions. Additions that would enclose a hole
/// are skipped.
inline GridDomain random_polyomino(std::uint64_t seed, int cells, double cell_size = 1.0) {
  if (cells < 1) throw Error(ErrorCode::ParseError, "polyomino needs at least one cell");
  SeededRng rng(seed);
  std::set<std::pair<int, int>> occ{{0, 0}};
  auto build = [&](const std::set<std::pair<int, int>>& s) {
    int r0 = 0, r1 = 0, c0 = 0, c1 = 0;
    for (auto [r, c] : s) {
      r0 = std::min(r0, r);
      r1 = std::max(r1, r);
      c0 = std::min(c0, c);
      c1 = std::max(c1, c);
    }
    std::vector<std::string> rows(r1 - r0 + 1, std::string(c1 - c0 + 1, '.'));
    for (auto [r, c] : s) rows[r - r0][c - c0] = '#';
    return GridDomain::make(cell_size, std::move(rows));
  };
  while (static_cast<int>(occ.size()) < cells) {
    std::vector<std::pair<int, int>> frontier;
    for (auto [r, c] : occ)
      for (auto [dr, dc] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}})
        if (!occ.count({r + dr, c + dc})) frontier.push_back({r + dr, c + dc});
    std::sort(frontier.begin(), frontier.end());
    frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
    auto next = occ;
    next.insert(frontier[rng.below(frontier.size())]);
    try {
      build(next);
      occ = std::move(next);
    } catch (const Error&) {
    }
  }
  return build(occ);
}

}  // namespace primend
