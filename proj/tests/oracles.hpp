#pragma once

// Independent reference computations used only by the tests. Nothing here
// goes through the library's lift evaluation or normalization.

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace oracle {

/// Lift of the PL map given by raw (x, y) data (x sorted, x_0 may be > 0),
/// evaluated by a linear scan over the periodically extended point list.
inline double naive_lift(const std::vector<std::pair<double, double>>& pts, int degree, double x) {
  const double n = std::floor(x);
  const double f = x - n;
  std::vector<std::pair<double, double>> ext;
  const auto& last = pts.back();
  ext.push_back({last.first - 1.0, last.second - degree});
  for (const auto& p : pts) ext.push_back(p);
  ext.push_back({pts.front().first + 1.0, pts.front().second + degree});
  for (std::size_t i = 0; i + 1 < ext.size(); ++i) {
    if (ext[i].first <= f && f < ext[i + 1].first) {
      const double t = (f - ext[i].first) / (ext[i + 1].first - ext[i].first);
      return ext[i].second + t * (ext[i + 1].second - ext[i].second) + n * degree;
    }
  }
  return ext.back().second + n * degree;
}

/// Orbit average G^N(x0)/N - x0/N; within 1/N of the rotation number of the lift.
inline double orbit_average(const std::vector<std::pair<double, double>>& pts, std::int64_t n,
                            double x0 = 0.0) {
  double x = x0;
  for (std::int64_t i = 0; i < n; ++i) x = naive_lift(pts, 1, x);
  return (x - x0) / static_cast<double>(n);
}

}  // namespace oracle

#include <algorithm>
#include <functional>
#include <numeric>

#include "primend/circular_order.hpp"

namespace oracle {

/// Brute-force existence of a circle homeomorphism g with g(J) = h(J) for
/// every member: tries both global orientations and both endpoint
/// assignments for every interval member, accepting an assignment when the
/// vertex images wind exactly once monotonically and every interval is sent
/// onto its target arc (not its complement).
inline bool compatible_map_exists(const primend::ExactArcFamily& family, const primend::ArcBijection& h) {
  using primend::Rational;
  const std::size_t m = family.size();
  std::vector<std::size_t> intervals;
  for (std::size_t i = 0; i < m; ++i)
    if (!family[i].trivial()) intervals.push_back(i);
  for (int eps : {1, -1}) {
    for (unsigned mask = 0; mask < (1u << intervals.size()); ++mask) {
      struct V {
        Rational x, img;
      };
      std::vector<V> vs;
      std::size_t bit = 0;
      for (std::size_t i = 0; i < m; ++i) {
        const auto& s = family[i];
        const auto& t = family[h(i)];
        if (s.trivial()) {
          vs.push_back({s.a, t.a});
        } else {
          const bool swap = (mask >> bit++) & 1u;
          vs.push_back({s.a, swap ? t.b : t.a});
          vs.push_back({s.b, swap ? t.a : t.b});
        }
      }
      std::sort(vs.begin(), vs.end(), [](const V& a, const V& b) { return a.x < b.x; });
      Rational total(0);
      bool ok = true;
      for (std::size_t i = 0; i < vs.size(); ++i) {
        const V& a = vs[i];
        const V& b = vs[(i + 1) % vs.size()];
        Rational step = primend::frac(Rational(eps * (b.img - a.img)));
        if (vs.size() > 1 && step == 0) ok = false;
        total += step;
      }
      if (vs.size() == 1) total = 1;
      if (!ok || total != 1) continue;
      // Interval (a, b) goes to the arc swept from img(a) in direction eps.
      bit = 0;
      for (std::size_t i = 0; i < m && ok; ++i) {
        const auto& s = family[i];
        if (s.trivial()) continue;
        const auto& t = family[h(i)];
        const bool swap = (mask >> bit++) & 1u;
        const Rational ia = swap ? t.b : t.a;
        const Rational ib = swap ? t.a : t.b;
        const bool onto = eps > 0 ? (ia == t.a && ib == t.b) : (ia == t.b && ib == t.a);
        if (!onto) ok = false;
      }
      if (ok) return true;
    }
  }
  return false;
}

/// Every family with 1..max_members members whose points and interval
/// endpoints sit on the grid {k/positions}; closures pairwise disjoint.
inline void for_each_grid_family(int positions, int max_members,
                                 const std::function<void(const primend::ExactArcFamily&)>& visit) {
  using primend::Rational;
  long long total = 1;
  for (int i = 0; i < positions; ++i) total *= 4;
  std::vector<int> st(positions);
  for (long long code = 0; code < total; ++code) {
    long long c = code;
    int members = 0;
    int nonempty = 0;
    for (int i = 0; i < positions; ++i) {
      st[i] = static_cast<int>(c % 4);
      c /= 4;
      if (st[i] == 1 || st[i] == 2) ++members;
      if (st[i] != 0) ++nonempty;
    }
    if (members == 0 || members > max_members) continue;
    // Nonempty states read cyclically: every start (2) is followed by an end (3)
    // and every end is preceded by a start.
    std::vector<int> seq;
    std::vector<int> pos;
    for (int i = 0; i < positions; ++i)
      if (st[i] != 0) {
        seq.push_back(st[i]);
        pos.push_back(i);
      }
    bool valid = true;
    for (std::size_t i = 0; i < seq.size() && valid; ++i) {
      const int next = seq[(i + 1) % seq.size()];
      const int prev = seq[(i + seq.size() - 1) % seq.size()];
      if (seq[i] == 2 && next != 3) valid = false;
      if (seq[i] == 3 && prev != 2) valid = false;
    }
    if (!valid) continue;
    std::vector<primend::ExactArc> arcs;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      Rational at(pos[i], positions);
      at.canonicalize();
      if (seq[i] == 1) arcs.push_back(primend::ExactArc::point(at));
      if (seq[i] == 2) {
        Rational to(pos[(i + 1) % seq.size()], positions);
        to.canonicalize();
        arcs.push_back(primend::ExactArc::interval(at, to));
      }
    }
    visit(primend::ExactArcFamily::make(std::move(arcs)));
  }
}

/// Every bijection of the family that maps points to points and intervals
/// to intervals.
inline void for_each_bijection(const primend::ExactArcFamily& family,
                               const std::function<void(const primend::ArcBijection&)>& visit) {
  std::vector<std::size_t> perm(family.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool respects = true;
    for (std::size_t i = 0; i < perm.size(); ++i)
      if (family[i].trivial() != family[perm[i]].trivial()) respects = false;
    if (respects) visit(primend::ArcBijection::from_indices(family, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace oracle
