// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>

#include "oracles.hpp"
#include "primend/cylinder.hpp"
#include "primend/fixtures.hpp"
#include "primend/random.hpp"

using namespace primend;

namespace {

Rational q(long a, long b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit_s;  // <= 0: no limit
  std::function<Outcome()> run;
};

// Fails the criterion with a message; later checks still run so the detail
// names the first failure.
struct Checker {
  Outcome out;
  void check(bool ok, const std::string& what) {
    if (!ok && out.pass) {
      out.pass = false;
      out.detail = what;
    }
  }
};

bool contains_mod1(const RotInterval& iv, double alpha) {
  for (int k = -2; k <= 2; ++k)
    if (iv.contains(alpha + k)) return true;
  return false;
}

Outcome rotation_intervals() {
  Checker c;
  int rational = 0;
  int irrational = 0;
  // 30 rationals p/q with q <= 50.
  for (long k = 0; k < 30; ++k) {
    const long den = 1 + (k * 17) % 50;
    const long num = (k * 7 + 3) % den;
    const Rational alpha = q(num, den);
    const auto m = ExactPLMap::rotation(alpha);
    const auto iv = rot_interval(m, 2000);
    c.check(iv.width() <= 0.001, "width " + std::to_string(iv.width()) + " for " + to_string(alpha));
    c.check(contains_mod1(iv, alpha.get_d()), "interval misses " + to_string(alpha));
    const auto exact = rot_exact_rational(m, 50);
    c.check(exact && *exact == alpha, "exact path missed " + to_string(alpha));
    ++rational;
  }
  // 20 irrationals (double approximations of algebraic and transcendental numbers).
  for (int k = 1; k <= 20; ++k) {
    const double alpha = std::fmod(k * std::numbers::sqrt2 + std::numbers::pi / k, 1.0);
    const auto iv = rot_interval(PLMap::rotation(alpha), 2000);
    c.check(iv.width() <= 0.001, "width " + std::to_string(iv.width()) + " for irrational " + std::to_string(alpha));
    c.check(contains_mod1(iv, alpha), "interval misses irrational " + std::to_string(alpha));
    ++irrational;
  }
  if (c.out.pass) c.out.detail = std::to_string(rational) + " rational + " + std::to_string(irrational) + " irrational";
  return c.out;
}

Outcome conjugacy() {
  Checker c;
  const double tol = 1e-4;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto g = random_pl_map(10'000 + seed, 5);
    const auto h = random_pl_map(20'000 + seed, 4);
    try {
      const double a = rot(g, tol).value;
      const double b = rot(conjugate(h, g), tol).value;
      worst = std::max(worst, circle_distance(a, b));
      c.check(circle_distance(a, b) <= 2 * tol, "seed " + std::to_string(seed) + " differs by " + std::to_string(circle_distance(a, b)));
    } catch (const Error& e) {
      c.check(false, "seed " + std::to_string(seed) + ": " + e.what());
    }
  }
  if (c.out.pass) c.out.detail = "100 pairs, worst |diff| mod 1 = " + std::to_string(worst);
  return c.out;
}

struct GridSweep {
  long cases = 0;
  long order_preserving = 0;
  long discrepancies = 0;
  long strategy_mismatches = 0;
  std::string first_mismatch;
};

const GridSweep& grid_sweep() {
  static const GridSweep sweep = [] {
    GridSweep s;
    oracle::for_each_grid_family(10, 5, [&](const ExactArcFamily& fam) {
      oracle::for_each_bijection(fam, [&](const ArcBijection& h) {
        ++s.cases;
        const bool fast = is_order_preserving(fam, h);
        if (fast != oracle::compatible_map_exists(fam, h)) ++s.discrepancies;
        if (!fast) return;
        ++s.order_preserving;
        const auto a = rot(synthesize_compatible(fam, h, SynthesisStrategy::Linear), 1.0 / 12);
        const auto b = rot(synthesize_compatible(fam, h, SynthesisStrategy::Skewed), 1.0 / 12);
        if (!a.exact || !b.exact || *a.exact != *b.exact) {
          if (s.strategy_mismatches++ == 0) s.first_mismatch = std::to_string(fam.size()) + " members";
        }
      });
    });
    return s;
  }();
  return sweep;
}

Outcome order_test_equivalence() {
  const auto& s = grid_sweep();
  Outcome o;
  o.pass = s.discrepancies == 0 && s.cases > 0;
  o.detail = std::to_string(s.cases) + " (family, bijection) cases, " + std::to_string(s.discrepancies) + " discrepancies";
  return o;
}

Outcome strategies_agree() {
  const auto& s = grid_sweep();
  Outcome o;
  o.pass = s.strategy_mismatches == 0 && s.order_preserving > 0;
  o.detail = std::to_string(s.order_preserving) + " order-preserving cases, " + std::to_string(s.strategy_mismatches) +
             " strategy mismatches" + (s.first_mismatch.empty() ? "" : " (first: " + s.first_mismatch + ")");
  return o;
}

Outcome sandwich() {
  Checker c;
  long pairs = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const int cells = 2 + static_cast<int>(seed % 17);  // 2..18
    const auto g = random_polyomino(50'000 + seed, cells);
    const MinDiameterTable exact(g);
    for (const Cell& a : g.cells())
      for (const Cell& b : g.cells()) {
        const double lens = lens_distance(g, a, b);
        const double e = exact(a, b);
        ++pairs;
        c.check(lens <= e + 1e-12, "lens > exact, seed " + std::to_string(seed));
        c.check(e <= 2 * lens + 1e-12, "exact > 2 lens, seed " + std::to_string(seed));
      }
  }
  for (const auto& g : {fixtures::rectangle_grid(6, 6, 0.5), fixtures::rectangle_grid(3, 7, 1.0), fixtures::strip5()}) {
    for (const Cell& a : g.cells())
      for (const Cell& b : g.cells())
        c.check(std::abs(lens_distance(g, a, b) - g.distance(a, b)) <= 1e-12, "convex lens differs from Euclidean");
  }
  if (c.out.pass) c.out.detail = std::to_string(pairs) + " pairs on 200 polyominoes; 3 convex fixtures";
  return c.out;
}

Outcome lc_pipeline() {
  Checker c;
  int runs = 0;
  for (int k : {2, 3, 4, 6}) {
    const auto d = fixtures::pinwheel(k);
    for (int j = 0; j < k; ++j) {
      const auto r = rot_lc(d, DomainAutomorphism::rotation({0, 0}, 360.0 * j / k), Ends::Fixes, 1e-9);
      c.check(r.rot.exact && *r.rot.exact == q(j, k), "pinwheel " + std::to_string(k) + " turn " + std::to_string(j));
      ++runs;
    }
  }
  const auto f = rot_lc(fixtures::one_slit_square(), DomainAutomorphism::reflection({5, 0}, {0, 1}), Ends::Fixes, 1e-9);
  c.check(f.rot.value == 0.0 && f.rot.orientation == Orientation::Reversing && f.plane_orientation == Orientation::Reversing,
          "one-slit reflection");
  if (c.out.pass) c.out.detail = std::to_string(runs) + " pinwheel turns exact; reflection Rot 0, reversing";
  return c.out;
}

Outcome product_agreement() {
  Checker c;
  int runs = 0;
  auto one = [&](const PolygonalDomain& d, const DomainAutomorphism& a, const std::string& what) {
    const auto r = rot_lc(d, CylinderMap::product(d, a), 1e-9);
    const auto direct = rot(induced_walk_map(d, a), 1e-9);
    c.check(r.rot.exact && direct.exact && *r.rot.exact == *direct.exact, what);
    ++runs;
  };
  for (int k : {2, 3, 4, 6}) {
    const auto d = fixtures::pinwheel(k);
    for (int j = 0; j < k; ++j) one(d, DomainAutomorphism::rotation({0, 0}, 360.0 * j / k), "pinwheel rotation");
    one(d, DomainAutomorphism::reflection({0, 0}, {1, 0}), "pinwheel reflection");
  }
  one(fixtures::one_slit_square(), DomainAutomorphism::reflection({5, 0}, {0, 1}), "one-slit reflection");
  one(fixtures::one_slit_square(), DomainAutomorphism::identity(), "one-slit identity");
  one(fixtures::t_slit_square(), DomainAutomorphism::identity(), "T-slit identity");
  if (c.out.pass) c.out.detail = std::to_string(runs) + " product maps agree exactly";
  return c.out;
}

void write_csv(const std::string& path, const std::vector<DiagnosticRow>& rows) {
  std::ofstream f(path);
  f << "resolution,window_plane_units,oscillation\n";
  char buf[96];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%.12g,%.12g\n", r.resolution, r.window_plane, r.oscillation);
    f << buf;
  }
}

Outcome warsaw_diagnostic() {
  Checker c;
  const std::vector<int> ns{32, 64, 128};
  const double bar_length = 2.0;  // limit bar {0} x [-1, 1]
  const auto shear = CylinderMap::shear({0, 1});
  const auto warsaw = equicontinuity_diagnostic("warsaw", ns, shear, 4);
  const auto square = equicontinuity_diagnostic("square", ns, shear, 4);
  write_csv("acceptance_warsaw.csv", warsaw);
  write_csv("acceptance_square.csv", square);
  for (const auto& r : warsaw)
    c.check(r.oscillation >= 0.9 * bar_length, "warsaw n=" + std::to_string(r.resolution) + " oscillation " + std::to_string(r.oscillation));
  for (std::size_t i = 0; i + 1 < square.size(); ++i) {
    const double ratio = static_cast<double>(square[i].resolution) / square[i + 1].resolution;
    c.check(square[i + 1].oscillation <= ratio * square[i].oscillation + 1e-12, "square does not decay linearly");
  }
  if (c.out.pass) {
    std::ostringstream s;
    s << "warsaw osc";
    for (const auto& r : warsaw) s << ' ' << r.oscillation;
    s << "; square osc";
    for (const auto& r : square) s << ' ' << r.oscillation;
    s << "; CSV acceptance_warsaw.csv, acceptance_square.csv";
    c.out.detail = s.str();
  }
  return c.out;
}

Outcome edge_rules() {
  Checker c;
  // Realizations of each (orientation3, ends) pair.
  const CylinderMap pres_fix = CylinderMap::identity();
  const CylinderMap rev_fix = CylinderMap::product_with(Orientation::Reversing);
  const CylinderMap rev_swap = CylinderMap::end_flip();
  const CylinderMap pres_swap = CylinderMap::compose({CylinderMap::product_with(Orientation::Reversing), CylinderMap::end_flip()});
  struct Row {
    const CylinderMap* meta;
    bool identity;
    Rational expected;
  };
  // 0 when exactly one of orientation reversal and end swap happens;
  // otherwise 0 for h = ID and 1/2 for h != ID.
  const std::vector<Row> table{
      {&pres_fix, true, q(0, 1)},  {&pres_fix, false, q(1, 2)},  {&rev_fix, true, q(0, 1)},   {&rev_fix, false, q(0, 1)},
      {&pres_swap, true, q(0, 1)}, {&pres_swap, false, q(0, 1)}, {&rev_swap, true, q(0, 1)}, {&rev_swap, false, q(1, 2)},
  };
  const auto one = ExactArcFamily::make({ExactArc::point(q(1, 3), "A")});
  const auto two = ExactArcFamily::make({ExactArc::interval(q(0, 1), q(1, 4), "A"), ExactArc::interval(q(1, 2), q(3, 4), "B")});
  int checked = 0;
  for (const auto& row : table) {
    c.check(edge_rule(row.meta->orientation3(), row.meta->ends(), row.identity) == row.expected, "edge_rule table row");
    // |A| = 2: identity or swap.
    const auto h2 = row.identity ? ArcBijection::identity(2) : ArcBijection::from_labels(two, {{"A", "B"}, {"B", "A"}});
    const auto r2 = rot_nonlc(two, h2, *row.meta, 1e-9);
    c.check(r2.edge_rule && r2.rot.exact && *r2.rot.exact == row.expected, "|A|=2 row");
    ++checked;
    // |A| = 1 only has the identity.
    if (row.identity) {
      const auto r1 = rot_nonlc(one, ArcBijection::identity(1), *row.meta, 1e-9);
      c.check(r1.edge_rule && r1.rot.exact && *r1.rot.exact == row.expected, "|A|=1 row");
      ++checked;
    }
  }
  if (c.out.pass) c.out.detail = std::to_string(checked) + " table rows";
  return c.out;
}

Outcome continuity() {
  Checker c;
  const Rational alpha = q(1, 3);
  const auto meta = CylinderMap::identity();
  const auto base = rot_product(ExactPLMap::rotation(alpha), meta, 1e-6).exact;
  c.check(base && *base == alpha, "Rot of the limit map");
  for (long n = 1; n <= 60 && base; ++n) {
    const Rational an = alpha + q(1, 7 * n);
    const auto rn = rot_product(ExactPLMap::rotation(an), meta, 1e-6).exact;
    c.check(rn && abs(Rational(*rn - *base)) == abs(Rational(an - alpha)), "n = " + std::to_string(n));
  }
  if (c.out.pass) c.out.detail = "60 terms, |Rot_n - Rot| = |alpha_n - alpha| exactly";
  return c.out;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "rotation interval correctness", 5, rotation_intervals},
      {2, "conjugacy invariance", 60, conjugacy},
      {3, "order test matches brute force", 120, order_test_equivalence},
      {4, "synthesis strategies agree", 0, strategies_agree},
      {5, "path-diameter sandwich", 120, sandwich},
      {6, "locally connected pipeline", 10, lc_pipeline},
      {7, "product maps match induced walk map", 0, product_agreement},
      {8, "Warsaw oscillation vs square decay", 60, warsaw_diagnostic},
      {9, "edge rule truth table", 0, edge_rules},
      {10, "continuity on rigid family", 0, continuity},
  };
  int failures = 0;
  for (const auto& cr : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (cr.time_limit_s > 0 && secs > cr.time_limit_s) {
      o.pass = false;
      o.detail += " (over the " + std::to_string(static_cast<int>(cr.time_limit_s)) + " s budget)";
    }
    if (!o.pass) ++failures;
    char t[32];
    std::snprintf(t, sizeof t, "%.2fs", secs);
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << cr.id << " (" << cr.name << ") [" << t << "] " << o.detail
              << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
