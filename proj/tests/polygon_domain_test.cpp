#include <gtest/gtest.h>

#include "primend/fixtures.hpp"
#include "primend/polygon_domain.hpp"

using namespace primend;

namespace {

ErrorCode first_violation(const PolygonalDomain& d) {
  auto r = validate_polygon(d);
  EXPECT_FALSE(r.ok());
  return r.ok() ? ErrorCode::ParseError : r.violations.front().code;
}

}  // namespace

TEST(ValidatePolygon, Examples) {
  EXPECT_TRUE(validate_polygon(fixtures::unit_square()).ok());
  PolygonalDomain slit({{0, 0}, {0.5, 0}, {1, 0}, {1, 1}, {0, 1}}, {{1, {{0.5, 0.5}}}});
  EXPECT_TRUE(validate_polygon(slit).ok());
  PolygonalDomain crossing({{0, 0}, {0.5, 0}, {1, 0}, {1, 1}, {0, 1}}, {{1, {{0.5, 1.5}}}});
  EXPECT_EQ(first_violation(crossing), ErrorCode::SlitCrossing);
}

TEST(ValidatePolygon, Rejections) {
  PolygonalDomain bowtie({{0, 0}, {1, 1}, {1, 0}, {0, 1}}, {});
  // A bowtie has zero signed area, so orientation is rejected before
  // simplicity; a bent bowtie reaches the intersection test.
  EXPECT_FALSE(validate_polygon(bowtie).ok());
  PolygonalDomain bent({{0, 0}, {4, 0}, {4, 4}, {1, -1}, {0, 3}}, {});
  EXPECT_EQ(first_violation(bent), ErrorCode::SelfIntersection);

  PolygonalDomain clockwise({{0, 0}, {0, 1}, {1, 1}, {1, 0}}, {});
  EXPECT_EQ(first_violation(clockwise), ErrorCode::ParseError);

  // Chord from one outer vertex to another splits the interior.
  PolygonalDomain chord({{0, 0}, {5, 0}, {10, 0}, {10, 10}, {5, 10}, {0, 10}}, {{1, {{5, 5}, {5, 10}}}});
  EXPECT_EQ(first_violation(chord), ErrorCode::NotSimplyConnected);

  // Two slits whose tips coincide close a loop.
  PolygonalDomain loop({{0, 0}, {5, 0}, {10, 0}, {10, 10}, {0, 10}}, {{0, {{5, 5}}}, {2, {{5, 5}}}});
  EXPECT_EQ(first_violation(loop), ErrorCode::NotSimplyConnected);

  // Slit pointing out of the polygon.
  PolygonalDomain outward({{0, 0}, {5, 0}, {10, 0}, {10, 10}, {0, 10}}, {{1, {{5, -3}}}});
  EXPECT_EQ(first_violation(outward), ErrorCode::SlitCrossing);

  // Slit tip resting on an outer edge.
  PolygonalDomain touching({{0, 0}, {5, 0}, {10, 0}, {10, 10}, {0, 10}}, {{1, {{5, 10}}}});
  EXPECT_EQ(first_violation(touching), ErrorCode::SlitCrossing);

  // Two slits crossing each other.
  PolygonalDomain x({{0, 0}, {5, 0}, {10, 0}, {10, 10}, {5, 10}, {0, 10}}, {{1, {{5, 6}}}, {4, {{5, 4}}}});
  EXPECT_FALSE(validate_polygon(x).ok());
  PolygonalDomain cross2({{0, 0}, {10, 0}, {10, 10}, {0, 10}}, {{0, {{6, 6}}}, {1, {{4, 6}}}});
  EXPECT_EQ(first_violation(cross2), ErrorCode::SlitCrossing);

  // Slit running back along an outer edge.
  PolygonalDomain along({{0, 0}, {5, 0}, {10, 0}, {10, 10}, {0, 10}}, {{1, {{7, 0}}}});
  EXPECT_EQ(first_violation(along), ErrorCode::SlitCrossing);

  EXPECT_THROW(PolygonalDomain({{0, 0}, {1, 0}}, {}), Error);
  EXPECT_THROW(PolygonalDomain({{0, 0}, {1, 0}, {1, 1}}, {{7, {{0.5, 0.2}}}}), Error);
}

TEST(BoundaryWalk, Square) {
  auto w = boundary_walk(fixtures::unit_square());
  ASSERT_EQ(w.length(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(w[i].vertex, i);
    EXPECT_EQ(w[i].edge, i);
    EXPECT_FALSE(w.on_slit(i));
  }
}

TEST(BoundaryWalk, OneSlitSquare) {
  auto d = fixtures::one_slit_square();
  auto w = boundary_walk(d);
  // Hand-traced: (0,0) (5,0) up the left side, tip (5,5), down the right
  // side, (5,0) again, then around the rest of the square.
  const std::vector<std::size_t> expected{0, 1, 5, 1, 2, 3, 4};
  ASSERT_EQ(w.length(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_EQ(w[i].vertex, expected[i]) << i;
  EXPECT_EQ(w.multiplicity(5), 1u);
  EXPECT_EQ(w.multiplicity(1), 2u);
  EXPECT_TRUE(w.on_slit(1));
  EXPECT_TRUE(w.on_slit(2));
  EXPECT_EQ(w[1].side, 1);
  EXPECT_EQ(w[2].side, -1);
}

TEST(BoundaryWalk, TSlit) {
  auto d = fixtures::t_slit_square();
  auto w = boundary_walk(d);
  EXPECT_EQ(w.length(), d.outer_edge_count() + 2 * d.slit_edge_count());
  EXPECT_EQ(w.multiplicity(5), 3u);  // branch point
  EXPECT_EQ(w.multiplicity(6), 1u);
  EXPECT_EQ(w.multiplicity(7), 1u);
  EXPECT_EQ(w.multiplicity(1), 2u);
}

TEST(BoundaryWalkProperty, LengthAndMultiplicity) {
  std::vector<PolygonalDomain> ds{fixtures::unit_square(), fixtures::one_slit_square(), fixtures::t_slit_square()};
  for (int k : {2, 3, 4, 6}) ds.push_back(fixtures::pinwheel(k));
  // Zigzag slit with an interior vertex, and a slit hanging off another slit.
  ds.push_back(PolygonalDomain({{0, 0}, {5, 0}, {10, 0}, {10, 10}, {0, 10}}, {{1, {{4, 3}, {6, 6}, {5, 8}}}}));
  ds.push_back(PolygonalDomain({{0, 0}, {10, 0}, {10, 10}, {0, 10}},
                               {{0, {{3, 3}, {5, 3}}}, {5, {{5, 6}}}, {5, {{7, 2}}}, {2, {{8, 8}}}}));
  for (const auto& d : ds) {
    ASSERT_TRUE(validate_polygon(d).ok());
    auto w = boundary_walk(d);
    EXPECT_EQ(w.length(), d.outer_edge_count() + 2 * d.slit_edge_count());
    for (std::size_t v = 0; v < d.vertex_count(); ++v) {
      const std::size_t expected = d.is_outer(v) ? d.slit_degree(v) + 1 : d.slit_degree(v);
      EXPECT_EQ(w.multiplicity(v), expected) << v;
    }
    // Consecutive steps share an endpoint and every slit edge is walked twice.
    std::vector<int> uses(d.edges().size(), 0);
    for (std::size_t i = 0; i < w.length(); ++i) {
      EXPECT_EQ(w[i].next, w[(i + 1) % w.length()].vertex);
      ++uses[w[i].edge];
    }
    for (std::size_t e = 0; e < uses.size(); ++e) EXPECT_EQ(uses[e], d.edges()[e].slit ? 2 : 1);
  }
}
