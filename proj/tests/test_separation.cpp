#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace bqp;

namespace {

Cycle only_cycle(const Graph& g) { return enumerate_cycles_cactus(g).front(); }

/// Largest OC violation over all odd subsets of all cycles (0 if none).
Rational exhaustive_max(const Point& p, const Graph& g) {
  Rational best = 0;
  for (const auto& c : enumerate_cycles_cactus(g))
    for (const auto& cut : all_odd_cuts(c)) best = std::max(best, odd_cycle_violation(p, g, cut));
  return best;
}

}  // namespace

TEST(CutCoordinates, Examples) {
  const Graph g = gen::cycle(3);
  const Cycle c = only_cycle(g);
  const auto cut = make_cut(c, {c.edges[0]});
  const auto z0 = cut_coordinates(cut_vertex_v0(cut, g), g, c);
  for (std::size_t t = 0; t < c.length(); ++t) EXPECT_EQ(z0[t], cut.in_A(c.edges[t]) ? 1 : 0);

  const auto zi = cut_coordinates({1, 1, 1, 1, 1, 1}, g, c);
  for (const auto& z : zi) EXPECT_EQ(z, 0);

  // x = (1,0,0): edges (1,2) and (1,3) are cut. Compare per graph edge.
  const auto zc = cut_coordinates({1, 0, 0, 0, 0, 0}, g, c);
  for (std::size_t t = 0; t < c.length(); ++t) {
    const Edge& e = g.edge(c.edges[t]);
    EXPECT_EQ(zc[t], e.u == 1 ? 1 : 0);
  }
}

TEST(CutCoordinates, RejectsPointsOutsideFRows) {
  const Graph g = gen::cycle(3);
  EXPECT_THROW(cut_coordinates({0, 0, 0, 1, 0, 0}, g, only_cycle(g)), PreconditionError);
  EXPECT_THROW(cut_coordinates({0, 0, 0}, g, only_cycle(g)), DomainError);
}

TEST(CutCoordinates, FormsAgreeOnEveryOddSubset) {
  std::mt19937_64 rng(21);
  for (int m = 3; m <= 5; ++m) {
    const Graph g = gen::cycle(m);
    const Cycle c = only_cycle(g);
    for (int t = 0; t < 200; ++t) {
      const Point p = oracle::random_q_point(g, rng);
      const auto z = cut_coordinates(p, g, c);
      for (auto mask : odd_masks(c.length())) {
        const auto cut = make_cut_from_mask(c, mask);
        EXPECT_EQ(odd_cycle_violation(p, g, cut) * 2, cut_form_gap(z, mask));
      }
    }
  }
}

TEST(Separate, CutsOffEveryV0WithViolationOneHalf) {
  for (int m = 3; m <= 6; ++m) {
    const Graph g = gen::cycle(m);
    for (const auto& cut : all_odd_cuts(only_cycle(g))) {
      for (auto mode : {SeparationMode::First, SeparationMode::MostViolated}) {
        const auto r = separate(cut_vertex_v0(cut, g), g, mode);
        ASSERT_TRUE(r.violated());
        EXPECT_EQ(r.cut->A, cut.A);
        EXPECT_EQ(r.violation, Rational(1, 2));
      }
    }
  }
}

TEST(Separate, IntegerVerticesAreNeverCut) {
  for (int m = 3; m <= 7; ++m) {
    const Graph g = gen::cycle(m);
    for (const auto& v : oracle::integer_vertices(g)) EXPECT_FALSE(separate(v, g).violated()) << m;
  }
}

TEST(Separate, MidpointsOfNecklaceVertices) {
  const Graph g = gen::necklace(4);
  const auto verts = oracle::integer_vertices(g);
  std::mt19937_64 rng(4);
  for (int t = 0; t < 300; ++t) {
    const auto& a = verts[rng() % verts.size()];
    const auto& b = verts[rng() % verts.size()];
    Point mid(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) mid[k] = (a[k] + b[k]) / 2;
    const auto r = separate(mid, g);
    EXPECT_FALSE(r.violated());
    EXPECT_EQ(r.cycles_checked, 5u);
    EXPECT_FALSE(separate_exhaustive(mid, g).violated());
  }
}

TEST(Separate, AgreesWithExhaustiveEnumeration) {
  std::mt19937_64 rng(77);
  for (int m = 3; m <= 9; ++m) {
    const Graph g = gen::cycle(m);
    for (int t = 0; t < 400; ++t) {
      const Point p = oracle::random_q_point(g, rng, 4 + static_cast<int>(rng() % 6));
      const auto fast = separate(p, g, SeparationMode::MostViolated);
      const Rational best = exhaustive_max(p, g);
      EXPECT_EQ(fast.violated(), best > 0);
      if (fast.violated()) {
        EXPECT_EQ(fast.violation, best);
        EXPECT_EQ(odd_cycle_violation(p, g, *fast.cut), fast.violation);
      }
      EXPECT_LE(fast.candidates_tested, static_cast<std::size_t>(m) + 1);
    }
  }
}

TEST(Separate, FirstModeIsSoundOnCacti) {
  const Graph g(7, {{1, 2}, {2, 3}, {1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 3}, {6, 7}});
  std::mt19937_64 rng(8);
  int cuts = 0;
  for (int t = 0; t < 500; ++t) {
    const Point p = oracle::random_q_point(g, rng, 4);
    const auto r = separate(p, g);
    EXPECT_EQ(r.violated(), exhaustive_max(p, g) > 0);
    if (r.violated()) {
      ++cuts;
      EXPECT_GT(r.violation, 0);
      EXPECT_EQ(odd_cycle_violation(p, g, *r.cut), r.violation);
    }
  }
  EXPECT_GT(cuts, 0);
}

TEST(Separate, HalfTiesStillFindTheCut) {
  // Every z_e is exactly 1/2, so F' is empty.
  const Graph g = gen::cycle(3);
  const Point p{Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 4), Rational(1, 4), Rational(1, 4)};
  EXPECT_EQ(separate(p, g).violated(), exhaustive_max(p, g) > 0);
}

TEST(Separate, RejectsPointsOutsideQ) {
  const Graph g = gen::cycle(3);
  EXPECT_THROW(separate({1, 1, 1, 0, 0, 0}, g), PreconditionError);
}

TEST(Separate, RejectsNonCactusGraphs) {
  const Graph diamond(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}, {1, 3}});
  EXPECT_THROW(separate(Point(9, Rational(0)), diamond), DomainError);
}

TEST(Separate, ForestsHaveNoCycles) {
  const Graph g = gen::path(3);
  const auto r = separate(Point(7, Rational(0)), g);
  EXPECT_FALSE(r.violated());
  EXPECT_EQ(r.cycles_checked, 0u);
}
