#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"

using namespace bqp;

namespace {

bool within(const MCEstimate& e, double exact, double sigmas = 4.5) {
  return std::fabs(e.estimate - exact) <= sigmas * e.std_error + 1e-12;
}

double as_double(const Rational& q) { return q.get_d(); }

}  // namespace

TEST(Rng, SplitMixReferenceOutputs) {
  SplitMix64 r(0);
  EXPECT_EQ(r.next(), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(r.next(), 0x6E789E6AA1B965F4ULL);
  EXPECT_EQ(r.next(), 0x06C45D188009454FULL);
}

TEST(Rng, UniformRangeAndGrid) {
  SplitMix64 r(42);
  for (int k = 0; k < 10000; ++k) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ASSERT_EQ(std::ldexp(u, 52), std::floor(std::ldexp(u, 52)));
  }
}

TEST(Rng, BelowIsRoughlyUniform) {
  SplitMix64 r(1);
  std::vector<int> counts(6, 0);
  for (int k = 0; k < 60000; ++k) ++counts[r.below(6)];
  for (int c : counts) EXPECT_NEAR(c, 10000, 500);
}

TEST(Rng, StreamsDependOnSeedAndIndex) {
  EXPECT_NE(point_stream(1, 0).next(), point_stream(2, 0).next());
  EXPECT_NE(point_stream(1, 0).next(), point_stream(1, 1).next());
  EXPECT_EQ(point_stream(9, 5).next(), point_stream(9, 5).next());
}

TEST(Estimate, BinomialError) {
  const auto e = make_estimate(250, 1000, 7, 4, 2.0);
  EXPECT_DOUBLE_EQ(e.estimate, 0.5);
  EXPECT_DOUBLE_EQ(e.std_error, 2.0 * std::sqrt(0.25 * 0.75 / 1000));
  EXPECT_NEAR(e.dth_root, std::pow(0.5, 0.25), 1e-15);
  EXPECT_NEAR(e.dth_root_stderr, e.std_error / (4 * 0.5) * e.dth_root, 1e-15);
  EXPECT_EQ(make_estimate(0, 10, 1, 3).dth_root, 0.0);
}

TEST(BoxSampling, MatchesExactVolumes) {
  struct Case {
    Graph g;
    PolytopeKind kind;
  };
  for (const auto& [g, kind] : {Case{gen::path(1), PolytopeKind::Q}, Case{gen::cycle(3), PolytopeKind::Q},
                                Case{gen::cycle(3), PolytopeKind::P}, Case{gen::star(2), PolytopeKind::O}}) {
    HalfspaceSystem s = kind == PolytopeKind::O ? build_O(g)
                        : kind == PolytopeKind::Q ? build_Q(g)
                                                  : build_refinements(g).P;
    const auto e = estimate_volume(s, 400000, kDefaultSeed, 2);
    const double exact = as_double(vol_closed_form(g, kind).value);
    EXPECT_TRUE(within(e, exact)) << polytope_name(kind) << " " << e.estimate << " vs " << exact;
  }
}

TEST(BoxSampling, DeterministicAcrossWorkerCounts) {
  const auto s = build_refinements(gen::cycle(4)).P;
  const std::uint64_t n = 3 * kChunk + 123;
  const auto a = estimate_volume(s, n, 5, 1);
  for (unsigned w : {2u, 4u, 8u}) EXPECT_EQ(estimate_volume(s, n, 5, w).hits, a.hits);
  EXPECT_NE(estimate_volume(s, n, 6, 1).hits, a.hits);
}

TEST(BoxSampling, SharedStreamOrdersNestedSystems) {
  const auto ref = build_refinements(gen::necklace(3));
  const auto est = estimate_volumes_shared({&ref.Q, &ref.R, &ref.T, &ref.P}, 200000, 3, 4);
  EXPECT_LE(est[3].hits, est[1].hits);
  EXPECT_LE(est[3].hits, est[2].hits);
  EXPECT_LE(est[1].hits, est[0].hits);
  EXPECT_LE(est[2].hits, est[0].hits);
}

TEST(BoxSampling, RejectsBadInput) {
  EXPECT_THROW(estimate_volume(build_Q(gen::path(1)), 0, 1), DomainError);
  const auto a = build_Q(gen::path(1)), b = build_Q(gen::path(2));
  EXPECT_THROW(estimate_volumes_shared({&a, &b}, 10, 1), DomainError);
}

TEST(QSampler, PointsLieInQ) {
  for (const Graph& g : {gen::cycle(5), gen::necklace(3), gen::star(4)}) {
    QUniformSampler s(g);
    std::vector<std::int64_t> v(static_cast<std::size_t>(g.dimension()));
    const std::int64_t U = QUniformSampler::kUnit;
    for (std::uint64_t k = 0; k < 5000; ++k) {
      auto rng = point_stream(1, k);
      s.sample(rng, v.data());
      for (int e = 0; e < g.num_edges(); ++e) {
        const auto xi = v[g.x_coord(g.edge(e).u)], xj = v[g.x_coord(g.edge(e).v)], y = v[g.y_coord(e)];
        ASSERT_GE(y, 0);
        ASSERT_LE(y, xi);
        ASSERT_LE(y, xj);
        ASSERT_LE(xi + xj - y, U);
      }
      for (int x = 0; x < g.num_vertices(); ++x) {
        ASSERT_GE(v[x], 0);
        ASSERT_LE(v[x], U);
      }
    }
  }
}

TEST(QSampler, CoordinateMeansMatchSymmetry) {
  // Vertex switching makes x_v and 1 - x_v equally likely.
  const Graph g = gen::cycle(4);
  QUniformSampler s(g);
  std::vector<std::int64_t> v(8);
  double sum = 0;
  const int N = 100000;
  for (int k = 0; k < N; ++k) {
    auto rng = point_stream(2, static_cast<std::uint64_t>(k));
    s.sample(rng, v.data());
    sum += std::ldexp(static_cast<double>(v[0]), -53);
  }
  EXPECT_NEAR(sum / N, 0.5, 0.005);
}

TEST(QSampler, SubsetVolumesMatchExactValues) {
  for (int m = 3; m <= 5; ++m) {
    const Graph g = gen::cycle(m);
    const Rational q = vol_closed_form(g, PolytopeKind::Q).value;
    const auto ref = build_refinements(g);
    const auto est = estimate_volumes_in_Q(g, q, {&ref.P}, 300000, kDefaultSeed, 4);
    EXPECT_TRUE(within(est[0], as_double(vol_closed_form(g, PolytopeKind::P).value))) << m;
  }
}

TEST(QSampler, LowerOrthantFraction) {
  // Q(G) with every x <= 1/2 is O(G) scaled by 1/2, a 2^-n share of Q(G).
  const Graph g = gen::star(3);
  QUniformSampler s(g);
  std::vector<std::int64_t> v(7);
  const int N = 200000;
  int hits = 0;
  for (int k = 0; k < N; ++k) {
    auto rng = point_stream(11, static_cast<std::uint64_t>(k));
    s.sample(rng, v.data());
    bool low = true;
    for (int x = 0; x < 4; ++x) low = low && v[x] <= QUniformSampler::kUnit / 2;
    hits += low;
  }
  const double p = 1.0 / 16;
  EXPECT_NEAR(static_cast<double>(hits) / N, p, 4.5 * std::sqrt(p * (1 - p) / N));
}

TEST(QSampler, DeterministicAcrossWorkerCounts) {
  const Graph g = gen::necklace(3);
  const auto ref = build_refinements(g);
  const Rational q = vol_Q_from_O(vol_O_from_lecount(g, count_le_ideal_dp(incidence_poset(g))), 12).value;
  const std::uint64_t n = 2 * kChunk + 999;
  const auto a = estimate_volumes_in_Q(g, q, {&ref.R, &ref.T, &ref.P}, n, 17, 1);
  for (unsigned w : {4u, 8u}) {
    const auto b = estimate_volumes_in_Q(g, q, {&ref.R, &ref.T, &ref.P}, n, 17, w);
    for (std::size_t k = 0; k < a.size(); ++k) EXPECT_EQ(a[k].hits, b[k].hits);
  }
  EXPECT_LE(a[2].hits, a[0].hits);
  EXPECT_LE(a[2].hits, a[1].hits);
}

TEST(QSampler, RejectsLargeGraphs) { EXPECT_THROW(QUniformSampler(gen::path(30)), SizeError); }

TEST(Necklace, SmallRunIsOrderedAndExactInQ) {
  const auto row = necklace_experiment(3, 100000, kDefaultSeed, 2);
  EXPECT_EQ(row.dimension, 21);
  EXPECT_EQ(row.Q.hits, 100000u);
  ASSERT_TRUE(row.q_exact.has_value());
  EXPECT_NEAR(row.Q.dth_root, static_cast<double>(*row.q_exact_root), 1e-15);
  EXPECT_LE(row.P.hits, row.R.hits);
  EXPECT_LE(row.P.hits, row.T.hits);
  EXPECT_EQ(row.extra_rows_T, 12u);  // the hanging triangles, not the core
  EXPECT_EQ(row.extra_rows_R, 4u);
  EXPECT_EQ(row.extra_rows_P, 16u);
  EXPECT_THROW(necklace_experiment(7, 10, 1), DomainError);
}
