#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"

using namespace bqp;
using oracle::fact;
using oracle::frac;
using oracle::two_to;

namespace {

const std::vector<Integer>& A() {
  static const auto a = oracle::euler_by_convolution(40);
  return a;
}

Rational volQ_by_lecount(const Graph& g) {
  const Integer e = count_le_ideal_dp(incidence_poset(g)).value;
  return frac(e, fact(g.dimension()) * two_to(g.num_edges()));
}

}  // namespace

TEST(ClosedForm, SingleEdgeAndMatchings) {
  EXPECT_EQ(vol_closed_form(gen::complete(2), PolytopeKind::Q).value, Rational(1, 6));
  for (int m = 1; m <= 6; ++m) {
    Integer six = 1;
    for (int k = 0; k < m; ++k) six *= 6;
    EXPECT_EQ(vol_closed_form(gen::matching(m), PolytopeKind::Q).value, frac(1, six)) << m;
  }
}

TEST(ClosedForm, Stars) {
  for (int m = 1; m <= 8; ++m)
    EXPECT_EQ(vol_closed_form(gen::star(m), PolytopeKind::Q).value, frac(fact(m) * fact(m), fact(2 * m + 1))) << m;
  EXPECT_EQ(vol_closed_form(gen::star(2), PolytopeKind::Q).value, Rational(1, 30));
  EXPECT_EQ(vol_closed_form(gen::path(2), PolytopeKind::Q).value, Rational(1, 30));
}

TEST(ClosedForm, Paths) {
  for (int m = 1; m <= 8; ++m)
    EXPECT_EQ(vol_closed_form(gen::path(m), PolytopeKind::Q).value,
              frac(A()[2 * m + 1], two_to(m) * fact(2 * m + 1)))
        << m;
}

TEST(ClosedForm, Cycles) {
  for (int m = 3; m <= 8; ++m) {
    const Rational q = vol_closed_form(gen::cycle(m), PolytopeKind::Q).value;
    EXPECT_EQ(q, frac(Integer(m) * A()[2 * m - 1], two_to(m) * fact(2 * m))) << m;
    EXPECT_EQ(q, vol_closed_form(gen::path(m - 1), PolytopeKind::Q).value / 4) << m;
  }
}

TEST(ClosedForm, TriangleP) {
  EXPECT_EQ(vol_closed_form(gen::cycle(3), PolytopeKind::P).value, Rational(1, 180));
  EXPECT_EQ(vol_closed_form(gen::cycle(3), PolytopeKind::QMinusP).value, Rational(1, 360));
}

TEST(ClosedForm, CycleGapEqualsSimplexCount) {
  for (int m = 3; m <= 10; ++m)
    EXPECT_EQ(vol_closed_form(gen::cycle(m), PolytopeKind::QMinusP).value,
              frac(two_to(m - 1), 2 * fact(2 * m)))
        << m;
}

TEST(ClosedForm, AgreesWithLinearExtensionRoute) {
  const std::vector<Graph> graphs{gen::star(4), gen::path(5), gen::cycle(5), gen::cycle(6),
                                  gen::complete(4), gen::complete(5), gen::matching(3)};
  for (const Graph& g : graphs) EXPECT_EQ(vol_closed_form(g, PolytopeKind::Q).value, volQ_by_lecount(g)) << classify(g).name();
}

TEST(ClosedForm, OrderPolytopeScalesByTwoToTheM) {
  const Graph g = gen::cycle(4);
  EXPECT_EQ(vol_closed_form(g, PolytopeKind::O).value,
            vol_closed_form(g, PolytopeKind::Q).value * Rational(two_to(4)));
}

TEST(ClosedForm, ForestsHaveNoGap) {
  EXPECT_EQ(vol_closed_form(gen::path(4), PolytopeKind::P).value, vol_closed_form(gen::path(4), PolytopeKind::Q).value);
  EXPECT_EQ(vol_closed_form(gen::star(3), PolytopeKind::QMinusP).value, Rational(0));
}

TEST(ClosedForm, ProductRuleOverComponents) {
  const std::vector<Graph> parts{gen::cycle(3), gen::path(2), gen::empty(2)};
  const Graph u = gen::disjoint_union(parts);
  const auto v = vol_closed_form(u, PolytopeKind::Q);
  EXPECT_EQ(v.method, VolumeMethod::ProductRule);
  EXPECT_EQ(v.value, Rational(1, 120) * Rational(1, 30));
  EXPECT_EQ(v.dimension, 6 + 5);
  EXPECT_EQ(v.value, volQ_by_lecount(u));
  EXPECT_EQ(vol_closed_form(u, PolytopeKind::P).value, Rational(1, 180) * Rational(1, 30));
}

TEST(ClosedForm, CapabilityLimits) {
  EXPECT_THROW(vol_closed_form(gen::complete(4), PolytopeKind::P), CapabilityError);
  EXPECT_THROW(vol_closed_form(gen::cycle(4), PolytopeKind::R), CapabilityError);
  EXPECT_THROW(vol_closed_form(gen::cycle(4), PolytopeKind::T), CapabilityError);
  EXPECT_THROW(vol_closed_form(gen::necklace(3), PolytopeKind::Q), CapabilityError);
  EXPECT_THROW(vol_closed_form(Graph(5, {{1, 2}, {2, 3}, {2, 4}, {4, 5}}), PolytopeKind::Q), CapabilityError);
}

TEST(ClosedForm, EmptyGraphHasUnitVolume) {
  const auto v = vol_closed_form(gen::empty(3), PolytopeKind::Q);
  EXPECT_EQ(v.value, Rational(1));
  EXPECT_EQ(v.dimension, 0);
}

TEST(VolumeFromLE, Inversion) {
  const Graph g = gen::path(3);
  const auto o = vol_O_from_lecount(g, count_le_bruteforce(incidence_poset(g)));
  EXPECT_EQ(o.value, frac(272, 5040));
  EXPECT_EQ(o.method, VolumeMethod::LECount);
  ASSERT_TRUE(o.engine.has_value());
  EXPECT_EQ(*o.engine, LEEngine::BruteForce);
  EXPECT_EQ(vol_Q_from_O(o, 3).value, vol_closed_form(g, PolytopeKind::Q).value);
}

TEST(VolumeFromLE, IsolatedVerticesDropFromDimension) {
  const std::vector<Graph> parts{gen::path(1), gen::empty(1)};
  const Graph g = gen::disjoint_union(parts);
  const auto q = vol_Q_from_O(vol_O_from_lecount(g, count_le_ideal_dp(incidence_poset(g))), 1);
  EXPECT_EQ(q.value, Rational(1, 6));
  EXPECT_EQ(q.dimension, 3);
}

TEST(Polytopes, NamesRoundTrip) {
  for (auto k : {PolytopeKind::O, PolytopeKind::Q, PolytopeKind::R, PolytopeKind::T, PolytopeKind::P,
                 PolytopeKind::QMinusP})
    EXPECT_EQ(parse_polytope(polytope_name(k)), k);
  EXPECT_THROW(parse_polytope("X"), DomainError);
}

TEST(Asymptotics, PathRootApproachesLimit) {
  const auto rows = asymptotic_report(AsymptoticFamily::Path, 10, 50);
  for (std::size_t k = 1; k < rows.size(); ++k) EXPECT_LT(std::fabs(rows[k].gap), std::fabs(rows[k - 1].gap));
  EXPECT_LT(std::fabs(static_cast<double>(rows.back().gap)), 3e-3);
  EXPECT_NEAR(static_cast<double>(rows.back().limit), 0.450158158078553, 1e-12);
}

TEST(Asymptotics, TriangleCollectionRootIsConstant) {
  for (const auto& r : asymptotic_report(AsymptoticFamily::Triangles, 3, 30))
    EXPECT_NEAR(static_cast<double>(r.root), std::pow(1.0 / 120.0, 1.0 / 6.0), 1e-13) << r.size;
  for (const auto& r : asymptotic_report(AsymptoticFamily::TrianglesQMinusP, 3, 3))
    EXPECT_NEAR(static_cast<double>(r.root), std::pow(1.0 / 360.0, 1.0 / 6.0), 1e-13);
}

TEST(Asymptotics, TriangleCollectionsStepByThree) {
  const auto rows = asymptotic_report(AsymptoticFamily::Triangles, 4, 12);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].size, 6);
  EXPECT_THROW(asymptotic_row(AsymptoticFamily::Triangles, 4), DomainError);
}

TEST(Asymptotics, StarAndCompleteApproachHalf) {
  EXPECT_LT(std::fabs(static_cast<double>(asymptotic_row(AsymptoticFamily::Star, 200).gap)), 0.03);
  EXPECT_GT(asymptotic_row(AsymptoticFamily::Star, 200).root, asymptotic_row(AsymptoticFamily::Star, 20).root);
  const auto k = asymptotic_row(AsymptoticFamily::Complete, 40);
  EXPECT_EQ(k.dimension, 40 + 780);
  EXPECT_LT(std::fabs(k.gap), std::fabs(asymptotic_row(AsymptoticFamily::Complete, 10).gap));
  EXPECT_LT(std::fabs(static_cast<double>(asymptotic_row(AsymptoticFamily::Complete, 400).gap)), 0.02);
}

TEST(Asymptotics, CycleGapScaledRootIncreasesTowardLimit) {
  const auto rows = asymptotic_report(AsymptoticFamily::CycleQMinusP, 3, 60);
  for (std::size_t k = 1; k < rows.size(); ++k) EXPECT_GT(*rows[k].scaled, *rows[k - 1].scaled);
  EXPECT_LT(*rows.back().scaled, rows.back().limit);
}

TEST(Asymptotics, FamilyNamesRoundTrip) {
  for (auto f : {AsymptoticFamily::Complete, AsymptoticFamily::Star, AsymptoticFamily::Path, AsymptoticFamily::CycleQ,
                 AsymptoticFamily::CycleP, AsymptoticFamily::CycleQMinusP, AsymptoticFamily::Triangles,
                 AsymptoticFamily::TrianglesQMinusP})
    EXPECT_EQ(parse_asymptotic_family(family_name(f)), f);
  EXPECT_THROW(parse_asymptotic_family("wheel"), DomainError);
}
