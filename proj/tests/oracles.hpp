#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "bqpvol/bqpvol.hpp"

namespace oracle {

using bqp::Integer;
using bqp::Rational;

/// Alternating (down-up) permutations of {1..k}, counted by full enumeration.
inline std::uint64_t alternating_permutations(int k) {
  if (k <= 1) return 1;
  std::vector<int> p(static_cast<std::size_t>(k));
  std::iota(p.begin(), p.end(), 1);
  std::uint64_t count = 0;
  do {
    bool ok = true;
    for (int i = 0; i + 1 < k && ok; ++i) ok = (i % 2 == 0) ? p[i] > p[i + 1] : p[i] < p[i + 1];
    count += ok;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

/// Euler numbers from 2 A_{k+1} = sum_j C(k, j) A_j A_{k-j} (k >= 1).
inline std::vector<Integer> euler_by_convolution(int K) {
  std::vector<Integer> a(static_cast<std::size_t>(K) + 1);
  a[0] = 1;
  if (K >= 1) a[1] = 1;
  for (int k = 1; k + 1 <= K; ++k) {
    Integer s = 0;
    for (int j = 0; j <= k; ++j) s += bqp::binomial(k, j) * a[j] * a[k - j];
    a[k + 1] = s / 2;
  }
  return a;
}

/// Linear extensions of the incidence poset by testing every permutation.
inline std::uint64_t linear_extensions_naive(const bqp::Graph& g) {
  const int n = g.num_vertices(), d = g.dimension();
  std::vector<int> p(static_cast<std::size_t>(d));
  std::iota(p.begin(), p.end(), 0);
  std::uint64_t count = 0;
  std::vector<int> pos(static_cast<std::size_t>(d));
  do {
    for (int k = 0; k < d; ++k) pos[p[k]] = k;
    bool ok = true;
    for (int e = 0; e < g.num_edges() && ok; ++e)
      ok = pos[n + e] < pos[g.edge(e).u - 1] && pos[n + e] < pos[g.edge(e).v - 1];
    count += ok;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

inline Rational frac(const Integer& a, const Integer& b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

inline Integer fact(int k) { return bqp::factorial(static_cast<unsigned long>(k)); }
inline Integer two_to(int k) {
  Integer r = 1;
  for (int i = 0; i < k; ++i) r *= 2;
  return r;
}

/// Random point of Q(G) with coordinates on the grid 1/den.
inline bqp::Point random_q_point(const bqp::Graph& g, std::mt19937_64& rng, int den = 12) {
  std::uniform_int_distribution<int> ux(0, den);
  std::vector<int> xs(static_cast<std::size_t>(g.num_vertices()) + 1);
  bqp::Point p(static_cast<std::size_t>(g.dimension()));
  for (int v = 1; v <= g.num_vertices(); ++v) {
    xs[v] = ux(rng);
    p[g.x_coord(v)] = Rational(xs[v], den);
  }
  for (int e = 0; e < g.num_edges(); ++e) {
    const int a = xs[g.edge(e).u], b = xs[g.edge(e).v];
    std::uniform_int_distribution<int> uy(std::max(0, a + b - den), std::min(a, b));
    p[g.y_coord(e)] = Rational(uy(rng), den);
  }
  for (auto& c : p) c.canonicalize();
  return p;
}

/// All 0/1 points with y_e = x_u x_v.
inline std::vector<bqp::Point> integer_vertices(const bqp::Graph& g) {
  std::vector<bqp::Point> out;
  const int n = g.num_vertices();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bqp::Point p(static_cast<std::size_t>(g.dimension()), Rational(0));
    for (int v = 1; v <= n; ++v) p[g.x_coord(v)] = (mask >> (v - 1)) & 1;
    for (int e = 0; e < g.num_edges(); ++e)
      p[g.y_coord(e)] = ((mask >> (g.edge(e).u - 1)) & 1) & ((mask >> (g.edge(e).v - 1)) & 1);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace oracle
