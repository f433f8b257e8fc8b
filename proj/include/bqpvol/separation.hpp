#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "bqpvol/errors.hpp"
#include "bqpvol/graph.hpp"
#include "bqpvol/numbers.hpp"
#include "bqpvol/polytope.hpp"

namespace bqp {

/// z_e = x_i + x_j - 2 y_e for each edge of the cycle, in cycle order.
/// Requires F0..F3 to hold on those edges, which puts every z_e in [0, 1].
inline std::vector<Rational> cut_coordinates(const Point& p, const Graph& g, const Cycle& c) {
  if (static_cast<int>(p.size()) != g.dimension())
    throw DomainError("cut_coordinates: point dimension " + std::to_string(p.size()) + " != " +
                      std::to_string(g.dimension()));
  std::vector<Rational> z;
  z.reserve(c.length());
  for (int e : c.edges) {
    const Edge& ed = g.edge(e);
    const Rational& xi = p[g.x_coord(ed.u)];
    const Rational& xj = p[g.x_coord(ed.v)];
    const Rational& y = p[g.y_coord(e)];
    if (y < 0 || y > xi || y > xj || xi + xj > 1 + y)
      throw PreconditionError("point violates an F-row on edge (" + std::to_string(ed.u) + "," +
                              std::to_string(ed.v) + "); separation needs a point of Q(G)");
    Rational v = xi + xj - 2 * y;
    v.canonicalize();
    z.push_back(v);
  }
  return z;
}

/// sum_{F} (1 - z_e) + sum_{C - F} z_e over cycle positions; F given as a
/// position mask.
inline Rational cut_form_lhs(const std::vector<Rational>& z, std::uint64_t F) {
  Rational s = 0;
  for (std::size_t t = 0; t < z.size(); ++t) s += ((F >> t) & 1) ? Rational(1) - z[t] : z[t];
  return s;
}

/// Amount by which z violates the cut-space odd cycle inequality
/// sum_F (1 - z) + sum_{C - F} z >= 1 (positive means violated).
inline Rational cut_form_gap(const std::vector<Rational>& z, std::uint64_t F) {
  Rational g = Rational(1) - cut_form_lhs(z, F);
  g.canonicalize();
  return g;
}

/// LHS - rhs of OC(A) at the point (positive means violated).
inline Rational odd_cycle_violation(const Point& p, const Graph& g, const OddCycleCut& cut) {
  Row r = odd_cycle_row(g, cut);
  Rational v = r.lhs(p) - r.rhs;
  v.canonicalize();
  return v;
}

enum class SeparationMode { First, MostViolated };

struct SeparationResult {
  std::optional<OddCycleCut> cut;
  std::optional<std::size_t> cycle;  // index into `cycles`
  Rational violation;                // OC(A) LHS - rhs, > 0 when a cut is returned
  std::size_t cycles_checked = 0;
  std::size_t candidates_tested = 0;
  std::vector<Cycle> cycles;

  bool violated() const { return cut.has_value(); }
};

/// Odd cycle separation on a cactus graph. Cycles are scanned in canonical
/// order. Per cycle, with F' = {e : z_e > 1/2}: if |F'| is odd, F' is the only
/// candidate; otherwise the candidates are the |C| sets differing from F' in
/// one edge, tested in ascending graph edge index. In First mode the first
/// violated candidate is returned; in MostViolated mode the largest violation
/// wins, earliest on ties.
inline SeparationResult separate(const Point& p, const Graph& g, SeparationMode mode = SeparationMode::First) {
  SeparationResult res;
  res.cycles = enumerate_cycles_cactus(g);
  const auto q = membership(p, build_Q(g));
  if (!q.violated.empty())
    throw PreconditionError("separate: point is not in Q(G) (first violated row index " +
                            std::to_string(q.violated.front()) + ")");
  for (std::size_t ci = 0; ci < res.cycles.size(); ++ci) {
    const Cycle& c = res.cycles[ci];
    const std::size_t k = c.length();
    if (k > 63) throw SizeError("separate: cycle longer than 63 edges", k);
    ++res.cycles_checked;
    const auto z = cut_coordinates(p, g, c);
    std::uint64_t Fp = 0;
    for (std::size_t t = 0; t < k; ++t)
      if (z[t] > Rational(1, 2)) Fp |= std::uint64_t{1} << t;
    std::vector<std::uint64_t> candidates;
    if (std::popcount(Fp) % 2 == 1) {
      candidates.push_back(Fp);
    } else {
      std::vector<std::size_t> pos(k);
      for (std::size_t t = 0; t < k; ++t) pos[t] = t;
      std::sort(pos.begin(), pos.end(), [&](std::size_t a, std::size_t b) { return c.edges[a] < c.edges[b]; });
      for (std::size_t t : pos) candidates.push_back(Fp ^ (std::uint64_t{1} << t));
    }
    for (std::uint64_t F : candidates) {
      ++res.candidates_tested;
      Rational gap = cut_form_gap(z, F);
      if (gap <= 0) continue;
      Rational viol = gap / 2;
      viol.canonicalize();
      if (!res.cut || viol > res.violation) {
        res.cut = make_cut_from_mask(c, F);
        res.cycle = ci;
        res.violation = viol;
      }
      if (mode == SeparationMode::First) return res;
    }
  }
  return res;
}

/// Reference separation by trying every odd subset of every cycle. Returns
/// the first violated cut in (cycle, ascending position mask) order.
inline SeparationResult separate_exhaustive(const Point& p, const Graph& g) {
  SeparationResult res;
  res.cycles = enumerate_cycles_cactus(g);
  for (std::size_t ci = 0; ci < res.cycles.size(); ++ci) {
    ++res.cycles_checked;
    for (const auto& cut : all_odd_cuts(res.cycles[ci])) {
      ++res.candidates_tested;
      Rational v = odd_cycle_violation(p, g, cut);
      if (v > 0) {
        res.cut = cut;
        res.cycle = ci;
        res.violation = v;
        return res;
      }
    }
  }
  return res;
}

}  // namespace bqp
