#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "bqpvol/errors.hpp"
#include "bqpvol/graph.hpp"
#include "bqpvol/numbers.hpp"

namespace bqp {

using Point = std::vector<Rational>;

enum class RowTag { F0, F1, F2, F3, XLower, XUpper, YUpper, OddCycle };

inline const char* tag_name(RowTag t) {
  switch (t) {
    case RowTag::F0: return "F0";
    case RowTag::F1: return "F1";
    case RowTag::F2: return "F2";
    case RowTag::F3: return "F3";
    case RowTag::XLower: return "x>=0";
    case RowTag::XUpper: return "x<=1";
    case RowTag::YUpper: return "y<=1";
    case RowTag::OddCycle: return "OC";
  }
  return "?";
}

struct Term {
  int coord;
  Rational coef;
};

/// Sparse inequality sum(coef * v[coord]) <= rhs with its provenance.
struct Row {
  std::vector<Term> terms;
  Rational rhs;
  RowTag tag = RowTag::F0;
  int edge = -1;    // F-rows
  int vertex = 0;   // box rows (1-based)
  int cycle = -1;   // OC rows: index into the cycle list of the system's graph
  std::vector<int> odd_set;  // OC rows: A as sorted graph edge indices

  Rational lhs(const Point& p) const {
    Rational s = 0;
    for (const Term& t : terms) s += t.coef * p[static_cast<std::size_t>(t.coord)];
    return s;
  }
};

struct HalfspaceSystem {
  int dimension = 0;
  std::vector<std::string> coordinate_names;
  std::vector<Row> rows;

  std::size_t count(RowTag t) const {
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [&](const Row& r) { return r.tag == t; }));
  }
};

inline std::vector<std::string> coordinate_names(const Graph& g) {
  std::vector<std::string> names;
  for (int v = 1; v <= g.num_vertices(); ++v) names.push_back("x" + std::to_string(v));
  for (const Edge& e : g.edges()) names.push_back("y" + std::to_string(e.u) + "_" + std::to_string(e.v));
  return names;
}

namespace detail {

inline Row make_row(std::vector<Term> terms, long rhs, RowTag tag, int edge = -1, int vertex = 0) {
  Row r;
  r.terms = std::move(terms);
  r.rhs = rhs;
  r.tag = tag;
  r.edge = edge;
  r.vertex = vertex;
  return r;
}

inline void push_f_rows(const Graph& g, HalfspaceSystem& s, bool with_f3) {
  for (int e = 0; e < g.num_edges(); ++e) {
    const int xi = g.x_coord(g.edge(e).u), xj = g.x_coord(g.edge(e).v), y = g.y_coord(e);
    s.rows.push_back(make_row({{y, -1}}, 0, RowTag::F0, e));
    s.rows.push_back(make_row({{y, 1}, {xi, -1}}, 0, RowTag::F1, e));
    s.rows.push_back(make_row({{y, 1}, {xj, -1}}, 0, RowTag::F2, e));
    if (with_f3) s.rows.push_back(make_row({{xi, 1}, {xj, 1}, {y, -1}}, 1, RowTag::F3, e));
  }
}

inline void push_x_box(const Graph& g, HalfspaceSystem& s) {
  for (int v = 1; v <= g.num_vertices(); ++v) {
    s.rows.push_back(make_row({{g.x_coord(v), -1}}, 0, RowTag::XLower, -1, v));
    s.rows.push_back(make_row({{g.x_coord(v), 1}}, 1, RowTag::XUpper, -1, v));
  }
}

}  // namespace detail

/// Q(G): F0..F3 for every edge (in edge order), then 0 <= x_v <= 1.
inline HalfspaceSystem build_Q(const Graph& g) {
  HalfspaceSystem s{g.dimension(), coordinate_names(g), {}};
  detail::push_f_rows(g, s, true);
  detail::push_x_box(g, s);
  return s;
}

/// O(G): F0..F2, the x box and y <= 1.
inline HalfspaceSystem build_O(const Graph& g) {
  HalfspaceSystem s{g.dimension(), coordinate_names(g), {}};
  detail::push_f_rows(g, s, false);
  detail::push_x_box(g, s);
  for (int e = 0; e < g.num_edges(); ++e) s.rows.push_back(detail::make_row({{g.y_coord(e), 1}}, 1, RowTag::YUpper, e));
  return s;
}

// ---------------------------------------------------------------------------
// Odd cycle inequalities

struct OddCycleCut {
  Cycle cycle;
  std::vector<int> A;  // sorted graph edge indices, odd cardinality
  std::vector<int> S0, S1, S2;  // cycle vertices meeting 0, 1, 2 edges of A
  Rational rhs;

  bool in_A(int edge) const { return std::binary_search(A.begin(), A.end(), edge); }
};

/// S-sets and rhs of OC(A). Off-cycle vertices belong to S1 and are not listed.
inline OddCycleCut make_cut(const Cycle& c, std::vector<int> A) {
  std::sort(A.begin(), A.end());
  if (std::adjacent_find(A.begin(), A.end()) != A.end()) throw DomainError("odd cycle cut: repeated edge in A");
  if (A.size() % 2 == 0) throw DomainError("odd cycle cut: |A| = " + std::to_string(A.size()) + " is even");
  for (int e : A)
    if (std::find(c.edges.begin(), c.edges.end(), e) == c.edges.end())
      throw DomainError("odd cycle cut: edge index " + std::to_string(e) + " is not on the cycle");
  OddCycleCut cut{c, A, {}, {}, {}, Rational(static_cast<long>((A.size() - 1) / 2))};
  const std::size_t k = c.length();
  for (std::size_t t = 0; t < k; ++t) {
    // vertices[t] lies on edges[t-1] and edges[t].
    int hits = cut.in_A(c.edges[t]) + cut.in_A(c.edges[(t + k - 1) % k]);
    (hits == 0 ? cut.S0 : hits == 1 ? cut.S1 : cut.S2).push_back(c.vertices[t]);
  }
  for (auto* s : {&cut.S0, &cut.S1, &cut.S2}) std::sort(s->begin(), s->end());
  return cut;
}

/// Builds the cut from a bitmask over cycle positions (bit t selects edges[t]).
inline OddCycleCut make_cut_from_mask(const Cycle& c, std::uint64_t mask) {
  std::vector<int> A;
  for (std::size_t t = 0; t < c.length(); ++t)
    if ((mask >> t) & 1) A.push_back(c.edges[t]);
  return make_cut(c, std::move(A));
}

/// sum_{S2} x - sum_{S0} x + sum_{E(C) - A} y - sum_A y <= (|A| - 1) / 2.
inline Row odd_cycle_row(const Graph& g, const OddCycleCut& cut, int cycle_id = -1) {
  Row r;
  r.tag = RowTag::OddCycle;
  r.rhs = cut.rhs;
  r.cycle = cycle_id;
  r.odd_set = cut.A;
  for (int v : cut.S2) r.terms.push_back({g.x_coord(v), 1});
  for (int v : cut.S0) r.terms.push_back({g.x_coord(v), -1});
  for (int e : cut.cycle.edges) r.terms.push_back({g.y_coord(e), cut.in_A(e) ? -1 : 1});
  std::sort(r.terms.begin(), r.terms.end(), [](const Term& a, const Term& b) { return a.coord < b.coord; });
  return r;
}

inline constexpr std::size_t kMaxOddCycleLength = 22;

/// Odd-cardinality position masks of a cycle of length k, ascending.
inline std::vector<std::uint64_t> odd_masks(std::size_t k) {
  if (k > kMaxOddCycleLength)
    throw SizeError("odd-subset enumeration capped at cycle length " + std::to_string(kMaxOddCycleLength) +
                        " (cycle has length " + std::to_string(k) + ")",
                    k);
  std::vector<std::uint64_t> out;
  out.reserve(std::size_t{1} << (k - 1));
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask)
    if (std::popcount(mask) % 2 == 1) out.push_back(mask);
  return out;
}

inline std::vector<OddCycleCut> all_odd_cuts(const Cycle& c) {
  std::vector<OddCycleCut> cuts;
  for (auto mask : odd_masks(c.length())) cuts.push_back(make_cut_from_mask(c, mask));
  return cuts;
}

inline void append_odd_cycle_rows(const Graph& g, HalfspaceSystem& s, const Cycle& c, int cycle_id) {
  for (const auto& cut : all_odd_cuts(c)) s.rows.push_back(odd_cycle_row(g, cut, cycle_id));
}

/// Q(G) refined by odd cycle rows of a cactus graph.
/// R: rows of the big cycle (for a necklace, the cycle carrying the
/// triangles; otherwise the longest cycle, earliest in canonical order).
/// T: rows of every triangle other than the big cycle. P: rows of all cycles.
struct Refinements {
  std::vector<Cycle> cycles;
  std::optional<std::size_t> big_cycle;
  HalfspaceSystem Q, R, T, P;
};

inline std::optional<std::size_t> designated_big_cycle(const Graph& g, const std::vector<Cycle>& cycles) {
  if (cycles.empty()) return std::nullopt;
  if (auto core = necklace_core(g, cycles)) return core;
  std::size_t best = 0;
  for (std::size_t c = 1; c < cycles.size(); ++c)
    if (cycles[c].length() > cycles[best].length()) best = c;
  return best;
}

inline Refinements build_refinements(const Graph& g) {
  Refinements out;
  try {
    out.cycles = enumerate_cycles_cactus(g);
  } catch (const NotCactusError& e) {
    throw CapabilityError(std::string("odd cycle refinements need a cactus graph: ") + e.what());
  }
  out.big_cycle = designated_big_cycle(g, out.cycles);
  out.Q = build_Q(g);
  out.R = out.T = out.P = out.Q;
  for (std::size_t c = 0; c < out.cycles.size(); ++c) {
    const int id = static_cast<int>(c);
    const Cycle& cy = out.cycles[c];
    if (out.big_cycle && c == *out.big_cycle) append_odd_cycle_rows(g, out.R, cy, id);
    if (cy.length() == 3 && !(out.big_cycle && c == *out.big_cycle)) append_odd_cycle_rows(g, out.T, cy, id);
    append_odd_cycle_rows(g, out.P, cy, id);
  }
  return out;
}

/// The fractional vertex cut off by OC(A): x = 1/2, y_e = 1/2 for cycle edges
/// outside A, y_e = 0 otherwise.
inline Point cut_vertex_v0(const OddCycleCut& cut, const Graph& g) {
  Point p(static_cast<std::size_t>(g.dimension()), Rational(0));
  const Rational half(1, 2);
  for (int v = 1; v <= g.num_vertices(); ++v) p[g.x_coord(v)] = half;
  for (int e : cut.cycle.edges)
    if (!cut.in_A(e)) p[g.y_coord(e)] = half;
  return p;
}

// ---------------------------------------------------------------------------
// Membership

enum class MembershipStatus { Inside, Boundary, Outside };

inline const char* status_name(MembershipStatus s) {
  switch (s) {
    case MembershipStatus::Inside: return "inside";
    case MembershipStatus::Boundary: return "boundary";
    case MembershipStatus::Outside: return "outside";
  }
  return "?";
}

struct Membership {
  MembershipStatus status = MembershipStatus::Inside;
  std::vector<std::size_t> violated;
  std::vector<std::size_t> tight;
};

inline Membership membership(const Point& p, const HalfspaceSystem& s) {
  if (static_cast<int>(p.size()) != s.dimension)
    throw DomainError("membership: point has dimension " + std::to_string(p.size()) + ", system has " +
                      std::to_string(s.dimension));
  Membership m;
  for (std::size_t k = 0; k < s.rows.size(); ++k) {
    const int c = cmp(s.rows[k].lhs(p), s.rows[k].rhs);
    if (c > 0) m.violated.push_back(k);
    else if (c == 0) m.tight.push_back(k);
  }
  m.status = !m.violated.empty() ? MembershipStatus::Outside
             : !m.tight.empty()  ? MembershipStatus::Boundary
                                 : MembershipStatus::Inside;
  return m;
}

// ---------------------------------------------------------------------------
// Exact linear algebra

using Matrix = std::vector<std::vector<Rational>>;

/// Determinant by fraction-exact Gaussian elimination.
inline Rational determinant(Matrix a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      Rational f = a[r][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
    }
  }
  det.canonicalize();
  return det;
}

/// Solves the square system a x = b; nullopt if singular.
inline std::optional<std::vector<Rational>> solve(Matrix a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational f = a[r][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t r = 0; r < n; ++r) {
    b[r] /= a[r][r];
    b[r].canonicalize();
  }
  return b;
}

// ---------------------------------------------------------------------------
// Simplex W

/// The simplex cut from Q(C_m) by OC(A). Its facets are OC(A) together with
/// F0, F3 for edges in A and F1, F2 for the other cycle edges; vertex k is
/// the point where every facet except facets[k] is tight, and facets[0] is
/// OC(A), so vertices[0] is v0.
struct SimplexW {
  OddCycleCut cut;
  std::vector<Row> facets;
  std::vector<Point> vertices;  // global coordinate order
  std::vector<int> local_order;  // interleaved x_1, y_12, x_2, ..., y_m1 as global coordinates
};

inline SimplexW simplex_W(const OddCycleCut& cut, const Graph& g) {
  auto cls = classify(g);
  if (cls.tag != GraphTag::Cycle || static_cast<int>(cut.cycle.length()) != g.num_vertices())
    throw DomainError("simplex_W: the graph must be the cycle carrying the cut");
  const int d = g.dimension();
  SimplexW w;
  w.cut = cut;
  w.facets.push_back(odd_cycle_row(g, cut, 0));
  const HalfspaceSystem q = build_Q(g);
  for (int e : cut.cycle.edges) {
    const bool inA = cut.in_A(e);
    for (const Row& r : q.rows)
      if (r.edge == e && (inA ? (r.tag == RowTag::F0 || r.tag == RowTag::F3)
                              : (r.tag == RowTag::F1 || r.tag == RowTag::F2)))
        w.facets.push_back(r);
  }
  if (static_cast<int>(w.facets.size()) != d + 1) throw InternalError("simplex_W: wrong facet count");
  for (std::size_t skip = 0; skip < w.facets.size(); ++skip) {
    Matrix a;
    std::vector<Rational> b;
    for (std::size_t k = 0; k < w.facets.size(); ++k) {
      if (k == skip) continue;
      std::vector<Rational> row(static_cast<std::size_t>(d), Rational(0));
      for (const Term& t : w.facets[k].terms) row[t.coord] = t.coef;
      a.push_back(std::move(row));
      b.push_back(w.facets[k].rhs);
    }
    auto x = solve(std::move(a), std::move(b));
    if (!x) throw InternalError("simplex_W: degenerate facet system");
    w.vertices.push_back(std::move(*x));
  }
  for (std::size_t t = 0; t < cut.cycle.length(); ++t) {
    w.local_order.push_back(g.x_coord(cut.cycle.vertices[t]));
    w.local_order.push_back(g.y_coord(cut.cycle.edges[t]));
  }
  return w;
}

/// det M where row k of M is vertices[k+1] - v0 in the interleaved order.
inline Rational simplex_determinant(const SimplexW& w) {
  Matrix m;
  const Point& v0 = w.vertices[0];
  for (std::size_t k = 1; k < w.vertices.size(); ++k) {
    std::vector<Rational> row;
    for (int c : w.local_order) row.push_back(w.vertices[k][c] - v0[c]);
    m.push_back(std::move(row));
  }
  return determinant(std::move(m));
}

inline Rational exact_volume(const SimplexW& w) {
  Rational det = simplex_determinant(w);
  Rational v = abs(det) / Rational(factorial(w.local_order.size()));
  v.canonicalize();
  return v;
}

// ---------------------------------------------------------------------------
// Export

/// Integers print bare, other values as num/den.
inline std::string rational_text(const Rational& q) {
  return q.get_den() == 1 ? q.get_num().get_str() : to_string(q);
}

inline std::string row_text(const Row& r, int dimension) {
  std::vector<Rational> dense(static_cast<std::size_t>(dimension), Rational(0));
  for (const Term& t : r.terms) dense[t.coord] += t.coef;
  std::string s;
  for (const auto& a : dense) {
    s += rational_text(a);
    s += ' ';
  }
  s += "<= ";
  s += rational_text(r.rhs);
  return s;
}

/// One row per line: "a_1 ... a_d <= b".
inline void write_hrep(std::ostream& os, const HalfspaceSystem& s) {
  for (const Row& r : s.rows) os << row_text(r, s.dimension) << '\n';
}

inline nlohmann::json row_provenance(const Graph& g, const Row& r, std::size_t index) {
  nlohmann::json j{{"index", index}, {"tag", tag_name(r.tag)}};
  if (r.edge >= 0) j["edge"] = {g.edge(r.edge).u, g.edge(r.edge).v};
  if (r.tag == RowTag::XLower || r.tag == RowTag::XUpper) j["vertex"] = r.vertex;
  if (r.tag == RowTag::OddCycle) {
    j["cycle"] = r.cycle;
    nlohmann::json a = nlohmann::json::array();
    for (int e : r.odd_set) a.push_back({g.edge(e).u, g.edge(e).v});
    j["A"] = a;
  }
  return j;
}

inline nlohmann::json hrep_manifest(const Graph& g, const HalfspaceSystem& s, const std::string& polytope,
                                    const std::vector<Cycle>& cycles = {}) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t k = 0; k < s.rows.size(); ++k) rows.push_back(row_provenance(g, s.rows[k], k));
  nlohmann::json cyc = nlohmann::json::array();
  for (const Cycle& c : cycles) cyc.push_back(c.vertices);
  return {{"polytope", polytope},
          {"dimension", s.dimension},
          {"coordinates", s.coordinate_names},
          {"row_count", s.rows.size()},
          {"cycles", cyc},
          {"rows", rows}};
}

}  // namespace bqp
