#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"

#include "bqpvol/errors.hpp"
#include "bqpvol/graph.hpp"
#include "bqpvol/numbers.hpp"

namespace bqp {

/// Incidence poset of a graph. Element i < n is x_{i+1}; element n + e is y_e.
/// Each y_e lies below the x-elements of both endpoints of edge e.
class IncidencePoset {
 public:
  IncidencePoset() = default;

  explicit IncidencePoset(Graph g) : g_(std::move(g)) {
    const int n = g_.num_vertices();
    lower_.assign(static_cast<std::size_t>(size()), {});
    upper_.assign(static_cast<std::size_t>(size()), {});
    for (int e = 0; e < g_.num_edges(); ++e) {
      const Edge& ed = g_.edge(e);
      for (int v : {ed.u, ed.v}) {
        covers_.emplace_back(n + e, v - 1);
        lower_[v - 1].push_back(n + e);
        upper_[n + e].push_back(v - 1);
      }
    }
  }

  const Graph& graph() const { return g_; }
  int size() const { return g_.dimension(); }
  int num_x() const { return g_.num_vertices(); }
  int num_y() const { return g_.num_edges(); }
  bool is_x(int element) const { return element < num_x(); }

  /// Cover pairs (lower, upper).
  const std::vector<std::pair<int, int>>& covers() const { return covers_; }
  const std::vector<int>& lower_covers(int element) const { return lower_.at(static_cast<std::size_t>(element)); }
  const std::vector<int>& upper_covers(int element) const { return upper_.at(static_cast<std::size_t>(element)); }

  std::string element_name(int element) const {
    if (is_x(element)) return "x" + std::to_string(element + 1);
    const Edge& e = g_.edge(element - num_x());
    return "y" + std::to_string(e.u) + "_" + std::to_string(e.v);
  }

  nlohmann::json to_json() const {
    nlohmann::json elements = nlohmann::json::array();
    for (int k = 0; k < size(); ++k)
      elements.push_back({{"id", k}, {"name", element_name(k)}, {"kind", is_x(k) ? "x" : "y"}});
    nlohmann::json cov = nlohmann::json::array();
    for (auto [lo, hi] : covers_) cov.push_back({lo, hi});
    return {{"size", size()}, {"elements", elements}, {"covers", cov}};
  }

 private:
  Graph g_;
  std::vector<std::pair<int, int>> covers_;
  std::vector<std::vector<int>> lower_, upper_;
};

inline IncidencePoset incidence_poset(const Graph& g) { return IncidencePoset(g); }

enum class LEEngine { BruteForce, IdealDP, Forest, ClosedForm };

inline const char* engine_name(LEEngine e) {
  switch (e) {
    case LEEngine::BruteForce: return "bruteforce";
    case LEEngine::IdealDP: return "ideal-dp";
    case LEEngine::Forest: return "forest";
    case LEEngine::ClosedForm: return "closed-form";
  }
  return "unknown";
}

struct LECount {
  Integer value;
  LEEngine engine;
};

inline constexpr int kDefaultBruteForceCap = 12;
inline constexpr std::size_t kDefaultIdealCap = 50'000'000;

// ---------------------------------------------------------------------------
// Brute force

/// Enumerates orderings position by position, abandoning a prefix as soon as
/// it places an element before one of its lower covers.
inline LECount count_le_bruteforce(const IncidencePoset& p, int cap = kDefaultBruteForceCap) {
  const int d = p.size();
  if (d > cap)
    throw SizeError("bruteforce: d = " + std::to_string(d) + " exceeds cap " + std::to_string(cap) +
                        " (raise --cap-bruteforce or use another engine)",
                    static_cast<std::size_t>(d));
  std::vector<int> missing(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) missing[k] = static_cast<int>(p.lower_covers(k).size());
  std::vector<char> used(static_cast<std::size_t>(d), 0);
  std::uint64_t count = 0;
  auto rec = [&](auto& self, int placed) -> void {
    if (placed == d) {
      ++count;
      return;
    }
    for (int k = 0; k < d; ++k) {
      if (used[k] || missing[k] > 0) continue;
      used[k] = 1;
      for (int u : p.upper_covers(k)) --missing[u];
      self(self, placed + 1);
      for (int u : p.upper_covers(k)) ++missing[u];
      used[k] = 0;
    }
  };
  rec(rec, 0);
  Integer v;
  mpz_import(v.get_mpz_t(), 1, 1, sizeof count, 0, 0, &count);
  return {v, LEEngine::BruteForce};
}

// ---------------------------------------------------------------------------
// Ideal DP

namespace detail {

/// Per-vertex neighbour masks of the underlying graph (0-based vertex bits).
inline std::vector<std::uint64_t> neighbour_masks(const Graph& g) {
  std::vector<std::uint64_t> nb(static_cast<std::size_t>(g.num_vertices()), 0);
  for (const Edge& e : g.edges()) {
    nb[e.u - 1] |= std::uint64_t{1} << (e.v - 1);
    nb[e.v - 1] |= std::uint64_t{1} << (e.u - 1);
  }
  return nb;
}

/// Edges with no endpoint in X.
inline int free_capacity(const Graph& g, std::uint64_t X) {
  int c = 0;
  for (const Edge& e : g.edges())
    if (!((X >> (e.u - 1)) & 1) && !((X >> (e.v - 1)) & 1)) ++c;
  return c;
}

/// Edges at vertex v whose other endpoint lies outside X (X not containing v).
inline int released(const std::vector<std::uint64_t>& nb, int v, std::uint64_t X) {
  return std::popcount(nb[v] & ~X);
}

}  // namespace detail

/// Counts linear extensions over order ideals. An ideal is determined by its
/// set X of x-elements together with the y-elements it contains; the y's
/// below X are forced and the remaining "free" y's are isolated, so
/// e(ideal) depends only on (X, f) with f the number of free y's:
///   e(0, f) = f!,  e(X, f) = sum_{v in X} e(X - v, f + r(v)) + f e(X, f - 1),
/// where r(v) counts edges at v whose other end is outside X - v.
/// Layers of equal |X| are built in turn and discarded once used.
inline LECount count_le_ideal_dp(const IncidencePoset& p, std::size_t cap = kDefaultIdealCap) {
  const Graph& g = p.graph();
  const int n = g.num_vertices();
  if (n > 63)
    throw SizeError("ideal-dp: more than 63 vertices is not supported", 0);
  const auto nb = detail::neighbour_masks(g);

  using Layer = std::unordered_map<std::uint64_t, std::vector<Integer>>;
  Layer prev;
  {
    const int fmax = g.num_edges();
    std::vector<Integer> row(static_cast<std::size_t>(fmax) + 1);
    row[0] = 1;
    for (int f = 1; f <= fmax; ++f) row[f] = row[f - 1] * f;
    prev.emplace(0, std::move(row));
  }
  std::size_t entries = prev.begin()->second.size();

  for (int k = 1; k <= n; ++k) {
    Layer cur;
    for (const auto& [base, _] : prev)
      for (int v = 0; v < n; ++v)
        if (!((base >> v) & 1)) cur.try_emplace(base | (std::uint64_t{1} << v));
    for (auto& [X, row] : cur) {
      const int fmax = detail::free_capacity(g, X);
      entries += static_cast<std::size_t>(fmax) + 1;
      if (entries > cap)
        throw SizeError("ideal-dp: memo entries exceeded cap " + std::to_string(cap) +
                            " (raise --cap-ideals)",
                        entries);
      row.assign(static_cast<std::size_t>(fmax) + 1, Integer(0));
      for (int v = 0; v < n; ++v) {
        if (!((X >> v) & 1)) continue;
        const std::uint64_t Y = X & ~(std::uint64_t{1} << v);
        const int r = detail::released(nb, v, Y);
        const auto& src = prev.at(Y);
        for (int f = 0; f <= fmax; ++f) row[f] += src[static_cast<std::size_t>(f + r)];
      }
      for (int f = 1; f <= fmax; ++f) row[f] += row[f - 1] * f;
    }
    prev = std::move(cur);
  }
  return {prev.begin()->second.at(0), LEEngine::IdealDP};
}

// ---------------------------------------------------------------------------
// Forest engine

namespace detail {

/// Binomial table C(a, b) for a <= N.
class BinomialTable {
 public:
  explicit BinomialTable(int N) : N_(N), t_(static_cast<std::size_t>(N + 1) * (N + 1)) {
    for (int a = 0; a <= N; ++a) {
      at(a, 0) = 1;
      for (int b = 1; b <= a; ++b) at(a, b) = at(a - 1, b - 1) + (b <= a - 1 ? at(a - 1, b) : Integer(0));
    }
  }
  const Integer& operator()(int a, int b) const { return t_[static_cast<std::size_t>(a) * (N_ + 1) + b]; }

 private:
  Integer& at(int a, int b) { return t_[static_cast<std::size_t>(a) * (N_ + 1) + b]; }
  int N_;
  std::vector<Integer> t_;
};

}  // namespace detail

/// Linear extensions of a poset whose cover graph is a forest. Each tree is
/// processed from the leaves: a node keeps h[p], the number of extensions of
/// its subtree with the node itself at position p, and absorbs one child at
/// a time by counting interleavings that respect the direction of the cover
/// between node and child. Trees then combine by a multinomial coefficient.
inline LECount count_le_forest(const IncidencePoset& p) {
  const Graph& g = p.graph();
  if (!is_forest(g)) throw DomainError("forest engine: cover graph of the poset is not a forest");
  const int d = p.size();
  detail::BinomialTable C(d);

  // Undirected cover adjacency: (neighbour, neighbour_is_below).
  std::vector<std::vector<std::pair<int, bool>>> adj(static_cast<std::size_t>(d));
  for (auto [lo, hi] : p.covers()) {
    adj[hi].push_back({lo, true});
    adj[lo].push_back({hi, false});
  }

  std::vector<std::vector<Integer>> h(static_cast<std::size_t>(d));
  std::vector<int> parent(static_cast<std::size_t>(d), -2);
  Integer total = 1;
  int placed = 0;

  for (int root = 0; root < d; ++root) {
    if (parent[root] != -2) continue;
    // Iterative DFS order, then process in reverse (children before parents).
    std::vector<int> order{root};
    parent[root] = -1;
    for (std::size_t k = 0; k < order.size(); ++k)
      for (auto [w, _] : adj[order[k]])
        if (parent[w] == -2) {
          parent[w] = order[k];
          order.push_back(w);
        }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const int v = *it;
      std::vector<Integer> hv{Integer(0), Integer(1)};  // 1-based positions
      int s1 = 1;
      for (auto [c, c_below] : adj[v]) {
        if (c == parent[v]) continue;
        const auto& hc = h[c];
        const int s2 = static_cast<int>(hc.size()) - 1;
        // pre[t] = sum_{j<=t} hc[j]
        std::vector<Integer> pre(static_cast<std::size_t>(s2) + 1, Integer(0));
        for (int j = 1; j <= s2; ++j) pre[j] = pre[j - 1] + hc[j];
        const Integer& all = pre[s2];
        std::vector<Integer> out(static_cast<std::size_t>(s1 + s2) + 1, Integer(0));
        for (int pos = 1; pos <= s1 + s2; ++pos)
          for (int i = std::max(1, pos - s2); i <= std::min(s1, pos); ++i) {
            if (hv[i] == 0) continue;
            const int t = pos - i;
            Integer weight = c_below ? pre[t] : all - pre[t];
            if (weight == 0) continue;
            out[pos] += hv[i] * C(pos - 1, i - 1) * C(s1 + s2 - pos, s1 - i) * weight;
          }
        hv = std::move(out);
        s1 += s2;
        h[c].clear();
        h[c].shrink_to_fit();
      }
      h[v] = std::move(hv);
    }
    Integer tree = 0;
    for (const Integer& x : h[root]) tree += x;
    const int s = static_cast<int>(h[root].size()) - 1;
    placed += s;
    total *= tree * C(placed, s);
    h[root].clear();
  }
  return {total, LEEngine::Forest};
}

}  // namespace bqp
