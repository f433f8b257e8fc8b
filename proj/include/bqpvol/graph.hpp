#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bqpvol/errors.hpp"

namespace bqp {

/// Undirected edge with u < v, vertices 1-based.
struct Edge {
  int u = 0;
  int v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Incidence {
  int neighbor;
  int edge;  // index into Graph::edges()
};

/// Simple undirected graph on vertices 1..n with a canonical (sorted) edge list.
///
/// The edge order fixes the polytope coordinate order: x_1..x_n occupy
/// coordinates 0..n-1 and y_e occupies coordinate n + e.
class Graph {
 public:
  Graph() = default;

  /// Normalizes each pair to (min, max) and sorts. Rejects loops, duplicates
  /// and endpoints outside 1..n.
  Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n < 0) throw DomainError("graph: negative vertex count");
    for (Edge& e : edges_) {
      if (e.u > e.v) std::swap(e.u, e.v);
      if (e.u == e.v) throw DomainError("graph: self-loop at vertex " + std::to_string(e.u));
      if (e.u < 1 || e.v > n)
        throw DomainError("graph: edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                          ") has an endpoint outside 1.." + std::to_string(n));
    }
    std::sort(edges_.begin(), edges_.end());
    for (std::size_t k = 1; k < edges_.size(); ++k)
      if (edges_[k] == edges_[k - 1])
        throw DomainError("graph: duplicate edge (" + std::to_string(edges_[k].u) + "," +
                          std::to_string(edges_[k].v) + ")");
    adj_.assign(static_cast<std::size_t>(n_) + 1, {});
    for (int k = 0; k < num_edges(); ++k) {
      adj_[edges_[k].u].push_back({edges_[k].v, k});
      adj_[edges_[k].v].push_back({edges_[k].u, k});
    }
  }

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int dimension() const { return n_ + num_edges(); }

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int k) const { return edges_.at(static_cast<std::size_t>(k)); }
  const std::vector<Incidence>& incident(int v) const { return adj_.at(static_cast<std::size_t>(v)); }
  int degree(int v) const { return static_cast<int>(incident(v).size()); }

  std::optional<int> edge_index(int a, int b) const {
    Edge key{std::min(a, b), std::max(a, b)};
    auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
    if (it == edges_.end() || *it != key) return std::nullopt;
    return static_cast<int>(it - edges_.begin());
  }

  int x_coord(int vertex) const { return vertex - 1; }
  int y_coord(int edge) const { return n_ + edge; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adj_;
};

/// A simple cycle: vertices[t] and vertices[t+1 mod k] are joined by edges[t].
/// Canonical orientation starts at the smallest vertex and proceeds towards
/// its smaller cycle neighbour.
struct Cycle {
  std::vector<int> vertices;
  std::vector<int> edges;

  std::size_t length() const { return edges.size(); }
  friend bool operator==(const Cycle&, const Cycle&) = default;
};

// ---------------------------------------------------------------------------
// Generators

namespace gen {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

inline Graph empty(int n) {
  require(n >= 0, "empty: n must be >= 0");
  return Graph(n, {});
}

inline Graph complete(int n) {
  require(n >= 1, "complete: n must be >= 1");
  std::vector<Edge> e;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) e.push_back({i, j});
  return Graph(n, std::move(e));
}

/// Centre 1, leaves 2..m+1.
inline Graph star(int m) {
  require(m >= 1, "star: m must be >= 1");
  std::vector<Edge> e;
  for (int k = 2; k <= m + 1; ++k) e.push_back({1, k});
  return Graph(m + 1, std::move(e));
}

inline Graph path(int m) {
  require(m >= 1, "path: m must be >= 1");
  std::vector<Edge> e;
  for (int k = 1; k <= m; ++k) e.push_back({k, k + 1});
  return Graph(m + 1, std::move(e));
}

inline Graph cycle(int m) {
  require(m >= 3, "cycle: m must be >= 3");
  std::vector<Edge> e;
  for (int k = 1; k < m; ++k) e.push_back({k, k + 1});
  e.push_back({1, m});
  return Graph(m, std::move(e));
}

inline Graph matching(int m) {
  require(m >= 1, "matching: m must be >= 1");
  std::vector<Edge> e;
  for (int k = 1; k <= m; ++k) e.push_back({2 * k - 1, 2 * k});
  return Graph(2 * m, std::move(e));
}

/// Cycle on 1..n; the triangle hanging from cycle vertex i uses n+2i-1, n+2i.
inline Graph necklace(int n) {
  require(n >= 3, "necklace: n must be >= 3");
  std::vector<Edge> e;
  for (int k = 1; k < n; ++k) e.push_back({k, k + 1});
  e.push_back({1, n});
  for (int i = 1; i <= n; ++i) {
    int a = n + 2 * i - 1, b = n + 2 * i;
    e.push_back({i, a});
    e.push_back({i, b});
    e.push_back({a, b});
  }
  return Graph(3 * n, std::move(e));
}

/// Relabels parts consecutively in the given order.
inline Graph disjoint_union(std::span<const Graph> parts) {
  int offset = 0;
  std::vector<Edge> e;
  for (const Graph& g : parts) {
    for (const Edge& x : g.edges()) e.push_back({x.u + offset, x.v + offset});
    offset += g.num_vertices();
  }
  return Graph(offset, std::move(e));
}

inline Graph triangles(int copies) {
  require(copies >= 1, "triangles: need at least one copy");
  std::vector<Graph> parts(static_cast<std::size_t>(copies), cycle(3));
  return disjoint_union(parts);
}

}  // namespace gen

// ---------------------------------------------------------------------------
// Structure

/// Connected components as sorted vertex lists, ordered by smallest vertex.
inline std::vector<std::vector<int>> components(const Graph& g) {
  std::vector<int> comp(static_cast<std::size_t>(g.num_vertices()) + 1, -1);
  std::vector<std::vector<int>> out;
  for (int s = 1; s <= g.num_vertices(); ++s) {
    if (comp[s] >= 0) continue;
    int id = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<int> stack{s};
    comp[s] = id;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      out.back().push_back(v);
      for (const Incidence& inc : g.incident(v))
        if (comp[inc.neighbor] < 0) {
          comp[inc.neighbor] = id;
          stack.push_back(inc.neighbor);
        }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

/// The subgraph induced by `vertices` (sorted), relabeled 1..k in order.
inline Graph induced_subgraph(const Graph& g, std::span<const int> vertices) {
  std::vector<int> label(static_cast<std::size_t>(g.num_vertices()) + 1, 0);
  for (std::size_t k = 0; k < vertices.size(); ++k) label[vertices[k]] = static_cast<int>(k) + 1;
  std::vector<Edge> e;
  for (const Edge& x : g.edges())
    if (label[x.u] && label[x.v]) e.push_back({label[x.u], label[x.v]});
  return Graph(static_cast<int>(vertices.size()), std::move(e));
}

inline bool is_forest(const Graph& g) {
  return g.num_edges() + static_cast<int>(components(g).size()) == g.num_vertices();
}

/// Thrown when a graph has an edge on two distinct simple cycles. The two
/// closing edges together with the shared edge witness a diamond minor.
class NotCactusError : public DomainError {
 public:
  NotCactusError(Edge shared, Edge closing_a, Edge closing_b)
      : DomainError(message(shared, closing_a, closing_b)),
        shared_(shared), closing_a_(closing_a), closing_b_(closing_b) {}

  Edge shared_edge() const { return shared_; }
  std::pair<Edge, Edge> witness() const { return {closing_a_, closing_b_}; }

 private:
  static std::string name(Edge e) {
    return "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
  }
  static std::string message(Edge s, Edge a, Edge b) {
    return "graph is not a cactus: edge " + name(s) + " lies on the cycles closed by " + name(a) +
           " and " + name(b) + " (diamond minor)";
  }
  Edge shared_, closing_a_, closing_b_;
};

namespace detail {

inline Cycle canonical_cycle(const Graph& g, std::vector<int> verts) {
  auto it = std::min_element(verts.begin(), verts.end());
  std::rotate(verts.begin(), it, verts.end());
  if (verts.size() > 2 && verts.back() < verts[1]) std::reverse(verts.begin() + 1, verts.end());
  Cycle c;
  c.vertices = verts;
  for (std::size_t t = 0; t < verts.size(); ++t) {
    auto e = g.edge_index(verts[t], verts[(t + 1) % verts.size()]);
    if (!e) throw InternalError("cycle walk used a non-edge");
    c.edges.push_back(*e);
  }
  return c;
}

}  // namespace detail

/// Simple cycles of a cactus forest, one entry each, in canonical order.
/// Every non-tree edge of a DFS forest closes exactly one cycle; in a cactus
/// those cycles are edge-disjoint, which is checked while walking them.
inline std::vector<Cycle> enumerate_cycles_cactus(const Graph& g) {
  const int n = g.num_vertices();
  std::vector<int> parent(static_cast<std::size_t>(n) + 1, 0), parent_edge(static_cast<std::size_t>(n) + 1, -1),
      depth(static_cast<std::size_t>(n) + 1, -1);
  std::vector<int> owner(static_cast<std::size_t>(g.num_edges()), -1);  // closing edge claiming a tree edge
  std::vector<std::vector<int>> raw;

  for (int root = 1; root <= n; ++root) {
    if (depth[root] >= 0) continue;
    depth[root] = 0;
    std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      const auto& inc = g.incident(v);
      if (next == inc.size()) {
        stack.pop_back();
        continue;
      }
      Incidence step = inc[next++];
      if (step.edge == parent_edge[v]) continue;
      int w = step.neighbor;
      if (depth[w] < 0) {
        depth[w] = depth[v] + 1;
        parent[w] = v;
        parent_edge[w] = step.edge;
        stack.push_back({w, 0});
      } else if (depth[w] < depth[v]) {
        // Back edge v -> ancestor w closes a cycle.
        std::vector<int> verts{v};
        for (int u = v; u != w; u = parent[u]) {
          int te = parent_edge[u];
          if (owner[te] >= 0) throw NotCactusError(g.edge(te), g.edge(owner[te]), g.edge(step.edge));
          owner[te] = step.edge;
          verts.push_back(parent[u]);
        }
        raw.push_back(std::move(verts));
      }
    }
  }
  std::vector<Cycle> cycles;
  cycles.reserve(raw.size());
  for (auto& r : raw) cycles.push_back(detail::canonical_cycle(g, std::move(r)));
  std::sort(cycles.begin(), cycles.end(),
            [](const Cycle& a, const Cycle& b) { return a.vertices < b.vertices; });
  return cycles;
}

inline bool is_cactus(const Graph& g) {
  try {
    enumerate_cycles_cactus(g);
    return true;
  } catch (const NotCactusError&) {
    return false;
  }
}

/// For a necklace, the index (into `cycles`) of the cycle whose vertices all
/// carry a hanging triangle; nullopt if `g` is not a necklace.
inline std::optional<std::size_t> necklace_core(const Graph& g, const std::vector<Cycle>& cycles) {
  const int n3 = g.num_vertices();
  if (n3 < 9 || n3 % 3 != 0) return std::nullopt;
  const int n = n3 / 3;
  if (g.num_edges() != 4 * n || static_cast<int>(cycles.size()) != n + 1) return std::nullopt;
  std::optional<std::size_t> core;
  for (std::size_t c = 0; c < cycles.size(); ++c) {
    const Cycle& cy = cycles[c];
    if (static_cast<int>(cy.length()) != n) continue;
    if (std::all_of(cy.vertices.begin(), cy.vertices.end(), [&](int v) { return g.degree(v) == 4; })) {
      if (core) return std::nullopt;
      core = c;
    }
  }
  if (!core) return std::nullopt;
  std::vector<int> on_core(static_cast<std::size_t>(n3) + 1, 0);
  for (int v : cycles[*core].vertices) on_core[v] = 1;
  std::vector<int> hung(static_cast<std::size_t>(n3) + 1, 0);
  for (std::size_t c = 0; c < cycles.size(); ++c) {
    if (c == *core) continue;
    const Cycle& cy = cycles[c];
    if (cy.length() != 3) return std::nullopt;
    int core_count = 0;
    for (int v : cy.vertices) {
      if (on_core[v]) {
        ++core_count;
        ++hung[v];
      } else if (g.degree(v) != 2) {
        return std::nullopt;
      }
    }
    if (core_count != 1) return std::nullopt;
  }
  for (int v : cycles[*core].vertices)
    if (hung[v] != 1) return std::nullopt;
  return core;
}

// ---------------------------------------------------------------------------
// Classification

enum class GraphTag { Empty, Matching, Star, Path, Cycle, Forest, Cactus, CompleteGraph, Necklace, General };

struct GraphClass {
  GraphTag tag = GraphTag::General;
  int param = 0;                 // m for Matching/Star/Path/Cycle, n for CompleteGraph/Necklace
  bool star_equivalent = false;  // path that is also a star (P_1, P_2)
  bool forest = false;
  bool cactus = false;
  std::vector<std::vector<int>> components;

  std::string name() const {
    auto with = [&](const char* s) { return std::string(s) + "(" + std::to_string(param) + ")"; };
    switch (tag) {
      case GraphTag::Empty: return "Empty";
      case GraphTag::Matching: return with("Matching");
      case GraphTag::Star: return with("Star");
      case GraphTag::Path: return with("Path");
      case GraphTag::Cycle: return with("Cycle");
      case GraphTag::Forest: return "Forest";
      case GraphTag::Cactus: return "Cactus";
      case GraphTag::CompleteGraph: return with("CompleteGraph");
      case GraphTag::Necklace: return with("Necklace");
      case GraphTag::General: return "General";
    }
    return "General";
  }
};

/// Shape of a connected graph with at least one edge, or nullopt if it is not
/// one of star / path / cycle / complete.
struct ComponentShape {
  GraphTag tag;
  int param;
  bool star_equivalent;
};

inline std::optional<ComponentShape> component_shape(const Graph& h) {
  const int n = h.num_vertices(), m = h.num_edges();
  if (m == 0) return std::nullopt;
  int max_deg = 0;
  for (int v = 1; v <= n; ++v) max_deg = std::max(max_deg, h.degree(v));
  if (m == n - 1) {
    if (max_deg <= 2) return ComponentShape{GraphTag::Path, m, m <= 2};
    if (max_deg == m) return ComponentShape{GraphTag::Star, m, false};
    return std::nullopt;
  }
  if (m == n && max_deg == 2) return ComponentShape{GraphTag::Cycle, m, false};
  if (n >= 4 && 2 * m == n * (n - 1)) return ComponentShape{GraphTag::CompleteGraph, n, false};
  return std::nullopt;
}

inline GraphClass classify(const Graph& g) {
  GraphClass out;
  out.components = components(g);
  out.forest = is_forest(g);
  std::optional<std::vector<Cycle>> cycles;
  try {
    cycles = enumerate_cycles_cactus(g);
    out.cactus = true;
  } catch (const NotCactusError&) {
    out.cactus = false;
  }
  const int m = g.num_edges();
  if (m == 0) {
    out.tag = GraphTag::Empty;
    return out;
  }
  std::vector<const std::vector<int>*> nontrivial;
  for (const auto& c : out.components)
    if (c.size() > 1) nontrivial.push_back(&c);

  auto fallback = [&] {
    out.tag = out.forest ? GraphTag::Forest : out.cactus ? GraphTag::Cactus : GraphTag::General;
  };

  if (nontrivial.size() > 1) {
    bool all_k2 = std::all_of(nontrivial.begin(), nontrivial.end(), [](auto* c) { return c->size() == 2; });
    if (all_k2) {
      out.tag = GraphTag::Matching;
      out.param = m;
    } else {
      fallback();
    }
    return out;
  }
  Graph h = induced_subgraph(g, *nontrivial.front());
  if (auto shape = component_shape(h)) {
    out.tag = shape->tag;
    out.param = shape->param;
    out.star_equivalent = shape->star_equivalent;
    return out;
  }
  if (out.cactus) {
    auto hc = enumerate_cycles_cactus(h);
    if (necklace_core(h, hc)) {
      out.tag = GraphTag::Necklace;
      out.param = h.num_vertices() / 3;
      return out;
    }
  }
  fallback();
  return out;
}

}  // namespace bqp
