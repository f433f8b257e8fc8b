#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "bqpvol/errors.hpp"
#include "bqpvol/graph.hpp"
#include "bqpvol/numbers.hpp"
#include "bqpvol/polytope.hpp"

namespace bqp {

// Graph JSON: {"n": int, "edges": [[i, j], ...]}

inline Graph graph_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
    throw DomainError("graph JSON needs keys \"n\" and \"edges\"");
  if (!j["n"].is_number_integer()) throw DomainError("graph JSON: \"n\" must be an integer");
  std::vector<Edge> edges;
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw DomainError("graph JSON: each edge must be a pair of integers");
    edges.push_back({e[0].get<int>(), e[1].get<int>()});
  }
  return Graph(j["n"].get<int>(), std::move(edges));
}

inline nlohmann::json graph_to_json(const Graph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  return {{"n", g.num_vertices()}, {"edges", edges}};
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline nlohmann::json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError("malformed JSON in " + what + ": " + e.what());
  }
}

namespace detail {

inline int parse_int(const std::string& s, const std::string& family) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size())
    throw DomainError("family '" + family + "' needs an integer parameter, got '" + s + "'");
  return v;
}

inline Graph simple_family(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw DomainError("graph spec '" + spec + "' must look like family:param or @file.json");
  const std::string fam = spec.substr(0, colon), arg = spec.substr(colon + 1);
  const int k = parse_int(arg, fam);
  if (fam == "complete") return gen::complete(k);
  if (fam == "star") return gen::star(k);
  if (fam == "path") return gen::path(k);
  if (fam == "cycle") return gen::cycle(k);
  if (fam == "matching") return gen::matching(k);
  if (fam == "necklace") return gen::necklace(k);
  if (fam == "empty") return gen::empty(k);
  if (fam == "triangles") return gen::triangles(k);
  throw DomainError("unknown graph family '" + fam +
                    "' (complete, star, path, cycle, matching, necklace, empty, triangles, union)");
}

}  // namespace detail

/// Graph spec grammar: "family:k", "union:spec,spec,...", "@file.json", or an
/// inline JSON object.
inline Graph parse_graph_spec(const std::string& spec) {
  if (spec.empty()) throw DomainError("empty graph spec");
  if (spec[0] == '@') return graph_from_json(parse_json_text(read_file(spec.substr(1)), spec.substr(1)));
  if (spec[0] == '{') return graph_from_json(parse_json_text(spec, "inline graph"));
  if (spec.rfind("union:", 0) == 0) {
    std::vector<Graph> parts;
    std::stringstream ss(spec.substr(6));
    for (std::string item; std::getline(ss, item, ',');) parts.push_back(detail::simple_family(item));
    if (parts.empty()) throw DomainError("union needs at least one part");
    return gen::disjoint_union(parts);
  }
  return detail::simple_family(spec);
}

// Point JSON: {"x": [...], "y": [...]} with rational strings or numbers; y in
// canonical edge order.

inline Rational rational_from_json(const nlohmann::json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(Integer(v.dump(), 10));
  if (v.is_number_float()) return parse_rational(v.dump());
  throw DomainError("point coordinate must be a rational string or a number");
}

inline Point point_from_json(const nlohmann::json& j, const Graph& g) {
  if (!j.is_object() || !j.contains("x") || !j.contains("y") || !j["x"].is_array() || !j["y"].is_array())
    throw DomainError("point JSON needs arrays \"x\" and \"y\"");
  if (static_cast<int>(j["x"].size()) != g.num_vertices() || static_cast<int>(j["y"].size()) != g.num_edges())
    throw DomainError("point JSON has " + std::to_string(j["x"].size()) + " x and " +
                      std::to_string(j["y"].size()) + " y entries; graph needs " +
                      std::to_string(g.num_vertices()) + " and " + std::to_string(g.num_edges()));
  Point p;
  for (const auto& v : j["x"]) p.push_back(rational_from_json(v));
  for (const auto& v : j["y"]) p.push_back(rational_from_json(v));
  return p;
}

inline nlohmann::json point_to_json(const Point& p, const Graph& g) {
  nlohmann::json x = nlohmann::json::array(), y = nlohmann::json::array();
  for (int k = 0; k < g.num_vertices(); ++k) x.push_back(to_string(p[k]));
  for (int k = g.num_vertices(); k < g.dimension(); ++k) y.push_back(to_string(p[k]));
  return {{"x", x}, {"y", y}};
}

inline Point parse_point_spec(const std::string& spec, const Graph& g) {
  if (!spec.empty() && spec[0] == '@') return point_from_json(parse_json_text(read_file(spec.substr(1)), spec.substr(1)), g);
  return point_from_json(parse_json_text(spec, "point"), g);
}

}  // namespace bqp
