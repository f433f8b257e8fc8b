#pragma once

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bqpvol/bqpvol.hpp"

namespace bqp::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kDomain = 2,
  kSize = 3,
  kCapability = 4,
  kPrecondition = 5,
  kUsage = 64,
};

enum class Format { Pretty, Json, Csv };

struct RunConfig {
  std::string command;
  std::string graph;
  std::string polytope = "Q";
  std::string engine = "auto";
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = kDefaultSeed;
  Format format = Format::Pretty;
  int cap_bruteforce = kDefaultBruteForceCap;
  std::size_t cap_ideals = kDefaultIdealCap;
  std::string out;
  unsigned threads = 1;
  // asymptotics
  std::string family;
  int from = 1;
  int to = 20;
  // necklace
  int n_from = 4;
  int n_to = 4;
  // separate
  std::string point;
  std::string mode = "first";
  // export-hrep
  std::string manifest;
  // lecount
  bool dump_poset = false;
};

inline constexpr int kDigits = 15;

namespace detail {

inline std::string approx(long double v) { return format_decimal(v, kDigits); }

inline long double rational_value(const Rational& q) {
  if (q == 0) return 0.0L;
  const long double mag = std::exp(log_rational(abs(q)));
  return q < 0 ? -mag : mag;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char c : s) {
    if (c == '"') o += '"';
    o += c;
  }
  return o + "\"";
}

inline std::string edge_list_text(const Graph& g, const std::vector<int>& edges) {
  std::string s = "{";
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(g.edge(edges[k]).u) + "-" + std::to_string(g.edge(edges[k]).v);
  }
  return s + "}";
}

inline nlohmann::json edge_list_json(const Graph& g, const std::vector<int>& edges) {
  nlohmann::json a = nlohmann::json::array();
  for (int e : edges) a.push_back({g.edge(e).u, g.edge(e).v});
  return a;
}

inline nlohmann::json estimate_json(const MCEstimate& e) {
  return {{"hits", e.hits},
          {"samples", e.samples},
          {"estimate", e.estimate},
          {"stderr", e.std_error},
          {"dth_root", e.dth_root},
          {"dth_root_stderr", e.dth_root_stderr}};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Commands. Each writes its report to `out`.

inline VolumeResult exact_volume_for(const Graph& g, PolytopeKind kind, const std::string& engine,
                                     const RunConfig& cfg) {
  auto via_le = [&](LEEngine which) {
    if (kind == PolytopeKind::P || kind == PolytopeKind::QMinusP) {
      if (!is_forest(g))
        throw CapabilityError("the LE-count route gives O and Q; P needs a closed form or a forest");
    } else if (kind != PolytopeKind::O && kind != PolytopeKind::Q) {
      throw CapabilityError(std::string("the LE-count route does not cover polytope ") + polytope_name(kind) +
                            "; use --engine mc");
    }
    const auto p = incidence_poset(g);
    LECount e = which == LEEngine::BruteForce ? count_le_bruteforce(p, cfg.cap_bruteforce)
                : which == LEEngine::Forest   ? count_le_forest(p)
                                              : count_le_ideal_dp(p, cfg.cap_ideals);
    VolumeResult o = vol_O_from_lecount(g, e);
    if (kind == PolytopeKind::O) return o;
    VolumeResult q = vol_Q_from_O(o, g.num_edges());
    if (kind == PolytopeKind::P) q.polytope = PolytopeKind::P;  // forests: P = Q
    if (kind == PolytopeKind::QMinusP) return make_volume(kind, Rational(0), q.dimension, q.method);
    return q;
  };
  if (engine == "closed-form") return vol_closed_form(g, kind);
  if (engine == "bruteforce") return via_le(LEEngine::BruteForce);
  if (engine == "forest") return via_le(LEEngine::Forest);
  if (engine == "ideal-dp") return via_le(LEEngine::IdealDP);
  if (engine != "auto") throw DomainError("unknown engine '" + engine + "'");
  try {
    return vol_closed_form(g, kind);
  } catch (const CapabilityError&) {
  }
  if (is_forest(g)) return via_le(LEEngine::Forest);
  try {
    return via_le(LEEngine::IdealDP);
  } catch (const CapabilityError& e) {
    const std::string msg = e.what();
    throw CapabilityError(msg.find("--engine mc") == std::string::npos ? msg + " (try --engine mc)" : msg);
  } catch (const SizeError& e) {
    throw SizeError(std::string(e.what()) + "; try --engine mc", e.reached());
  }
}

inline int cmd_volume(const RunConfig& cfg, std::ostream& out) {
  const Graph g = parse_graph_spec(cfg.graph);
  const PolytopeKind kind = parse_polytope(cfg.polytope);
  if (cfg.engine == "mc" || cfg.engine == "mc-q") {
    if (kind == PolytopeKind::QMinusP) throw CapabilityError("Monte-Carlo engines estimate O, Q, R, T or P");
    HalfspaceSystem sys;
    if (kind == PolytopeKind::O) sys = build_O(g);
    else if (kind == PolytopeKind::Q) sys = build_Q(g);
    else {
      auto ref = build_refinements(g);
      sys = kind == PolytopeKind::R ? ref.R : kind == PolytopeKind::T ? ref.T : ref.P;
    }
    MCEstimate e;
    std::string method = "mc_box";
    if (cfg.engine == "mc-q") {
      if (kind == PolytopeKind::O) throw CapabilityError("--engine mc-q samples inside Q; O is not contained in Q");
      const VolumeResult q = exact_volume_for(g, PolytopeKind::Q, "auto", cfg);
      e = estimate_volumes_in_Q(g, q.value, {&sys}, cfg.samples, cfg.seed, cfg.threads).front();
      method = "mc_in_Q";
    } else {
      e = estimate_volume(sys, cfg.samples, cfg.seed, cfg.threads);
    }
    switch (cfg.format) {
      case Format::Json: {
        auto j = detail::estimate_json(e);
        j["graph"] = cfg.graph;
        j["polytope"] = polytope_name(kind);
        j["method"] = method;
        j["seed"] = e.seed;
        j["d"] = e.dimension;
        out << j.dump(2) << '\n';
        break;
      }
      case Format::Csv:
        out << "graph,polytope,method,d,samples,seed,hits,estimate,stderr,dth_root,dth_root_stderr\n"
            << detail::csv_escape(cfg.graph) << ',' << polytope_name(kind) << ',' << method << ',' << e.dimension
            << ',' << e.samples << ',' << e.seed << ',' << e.hits << ',' << detail::approx(e.estimate) << ','
            << detail::approx(e.std_error) << ',' << detail::approx(e.dth_root) << ','
            << detail::approx(e.dth_root_stderr) << '\n';
        break;
      case Format::Pretty:
        out << "graph      " << cfg.graph << " (n=" << g.num_vertices() << ", m=" << g.num_edges()
            << ", d=" << e.dimension << ")\n"
            << "polytope   " << polytope_name(kind) << "\n"
            << "method     " << method << " (samples=" << e.samples << ", seed=" << e.seed << ")\n"
            << "hits       " << e.hits << "\n"
            << "estimate   " << detail::approx(e.estimate) << " +- " << detail::approx(e.std_error)
            << " (approx)\n"
            << "dth_root   " << detail::approx(e.dth_root) << " +- " << detail::approx(e.dth_root_stderr)
            << " (approx)\n";
        break;
    }
    return kOk;
  }
  const VolumeResult v = exact_volume_for(g, kind, cfg.engine, cfg);
  const std::string engine = v.engine ? engine_name(*v.engine) : "closed-form";
  const std::string value_dec = detail::approx(detail::rational_value(v.value));
  const std::string root_dec = detail::approx(v.dth_root);
  switch (cfg.format) {
    case Format::Json: {
      nlohmann::json j{{"graph", cfg.graph},
                       {"n", g.num_vertices()},
                       {"m", g.num_edges()},
                       {"d", v.dimension},
                       {"polytope", polytope_name(kind)},
                       {"method", method_name(v.method)},
                       {"engine", engine},
                       {"value", to_string(v.value)},
                       {"approx", {{"value", value_dec}, {"dth_root", root_dec}, {"significant_digits", kDigits}}}};
      out << j.dump(2) << '\n';
      break;
    }
    case Format::Csv:
      out << "graph,n,m,d,polytope,method,engine,value,value_approx,dth_root_approx\n"
          << detail::csv_escape(cfg.graph) << ',' << g.num_vertices() << ',' << g.num_edges() << ','
          << v.dimension << ',' << polytope_name(kind) << ',' << method_name(v.method) << ',' << engine << ','
          << to_string(v.value) << ',' << value_dec << ',' << root_dec << '\n';
      break;
    case Format::Pretty:
      out << "graph      " << cfg.graph << " (n=" << g.num_vertices() << ", m=" << g.num_edges()
          << ", d=" << v.dimension << ")\n"
          << "polytope   " << polytope_name(kind) << "\n"
          << "method     " << method_name(v.method) << " (" << engine << ")\n"
          << "value      " << to_string(v.value) << "\n"
          << "decimal    " << value_dec << " (approx, " << kDigits << " significant digits)\n"
          << "dth_root   " << root_dec << " (approx, " << kDigits << " significant digits)\n";
      break;
  }
  return kOk;
}

inline int cmd_lecount(const RunConfig& cfg, std::ostream& out) {
  const Graph g = parse_graph_spec(cfg.graph);
  const auto p = incidence_poset(g);
  if (cfg.dump_poset) {
    out << p.to_json().dump(2) << '\n';
    return kOk;
  }
  LECount e;
  if (cfg.engine == "bruteforce") e = count_le_bruteforce(p, cfg.cap_bruteforce);
  else if (cfg.engine == "forest") e = count_le_forest(p);
  else if (cfg.engine == "ideal-dp") e = count_le_ideal_dp(p, cfg.cap_ideals);
  else if (cfg.engine == "auto") e = is_forest(g) ? count_le_forest(p) : count_le_ideal_dp(p, cfg.cap_ideals);
  else throw DomainError("unknown LE engine '" + cfg.engine + "' (auto, bruteforce, ideal-dp, forest)");
  switch (cfg.format) {
    case Format::Json:
      out << nlohmann::json{{"graph", cfg.graph}, {"d", p.size()}, {"engine", engine_name(e.engine)},
                            {"count", to_string(e.value)}}
                 .dump(2)
          << '\n';
      break;
    case Format::Csv:
      out << "graph,d,engine,count\n"
          << detail::csv_escape(cfg.graph) << ',' << p.size() << ',' << engine_name(e.engine) << ','
          << to_string(e.value) << '\n';
      break;
    case Format::Pretty:
      out << "graph    " << cfg.graph << " (d=" << p.size() << ")\n"
          << "engine   " << engine_name(e.engine) << "\n"
          << "count    " << to_string(e.value) << "\n";
      break;
  }
  return kOk;
}

inline int cmd_asymptotics(const RunConfig& cfg, std::ostream& out) {
  const AsymptoticFamily fam = parse_asymptotic_family(cfg.family);
  if (cfg.to < cfg.from) throw DomainError("asymptotics: --to is below --from");
  const auto rows = asymptotic_report(fam, cfg.from, cfg.to);
  const bool scaled = fam == AsymptoticFamily::CycleQMinusP;
  switch (cfg.format) {
    case Format::Json: {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& r : rows) {
        nlohmann::json j{{"size", r.size},
                         {"d", r.dimension},
                         {"value", to_string(r.value)},
                         {"dth_root", detail::approx(r.root)},
                         {"limit", detail::approx(r.limit)},
                         {"gap", detail::approx(r.gap)}};
        if (r.scaled) j["scaled_root"] = detail::approx(*r.scaled);
        arr.push_back(j);
      }
      out << nlohmann::json{{"family", family_name(fam)}, {"significant_digits", kDigits}, {"rows", arr}}.dump(2)
          << '\n';
      break;
    }
    case Format::Csv:
      out << "size,d,value,dth_root," << (scaled ? "scaled_root," : "") << "limit,gap\n";
      for (const auto& r : rows) {
        out << r.size << ',' << r.dimension << ',' << to_string(r.value) << ',' << detail::approx(r.root) << ',';
        if (scaled) out << detail::approx(*r.scaled) << ',';
        out << detail::approx(r.limit) << ',' << detail::approx(r.gap) << '\n';
      }
      break;
    case Format::Pretty: {
      out << "family " << family_name(fam) << " (roots approx, " << kDigits << " significant digits)\n";
      char buf[256];
      std::snprintf(buf, sizeof buf, "%6s %6s %20s %20s %20s\n", "size", "d", scaled ? "m*root" : "dth_root",
                    "limit", "gap");
      out << buf;
      for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%6d %6d %20s %20s %20s\n", r.size, r.dimension,
                      detail::approx(scaled ? *r.scaled : r.root).c_str(), detail::approx(r.limit).c_str(),
                      detail::approx(r.gap).c_str());
        out << buf;
      }
      break;
    }
  }
  return kOk;
}

inline int cmd_necklace(const RunConfig& cfg, std::ostream& out) {
  if (cfg.n_to < cfg.n_from) throw DomainError("necklace: --to is below --from");
  std::vector<NecklaceRow> rows;
  for (int n = cfg.n_from; n <= cfg.n_to; ++n)
    rows.push_back(necklace_experiment(n, cfg.samples, cfg.seed, cfg.threads, cfg.cap_ideals));
  switch (cfg.format) {
    case Format::Json: {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& r : rows) {
        auto q = detail::estimate_json(r.Q);
        q["exact"] = to_string(*r.q_exact);
        q["dth_root"] = detail::approx(*r.q_exact_root);
        arr.push_back({{"n", r.n},
                       {"d", r.dimension},
                       {"samples", cfg.samples},
                       {"seed", cfg.seed},
                       {"extra_rows", {{"R", r.extra_rows_R}, {"T", r.extra_rows_T}, {"P", r.extra_rows_P}}},
                       {"polytopes",
                        {{"Q", q},
                         {"R", detail::estimate_json(r.R)},
                         {"T", detail::estimate_json(r.T)},
                         {"P", detail::estimate_json(r.P)}}}});
      }
      out << (rows.size() == 1 ? arr[0] : arr).dump(2) << '\n';
      break;
    }
    case Format::Csv:
      out << "n,Q,R,T,P,R_stderr,T_stderr,P_stderr\n";
      for (const auto& r : rows)
        out << r.n << ',' << detail::approx(*r.q_exact_root) << ',' << detail::approx(r.R.dth_root) << ','
            << detail::approx(r.T.dth_root) << ',' << detail::approx(r.P.dth_root) << ','
            << detail::approx(r.R.dth_root_stderr) << ',' << detail::approx(r.T.dth_root_stderr) << ','
            << detail::approx(r.P.dth_root_stderr) << '\n';
      break;
    case Format::Pretty: {
      out << "necklace d-th roots (Q exact, R/T/P Monte-Carlo in Q; samples=" << cfg.samples
          << ", seed=" << cfg.seed << ")\n";
      char buf[256];
      std::snprintf(buf, sizeof buf, "%4s %12s %22s %22s %22s\n", "n", "Q", "R", "T", "P");
      out << buf;
      auto pm = [](const MCEstimate& e) {
        char b[64];
        std::snprintf(b, sizeof b, "%.6f+-%.1e", e.dth_root, e.dth_root_stderr);
        return std::string(b);
      };
      for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%4d %12.6Lf %22s %22s %22s\n", r.n, *r.q_exact_root, pm(r.R).c_str(),
                      pm(r.T).c_str(), pm(r.P).c_str());
        out << buf;
      }
      break;
    }
  }
  return kOk;
}

inline int cmd_simplex_check(const RunConfig& cfg, std::ostream& out) {
  const Graph g = parse_graph_spec(cfg.graph);
  const auto cls = classify(g);
  if (cls.tag != GraphTag::Cycle) throw DomainError("simplex-check needs a cycle graph (cycle:m)");
  const int m = cls.param;
  const Cycle c = enumerate_cycles_cactus(g).front();
  const Rational expected = make_rational(Integer(1), 2 * factorial(static_cast<unsigned long>(2 * m)));
  Rational sum = 0;
  bool ok = true;
  nlohmann::json arr = nlohmann::json::array();
  std::ostringstream lines, csv;
  csv << "A,abs_det,volume\n";
  for (const auto& cut : all_odd_cuts(c)) {
    const SimplexW w = simplex_W(cut, g);
    const Rational det = abs(simplex_determinant(w));
    const Rational vol = exact_volume(w);
    sum += vol;
    ok = ok && vol == expected;
    lines << "A=" << detail::edge_list_text(g, cut.A) << " |det|=" << rational_text(det)
          << ", vol=" << rational_text(vol) << '\n';
    csv << '"' << detail::edge_list_text(g, cut.A) << "\"," << to_string(det) << ',' << to_string(vol) << '\n';
    arr.push_back({{"A", detail::edge_list_json(g, cut.A)}, {"abs_det", to_string(det)}, {"volume", to_string(vol)}});
  }
  sum.canonicalize();
  const Rational gap = vol_closed_form(g, PolytopeKind::QMinusP).value;
  ok = ok && sum == gap;
  switch (cfg.format) {
    case Format::Json:
      out << nlohmann::json{{"m", m},
                            {"expected_volume", to_string(expected)},
                            {"simplices", arr},
                            {"sum", to_string(sum)},
                            {"Q_minus_P", to_string(gap)},
                            {"ok", ok}}
                 .dump(2)
          << '\n';
      break;
    case Format::Csv: out << csv.str(); break;
    case Format::Pretty: out << lines.str(); break;
  }
  return ok ? kOk : kFailure;
}

inline int cmd_separate(const RunConfig& cfg, std::ostream& out) {
  const Graph g = parse_graph_spec(cfg.graph);
  if (cfg.point.empty()) throw DomainError("separate needs --point '{\"x\":[...],\"y\":[...]}' or @file.json");
  const Point p = parse_point_spec(cfg.point, g);
  SeparationMode mode;
  if (cfg.mode == "first") mode = SeparationMode::First;
  else if (cfg.mode == "most-violated") mode = SeparationMode::MostViolated;
  else throw DomainError("unknown separation mode '" + cfg.mode + "' (first, most-violated)");
  const SeparationResult r = separate(p, g, mode);
  std::string row;
  if (r.cut) row = row_text(odd_cycle_row(g, *r.cut, static_cast<int>(*r.cycle)), g.dimension());
  switch (cfg.format) {
    case Format::Json: {
      nlohmann::json j{{"violated", r.violated()},
                       {"cycles_checked", r.cycles_checked},
                       {"candidates_tested", r.candidates_tested}};
      if (r.cut) {
        j["cycle"] = r.cut->cycle.vertices;
        j["A"] = detail::edge_list_json(g, r.cut->A);
        j["violation"] = to_string(r.violation);
        j["row"] = row;
      }
      out << j.dump(2) << '\n';
      break;
    }
    case Format::Csv:
      out << "violated,cycle,A,violation,row\n";
      if (r.cut) {
        std::string cyc;
        for (int v : r.cut->cycle.vertices) cyc += (cyc.empty() ? "" : "-") + std::to_string(v);
        out << "true," << cyc << ",\"" << detail::edge_list_text(g, r.cut->A) << "\"," << to_string(r.violation)
            << ',' << row << '\n';
      } else {
        out << "false,,,,\n";
      }
      break;
    case Format::Pretty:
      if (r.cut) {
        out << "violated OC(A) on cycle";
        for (int v : r.cut->cycle.vertices) out << ' ' << v;
        out << ", A=" << detail::edge_list_text(g, r.cut->A) << ", violation " << to_string(r.violation) << '\n'
            << row << '\n';
      } else {
        out << "none (" << r.cycles_checked << " cycles, " << r.candidates_tested << " candidates)\n";
      }
      break;
  }
  return kOk;
}

inline int cmd_export_hrep(const RunConfig& cfg, std::ostream& out) {
  const Graph g = parse_graph_spec(cfg.graph);
  const PolytopeKind kind = parse_polytope(cfg.polytope);
  HalfspaceSystem sys;
  std::vector<Cycle> cycles;
  switch (kind) {
    case PolytopeKind::O: sys = build_O(g); break;
    case PolytopeKind::Q: sys = build_Q(g); break;
    case PolytopeKind::R:
    case PolytopeKind::T:
    case PolytopeKind::P: {
      auto ref = build_refinements(g);
      cycles = ref.cycles;
      sys = kind == PolytopeKind::R ? ref.R : kind == PolytopeKind::T ? ref.T : ref.P;
      break;
    }
    case PolytopeKind::QMinusP: throw CapabilityError("Q-minus-P is not convex; export Q and P separately");
  }
  write_hrep(out, sys);
  std::string manifest = cfg.manifest;
  if (manifest.empty() && !cfg.out.empty()) manifest = cfg.out + ".json";
  if (!manifest.empty()) {
    std::ofstream m(manifest);
    if (!m) throw DomainError("cannot write manifest '" + manifest + "'");
    m << hrep_manifest(g, sys, polytope_name(kind), cycles).dump(2) << '\n';
  }
  return kOk;
}

/// Runs one command, writing the report to cfg.out (or `out`) and
/// diagnostics to `err`. Returns the process exit code.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::ofstream file;
  std::ostream* sink = &out;
  if (!cfg.out.empty()) {
    file.open(cfg.out);
    if (!file) {
      err << "error: cannot write '" << cfg.out << "'\n";
      return kDomain;
    }
    sink = &file;
  }
  try {
    if (cfg.command == "volume") return cmd_volume(cfg, *sink);
    if (cfg.command == "lecount") return cmd_lecount(cfg, *sink);
    if (cfg.command == "asymptotics") return cmd_asymptotics(cfg, *sink);
    if (cfg.command == "necklace") return cmd_necklace(cfg, *sink);
    if (cfg.command == "simplex-check") return cmd_simplex_check(cfg, *sink);
    if (cfg.command == "separate") return cmd_separate(cfg, *sink);
    if (cfg.command == "export-hrep") return cmd_export_hrep(cfg, *sink);
    err << "error: unknown command '" << cfg.command << "'\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kDomain;
  } catch (const SizeError& e) {
    err << "size error: " << e.what() << " (reached " << e.reached() << ")\n";
    return kSize;
  } catch (const CapabilityError& e) {
    err << "capability error: " << e.what() << '\n';
    return kCapability;
  } catch (const PreconditionError& e) {
    err << "precondition error: " << e.what() << '\n';
    return kPrecondition;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

/// Parses argv into a RunConfig and runs it.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and Monte-Carlo volumes of boolean quadric polytope relaxations"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string format = "pretty";

  auto common = [&](CLI::App* sc) {
    sc->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"pretty", "json", "csv"}))
        ->capture_default_str();
    sc->add_option("--out", cfg.out, "Write the report to this file");
    sc->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
    sc->add_option("--samples", cfg.samples, "Monte-Carlo sample count")->capture_default_str();
    sc->add_option("--threads", cfg.threads, "Monte-Carlo worker threads")->capture_default_str();
    sc->add_option("--cap-bruteforce", cfg.cap_bruteforce, "Largest d for the brute-force engine")
        ->capture_default_str();
    sc->add_option("--cap-ideals", cfg.cap_ideals, "Memo entry cap for the ideal DP")->capture_default_str();
  };
  const char* graph_help = "Graph: family:k (complete, star, path, cycle, matching, necklace, empty, triangles), "
                           "union:spec,spec,... or @file.json";

  auto* volume = app.add_subcommand("volume", "Exact or Monte-Carlo volume of a polytope of G");
  volume->add_option("graph", cfg.graph, graph_help)->required();
  volume->add_option("--polytope", cfg.polytope, "O, Q, R, T, P or Q-minus-P")->capture_default_str();
  volume->add_option("--engine", cfg.engine, "auto, closed-form, bruteforce, ideal-dp, forest, mc, mc-q")
      ->capture_default_str();
  common(volume);

  auto* lecount = app.add_subcommand("lecount", "Linear extensions of the incidence poset");
  lecount->add_option("graph", cfg.graph, graph_help)->required();
  lecount->add_option("--engine", cfg.engine, "auto, bruteforce, ideal-dp, forest")->capture_default_str();
  lecount->add_flag("--dump-poset", cfg.dump_poset, "Print the poset as JSON instead of counting");
  common(lecount);

  auto* asym = app.add_subcommand("asymptotics", "d-th roots of closed-form volumes against their limits");
  asym->add_option("family", cfg.family,
                   "complete, star, path, cycle, cycle-P, cycle-Q-minus-P, triangles, triangles-Q-minus-P")
      ->required();
  asym->add_option("--from", cfg.from, "Smallest size")->capture_default_str();
  asym->add_option("--to", cfg.to, "Largest size")->capture_default_str();
  common(asym);

  auto* neck = app.add_subcommand("necklace", "Necklace comparison of Q, R, T and P");
  neck->add_option("--n", cfg.n_from, "Necklace size (3..6)");
  neck->add_option("--from", cfg.n_from, "Smallest necklace size");
  neck->add_option("--to", cfg.n_to, "Largest necklace size");
  common(neck);

  auto* simplex = app.add_subcommand("simplex-check", "Exact volumes of the cut-off simplices of a cycle");
  simplex->add_option("graph", cfg.graph, "cycle:m")->required();
  common(simplex);

  auto* sep = app.add_subcommand("separate", "Odd cycle separation for a point of Q(G) on a cactus graph");
  sep->add_option("graph", cfg.graph, graph_help)->required();
  sep->add_option("--point", cfg.point, "Point JSON {\"x\":[...],\"y\":[...]} or @file.json")->required();
  sep->add_option("--mode", cfg.mode, "first or most-violated")->capture_default_str();
  common(sep);

  auto* hrep = app.add_subcommand("export-hrep", "Write the H-representation and a JSON manifest");
  hrep->add_option("graph", cfg.graph, graph_help)->required();
  hrep->add_option("--polytope", cfg.polytope, "O, Q, R, T or P")->capture_default_str();
  hrep->add_option("--manifest", cfg.manifest, "Manifest path (default: <out>.json when --out is set)");
  common(hrep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "usage error: " << e.what() << "\n" << app.help();
    return kUsage;
  }
  bool n_given = neck->count("--n") > 0;
  if (n_given && neck->count("--to") == 0) cfg.n_to = cfg.n_from;
  if (!n_given && neck->count("--from") > 0 && neck->count("--to") == 0) cfg.n_to = cfg.n_from;
  cfg.command = app.get_subcommands().front()->get_name();
  cfg.format = format == "json" ? Format::Json : format == "csv" ? Format::Csv : Format::Pretty;
  return run(cfg, out, err);
}

}  // namespace bqp::cli
