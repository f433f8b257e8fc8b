#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "bqpvol/errors.hpp"
#include "bqpvol/graph.hpp"
#include "bqpvol/numbers.hpp"
#include "bqpvol/poset.hpp"

namespace bqp {

enum class PolytopeKind { O, Q, R, T, P, QMinusP };

inline const char* polytope_name(PolytopeKind k) {
  switch (k) {
    case PolytopeKind::O: return "O";
    case PolytopeKind::Q: return "Q";
    case PolytopeKind::R: return "R";
    case PolytopeKind::T: return "T";
    case PolytopeKind::P: return "P";
    case PolytopeKind::QMinusP: return "Q-minus-P";
  }
  return "?";
}

inline PolytopeKind parse_polytope(const std::string& s) {
  if (s == "O") return PolytopeKind::O;
  if (s == "Q") return PolytopeKind::Q;
  if (s == "R") return PolytopeKind::R;
  if (s == "T") return PolytopeKind::T;
  if (s == "P") return PolytopeKind::P;
  if (s == "Q-minus-P" || s == "QminusP" || s == "Q\\P") return PolytopeKind::QMinusP;
  throw DomainError("unknown polytope '" + s + "' (expected O, Q, R, T, P or Q-minus-P)");
}

enum class VolumeMethod { ClosedForm, LECount, ProductRule };

inline const char* method_name(VolumeMethod m) {
  switch (m) {
    case VolumeMethod::ClosedForm: return "closed_form";
    case VolumeMethod::LECount: return "le_count";
    case VolumeMethod::ProductRule: return "product_rule";
  }
  return "?";
}

/// Exact volume in dimension d = n + m, where isolated vertices are dropped
/// (they contribute a unit factor).
struct VolumeResult {
  PolytopeKind polytope = PolytopeKind::Q;
  Rational value;
  int dimension = 0;
  VolumeMethod method = VolumeMethod::ClosedForm;
  long double dth_root = 1.0L;
  std::optional<LEEngine> engine;  // set when method == LECount
};

inline int effective_dimension(const Graph& g) {
  int isolated = 0;
  for (int v = 1; v <= g.num_vertices(); ++v)
    if (g.degree(v) == 0) ++isolated;
  return g.dimension() - isolated;
}

inline VolumeResult make_volume(PolytopeKind k, Rational value, int d, VolumeMethod method) {
  VolumeResult r;
  r.polytope = k;
  r.value = std::move(value);
  r.dimension = d;
  r.method = method;
  r.dth_root = dth_root(r.value, static_cast<unsigned>(d));
  return r;
}

// ---------------------------------------------------------------------------
// LE-count bridges

inline VolumeResult vol_O_from_lecount(const Graph& g, const LECount& e) {
  Rational v = make_rational(e.value, factorial(static_cast<unsigned long>(g.dimension())));
  auto r = make_volume(PolytopeKind::O, v, effective_dimension(g), VolumeMethod::LECount);
  r.engine = e.engine;
  return r;
}

inline VolumeResult vol_Q_from_O(const VolumeResult& volO, int m) {
  if (volO.polytope != PolytopeKind::O) throw DomainError("vol_Q_from_O: input is not an O-volume");
  Rational v = volO.value / Rational(pow2(static_cast<unsigned long>(m)));
  v.canonicalize();
  auto r = make_volume(PolytopeKind::Q, v, volO.dimension, volO.method);
  r.engine = volO.engine;
  return r;
}

// ---------------------------------------------------------------------------
// Closed forms

namespace closed {

inline const EulerNumberTable& euler_cache(std::size_t k) {
  static thread_local EulerNumberTable table = euler_numbers(64);
  if (k > table.max_index()) table = euler_numbers(std::max(k, 2 * table.max_index()));
  return table;
}

inline Rational star_Q(int m) {
  const auto fm = factorial(static_cast<unsigned long>(m));
  return make_rational(fm * fm, factorial(static_cast<unsigned long>(2 * m + 1)));
}

inline Rational path_Q(int m) {
  const auto& A = euler_cache(static_cast<std::size_t>(2 * m + 1));
  return make_rational(A[static_cast<std::size_t>(2 * m + 1)],
                       pow2(static_cast<unsigned long>(m)) * factorial(static_cast<unsigned long>(2 * m + 1)));
}

inline Rational cycle_Q(int m) {
  const auto& A = euler_cache(static_cast<std::size_t>(2 * m - 1));
  return make_rational(Integer(m) * A[static_cast<std::size_t>(2 * m - 1)],
                       pow2(static_cast<unsigned long>(m)) * factorial(static_cast<unsigned long>(2 * m)));
}

inline Rational cycle_Q_minus_P(int m) {
  return make_rational(pow2(static_cast<unsigned long>(m - 2)), factorial(static_cast<unsigned long>(2 * m)));
}

inline Rational cycle_P(int m) {
  Rational r = cycle_Q(m) - cycle_Q_minus_P(m);
  r.canonicalize();
  return r;
}

/// Q(K_n) = 2^(2n - d) n! / (2n)! with d = n + C(n, 2).
inline Rational complete_Q(int n) {
  const long d = n + static_cast<long>(n) * (n - 1) / 2;
  Rational r = pow2_signed(2L * n - d) * Rational(factorial(static_cast<unsigned long>(n))) /
               Rational(factorial(static_cast<unsigned long>(2 * n)));
  r.canonicalize();
  return r;
}

inline Rational matching_Q(int m) {
  Integer six;
  mpz_ui_pow_ui(six.get_mpz_t(), 6, static_cast<unsigned long>(m));
  return make_rational(Integer(1), six);
}

}  // namespace closed

/// Q- and P-volume of one connected component with at least one edge.
struct ComponentVolumes {
  Rational q;
  std::optional<Rational> p;  // nullopt: unknown
};

inline ComponentVolumes component_volumes(const Graph& h) {
  auto shape = component_shape(h);
  if (!shape)
    throw CapabilityError("no closed form for a component with " + std::to_string(h.num_vertices()) +
                          " vertices and " + std::to_string(h.num_edges()) +
                          " edges; use the LE-count route (--engine ideal-dp or forest)");
  switch (shape->tag) {
    case GraphTag::Star: {
      Rational q = closed::star_Q(shape->param);
      return {q, q};
    }
    case GraphTag::Path: {
      Rational q = closed::path_Q(shape->param);
      return {q, q};
    }
    case GraphTag::Cycle: return {closed::cycle_Q(shape->param), closed::cycle_P(shape->param)};
    case GraphTag::CompleteGraph: return {closed::complete_Q(shape->param), std::nullopt};
    default: break;
  }
  throw InternalError("component_shape returned an unexpected tag");
}

/// Closed-form volume of O, Q, P or Q minus P, multiplying over components.
inline VolumeResult vol_closed_form(const Graph& g, PolytopeKind kind) {
  if (kind == PolytopeKind::R || kind == PolytopeKind::T)
    throw CapabilityError(std::string("no closed form for polytope ") + polytope_name(kind) +
                          "; use the Monte-Carlo route (--engine mc)");
  Rational q = 1, p = 1;
  bool p_known = true;
  int parts = 0;
  for (const auto& comp : components(g)) {
    if (comp.size() < 2) continue;
    ++parts;
    auto cv = component_volumes(induced_subgraph(g, comp));
    q *= cv.q;
    if (cv.p)
      p *= *cv.p;
    else
      p_known = false;
  }
  const int d = effective_dimension(g);
  const auto method = parts > 1 ? VolumeMethod::ProductRule : VolumeMethod::ClosedForm;
  auto need_p = [&] {
    if (!p_known)
      throw CapabilityError("volume of P(K_n) for n >= 4 is not known in closed form; try --engine mc");
  };
  switch (kind) {
    case PolytopeKind::Q: return make_volume(kind, q, d, method);
    case PolytopeKind::O: {
      Rational o = q * Rational(pow2(static_cast<unsigned long>(g.num_edges())));
      o.canonicalize();
      return make_volume(kind, o, d, method);
    }
    case PolytopeKind::P: need_p(); return make_volume(kind, p, d, method);
    case PolytopeKind::QMinusP: {
      need_p();
      Rational diff = q - p;
      diff.canonicalize();
      return make_volume(kind, diff, d, method);
    }
    default: break;
  }
  throw InternalError("unreachable polytope kind");
}

// ---------------------------------------------------------------------------
// Asymptotics

enum class AsymptoticFamily { Complete, Star, Path, CycleQ, CycleP, CycleQMinusP, Triangles, TrianglesQMinusP };

inline AsymptoticFamily parse_asymptotic_family(const std::string& s) {
  if (s == "complete") return AsymptoticFamily::Complete;
  if (s == "star") return AsymptoticFamily::Star;
  if (s == "path") return AsymptoticFamily::Path;
  if (s == "cycle" || s == "cycle-Q") return AsymptoticFamily::CycleQ;
  if (s == "cycle-P") return AsymptoticFamily::CycleP;
  if (s == "cycle-Q-minus-P") return AsymptoticFamily::CycleQMinusP;
  if (s == "triangles") return AsymptoticFamily::Triangles;
  if (s == "triangles-Q-minus-P") return AsymptoticFamily::TrianglesQMinusP;
  throw DomainError("unknown asymptotic family '" + s +
                    "' (complete, star, path, cycle, cycle-P, cycle-Q-minus-P, triangles, triangles-Q-minus-P)");
}

inline const char* family_name(AsymptoticFamily f) {
  switch (f) {
    case AsymptoticFamily::Complete: return "complete";
    case AsymptoticFamily::Star: return "star";
    case AsymptoticFamily::Path: return "path";
    case AsymptoticFamily::CycleQ: return "cycle";
    case AsymptoticFamily::CycleP: return "cycle-P";
    case AsymptoticFamily::CycleQMinusP: return "cycle-Q-minus-P";
    case AsymptoticFamily::Triangles: return "triangles";
    case AsymptoticFamily::TrianglesQMinusP: return "triangles-Q-minus-P";
  }
  return "?";
}

namespace limits {
inline long double half() { return 0.5L; }
inline long double sqrt2_over_pi() { return std::sqrt(2.0L) / 3.141592653589793238462643383279502884L; }
inline long double e_over_sqrt2() { return std::exp(1.0L) / std::sqrt(2.0L); }
inline long double triangle_Q() { return std::pow(1.0L / 120.0L, 1.0L / 6.0L); }
inline long double triangle_Q_minus_P() { return std::pow(1.0L / 360.0L, 1.0L / 6.0L); }
}  // namespace limits

struct AsymptoticRow {
  int size = 0;  // n for complete, m (edge count) otherwise
  int dimension = 0;
  Rational value;
  long double root = 0;
  long double limit = 0;
  long double gap = 0;  // root - limit, or scaled - limit for cycle-Q-minus-P
  std::optional<long double> scaled;  // m * root for cycle-Q-minus-P
};

inline int asymptotic_min_size(AsymptoticFamily f) {
  switch (f) {
    case AsymptoticFamily::Complete: return 1;
    case AsymptoticFamily::Star:
    case AsymptoticFamily::Path: return 1;
    case AsymptoticFamily::Triangles:
    case AsymptoticFamily::TrianglesQMinusP: return 3;
    default: return 3;
  }
}

inline AsymptoticRow asymptotic_row(AsymptoticFamily f, int size) {
  if (size < asymptotic_min_size(f))
    throw DomainError(std::string("asymptotics: size below minimum for ") + family_name(f));
  AsymptoticRow r;
  r.size = size;
  switch (f) {
    case AsymptoticFamily::Complete:
      r.value = closed::complete_Q(size);
      r.dimension = size == 1 ? 0 : size + size * (size - 1) / 2;
      if (size == 1) r.value = 1;
      r.limit = limits::half();
      break;
    case AsymptoticFamily::Star:
      r.value = closed::star_Q(size);
      r.dimension = 2 * size + 1;
      r.limit = limits::half();
      break;
    case AsymptoticFamily::Path:
      r.value = closed::path_Q(size);
      r.dimension = 2 * size + 1;
      r.limit = limits::sqrt2_over_pi();
      break;
    case AsymptoticFamily::CycleQ:
      r.value = closed::cycle_Q(size);
      r.dimension = 2 * size;
      r.limit = limits::sqrt2_over_pi();
      break;
    case AsymptoticFamily::CycleP:
      r.value = closed::cycle_P(size);
      r.dimension = 2 * size;
      r.limit = limits::sqrt2_over_pi();
      break;
    case AsymptoticFamily::CycleQMinusP:
      r.value = closed::cycle_Q_minus_P(size);
      r.dimension = 2 * size;
      r.limit = limits::e_over_sqrt2();
      break;
    case AsymptoticFamily::Triangles:
    case AsymptoticFamily::TrianglesQMinusP: {
      if (size % 3 != 0) throw DomainError("asymptotics: triangle collections need m divisible by 3");
      const int copies = size / 3;
      Rational q = 1, p = 1;
      for (int k = 0; k < copies; ++k) {
        q *= closed::cycle_Q(3);
        p *= closed::cycle_P(3);
      }
      r.dimension = 2 * size;
      if (f == AsymptoticFamily::Triangles) {
        r.value = q;
        r.limit = limits::triangle_Q();
      } else {
        r.value = q - p;
        r.value.canonicalize();
        r.limit = limits::triangle_Q_minus_P();
      }
      break;
    }
  }
  r.root = dth_root(r.value, static_cast<unsigned>(r.dimension));
  if (f == AsymptoticFamily::CycleQMinusP) {
    r.scaled = static_cast<long double>(size) * r.root;
    r.gap = *r.scaled - r.limit;
  } else {
    r.gap = r.root - r.limit;
  }
  return r;
}

/// Rows for sizes from..to (step 3 for triangle collections, starting at a
/// multiple of 3).
inline std::vector<AsymptoticRow> asymptotic_report(AsymptoticFamily f, int from, int to) {
  std::vector<AsymptoticRow> rows;
  const bool tri = f == AsymptoticFamily::Triangles || f == AsymptoticFamily::TrianglesQMinusP;
  int start = std::max(from, asymptotic_min_size(f));
  if (tri) start = (start + 2) / 3 * 3;
  for (int s = start; s <= to; s += tri ? 3 : 1) rows.push_back(asymptotic_row(f, s));
  return rows;
}

}  // namespace bqp
