#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <exception>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "bqpvol/errors.hpp"
#include "bqpvol/formulas.hpp"
#include "bqpvol/graph.hpp"
#include "bqpvol/numbers.hpp"
#include "bqpvol/polytope.hpp"
#include "bqpvol/poset.hpp"

namespace bqp {

// ---------------------------------------------------------------------------
// Random numbers

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// SplitMix64: state advances by the golden-ratio increment, output is mix64.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t state) : s_(state) {}
  constexpr std::uint64_t next() {
    s_ += 0x9E3779B97F4A7C15ULL;
    return mix64(s_);
  }
  /// Uniform on [0, 1) with 52 random bits: a multiple of 2^-52.
  double uniform() { return static_cast<double>(next() >> 12) * 0x1.0p-52; }
  /// Uniform integer in [0, k).
  std::uint64_t below(std::uint64_t k) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next()) * k) >> 64);
  }

 private:
  std::uint64_t s_;
};

/// Independent stream for sample index k: seeded by
/// mix64(mix64(seed) ^ k * 0xD1B54A32D192ED03).
inline SplitMix64 point_stream(std::uint64_t seed, std::uint64_t k) {
  return SplitMix64(mix64(mix64(seed) ^ (k * 0xD1B54A32D192ED03ULL)));
}

inline constexpr std::uint64_t kDefaultSeed = 20180917ULL;
inline constexpr std::uint64_t kChunk = 1u << 16;

// ---------------------------------------------------------------------------
// Estimates

struct MCEstimate {
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;
  double estimate = 0;
  double std_error = 0;
  double dth_root = 0;
  double dth_root_stderr = 0;
  std::uint64_t seed = 0;
  int dimension = 0;
};

/// estimate = scale * hits / samples with a binomial standard error; the root
/// error follows from the delta method.
inline MCEstimate make_estimate(std::uint64_t hits, std::uint64_t samples, std::uint64_t seed, int d,
                                double scale = 1.0) {
  MCEstimate e;
  e.hits = hits;
  e.samples = samples;
  e.seed = seed;
  e.dimension = d;
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  e.estimate = scale * p;
  e.std_error = scale * std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  if (d == 0) {
    e.dth_root = 1.0;
  } else if (e.estimate > 0) {
    e.dth_root = std::pow(e.estimate, 1.0 / d);
    e.dth_root_stderr = e.std_error / (d * e.estimate) * e.dth_root;
  }
  return e;
}

// ---------------------------------------------------------------------------
// Parallel driver

/// Runs body(first, last, counts) over fixed-size chunks of [0, samples) on
/// `workers` threads; per-chunk counts are summed in chunk order.
template <class Body>
std::vector<std::uint64_t> run_chunks(std::uint64_t samples, unsigned workers, std::size_t slots, Body body) {
  const std::uint64_t nchunks = (samples + kChunk - 1) / kChunk;
  std::vector<std::vector<std::uint64_t>> per(nchunks, std::vector<std::uint64_t>(slots, 0));
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto work = [&] {
    try {
      for (std::uint64_t c; (c = next.fetch_add(1)) < nchunks && !failed;) {
        const std::uint64_t a = c * kChunk, b = std::min(samples, a + kChunk);
        body(a, b, per[c]);
      }
    } catch (...) {
      if (!failed.exchange(true)) failure = std::current_exception();
    }
  };
  workers = std::max(1u, workers);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<std::uint64_t> total(slots, 0);
  for (const auto& v : per)
    for (std::size_t s = 0; s < slots; ++s) total[s] += v[s];
  return total;
}

// ---------------------------------------------------------------------------
// Box sampling

/// Float copy of a system for the fast membership path; rows whose slack is
/// within 1e-9 of zero are re-evaluated exactly.
class CompiledSystem {
 public:
  static constexpr double kRecheck = 1e-9;

  explicit CompiledSystem(const HalfspaceSystem& s) : src_(&s) {
    for (const Row& r : s.rows) {
      FRow f;
      for (const Term& t : r.terms) f.terms.push_back({t.coord, t.coef.get_d()});
      f.rhs = r.rhs.get_d();
      rows_.push_back(std::move(f));
    }
  }

  int dimension() const { return src_->dimension; }

  bool contains(const double* v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const FRow& r = rows_[k];
      double s = 0;
      for (const auto& t : r.terms) s += t.coef * v[t.coord];
      const double slack = r.rhs - s;
      if (slack > kRecheck) continue;
      if (slack < -kRecheck) return false;
      if (!exact_ok(src_->rows[k], v)) return false;
    }
    return true;
  }

 private:
  struct FTerm {
    int coord;
    double coef;
  };
  struct FRow {
    std::vector<FTerm> terms;
    double rhs = 0;
  };

  static bool exact_ok(const Row& r, const double* v) {
    Rational s = 0;
    for (const Term& t : r.terms) s += t.coef * Rational(v[t.coord]);
    return s <= r.rhs;
  }

  const HalfspaceSystem* src_;
  std::vector<FRow> rows_;
};

/// Shared point stream: point k is drawn from point_stream(seed, k), one
/// uniform per coordinate in order, and tested against every system.
inline std::vector<MCEstimate> estimate_volumes_shared(const std::vector<const HalfspaceSystem*>& systems,
                                                       std::uint64_t samples, std::uint64_t seed,
                                                       unsigned workers = 1) {
  if (samples == 0) throw DomainError("Monte-Carlo estimate needs at least one sample");
  if (systems.empty()) return {};
  const int d = systems.front()->dimension;
  std::vector<CompiledSystem> compiled;
  for (const auto* s : systems) {
    if (s->dimension != d) throw DomainError("shared-stream systems must have equal dimension");
    compiled.emplace_back(*s);
  }
  auto hits = run_chunks(samples, workers, systems.size(), [&](std::uint64_t a, std::uint64_t b, auto& out) {
    std::vector<double> v(static_cast<std::size_t>(d));
    for (std::uint64_t k = a; k < b; ++k) {
      auto rng = point_stream(seed, k);
      for (auto& c : v) c = rng.uniform();
      for (std::size_t s = 0; s < compiled.size(); ++s)
        if (compiled[s].contains(v.data())) ++out[s];
    }
  });
  std::vector<MCEstimate> out;
  for (auto h : hits) out.push_back(make_estimate(h, samples, seed, d));
  return out;
}

/// Rejection estimate of vol(system) from uniform points of [0,1]^d.
inline MCEstimate estimate_volume(const HalfspaceSystem& system, std::uint64_t samples, std::uint64_t seed,
                                  unsigned workers = 1) {
  return estimate_volumes_shared({&system}, samples, seed, workers).front();
}

// ---------------------------------------------------------------------------
// Uniform sampling from Q(G)

/// Exact uniform sampler on Q(G). A uniform linear extension of the
/// incidence poset paired with sorted uniforms gives a uniform point of O(G);
/// halving it gives a uniform point of Q(G) with all x <= 1/2, and switching
/// a uniformly random vertex set (x_i -> 1 - x_i, y_ij -> x_j - y_ij) spreads
/// it uniformly over Q(G). Coordinates are integers in units of 2^-53.
class QUniformSampler {
 public:
  static constexpr std::int64_t kUnit = std::int64_t{1} << 53;
  static constexpr std::size_t kMaxTable = 100'000'000;

  explicit QUniformSampler(const Graph& g) : g_(g), n_(g.num_vertices()), m_(g.num_edges()) {
    if (n_ > 24) throw SizeError("Q sampler: more than 24 vertices", static_cast<std::size_t>(n_));
    nb_ = detail::neighbour_masks(g_);
    inc_.assign(static_cast<std::size_t>(n_), {});
    for (int e = 0; e < m_; ++e) {
      inc_[g_.edge(e).u - 1].push_back({e, g_.edge(e).v - 1});
      inc_[g_.edge(e).v - 1].push_back({e, g_.edge(e).u - 1});
    }
    build_tables();
  }

  const Graph& graph() const { return g_; }
  int dimension() const { return n_ + m_; }

  /// Fills `out` (size d) with one sample.
  void sample(SplitMix64& rng, std::int64_t* out) const {
    const int d = n_ + m_;
    order_.resize(static_cast<std::size_t>(d));
    free_.clear();
    std::uint64_t X = (n_ == 64) ? ~0ULL : ((std::uint64_t{1} << n_) - 1);
    int f = 0, pc = n_;
    for (int pos = d - 1; pos >= 0; --pos) {
      const std::size_t st = offset_[X] + static_cast<std::size_t>(f);
      const double* cum = &cum_[cum_start_[st]];
      const double u = rng.uniform();
      int pick = 0;
      while (pick < pc && u >= cum[pick]) ++pick;
      if (pick == pc && f == 0) pick = pc - 1;  // rounding at the top of the last interval
      if (pick < pc) {
        int v = -1;
        std::uint64_t rest = X;
        for (int s = 0; s <= pick; ++s) {
          v = std::countr_zero(rest);
          rest &= rest - 1;
        }
        order_[pos] = v;
        X &= ~(std::uint64_t{1} << v);
        --pc;
        for (auto [e, other] : inc_[v])
          if (!((X >> other) & 1)) free_.push_back(e);
        f = static_cast<int>(free_.size());
      } else {
        const std::size_t j = rng.below(static_cast<std::uint64_t>(f));
        order_[pos] = n_ + free_[j];
        free_[j] = free_.back();
        free_.pop_back();
        --f;
      }
    }
    vals_.resize(static_cast<std::size_t>(d));
    for (auto& v : vals_) v = static_cast<std::int64_t>(rng.next() >> 12);
    std::sort(vals_.begin(), vals_.end());
    for (int pos = 0; pos < d; ++pos) out[order_[pos]] = vals_[pos];
    // Values are in [0, 2^52), i.e. the halved O-point in units of 2^-53.
    std::uint64_t flips = rng.next();
    for (int v = 0; v < n_; ++v) {
      if (!((flips >> (v % 64)) & 1)) continue;
      for (auto [e, other] : inc_[v]) out[n_ + e] = out[other] - out[n_ + e];
      out[v] = kUnit - out[v];
    }
  }

 private:
  void build_tables() {
    const std::size_t masks = std::size_t{1} << n_;
    offset_.assign(masks + 1, 0);
    std::vector<int> fmax(masks);
    for (std::size_t X = 0; X < masks; ++X) {
      fmax[X] = detail::free_capacity(g_, X);
      offset_[X + 1] = offset_[X] + static_cast<std::size_t>(fmax[X]) + 1;
    }
    const std::size_t states = offset_[masks];
    if (states > kMaxTable) throw SizeError("Q sampler: state table too large", states);
    std::vector<double> e(states, 0.0);
    for (int f = 0; f <= fmax[0]; ++f) e[f] = std::tgamma(f + 1.0);
    for (std::size_t X = 1; X < masks; ++X) {
      for (int f = 0; f <= fmax[X]; ++f) {
        double s = f > 0 ? f * e[offset_[X] + f - 1] : 0.0;
        for (std::uint64_t rest = X; rest; rest &= rest - 1) {
          const int v = std::countr_zero(rest);
          const std::uint64_t Y = X & ~(std::uint64_t{1} << v);
          s += e[offset_[Y] + f + detail::released(nb_, v, Y)];
        }
        e[offset_[X] + f] = s;
      }
    }
    cum_start_.assign(states, 0);
    std::size_t total = 0;
    for (std::size_t X = 0; X < masks; ++X) total += (fmax[X] + 1) * static_cast<std::size_t>(std::popcount(X));
    if (total > kMaxTable) throw SizeError("Q sampler: transition table too large", total);
    cum_.reserve(total + 1);
    for (std::size_t X = 0; X < masks; ++X)
      for (int f = 0; f <= fmax[X]; ++f) {
        const double tot = e[offset_[X] + f];
        cum_start_[offset_[X] + f] = cum_.size();
        double acc = 0;
        for (std::uint64_t rest = X; rest; rest &= rest - 1) {
          const int v = std::countr_zero(rest);
          const std::uint64_t Y = X & ~(std::uint64_t{1} << v);
          acc += e[offset_[Y] + f + detail::released(nb_, v, Y)];
          cum_.push_back(acc / tot);
        }
      }
    cum_.push_back(1.0);
  }

  Graph g_;
  int n_, m_;
  std::vector<std::uint64_t> nb_;
  std::vector<std::vector<std::pair<int, int>>> inc_;  // (edge, other endpoint)
  std::vector<std::size_t> offset_, cum_start_;
  std::vector<double> cum_;
  // Per-call scratch; each worker owns its sampler copy.
  mutable std::vector<int> order_, free_;
  mutable std::vector<std::int64_t> vals_;
};

/// Integer form of several row sets over points in units of 2^-53. Rows
/// shared between sets (same terms and rhs) are evaluated once per point.
class SharedIntegerRows {
 public:
  explicit SharedIntegerRows(const std::vector<std::vector<const Row*>>& sets) {
    std::map<std::pair<std::vector<std::pair<int, long>>, long>, std::size_t> index;
    for (const auto& set : sets) {
      std::vector<std::size_t> ids;
      for (const Row* r : set) {
        std::vector<std::pair<int, long>> terms;
        for (const Term& t : r->terms) {
          if (t.coef.get_den() != 1 || !t.coef.get_num().fits_slong_p())
            throw CapabilityError("integer row evaluation needs integer coefficients");
          terms.push_back({t.coord, t.coef.get_num().get_si()});
        }
        if (r->rhs.get_den() != 1) throw CapabilityError("integer row evaluation needs an integer rhs");
        auto key = std::make_pair(terms, r->rhs.get_num().get_si());
        auto [it, fresh] = index.try_emplace(key, start_.size());
        if (fresh) {
          start_.push_back(coord_.size());
          for (auto [c, a] : terms) {
            coord_.push_back(c);
            coef_.push_back(a);
          }
          rhs_.push_back(key.second * QUniformSampler::kUnit);
        }
        ids.push_back(it->second);
      }
      sets_.push_back(std::move(ids));
    }
    start_.push_back(coord_.size());
  }

  std::size_t unique_rows() const { return rhs_.size(); }

  /// Writes one flag per set: 1 if the point satisfies every row of the set.
  /// `memo` is caller scratch of size unique_rows().
  void evaluate(const std::int64_t* v, std::vector<signed char>& memo, std::uint64_t* hits) const {
    std::fill(memo.begin(), memo.end(), static_cast<signed char>(-1));
    for (std::size_t s = 0; s < sets_.size(); ++s) {
      bool ok = true;
      for (std::size_t id : sets_[s]) {
        if (memo[id] < 0) {
          std::int64_t acc = 0;
          for (std::size_t k = start_[id]; k < start_[id + 1]; ++k) acc += coef_[k] * v[coord_[k]];
          memo[id] = acc <= rhs_[id];
        }
        if (!memo[id]) {
          ok = false;
          break;
        }
      }
      hits[s] += ok;
    }
  }

 private:
  std::vector<std::size_t> start_;
  std::vector<int> coord_;
  std::vector<std::int64_t> coef_, rhs_;
  std::vector<std::vector<std::size_t>> sets_;
};

inline bool is_q_row(const Row& r) {
  switch (r.tag) {
    case RowTag::F0:
    case RowTag::F1:
    case RowTag::F2:
    case RowTag::F3:
    case RowTag::XLower:
    case RowTag::XUpper: return true;
    default: return false;
  }
}

/// Volumes of systems Q(G) + extra rows, from uniform points of Q(G) on a
/// shared stream: estimate = vol Q * hits / samples. Rows of Q itself hold at
/// every sample and are not re-evaluated.
inline std::vector<MCEstimate> estimate_volumes_in_Q(const Graph& g, const Rational& volQ,
                                                     const std::vector<const HalfspaceSystem*>& systems,
                                                     std::uint64_t samples, std::uint64_t seed,
                                                     unsigned workers = 1) {
  if (samples == 0) throw DomainError("Monte-Carlo estimate needs at least one sample");
  const QUniformSampler proto(g);
  std::vector<std::vector<const Row*>> sets;
  for (const auto* s : systems) {
    if (s->dimension != g.dimension()) throw DomainError("system dimension does not match the graph");
    std::vector<const Row*> rows;
    for (const Row& r : s->rows)
      if (!is_q_row(r)) rows.push_back(&r);
    sets.push_back(std::move(rows));
  }
  const SharedIntegerRows extra(sets);
  auto hits = run_chunks(samples, workers, systems.size(), [&](std::uint64_t a, std::uint64_t b, auto& out) {
    QUniformSampler sampler = proto;
    std::vector<std::int64_t> v(static_cast<std::size_t>(g.dimension()));
    std::vector<signed char> memo(extra.unique_rows());
    for (std::uint64_t k = a; k < b; ++k) {
      auto rng = point_stream(seed, k);
      sampler.sample(rng, v.data());
      extra.evaluate(v.data(), memo, out.data());
    }
  });
  const int d = effective_dimension(g);
  const double scale = volQ.get_d();
  std::vector<MCEstimate> out;
  for (auto h : hits) out.push_back(make_estimate(h, samples, seed, d, scale));
  return out;
}

// ---------------------------------------------------------------------------
// Necklace experiment

struct NecklaceRow {
  int n = 0;
  int dimension = 0;
  std::optional<Rational> q_exact;  // from the ideal DP when it fits the cap
  std::optional<long double> q_exact_root;
  MCEstimate Q, R, T, P;
  std::size_t extra_rows_R = 0, extra_rows_T = 0, extra_rows_P = 0;
};

/// One row of the necklace comparison: exact vol Q(N_n) via the ideal DP,
/// then R, T, P from one shared stream of uniform points of Q(N_n).
inline NecklaceRow necklace_experiment(int n, std::uint64_t samples, std::uint64_t seed, unsigned workers = 1,
                                       std::size_t ideal_cap = kDefaultIdealCap) {
  if (n < 3 || n > 6) throw DomainError("necklace experiment supports 3 <= n <= 6");
  const Graph g = gen::necklace(n);
  const Refinements ref = build_refinements(g);
  NecklaceRow row;
  row.n = n;
  row.dimension = g.dimension();
  row.extra_rows_R = ref.R.rows.size() - ref.Q.rows.size();
  row.extra_rows_T = ref.T.rows.size() - ref.Q.rows.size();
  row.extra_rows_P = ref.P.rows.size() - ref.Q.rows.size();
  const LECount e = count_le_ideal_dp(incidence_poset(g), ideal_cap);
  const VolumeResult q = vol_Q_from_O(vol_O_from_lecount(g, e), g.num_edges());
  row.q_exact = q.value;
  row.q_exact_root = q.dth_root;
  auto est = estimate_volumes_in_Q(g, q.value, {&ref.R, &ref.T, &ref.P}, samples, seed, workers);
  row.Q = make_estimate(samples, samples, seed, row.dimension, q.value.get_d());
  row.Q.dth_root = static_cast<double>(q.dth_root);
  row.R = est[0];
  row.T = est[1];
  row.P = est[2];
  return row;
}

}  // namespace bqp
