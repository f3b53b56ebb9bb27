// Statistical harness: lemma checks, exact censuses over shifts, speed sweeps
// and the escape / return-time checks on the fractal configuration.
#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <mutex>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "trapwalk/finite_graph.hpp"
#include "trapwalk/fractal.hpp"
#include "trapwalk/network.hpp"
#include "trapwalk/rational.hpp"
#include "trapwalk/rng.hpp"
#include "trapwalk/shifted.hpp"
#include "trapwalk/stats.hpp"
#include "trapwalk/walker.hpp"
#include "trapwalk/warmup.hpp"

namespace trapwalk {

// ---------------------------------------------------------------------------
// Models and replicate execution

enum class Model { Warmup, Fractal };

inline const char* model_name(Model m) { return m == Model::Warmup ? "warmup" : "fractal"; }

struct ModelSpec {
  Model model = Model::Warmup;
  double alpha = 1.0;
  long long trap_count = 10000;  // warm-up traps materialised; the line is plain beyond the last
  double gamma = 2.0;
  int max_order = 8;
};

using AnyConfig = std::variant<WarmupConfig, FractalConfig>;

inline AnyConfig make_config(const ModelSpec& m) {
  if (m.model == Model::Warmup) {
    if (m.trap_count == 0) return WarmupConfig::naked();
    return WarmupConfig::standard(m.alpha, m.trap_count);
  }
  return FractalConfig(m.gamma, m.max_order);
}

inline Vertex default_start(Model m) { return m == Model::Warmup ? Vertex{0, 0} : Vertex{0, 3}; }

/// Calls fn(i) for i in [0, n) on up to `jobs` threads. Results must be
/// written by index so that the outcome does not depend on scheduling.
template <typename Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn&& fn) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < jobs; ++j) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

struct ReplicateSpec {
  ModelSpec model;
  double beta = 2.0;
  std::optional<Vertex> start;  // default_start(model) when unset
  std::int64_t t_max = 1000000;
  std::vector<std::int64_t> time_checkpoints;
  std::vector<Coord> x_checkpoints;
  std::optional<Coord> stop_at_x;  // stop at first passage of this x instead of at t_max
  int replicates = 20;
  std::uint64_t seed = 1;
  unsigned jobs = 0;  // 0 = available parallelism

  void validate() const {
    if (replicates < 1) throw std::invalid_argument("replicates must be >= 1");
    if (t_max < 1) throw std::invalid_argument("t_max must be >= 1");
    if (!std::is_sorted(time_checkpoints.begin(), time_checkpoints.end()))
      throw std::invalid_argument("time checkpoints must be sorted");
    if (!std::is_sorted(x_checkpoints.begin(), x_checkpoints.end()))
      throw std::invalid_argument("x checkpoints must be sorted");
    for (auto t : time_checkpoints)
      if (t < 1 || t > t_max) throw std::invalid_argument("time checkpoints must lie in 1..t_max");
    Bias{beta};
  }
};

struct ReplicateOutcome {
  bool aborted = false;
  std::string abort_reason;
  std::vector<std::optional<Vertex>> positions;  // at each time checkpoint
  std::vector<std::optional<std::int64_t>> first_passage;  // U(x) at each x checkpoint
  std::int64_t time = 0;
  Vertex final_position;
  std::size_t trap_visits = 0;
  std::size_t core_hits = 0;
};

/// Runs every replicate of the spec; replicate i uses replicate_rng(seed, i).
inline std::vector<ReplicateOutcome> run_replicates(const ReplicateSpec& spec, const AnyConfig& cfg) {
  spec.validate();
  const Vertex start = spec.start.value_or(default_start(spec.model.model));
  const Bias bias(spec.beta);
  std::vector<ReplicateOutcome> out(static_cast<std::size_t>(spec.replicates));
  WalkOptions opt;
  opt.t_max = spec.t_max;
  opt.time_checkpoints = spec.time_checkpoints;
  opt.track_path = false;
  opt.record_first_passage = !spec.x_checkpoints.empty();
  if (spec.stop_at_x) {
    opt.stop = StopRule::FirstPassageX;
    opt.target_x = *spec.stop_at_x;
  }
  parallel_for(out.size(), spec.jobs, [&](std::size_t i) {
    Rng rng = replicate_rng(spec.seed, i);
    ReplicateOutcome& o = out[i];
    o.positions.assign(spec.time_checkpoints.size(), std::nullopt);
    o.first_passage.assign(spec.x_checkpoints.size(), std::nullopt);
    try {
      WalkRecord rec = std::visit([&](const auto& c) { return run(start, c, bias, opt, rng); }, cfg);
      for (std::size_t j = 0, k = 0; j < spec.time_checkpoints.size(); ++j) {
        while (k < rec.checkpoints.size() && rec.checkpoints[k].first < spec.time_checkpoints[j]) ++k;
        if (k < rec.checkpoints.size() && rec.checkpoints[k].first == spec.time_checkpoints[j])
          o.positions[j] = rec.checkpoints[k].second;
      }
      for (std::size_t j = 0; j < spec.x_checkpoints.size(); ++j) o.first_passage[j] = rec.first_passage_time(spec.x_checkpoints[j]);
      o.time = rec.time;
      o.final_position = rec.position;
      o.trap_visits = rec.trap_visits.size();
      for (const auto& v : rec.trap_visits) o.core_hits += v.hit_core;
    } catch (const TruncationError& e) {
      o.aborted = true;
      o.abort_reason = e.what();
    }
  });
  return out;
}

// ---------------------------------------------------------------------------
// Speed sweep

struct SweepRow {
  double beta = 0;
  std::optional<std::int64_t> t;
  std::optional<Coord> checkpoint_x;
  std::string stat;
  double value = 0;
  std::optional<double> stderr_;
  std::size_t n_replicates = 0;
  std::size_t n_aborted = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::uint64_t seed = 0;

  const SweepRow* find(double beta, const std::string& stat, std::optional<std::int64_t> t,
                       std::optional<Coord> x = std::nullopt) const {
    for (const SweepRow& r : rows)
      if (r.beta == beta && r.stat == stat && r.t == t && r.checkpoint_x == x) return &r;
    return nullptr;
  }
};

/// For every beta: speed (X_t - X_0)/t at each time checkpoint and U(x)/x at
/// each x checkpoint, summarised over the non-aborted replicates.
inline SweepResult speed_sweep(const ReplicateSpec& spec, const std::vector<double>& betas) {
  if (betas.empty()) throw std::invalid_argument("beta grid is empty");
  const AnyConfig cfg = make_config(spec.model);
  const Vertex start = spec.start.value_or(default_start(spec.model.model));
  SweepResult res;
  res.seed = spec.seed;
  for (double beta : betas) {
    ReplicateSpec s = spec;
    s.beta = beta;
    const auto outcomes = run_replicates(s, cfg);
    std::size_t aborted = 0;
    for (const auto& o : outcomes) aborted += o.aborted;
    for (std::size_t j = 0; j < spec.time_checkpoints.size(); ++j) {
      const std::int64_t t = spec.time_checkpoints[j];
      std::vector<double> speeds;
      for (const auto& o : outcomes)
        if (!o.aborted && o.positions[j])
          speeds.push_back(static_cast<double>(o.positions[j]->x - start.x) / static_cast<double>(t));
      if (speeds.empty()) continue;
      const SummaryStats st = summarize(speeds);
      res.rows.push_back({beta, t, std::nullopt, "speed_mean", st.mean, st.stderr_, st.n, aborted});
      res.rows.push_back({beta, t, std::nullopt, "speed_median", st.median, std::nullopt, st.n, aborted});
      res.rows.push_back({beta, t, std::nullopt, "speed_q25", st.q25, std::nullopt, st.n, aborted});
      res.rows.push_back({beta, t, std::nullopt, "speed_q75", st.q75, std::nullopt, st.n, aborted});
    }
    for (std::size_t j = 0; j < spec.x_checkpoints.size(); ++j) {
      const Coord x = spec.x_checkpoints[j];
      if (x == start.x) continue;
      std::vector<double> ratios;
      std::size_t missing = 0;
      for (const auto& o : outcomes) {
        if (o.aborted) continue;
        if (o.first_passage[j])
          ratios.push_back(static_cast<double>(*o.first_passage[j]) / static_cast<double>(x - start.x));
        else
          ++missing;
      }
      res.rows.push_back({beta, std::nullopt, x, "fpt_missing", static_cast<double>(missing), std::nullopt,
                          outcomes.size() - aborted, aborted});
      if (ratios.empty()) continue;
      const SummaryStats st = summarize(ratios);
      res.rows.push_back({beta, std::nullopt, x, "fpt_ratio_mean", st.mean, st.stderr_, st.n, aborted});
      res.rows.push_back({beta, std::nullopt, x, "fpt_ratio_median", st.median, std::nullopt, st.n, aborted});
    }
  }
  return res;
}

inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline void write_sweep_csv(std::ostream& os, const SweepResult& res, const std::string& provenance) {
  os << "# " << provenance << "\n";
  os << "beta,t,checkpoint_x,stat,value,stderr,n_replicates,n_aborted\n";
  for (const SweepRow& r : res.rows) {
    os << format_number(r.beta) << ',' << (r.t ? std::to_string(*r.t) : "NA") << ','
       << (r.checkpoint_x ? to_string(*r.checkpoint_x) : "NA") << ',' << r.stat << ',' << format_number(r.value) << ','
       << (r.stderr_ ? format_number(*r.stderr_) : "NA") << ',' << r.n_replicates << ',' << r.n_aborted << '\n';
  }
}

// ---------------------------------------------------------------------------
// Trap lemmas

struct LemmaRow {
  std::string lemma;
  double beta = 0;
  std::optional<long long> e;
  std::optional<long long> c;
  double estimate = 0;
  std::optional<double> stderr_;
  double target = 0;
  bool pass = false;
};

inline void write_lemma_csv(std::ostream& os, const std::vector<LemmaRow>& rows, const std::string& provenance) {
  os << "# " << provenance << "\n";
  os << "lemma,beta,e,c,estimate,stderr,target,verdict\n";
  for (const LemmaRow& r : rows) {
    os << r.lemma << ',' << format_number(r.beta) << ',' << (r.e ? std::to_string(*r.e) : "NA") << ','
       << (r.c ? std::to_string(*r.c) : "NA") << ',' << format_number(r.estimate) << ','
       << (r.stderr_ ? format_number(*r.stderr_) : "NA") << ',' << format_number(r.target) << ','
       << (r.pass ? "PASS" : "FAIL") << '\n';
  }
}

/// A warm-up line carrying a single trap far enough right to fit its entrance.
inline WarmupConfig single_trap_line(Coord entrance_len, Coord core_len, Coord anchor_x = 0) {
  if (anchor_x == 0) anchor_x = entrance_len + 10;
  return WarmupConfig::with_traps({TrapSpec{{anchor_x, 0}, entrance_len, core_len, 1}});
}

/// Independent trap visits started by forcing the first step from the anchor
/// into the trap; each visit is capped at `cap` steps.
inline std::vector<TrapVisitRecord> sample_trap_visits(Coord entrance_len, Coord core_len, const Bias& bias,
                                                       std::size_t samples, std::uint64_t seed, std::int64_t cap,
                                                       unsigned jobs = 1) {
  const WarmupConfig line = single_trap_line(entrance_len, core_len);
  const Vertex anchor = line.traps()[0].anchor;
  WalkOptions opt;
  opt.t_max = cap;
  opt.stop = StopRule::ReturnToStart;
  opt.forced_first_step = Direction::Up;
  opt.record_first_passage = false;
  opt.track_path = false;
  std::vector<TrapVisitRecord> out(samples);
  parallel_for(samples, jobs, [&](std::size_t i) {
    Rng rng = replicate_rng(seed, i);
    const WalkRecord rec = run(anchor, line, bias, opt, rng);
    out[i] = rec.trap_visits.at(0);
  });
  return out;
}

struct LemmaSuiteSpec {
  std::vector<double> betas{1.5, 2.0, 3.0};
  std::vector<long long> entrances{1, 2, 5};
  long long core_len = 5;
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
};

inline bool within_sigmas(double est, double se, double target, double k = 3.0) {
  return std::fabs(est - target) <= k * se;
}

/// Core-hit frequency, long core sojourns, T* mean and domination, and the
/// number of entries into a single trap, each against its closed form.
inline std::vector<LemmaRow> lemma_suite(const LemmaSuiteSpec& spec) {
  if (spec.betas.empty() || spec.entrances.empty()) throw std::invalid_argument("lemma grids must be non-empty");
  std::vector<LemmaRow> rows;
  std::uint64_t stream = 0;
  auto next_seed = [&] { return replicate_seed(spec.seed, stream++); };
  for (double beta : spec.betas) {
    const Bias bias(beta);
    std::vector<double> finite_tstar;
    for (long long e : spec.entrances) {
      // Core hits: visits may stop at the core, so a short core suffices.
      const auto visits = sample_trap_visits(e, 1, bias, spec.samples, next_seed(), 100000000, spec.jobs);
      std::vector<double> hits;
      hits.reserve(visits.size());
      for (const auto& v : visits) {
        hits.push_back(v.hit_core ? 1.0 : 0.0);
        finite_tstar.push_back(static_cast<double>(v.t_star()));
      }
      SummaryStats st = summarize(hits);
      const double target = static_cast<double>(hit_core_probability(e, bias));
      rows.push_back({"hit_core", beta, e, std::nullopt, st.mean, st.stderr_, target,
                      within_sigmas(st.mean, st.stderr_, target)});

      // Long sojourns: P[T >= beta^c] against the one-sided lower bound.
      const double threshold = std::pow(beta, static_cast<double>(spec.core_len));
      const auto cap = static_cast<std::int64_t>(std::ceil(threshold)) + 1;
      const auto long_visits = sample_trap_visits(e, spec.core_len, bias, spec.samples, next_seed(), cap, spec.jobs);
      std::vector<double> longs;
      for (const auto& v : long_visits) longs.push_back(static_cast<double>(v.duration) >= threshold ? 1.0 : 0.0);
      st = summarize(longs);
      const double bound = static_cast<double>(stay_in_core_lower_bound(e, bias));
      rows.push_back({"core_sojourn", beta, e, spec.core_len, st.mean, st.stderr_, bound,
                      st.mean + 3 * st.stderr_ >= bound});
    }

    // T* for the idealised infinite entrance.
    std::vector<double> tstar(spec.samples);
    {
      const std::uint64_t s = next_seed();
      parallel_for(spec.samples, spec.jobs, [&](std::size_t i) {
        Rng rng = replicate_rng(s, i);
        tstar[i] = static_cast<double>(sample_infinite_entrance_excursion(bias, rng));
      });
    }
    const SummaryStats st = summarize(tstar);
    const double target = static_cast<double>(expected_infinite_entrance_excursion(bias));
    rows.push_back({"tstar_mean", beta, std::nullopt, std::nullopt, st.mean, st.stderr_, target,
                    within_sigmas(st.mean, st.stderr_, target)});
    const DominationTest dom = ks_domination(finite_tstar, tstar, 0.01);
    rows.push_back({"tstar_domination", beta, std::nullopt, std::nullopt, dom.statistic, std::nullopt, dom.critical,
                    dom.passes});

    // Entries into a single trap before escaping to the right.
    {
      const WarmupConfig line = single_trap_line(1, 1);
      const Vertex anchor = line.traps()[0].anchor;
      WalkOptions opt;
      opt.stop = StopRule::FirstPassageX;
      opt.target_x = anchor.x + static_cast<Coord>(std::ceil(80.0 / std::log(beta)));
      opt.t_max = 100000000;
      opt.record_first_passage = false;
      opt.track_path = false;
      const std::uint64_t s = next_seed();
      std::vector<double> entries(spec.samples);
      parallel_for(spec.samples, spec.jobs, [&](std::size_t i) {
        Rng rng = replicate_rng(s, i);
        entries[i] = static_cast<double>(run(anchor, line, bias, opt, rng).trap_visits.size());
      });
      const SummaryStats es = summarize(entries);
      const double tgt = 1.0 / (beta - 1.0);
      rows.push_back({"trap_entries", beta, 1, 1, es.mean, es.stderr_, tgt, within_sigmas(es.mean, es.stderr_, tgt)});
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Censuses over shifts

struct CensusResult {
  std::string event;
  Rational probability;
  Coord favorable = 0;
  Coord domain = 0;
};

/// Fraction of vertical shifts in one period 3*2^k that put the origin on
/// the tip of an order-k branch.
inline CensusResult census_vertical(int k, const FractalConfig& cfg) {
  if (k < 1 || k >= cfg.max_order()) throw std::invalid_argument("census order must lie in 1..max_order-1");
  const Coord period = checked_mul(3, Coord(1) << k);
  CensusResult r;
  r.event = "origin is the tip of an order-" + std::to_string(k) + " branch";
  r.domain = period;
  for (Coord s = 0; s < period; ++s) {
    const ShiftedConfig<FractalConfig> sh(cfg, 0, s);
    const Location loc = sh.locate({0, 0});
    if (loc.kind == SiteKind::MainPart && loc.branch->order == k && loc.branch->tip == Vertex{0, 0}) ++r.favorable;
  }
  r.probability = Rational(r.favorable, r.domain);
  return r;
}

/// Fraction of horizontal shifts S_x in [0, b(n)) that put the origin on an
/// order-k main part, given that the origin sits on an order-k line.
inline CensusResult census_horizontal(int k, int n, const FractalConfig& cfg, int max_n = 5) {
  if (k < 1 || k >= n || n > cfg.max_order()) throw std::invalid_argument("census needs 1 <= k < n <= max_order");
  if (n > max_n) throw std::invalid_argument("b(n) too large to enumerate; n > " + std::to_string(max_n) + " rejected");
  const Coord period = cfg.b(n);
  CensusResult r;
  r.event = "origin on the main part of an order-" + std::to_string(k) + " branch";
  r.domain = period;
  const Coord line = cfg.h(k);  // an order-k line in the base configuration
  for (Coord sx = 0; sx < period; ++sx) {
    const ShiftedConfig<FractalConfig> sh(cfg, sx, -line);
    const Location loc = sh.locate({0, 0});
    if (loc.kind == SiteKind::MainPart && loc.branch->order == k) ++r.favorable;
  }
  r.probability = Rational(r.favorable, r.domain);
  return r;
}

inline Rational census_vertical_formula(int k) { return Rational(1, checked_mul(3, Coord(1) << k)); }

inline Rational census_horizontal_formula(int k, int n) {
  Rational p(1);
  for (int i = k; i < n; ++i) p *= Rational(1) - pow(Rational(1, 3), i);
  return p;
}

// ---------------------------------------------------------------------------
// Escape bound on qualifying fractal vertices

struct EscapeSample {
  Vertex v;
  int order = 0;
  Interval p;
};

struct EscapeBoundReport {
  double bound = 0;
  std::vector<EscapeSample> samples;
  std::size_t rejected = 0;  // candidates failing the distance precondition
  std::size_t violations = 0;
  bool pass() const { return violations == 0 && !samples.empty(); }
};

/// Whether v is on an order-k main part at least 3*2^(k-1) left of its corner.
inline bool qualifies_for_escape_bound(const FractalConfig& cfg, Vertex v) {
  const Location loc = cfg.locate(v);
  if (loc.kind != SiteKind::MainPart || loc.branch->infinite) return false;
  return loc.branch->corner.x - v.x >= cfg.h(loc.branch->order);
}

inline EscapeBoundReport escape_bound_check(const FractalConfig& cfg, const Bias& bias, std::size_t sample_count,
                                             std::uint64_t seed, Coord horizon = 200) {
  EscapeBoundReport rep;
  rep.bound = (bias.beta - 1) / (2 * (3 + bias.beta));
  Rng rng(replicate_seed(seed, 0));
  const int orders = std::min(5, cfg.max_order() - 1);
  const Coord x_range = std::min<Coord>(cfg.truncation_x() / 2, Coord(1) << 40);
  std::size_t i = 0;
  while (rep.samples.size() < sample_count) {
    const int k = 1 + static_cast<int>(i++ % static_cast<std::size_t>(orders));
    const Coord l = 2 * uniform_between(rng, -50, 49) + 1;
    const Vertex v{uniform_below(rng, x_range), l * cfg.h(k)};
    if (!qualifies_for_escape_bound(cfg, v)) {
      ++rep.rejected;
      --i;  // retry the same order
      continue;
    }
    EscapeSample s{v, k, escape_probability(v, cfg, bias, horizon)};
    if (static_cast<double>(s.p.lo) < rep.bound) ++rep.violations;
    rep.samples.push_back(s);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Return times to corners and roots

struct ReturnTimeRow {
  std::string kind;  // "corner" or "root"
  int order = 0;
  Vertex vertex;
  std::size_t samples = 0;
  double mean = 0;
  double stderr_ = 0;
  double min = 0;
  double stationary = 0;  // exact expected return time on the cut-off subgraph
  double bound = 0;       // C' or 3*2^k + C'
  std::size_t subgraph_vertices = 0;
  bool within_bound = false;
  bool matches_stationary = false;
  bool pass() const { return within_bound && matches_stationary && min >= 2; }
};

inline ReturnTimeRow excursion_check(const FractalConfig& cfg, const Bias& bias, Vertex v, Direction first,
                                     std::size_t samples, std::uint64_t seed, unsigned jobs) {
  ReturnTimeRow row;
  row.vertex = v;
  const FiniteGraph g = FiniteGraph::explore(cfg, step(v, first), {v});
  row.subgraph_vertices = g.vertex_count();
  row.stationary = static_cast<double>(stationary_return_time(g, bias, v));
  WalkOptions opt;
  opt.t_max = 1000000000;
  opt.stop = StopRule::ReturnToStart;
  opt.forced_first_step = first;
  opt.record_first_passage = false;
  opt.track_path = false;
  std::vector<double> times(samples);
  parallel_for(samples, jobs, [&](std::size_t i) {
    Rng rng = replicate_rng(seed, i);
    times[i] = static_cast<double>(run(v, cfg, bias, opt, rng).time);
  });
  const SummaryStats st = summarize(times);
  row.samples = st.n;
  row.mean = st.mean;
  row.stderr_ = st.stderr_;
  row.min = st.min;
  row.matches_stationary = within_sigmas(st.mean, st.stderr_, row.stationary);
  return row;
}

/// For each order k: excursions left from the corner of the order-k branch
/// with tip (0, 3*2^(k-1)), and excursions into that branch from its root.
inline std::vector<ReturnTimeRow> return_time_check(const FractalConfig& cfg, const Bias& bias,
                                                    const std::vector<int>& orders, std::size_t samples,
                                                    std::uint64_t seed, unsigned jobs = 1) {
  const double cprime = static_cast<double>(cone_return_time_bound(bias).closed_form);
  std::vector<ReturnTimeRow> rows;
  std::uint64_t stream = 0;
  for (int k : orders) {
    if (k < 1 || k > 4 || k >= cfg.max_order()) throw std::invalid_argument("return-time orders must lie in 1..4");
    const BranchDescriptor br = *cfg.locate({0, cfg.h(k)}).branch;
    ReturnTimeRow c = excursion_check(cfg, bias, br.corner, Direction::Left, samples, replicate_seed(seed, stream++), jobs);
    c.kind = "corner";
    c.order = k;
    c.bound = cprime;
    c.within_bound = c.mean <= cprime + 3 * c.stderr_;
    rows.push_back(c);
    const Direction into = br.abutment_up ? Direction::Down : Direction::Up;
    ReturnTimeRow r = excursion_check(cfg, bias, br.root, into, samples, replicate_seed(seed, stream++), jobs);
    r.kind = "root";
    r.order = k;
    r.bound = 3.0 * std::ldexp(1.0, k) + cprime;
    r.within_bound = r.mean <= r.bound + 3 * r.stderr_;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace trapwalk
