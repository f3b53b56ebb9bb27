// Command-line front end: gen, walk, lemmas, census, escape, sweep.
//
// Exit status: 0 on success with every verification passing, 1 when a
// verification fails or a run hits the truncation boundary, 2 on a
// configuration error.
#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iterator>
#include <iostream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "trapwalk/audit.hpp"
#include "trapwalk/experiments.hpp"

namespace trapwalk::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every field a JSON config may carry. Flags given on the command line
/// override the file.
struct ExperimentConfig {
  std::string model = "warmup";
  double alpha = 1.0;
  long long traps = 10000;
  double gamma = 2.0;
  int max_order = 8;
  double beta = 2.0;
  std::vector<double> betas;
  std::int64_t t_max = 1000000;
  std::vector<std::int64_t> checkpoints;
  std::vector<long long> x_checkpoints;
  int replicates = 20;
  std::uint64_t seed = 1;
  unsigned jobs = 0;
  std::string output;
  std::vector<long long> start;
  std::string trajectory;
  std::int64_t stride = 1;
  std::vector<long long> window;
  std::vector<long long> vertex;
  long long horizon = 200;
  std::vector<long long> entrances{1, 2, 5};
  long long core_len = 5;
  std::size_t samples = 100000;
  std::vector<int> orders{2, 3};
  std::size_t return_samples = 100000;
  int k = 1;
  std::optional<int> n;
};

namespace detail {

template <typename T>
void read_field(const nlohmann::json& j, const std::string& where, T& into) {
  if constexpr (std::is_integral_v<T>) {
    if (!j.is_number_integer()) throw ConfigError(where + ": expected an integer");
    if (std::is_unsigned_v<T> && !j.is_number_unsigned()) throw ConfigError(where + ": expected a non-negative integer");
  }
  try {
    into = j.get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

// 1-based line of the first `"key":` in the text, or 0 if not found.
inline std::size_t key_line(const std::string& text, const std::string& key) {
  const std::string quoted = "\"" + key + "\"";
  for (std::size_t pos = text.find(quoted); pos != std::string::npos; pos = text.find(quoted, pos + 1)) {
    std::size_t after = text.find_first_not_of(" \t\r\n", pos + quoted.size());
    if (after != std::string::npos && text[after] == ':')
      return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
  }
  return 0;
}

}  // namespace detail

inline ExperimentConfig load_config(const std::string& path, ExperimentConfig cfg = {}) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config '" + path + "': top level must be an object");
  using detail::read_field;
  for (const auto& [key, v] : j.items()) {
    const std::size_t line = detail::key_line(text, key);
    const std::string where =
        "config '" + path + "'" + (line ? ":" + std::to_string(line) : "") + " field '" + key + "'";
    if (key == "model") read_field(v, where, cfg.model);
    else if (key == "alpha") read_field(v, where, cfg.alpha);
    else if (key == "traps") read_field(v, where, cfg.traps);
    else if (key == "gamma") read_field(v, where, cfg.gamma);
    else if (key == "max_order") read_field(v, where, cfg.max_order);
    else if (key == "beta") read_field(v, where, cfg.beta);
    else if (key == "betas") read_field(v, where, cfg.betas);
    else if (key == "t_max") read_field(v, where, cfg.t_max);
    else if (key == "checkpoints") read_field(v, where, cfg.checkpoints);
    else if (key == "x_checkpoints") read_field(v, where, cfg.x_checkpoints);
    else if (key == "replicates") read_field(v, where, cfg.replicates);
    else if (key == "seed") read_field(v, where, cfg.seed);
    else if (key == "jobs") read_field(v, where, cfg.jobs);
    else if (key == "output") read_field(v, where, cfg.output);
    else if (key == "start") read_field(v, where, cfg.start);
    else if (key == "trajectory") read_field(v, where, cfg.trajectory);
    else if (key == "stride") read_field(v, where, cfg.stride);
    else if (key == "window") read_field(v, where, cfg.window);
    else if (key == "vertex") read_field(v, where, cfg.vertex);
    else if (key == "horizon") read_field(v, where, cfg.horizon);
    else if (key == "entrances") read_field(v, where, cfg.entrances);
    else if (key == "core_len") read_field(v, where, cfg.core_len);
    else if (key == "samples") read_field(v, where, cfg.samples);
    else if (key == "orders") read_field(v, where, cfg.orders);
    else if (key == "return_samples") read_field(v, where, cfg.return_samples);
    else if (key == "k") read_field(v, where, cfg.k);
    else if (key == "n") {
      int n = 0;
      read_field(v, where, n);
      cfg.n = n;
    } else {
      throw ConfigError(where + ": unknown field");
    }
  }
  return cfg;
}

namespace detail {

inline std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline std::string num(long double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.18Lg", v);
  return buf;
}

inline std::string vertex_text(Vertex v) { return "(" + to_string(v.x) + "," + to_string(v.y) + ")"; }

inline Model parse_model(const std::string& m) {
  if (m == "warmup") return Model::Warmup;
  if (m == "fractal") return Model::Fractal;
  throw ConfigError("model must be \"warmup\" or \"fractal\", got \"" + m + "\"");
}

inline ModelSpec model_spec(const ExperimentConfig& c) {
  ModelSpec m;
  m.model = parse_model(c.model);
  m.alpha = c.alpha;
  m.trap_count = c.traps;
  m.gamma = c.gamma;
  m.max_order = c.max_order;
  if (!(c.alpha > 0)) throw ConfigError("alpha must be positive");
  if (c.traps < 0) throw ConfigError("traps must be non-negative");
  if (!(c.gamma > 1)) throw ConfigError("gamma must be > 1");
  return m;
}

inline AnyConfig build(const ExperimentConfig& c) {
  try {
    return make_config(model_spec(c));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

inline Bias bias_of(double beta) {
  if (!(beta > 1)) throw ConfigError("beta must be > 1, got " + num(beta));
  return Bias(beta);
}

inline std::optional<Vertex> vertex_of(const std::vector<long long>& v, const char* field) {
  if (v.empty()) return std::nullopt;
  if (v.size() != 2) throw ConfigError(std::string(field) + " needs exactly two coordinates");
  return Vertex{v[0], v[1]};
}

inline std::string model_text(const ExperimentConfig& c) {
  if (c.model == "warmup") return "model=warmup alpha=" + num(c.alpha) + " traps=" + std::to_string(c.traps);
  return "model=fractal gamma=" + num(c.gamma) + " max_order=" + std::to_string(c.max_order);
}

/// Writes to the named file, or to `out` when the name is empty.
inline void emit(const std::string& path, std::ostream& out, const std::function<void(std::ostream&)>& body) {
  if (path.empty()) {
    body(out);
    return;
  }
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot open output file '" + path + "'");
  body(f);
}

inline void add_model_options(CLI::App* app, ExperimentConfig& c) {
  app->add_option("--model", c.model, "Configuration: warmup or fractal")->capture_default_str();
  app->add_option("--alpha", c.alpha, "Warm-up entrance growth: e_n = ceil(alpha ln n)")->capture_default_str();
  app->add_option("--traps", c.traps, "Warm-up traps materialised (0 = naked line)")->capture_default_str();
  app->add_option("--gamma", c.gamma, "Fractal parameter; critical drift equals gamma")->capture_default_str();
  app->add_option("--max-order", c.max_order, "Fractal truncation order")->capture_default_str();
}

inline int cmd_gen(const ExperimentConfig& c, std::ostream& out, std::ostream& err, bool audit) {
  if (c.window.size() != 4) throw ConfigError("window needs four values: x0 x1 y0 y1");
  const Window w{c.window[0], c.window[1], c.window[2], c.window[3]};
  const AnyConfig cfg = build(c);
  const std::vector<Edge> edges = std::visit([&](const auto& o) { return window_edges(o, w); }, cfg);
  emit(c.output, out, [&](std::ostream& os) {
    for (const Edge& e : edges)
      os << to_string(e.a().x) << ' ' << to_string(e.a().y) << ' ' << to_string(e.b().x) << ' ' << to_string(e.b().y)
         << '\n';
  });
  if (!audit) return 0;
  const AuditReport rep = std::visit([&](const auto& o) { return audit_window(o, w); }, cfg);
  err << "audit: " << rep.summary() << '\n';
  for (const auto& m : rep.messages) err << "  " << m << '\n';
  return rep.ok() ? 0 : 1;
}

inline int cmd_walk(const ExperimentConfig& c, std::ostream& out) {
  const AnyConfig cfg = build(c);
  const Bias bias = bias_of(c.beta);
  const Model model = parse_model(c.model);
  const Vertex start = vertex_of(c.start, "start").value_or(default_start(model));
  if (c.t_max < 1) throw ConfigError("t_max must be >= 1");
  if (c.stride < 1) throw ConfigError("stride must be >= 1");
  WalkOptions opt;
  opt.t_max = c.t_max;
  opt.record_first_passage = false;

  std::unique_ptr<std::ofstream> traj;
  std::int64_t last_written = -1;
  struct Last {
    std::int64_t t = 0;
    Vertex pos;
    std::optional<long long> trap;
  } last;
  auto row = [&](const Last& s) {
    *traj << s.t << ',' << to_string(s.pos.x) << ',' << to_string(s.pos.y) << ',' << (s.trap ? 1 : 0) << ','
          << (s.trap ? std::to_string(*s.trap) : "NA") << '\n';
    last_written = s.t;
  };
  if (!c.trajectory.empty()) {
    traj = std::make_unique<std::ofstream>(c.trajectory);
    if (!*traj) throw ConfigError("cannot open trajectory file '" + c.trajectory + "'");
    *traj << "t,x,y,in_trap,trap_index\n";
    opt.observer = [&](std::int64_t t, Vertex v, const TrapVisitRecord* visit) {
      last = {t, v, visit ? std::optional<long long>(visit->trap_index) : std::nullopt};
      if (t % c.stride == 0) row(last);
    };
  }

  Rng rng = replicate_rng(c.seed, 0);
  if (std::visit([&](const auto& o) { return o.neighbors(start).empty(); }, cfg))
    throw ConfigError("start vertex " + vertex_text(start) + " is not in the configuration");
  WalkRecord rec;
  try {
    rec = std::visit([&](const auto& o) { return run(start, o, bias, opt, rng); }, cfg);
  } catch (const TruncationError& e) {
    out << "# walk " << model_text(c) << " beta=" << num(c.beta) << " seed=" << c.seed << "\n";
    out << "aborted: " << e.what() << "\n";
    return 1;
  }
  if (traj && last_written != last.t) row(last);

  std::size_t hits = 0, completed = 0;
  std::int64_t longest = 0, trap_time = 0;
  for (const auto& v : rec.trap_visits) {
    hits += v.hit_core;
    completed += v.completed;
    longest = std::max(longest, v.duration);
    trap_time += v.duration;
  }
  out << "# walk " << model_text(c) << " beta=" << num(c.beta) << " t_max=" << c.t_max << " seed=" << c.seed
      << " start=" << vertex_text(start) << "\n";
  out << "time " << rec.time << "\n";
  out << "position " << to_string(rec.position.x) << ' ' << to_string(rec.position.y) << "\n";
  out << "speed " << num(static_cast<double>(rec.position.x - start.x) / static_cast<double>(rec.time)) << "\n";
  out << "trap_visits " << rec.trap_visits.size() << "\n";
  out << "completed_visits " << completed << "\n";
  out << "core_hits " << hits << "\n";
  out << "longest_visit " << longest << "\n";
  out << "time_in_traps " << trap_time << "\n";
  out << "time_on_path " << rec.time_on_path << "\n";
  out << "time_off_path " << rec.time_off_path << "\n";
  out << "time_in_traps_on_path " << rec.time_in_traps_on_path << "\n";
  return 0;
}

inline int cmd_lemmas(const ExperimentConfig& c, std::ostream& out) {
  LemmaSuiteSpec spec;
  spec.betas = c.betas.empty() ? std::vector<double>{1.5, 2.0, 3.0} : c.betas;
  spec.entrances = c.entrances;
  spec.core_len = c.core_len;
  spec.samples = c.samples;
  spec.seed = c.seed;
  spec.jobs = c.jobs;
  for (double b : spec.betas) bias_of(b);
  for (long long e : spec.entrances)
    if (e < 1) throw ConfigError("entrances must be >= 1");
  if (spec.entrances.empty()) throw ConfigError("entrances must be non-empty");
  if (c.core_len < 1) throw ConfigError("core_len must be >= 1");
  if (c.samples < 2 || c.return_samples < 2) throw ConfigError("samples must be >= 2");
  for (int k : c.orders)
    if (k < 1 || k > 4 || k >= c.max_order) throw ConfigError("orders must lie in 1..4 and below max_order");

  std::vector<LemmaRow> rows = lemma_suite(spec);
  const FractalConfig frac(c.gamma, c.max_order);
  std::uint64_t stream = 0;
  for (double beta : spec.betas) {
    for (const ReturnTimeRow& r : return_time_check(frac, Bias(beta), c.orders, c.return_samples,
                                                    replicate_seed(c.seed ^ 0x5deece66dULL, stream++), c.jobs)) {
      const std::string name = "return_" + r.kind + "_k" + std::to_string(r.order);
      rows.push_back({name, beta, std::nullopt, std::nullopt, r.mean, r.stderr_, r.bound, r.within_bound && r.min >= 2});
      rows.push_back({name + "_stationary", beta, std::nullopt, std::nullopt, r.mean, r.stderr_, r.stationary,
                      r.matches_stationary});
    }
  }
  bool all = true;
  for (const auto& r : rows) all = all && r.pass;
  std::ostringstream prov;
  prov << "lemmas seed=" << c.seed << " samples=" << c.samples << " return_samples=" << c.return_samples
       << " gamma=" << num(c.gamma);
  emit(c.output, out, [&](std::ostream& os) { write_lemma_csv(os, rows, prov.str()); });
  return all ? 0 : 1;
}

inline int cmd_census(const ExperimentConfig& c, std::ostream& out) {
  FractalConfig frac = [&] {
    try {
      return FractalConfig(c.gamma, c.max_order);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }();
  CensusResult r;
  Rational expect;
  try {
    if (c.n) {
      r = census_horizontal(c.k, *c.n, frac);
      expect = census_horizontal_formula(c.k, *c.n);
    } else {
      r = census_vertical(c.k, frac);
      expect = census_vertical_formula(c.k);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  out << to_string(r.probability.num()) << '/' << to_string(r.probability.den()) << '\n';
  return r.probability == expect ? 0 : 1;
}

inline int cmd_escape(const ExperimentConfig& c, std::ostream& out) {
  const AnyConfig cfg = build(c);
  const Bias bias = bias_of(c.beta);
  const auto v = vertex_of(c.vertex, "vertex");
  if (!v) throw ConfigError("escape needs --vertex x y");
  if (c.horizon < 0) throw ConfigError("horizon must be non-negative");
  if (std::visit([&](const auto& o) { return o.neighbors(*v).empty(); }, cfg))
    throw ConfigError("vertex " + vertex_text(*v) + " is not in the configuration");
  try {
    const auto [p, r] = std::visit(
        [&](const auto& o) {
          return std::pair{escape_probability(*v, o, bias, c.horizon), resistance_to_infinity(*v, o, bias, c.horizon)};
        },
        cfg);
    out << "# escape " << model_text(c) << " beta=" << num(c.beta) << " vertex=" << vertex_text(*v)
        << " horizon=" << c.horizon << "\n";
    out << "p_esc_lo " << num(p.lo) << "\n";
    out << "p_esc_hi " << num(p.hi) << "\n";
    out << "resistance_lo " << num(r.value.lo) << "\n";
    out << "resistance_hi " << num(r.value.hi) << "\n";
    out << "resistance_unit beta^-" << to_string(r.ref_x) << "\n";
    out << "cutoff_x " << to_string(r.cutoff_x) << "\n";
  } catch (const TruncationError& e) {
    out << "aborted: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

inline int cmd_sweep(const ExperimentConfig& c, std::ostream& out) {
  ReplicateSpec spec;
  spec.model = model_spec(c);
  spec.start = vertex_of(c.start, "start");
  spec.t_max = c.t_max;
  spec.time_checkpoints = c.checkpoints.empty() ? std::vector<std::int64_t>{c.t_max} : c.checkpoints;
  for (long long x : c.x_checkpoints) spec.x_checkpoints.push_back(x);
  spec.replicates = c.replicates;
  spec.seed = c.seed;
  spec.jobs = c.jobs;
  const std::vector<double> betas = c.betas.empty() ? std::vector<double>{c.beta} : c.betas;
  for (double b : betas) bias_of(b);
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const SweepResult res = speed_sweep(spec, betas);
  std::ostringstream prov;
  prov << "sweep " << model_text(c) << " t_max=" << c.t_max << " replicates=" << c.replicates << " seed=" << c.seed;
  emit(c.output, out, [&](std::ostream& os) { write_sweep_csv(os, res, prov.str()); });
  return 0;
}

/// Returns the value of --config if present; the file is loaded before the
/// flags are parsed so that flags take precedence.
inline std::optional<std::string> find_config_path(int argc, const char* const* argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--config" && i + 1 < argc) return std::string(argv[i + 1]);
    if (a.rfind("--config=", 0) == 0) return a.substr(9);
  }
  return std::nullopt;
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  using namespace detail;
  ExperimentConfig c;
  try {
    if (auto path = find_config_path(argc, argv)) c = load_config(*path);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  CLI::App app{"Biased random walks on trap-laden percolation configurations"};
  app.footer(
      "Every subcommand accepts --config FILE (JSON object; unknown fields are rejected).\n"
      "Flags given on the command line override values from the config file.\n"
      "Exit status: 0 success, 1 verification failure or truncation, 2 configuration error.");
  app.require_subcommand(1);
  std::string config_path;
  auto with_config = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON experiment config; flags override its values");
  };

  bool audit = false;
  auto* gen = app.add_subcommand("gen", "Dump open edges in a window as 'x1 y1 x2 y2', sorted");
  with_config(gen);
  add_model_options(gen, c);
  gen->add_option("--window", c.window, "Window x0 x1 y0 y1 (inclusive)")->expected(4);
  gen->add_option("--output,-o", c.output, "Write edges to this file instead of stdout");
  gen->add_flag("--audit", audit, "Also audit the window; report on stderr, exit 1 on violations");

  auto* walk = app.add_subcommand("walk", "Run one instrumented walk and print a summary");
  with_config(walk);
  add_model_options(walk, c);
  walk->add_option("--beta", c.beta, "Drift beta > 1")->capture_default_str();
  walk->add_option("--tmax,--t-max", c.t_max, "Number of steps")->capture_default_str();
  walk->add_option("--seed", c.seed, "Master seed (the walk uses replicate 0)")->capture_default_str();
  walk->add_option("--start", c.start, "Start vertex x y (default (0,0) warm-up, (0,3) fractal)")->expected(2);
  walk->add_option("--trajectory", c.trajectory, "Write t,x,y,in_trap,trap_index rows to this CSV file");
  walk->add_option("--stride", c.stride, "Write every stride-th trajectory row (the last is always written)")
      ->capture_default_str();

  auto* lemmas = app.add_subcommand("lemmas", "Trap lemma suite and corner/root return-time checks (CSV)");
  with_config(lemmas);
  lemmas->add_option("--betas", c.betas, "Drift grid (default 1.5 2 3)");
  lemmas->add_option("--entrances", c.entrances, "Entrance lengths")->capture_default_str();
  lemmas->add_option("--core-len", c.core_len, "Core length for the sojourn check")->capture_default_str();
  lemmas->add_option("--samples", c.samples, "Monte Carlo samples per lemma check")->capture_default_str();
  lemmas->add_option("--orders", c.orders, "Branch orders for return times (1..4)")->capture_default_str();
  lemmas->add_option("--return-samples", c.return_samples, "Excursions per return-time check")->capture_default_str();
  lemmas->add_option("--gamma", c.gamma, "Fractal parameter for return times")->capture_default_str();
  lemmas->add_option("--max-order", c.max_order, "Fractal truncation order")->capture_default_str();
  lemmas->add_option("--seed", c.seed, "Master seed")->capture_default_str();
  lemmas->add_option("--jobs", c.jobs, "Worker threads (0 = all cores)")->capture_default_str();
  lemmas->add_option("--output,-o", c.output, "Write CSV to this file instead of stdout");

  std::optional<int> n_flag;
  auto* census = app.add_subcommand("census", "Exact shift census; prints the probability as p/q");
  with_config(census);
  census->add_option("--k", c.k, "Branch order")->capture_default_str();
  census->add_option("--n", n_flag, "Horizontal census over b(n) shifts; omit for the vertical census");
  census->add_option("--gamma", c.gamma, "Fractal parameter")->capture_default_str();
  census->add_option("--max-order", c.max_order, "Fractal truncation order")->capture_default_str();

  auto* escape = app.add_subcommand("escape", "Escape probability interval at a vertex");
  with_config(escape);
  add_model_options(escape, c);
  escape->add_option("--beta", c.beta, "Drift beta > 1")->capture_default_str();
  escape->add_option("--vertex", c.vertex, "Vertex x y")->expected(2);
  escape->add_option("--horizon", c.horizon, "Columns summed explicitly before the tail bound")
      ->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "Speed sweep over a beta grid (CSV)");
  with_config(sweep);
  add_model_options(sweep, c);
  sweep->add_option("--beta", c.beta, "Single drift, used when --betas is absent")->capture_default_str();
  sweep->add_option("--betas", c.betas, "Drift grid");
  sweep->add_option("--tmax,--t-max", c.t_max, "Steps per replicate")->capture_default_str();
  sweep->add_option("--checkpoints", c.checkpoints, "Times at which X_t/t is summarised (default t_max)");
  sweep->add_option("--x-checkpoints", c.x_checkpoints, "Columns x at which U(x)/x is summarised");
  sweep->add_option("--start", c.start, "Start vertex x y")->expected(2);
  sweep->add_option("--replicates", c.replicates, "Replicates per beta")->capture_default_str();
  sweep->add_option("--seed", c.seed, "Master seed")->capture_default_str();
  sweep->add_option("--jobs", c.jobs, "Worker threads (0 = all cores)")->capture_default_str();
  sweep->add_option("--output,-o", c.output, "Write CSV to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return 2;
  }
  if (n_flag) c.n = n_flag;

  try {
    if (gen->parsed()) return cmd_gen(c, out, err, audit);
    if (walk->parsed()) return cmd_walk(c, out);
    if (lemmas->parsed()) return cmd_lemmas(c, out);
    if (census->parsed()) return cmd_census(c, out);
    if (escape->parsed()) return cmd_escape(c, out);
    if (sweep->parsed()) return cmd_sweep(c, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const TruncationError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace trapwalk::cli
