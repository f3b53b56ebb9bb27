// The beta-biased walk on a configuration oracle, with trap-visit and
// first-passage instrumentation.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "trapwalk/lattice.hpp"
#include "trapwalk/network.hpp"
#include "trapwalk/rational.hpp"
#include "trapwalk/rng.hpp"
#include "trapwalk/structure.hpp"
#include "trapwalk/trap.hpp"

namespace trapwalk {

/// Law of the next step from a vertex with open steps n. An empty
/// neighbourhood yields no moves and stay = true.
template <typename T>
struct StepLaw {
  std::vector<std::pair<Direction, T>> moves;
  bool stay = false;
};

/// Right gets beta / (beta + l - 1) when open, every other open step
/// 1 / (beta + l - 1); without a right step the choice is uniform.
template <typename T>
StepLaw<T> step_distribution(Neighborhood n, const T& beta) {
  StepLaw<T> law;
  const int l = n.size();
  if (l == 0) {
    law.stay = true;
    return law;
  }
  if (n.has(Direction::Right)) {
    const T denom = beta + T(l - 1);
    for (Direction d : kDirections)
      if (n.has(d)) law.moves.emplace_back(d, d == Direction::Right ? beta / denom : T(1) / denom);
  } else {
    for (Direction d : kDirections)
      if (n.has(d)) law.moves.emplace_back(d, T(1) / T(l));
  }
  return law;
}

/// Samples the next direction; nullopt means stay put.
inline std::optional<Direction> sample_step(Neighborhood n, double beta, Rng& rng) {
  const int l = n.size();
  if (l == 0) return std::nullopt;
  Direction dirs[4];
  int m = 0;
  for (Direction d : kDirections)
    if (n.has(d) && d != Direction::Right) dirs[m++] = d;
  const double u = uniform01(rng);
  if (n.has(Direction::Right)) {
    const double total = beta + (l - 1);
    const double s = u * total;
    if (s < beta) return Direction::Right;
    int k = static_cast<int>(s - beta);
    return dirs[k < m ? k : m - 1];
  }
  int k = static_cast<int>(u * l);
  return dirs[k < m ? k : m - 1];
}

enum class StopRule { TimeHorizon, FirstPassageX, ReturnToStart };

struct TrapVisitRecord {
  long long trap_index = 0;  // warm-up trap number, or order of the owning branch
  Vertex anchor;
  long long visit_number = 0;  // 1-based count of visits to this trap
  std::int64_t start = 0;      // time of the step from the anchor into the trap
  std::int64_t duration = 0;   // time until the walk is next at the anchor
  bool hit_core = false;
  bool completed = false;  // false if the walk ended inside the trap
  bool on_path = false;    // anchor lies on the escape path of the start vertex

  std::int64_t t_star() const { return hit_core ? 0 : duration; }
};

struct AnchorArrival {
  long long trap_index = 0;
  Vertex anchor;
  Coord core_len = 0;
  std::int64_t time = 0;
};

struct WalkOptions {
  std::int64_t t_max = 1000000;
  StopRule stop = StopRule::TimeHorizon;
  Coord target_x = 0;  // for FirstPassageX
  std::optional<Direction> forced_first_step;
  std::vector<std::int64_t> time_checkpoints;  // record positions at these times
  bool record_first_passage = true;
  bool track_path = true;               // on/off-path time decomposition
  bool track_anchor_arrivals = false;   // first arrival time at each anchor
  /// Called for t = 0..final time with the position at time t and the trap
  /// currently being visited (nullptr outside traps).
  std::function<void(std::int64_t, Vertex, const TrapVisitRecord*)> observer;
};

struct WalkRecord {
  Vertex start;
  Vertex position;        // position at `time`
  std::int64_t time = 0;  // steps taken
  bool stopped = false;   // stop condition met before t_max
  /// first_passage[i] = U(start.x + i), the first time with X_t = start.x + i.
  std::vector<std::int64_t> first_passage;
  std::vector<TrapVisitRecord> trap_visits;
  std::vector<AnchorArrival> anchor_arrivals;
  std::vector<std::pair<std::int64_t, Vertex>> checkpoints;
  std::int64_t time_on_path = 0;
  std::int64_t time_off_path = 0;
  std::int64_t time_in_traps_on_path = 0;

  std::optional<std::int64_t> first_passage_time(Coord x) const {
    if (x < start.x) return std::nullopt;
    const Coord i = x - start.x;
    if (i >= static_cast<Coord>(first_passage.size())) return std::nullopt;
    return first_passage[static_cast<std::size_t>(i)];
  }

  friend bool operator==(const WalkRecord& a, const WalkRecord& b) {
    auto same_visits = [](const std::vector<TrapVisitRecord>& p, const std::vector<TrapVisitRecord>& q) {
      if (p.size() != q.size()) return false;
      for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i].trap_index != q[i].trap_index || p[i].anchor != q[i].anchor || p[i].start != q[i].start ||
            p[i].duration != q[i].duration || p[i].hit_core != q[i].hit_core || p[i].completed != q[i].completed)
          return false;
      return true;
    };
    return a.start == b.start && a.position == b.position && a.time == b.time && a.stopped == b.stopped &&
           a.first_passage == b.first_passage && same_visits(a.trap_visits, b.trap_visits) &&
           a.checkpoints == b.checkpoints && a.time_on_path == b.time_on_path &&
           a.time_off_path == b.time_off_path && a.time_in_traps_on_path == b.time_in_traps_on_path;
  }
};

/// Runs one trajectory. Throws TruncationError if the walk reaches the
/// truncation column of the configuration.
template <typename Oracle>
WalkRecord run(Vertex start, const Oracle& oracle, const Bias& bias, const WalkOptions& opt, Rng& rng) {
  if (opt.t_max < 0) throw std::invalid_argument("t_max must be non-negative");
  if (oracle.neighbors(start).empty()) throw std::invalid_argument("start vertex is not in the configuration");
  const double beta = bias.beta;
  WalkRecord rec;
  rec.start = start;
  rec.position = start;
  if (opt.record_first_passage) rec.first_passage.push_back(0);

  std::optional<EscapePath> path;
  if (opt.track_path) path = oracle.escape_path(start);
  std::map<Vertex, long long> visit_counts;
  std::map<Vertex, bool> arrived;
  std::optional<TrapVisitRecord> visit;
  std::size_t next_checkpoint = 0;
  Vertex pos = start;
  Coord max_x = start.x;
  std::int64_t t = 0;

  auto at_time = [&]() {
    while (next_checkpoint < opt.time_checkpoints.size() && opt.time_checkpoints[next_checkpoint] == t) {
      rec.checkpoints.emplace_back(t, pos);
      ++next_checkpoint;
    }
    while (next_checkpoint < opt.time_checkpoints.size() && opt.time_checkpoints[next_checkpoint] < t) ++next_checkpoint;
    if (opt.observer) opt.observer(t, pos, visit && pos != visit->anchor ? &*visit : nullptr);
    if (opt.track_anchor_arrivals && !arrived.count(pos)) {
      if (auto a = oracle.anchored_trap(pos)) {
        arrived[pos] = true;
        rec.anchor_arrivals.push_back({a->index, a->anchor, a->core_len, t});
      }
    }
  };
  auto stop_now = [&]() {
    switch (opt.stop) {
      case StopRule::TimeHorizon: return false;
      case StopRule::FirstPassageX: return pos.x >= opt.target_x;
      case StopRule::ReturnToStart: return t > 0 && pos == start;
    }
    return false;
  };

  at_time();
  while (t < opt.t_max && !(rec.stopped = stop_now())) {
    // Attribute time t to the position occupied during [t, t+1).
    if (opt.track_path) {
      const bool in_trap = visit && pos != visit->anchor;
      if (!in_trap && path->contains(pos)) {
        ++rec.time_on_path;
      } else {
        ++rec.time_off_path;
        if (in_trap && visit->on_path) ++rec.time_in_traps_on_path;
      }
    }
    if (pos.x >= oracle.truncation_x())
      throw TruncationError("walk reached the truncation column at t = " + std::to_string(t));
    const Neighborhood n = oracle.neighbors(pos);
    std::optional<Direction> d;
    if (t == 0 && opt.forced_first_step) {
      if (!n.has(*opt.forced_first_step)) throw std::invalid_argument("forced first step is not open");
      d = opt.forced_first_step;
    } else {
      d = sample_step(n, beta, rng);
    }
    const Vertex prev = pos;
    if (d) pos = step(pos, *d);
    ++t;

    if (visit) {
      if (pos == visit->anchor) {
        visit->duration = t - visit->start;
        visit->completed = true;
        rec.trap_visits.push_back(*visit);
        visit.reset();
      } else if (pos.y == visit->anchor.y + 2) {
        visit->hit_core = true;
      }
    } else if (d == Direction::Up) {
      if (auto trap = oracle.anchored_trap(prev)) {
        TrapVisitRecord v;
        v.trap_index = trap->index;
        v.anchor = trap->anchor;
        v.visit_number = ++visit_counts[trap->anchor];
        v.start = t - 1;
        v.on_path = opt.track_path && path->contains(trap->anchor);
        visit = v;
      }
    }
    if (opt.record_first_passage && pos.x > max_x) {
      max_x = pos.x;
      rec.first_passage.push_back(t);
    }
    at_time();
  }
  if (!rec.stopped) rec.stopped = stop_now();
  if (visit) {
    visit->duration = t - visit->start;
    rec.trap_visits.push_back(*visit);
  }
  rec.position = pos;
  rec.time = t;
  return rec;
}

/// One visit to a trap whose entrance runs left forever from (0, 1) above the
/// anchor (0, 0), with no core. Counts the entering step, so the shortest
/// visit (up, then straight back down) lasts 2.
inline std::int64_t sample_infinite_entrance_excursion(const Bias& bias, Rng& rng,
                                                       std::int64_t cap = 1000000000) {
  const double beta = bias.beta;
  std::int64_t t = 1;
  Coord x = 0;  // column on the entrance row; the anchor is below column 0
  for (;;) {
    Neighborhood n;
    if (x == 0) {
      n.add(Direction::Down);
      n.add(Direction::Left);
    } else {
      n.add(Direction::Right);
      n.add(Direction::Left);
    }
    const Direction d = *sample_step(n, beta, rng);
    ++t;
    if (d == Direction::Down) return t;
    x += d == Direction::Right ? 1 : -1;
    if (t >= cap) throw std::runtime_error("excursion exceeded its cap; is beta > 1?");
  }
}

struct ZeroSpeedReport {
  std::vector<Coord> checkpoints;
  std::vector<std::optional<double>> ratios;  // U(x)/x, missing if x was not reached
  struct Event {
    long long trap_index = 0;
    Vertex anchor;
    std::int64_t arrival = 0;
    bool entered = false;
    bool occurred = false;
  };
  std::vector<Event> events;
};

/// First-passage ratios U(x)/x at the checkpoints, and for every anchor the
/// walk reached whether it entered that trap on its first arrival and stayed
/// at least beta^c (compared in logarithms; an unfinished visit that reached
/// the core also counts).
inline ZeroSpeedReport zero_speed_detector(const WalkRecord& rec, const std::vector<Coord>& checkpoints, double beta) {
  ZeroSpeedReport rep;
  for (Coord x : checkpoints) {
    if (x == 0) continue;
    rep.checkpoints.push_back(x);
    auto u = rec.first_passage_time(x);
    rep.ratios.push_back(u ? std::optional<double>(static_cast<double>(*u) / static_cast<double>(x)) : std::nullopt);
  }
  for (const AnchorArrival& a : rec.anchor_arrivals) {
    ZeroSpeedReport::Event ev;
    ev.trap_index = a.trap_index;
    ev.anchor = a.anchor;
    ev.arrival = a.time;
    for (const TrapVisitRecord& v : rec.trap_visits) {
      if (v.anchor != a.anchor || v.start != a.time) continue;
      ev.entered = true;
      const double need = static_cast<double>(a.core_len) * std::log(beta);
      const bool long_enough = v.duration > 0 && std::log(static_cast<double>(v.duration)) >= need;
      ev.occurred = long_enough || (!v.completed && v.hit_core);
    }
    rep.events.push_back(ev);
  }
  return rep;
}

}  // namespace trapwalk
