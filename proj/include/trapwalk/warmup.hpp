// Warm-up configuration: the half-line {(x,0): x >= 0} with traps hanging
// above anchors (d_n, 0).
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "trapwalk/lattice.hpp"
#include "trapwalk/structure.hpp"
#include "trapwalk/trap.hpp"

namespace trapwalk {

/// ceil(v) that treats values within 1e-9 above an integer as that integer,
/// so that e.g. log(4)/log(2) does not round up to 3.
inline long long robust_ceil(long double v) { return static_cast<long long>(std::ceil(v - 1e-9L)); }

class WarmupConfig {
 public:
  /// Default trap sequence: d_n = n^3, e_n = max(1, ceil(alpha ln n)), c_n = n,
  /// for n = 1..trap_count, with small-index corrections (see fit_constraints).
  static WarmupConfig standard(double alpha, long long trap_count = 10000) {
    if (!(alpha > 0)) throw std::invalid_argument("alpha must be positive");
    if (trap_count < 0) throw std::invalid_argument("trap count must be non-negative");
    std::vector<TrapSpec> traps;
    traps.reserve(static_cast<std::size_t>(trap_count));
    for (long long n = 1; n <= trap_count; ++n) {
      Coord d = checked_mul(checked_mul(n, n), n);
      long long e = std::max(1LL, robust_ceil(static_cast<long double>(alpha) * std::log(static_cast<long double>(n))));
      traps.push_back(TrapSpec{{d, 0}, e, n, n});
    }
    fit_constraints(traps);
    WarmupConfig cfg(std::move(traps));
    cfg.alpha_ = alpha;
    return cfg;
  }

  /// The bare half-line, no traps.
  static WarmupConfig naked() { return WarmupConfig({}); }

  /// Explicit trap list; anchors must lie on the x-axis, be strictly
  /// increasing, and satisfy the non-overlap constraints.
  static WarmupConfig with_traps(std::vector<TrapSpec> traps) {
    validate(traps);
    return WarmupConfig(std::move(traps));
  }

  /// Shrink c_{n-1} first, then e_n, until both non-overlap constraints hold:
  ///   e_n < d_n - d_{n-1}  and  e_n + c_{n-1} - e_{n-1} < d_n - d_{n-1}.
  /// Also keeps the first trap inside x >= 0.
  static void fit_constraints(std::vector<TrapSpec>& traps) {
    if (!traps.empty() && traps[0].anchor.x - traps[0].entrance_len < 0)
      traps[0].entrance_len = std::max<Coord>(1, traps[0].anchor.x);
    for (std::size_t i = 1; i < traps.size(); ++i) {
      TrapSpec& prev = traps[i - 1];
      TrapSpec& cur = traps[i];
      const Coord gap = cur.anchor.x - prev.anchor.x;
      if (gap <= 1) throw std::invalid_argument("anchors too close to fit any trap");
      if (cur.entrance_len >= gap) cur.entrance_len = gap - 1;
      while (cur.entrance_len + prev.core_len - prev.entrance_len >= gap) {
        if (prev.core_len > 1) {
          prev.core_len = std::max<Coord>(1, gap - 1 - cur.entrance_len + prev.entrance_len);
        } else if (cur.entrance_len > 1) {
          --cur.entrance_len;
        } else {
          throw std::invalid_argument("cannot satisfy trap non-overlap constraints");
        }
      }
    }
    validate(traps);
  }

  static void validate(const std::vector<TrapSpec>& traps) {
    for (std::size_t i = 0; i < traps.size(); ++i) {
      const TrapSpec& t = traps[i];
      t.validate();
      if (t.anchor.y != 0) throw std::invalid_argument("warm-up anchors must lie on the x-axis");
      if (t.left() < 0) throw std::invalid_argument("trap extends to x < 0");
      if (i == 0) continue;
      const TrapSpec& p = traps[i - 1];
      const Coord gap = t.anchor.x - p.anchor.x;
      if (gap <= 0) throw std::invalid_argument("anchors must be strictly increasing");
      if (!(t.entrance_len < gap))
        throw std::invalid_argument("entrance of trap " + std::to_string(t.index) + " overlaps its predecessor");
      if (!(t.entrance_len + p.core_len - p.entrance_len < gap))
        throw std::invalid_argument("core of trap " + std::to_string(p.index) + " overlaps its successor");
    }
  }

  const std::vector<TrapSpec>& traps() const { return traps_; }
  std::optional<double> alpha() const { return alpha_; }

  Neighborhood neighbors(Vertex v) const {
    Neighborhood n;
    if (v.y == 0) {
      if (v.x < 0) return n;
      n.add(Direction::Right);
      if (v.x > 0) n.add(Direction::Left);
      if (anchored_at(v)) n.add(Direction::Up);
      return n;
    }
    if (v.y == 1 || v.y == 2) {
      if (const TrapSpec* t = trap_covering(v.x)) {
        if (auto tn = trap_neighborhood(*t, v)) return *tn;
      }
    }
    return n;
  }

  std::optional<TrapCell> trap_cell(Vertex v) const {
    if (v.y != 1 && v.y != 2) return std::nullopt;
    const TrapSpec* t = trap_covering(v.x);
    return t ? trapwalk::trap_cell(*t, v) : std::nullopt;
  }

  /// Trap whose anchor is v, if any.
  std::optional<TrapSpec> anchored_trap(Vertex v) const {
    if (const TrapSpec* t = anchored_at(v)) return *t;
    return std::nullopt;
  }

  /// Every line vertex bounds the remaining path resistance by its horizontal tail.
  bool pairing_point(Vertex w) const { return w.y == 0 && w.x >= 0; }

  /// The configuration has no truncation boundary.
  Coord truncation_x() const { return std::numeric_limits<Coord>::max(); }

  /// Next vertex on the unique path to infinity.
  Vertex escape_step(Vertex v) const {
    if (v.y == 0 && v.x >= 0) return {checked_add(v.x, 1), 0};
    if (auto cell = trap_cell(v)) return trap_exit_step(cell->spec, v);
    throw std::invalid_argument("vertex is not in the warm-up configuration");
  }

  EscapePath escape_path(Vertex start) const {
    std::vector<Vertex> prefix;
    Vertex v = start;
    while (v.y != 0) {
      prefix.push_back(v);
      v = escape_step(v);
    }
    if (v.x < 0) throw std::invalid_argument("vertex is not in the warm-up configuration");
    return EscapePath(std::move(prefix), {}, v);
  }

  /// Structural pieces meeting the window: the line and every trap.
  template <typename Visitor>
  void for_each_structure(const Window& w, Visitor&& visit) const {
    if (w.y0 <= 0 && w.y1 >= 0 && w.x1 >= 0) {
      Coord lo = std::max<Coord>(0, w.x0 - 1);
      visit(StructurePiece{PieceKind::MainPart, {{lo, 0}, {checked_add(w.x1, 1), 0}}, false, false});
    }
    for (const TrapSpec& t : traps_) {
      if (t.x_max() < w.x0 - 1 || t.x_min() > w.x1 + 1) continue;
      const Vertex a = t.anchor;
      visit(StructurePiece{PieceKind::Trap,
                           {a, {a.x, 1}, {t.left(), 1}, {t.left(), 2}, {t.core_right(), 2}},
                           true,
                           false});
    }
  }

 private:
  explicit WarmupConfig(std::vector<TrapSpec> traps) : traps_(std::move(traps)) {}

  const TrapSpec* anchored_at(Vertex v) const {
    if (v.y != 0 || traps_.empty()) return nullptr;
    auto it = std::lower_bound(traps_.begin(), traps_.end(), v.x,
                               [](const TrapSpec& t, Coord x) { return t.anchor.x < x; });
    return (it != traps_.end() && it->anchor.x == v.x) ? &*it : nullptr;
  }

  const TrapSpec* trap_covering(Coord x) const {
    if (traps_.empty()) return nullptr;
    auto it = std::upper_bound(traps_.begin(), traps_.end(), x,
                               [](Coord xv, const TrapSpec& t) { return xv < t.x_min(); });
    if (it == traps_.begin()) return nullptr;
    --it;
    return x <= it->x_max() ? &*it : nullptr;
  }

  std::vector<TrapSpec> traps_;
  std::optional<double> alpha_;
};

}  // namespace trapwalk
