// Stationarizing shifts: the base configuration translated by (-S_x, +S_y).
#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "trapwalk/fractal.hpp"
#include "trapwalk/lattice.hpp"
#include "trapwalk/rng.hpp"
#include "trapwalk/structure.hpp"
#include "trapwalk/trap.hpp"

namespace trapwalk {

template <typename Base>
class ShiftedConfig {
 public:
  ShiftedConfig(const Base& base, Coord shift_x, Coord shift_y) : base_(&base), sx_(shift_x), sy_(shift_y) {
    if (shift_x < 0) throw std::invalid_argument("shift_x must be non-negative");
  }

  const Base& base() const { return *base_; }
  Coord shift_x() const { return sx_; }
  Coord shift_y() const { return sy_; }

  /// Base-frame coordinates of a shifted-frame vertex.
  Vertex to_base(Vertex v) const { return {checked_add(v.x, sx_), checked_sub(v.y, sy_)}; }
  Vertex from_base(Vertex v) const { return {checked_sub(v.x, sx_), checked_add(v.y, sy_)}; }

  Neighborhood neighbors(Vertex v) const { return base_->neighbors(to_base(v)); }

  std::optional<TrapCell> trap_cell(Vertex v) const {
    auto c = base_->trap_cell(to_base(v));
    if (c) c->spec.anchor = from_base(c->spec.anchor);
    return c;
  }

  std::optional<TrapSpec> anchored_trap(Vertex v) const {
    auto t = base_->anchored_trap(to_base(v));
    if (t) t->anchor = from_base(t->anchor);
    return t;
  }

  Vertex escape_step(Vertex v) const { return from_base(base_->escape_step(to_base(v))); }
  bool pairing_point(Vertex v) const { return base_->pairing_point(to_base(v)); }
  Coord truncation_x() const { return checked_sub(base_->truncation_x(), sx_); }

  Location locate(Vertex v) const
    requires requires(const Base& b, Vertex u) { b.locate(u); }
  {
    Location loc = base_->locate(to_base(v));
    if (loc.branch) {
      loc.branch->tip = from_base(loc.branch->tip);
      loc.branch->corner = from_base(loc.branch->corner);
      loc.branch->root = from_base(loc.branch->root);
    }
    if (loc.trap) loc.trap->spec.anchor = from_base(loc.trap->spec.anchor);
    return loc;
  }

  EscapePath escape_path(Vertex start) const {
    EscapePath p = base_->escape_path(to_base(start));
    std::vector<Vertex> prefix;
    for (Vertex u : p.prefix()) prefix.push_back(from_base(u));
    std::vector<Segment> segs;
    for (const Segment& s : p.segments()) segs.push_back({from_base(s.from), from_base(s.to)});
    std::optional<Vertex> ray;
    if (p.ray()) ray = from_base(*p.ray());
    return EscapePath(std::move(prefix), std::move(segs), ray);
  }

  template <typename Visitor>
  void for_each_structure(const Window& w, Visitor&& visit) const {
    Window bw{checked_add(w.x0, sx_), checked_add(w.x1, sx_), checked_sub(w.y0, sy_), checked_sub(w.y1, sy_)};
    base_->for_each_structure(bw, [&](StructurePiece piece) {
      for (Vertex& u : piece.polyline) u = from_base(u);
      visit(piece);
    });
  }

 private:
  const Base* base_;
  Coord sx_;
  Coord sy_;
};

/// S_y uniform on {-m..m}, S_x uniform on {0..b(n)-1}.
inline ShiftedConfig<FractalConfig> sample_shifts(const FractalConfig& cfg, Coord m, int n, Rng& rng) {
  if (m < 0) throw std::invalid_argument("vertical shift range must be non-negative");
  if (n < 1 || n > cfg.max_order()) throw std::invalid_argument("shift order must lie in 1..max_order");
  const Coord sy = uniform_between(rng, -m, m);
  const Coord sx = uniform_below(rng, cfg.b(n));
  return ShiftedConfig<FractalConfig>(cfg, sx, sy);
}

}  // namespace trapwalk
