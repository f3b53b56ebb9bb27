// Trap geometry shared by the warm-up and fractal configurations.
//
// A trap hangs above its anchor (d, y): a vertical connector to (d, y+1), the
// entrance running left along row y+1 to (d-e, y+1), a second connector up to
// (d-e, y+2), and the core running right along row y+2 to (d-e+c, y+2).
#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "trapwalk/lattice.hpp"

namespace trapwalk {

struct TrapSpec {
  Vertex anchor;
  Coord entrance_len = 1;  // horizontal extent of the entrance, in edges
  Coord core_len = 1;      // core length, in edges
  long long index = 1;     // trap number n (warm-up) or owning branch order k (fractal)

  void validate() const {
    if (entrance_len < 1) throw std::invalid_argument("trap entrance length must be >= 1");
    if (core_len < 1) throw std::invalid_argument("trap core length must be >= 1");
  }

  Coord entrance_row() const { return anchor.y + 1; }
  Coord core_row() const { return anchor.y + 2; }
  Coord left() const { return anchor.x - entrance_len; }
  Coord core_right() const { return left() + core_len; }
  Coord x_min() const { return left(); }
  Coord x_max() const { return std::max(anchor.x, core_right()); }

  friend bool operator==(const TrapSpec&, const TrapSpec&) = default;
};

struct TrapCell {
  TrapSpec spec;
  bool core = false;
};

/// Edge path of a trap, from the anchor connector through the entrance to the
/// far end of the core. Size is entrance_len + core_len + 2.
inline std::vector<Edge> trap_edges(const TrapSpec& spec) {
  spec.validate();
  const Coord d = spec.anchor.x;
  const Coord y = spec.anchor.y;
  const Coord left = checked_sub(d, spec.entrance_len);
  const Coord y1 = checked_add(y, 1);
  const Coord y2 = checked_add(y, 2);
  checked_add(left, spec.core_len);

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(spec.entrance_len + spec.core_len + 2));
  edges.emplace_back(Vertex{d, y}, Vertex{d, y1});
  for (Coord x = d; x > left; --x) edges.emplace_back(Vertex{x, y1}, Vertex{x - 1, y1});
  edges.emplace_back(Vertex{left, y1}, Vertex{left, y2});
  for (Coord x = left; x < left + spec.core_len; ++x) edges.emplace_back(Vertex{x, y2}, Vertex{x + 1, y2});
  return edges;
}

/// Cell lookup for a vertex strictly inside the trap (the anchor is excluded).
inline std::optional<TrapCell> trap_cell(const TrapSpec& spec, Vertex v) {
  if (v.y == spec.entrance_row()) {
    if (v.x >= spec.left() && v.x <= spec.anchor.x) return TrapCell{spec, false};
  } else if (v.y == spec.core_row()) {
    if (v.x >= spec.left() && v.x <= spec.core_right()) return TrapCell{spec, true};
  }
  return std::nullopt;
}

/// Open steps out of a trap vertex; nullopt when v is not a trap vertex.
inline std::optional<Neighborhood> trap_neighborhood(const TrapSpec& spec, Vertex v) {
  Neighborhood n;
  if (v.y == spec.entrance_row()) {
    if (v.x < spec.left() || v.x > spec.anchor.x) return std::nullopt;
    if (v.x > spec.left()) n.add(Direction::Left);
    if (v.x < spec.anchor.x) n.add(Direction::Right);
    if (v.x == spec.anchor.x) n.add(Direction::Down);
    if (v.x == spec.left()) n.add(Direction::Up);
    return n;
  }
  if (v.y == spec.core_row()) {
    if (v.x < spec.left() || v.x > spec.core_right()) return std::nullopt;
    if (v.x > spec.left()) n.add(Direction::Left);
    if (v.x < spec.core_right()) n.add(Direction::Right);
    if (v.x == spec.left()) n.add(Direction::Down);
    return n;
  }
  return std::nullopt;
}

/// Next vertex on the way out of a trap towards its anchor.
inline Vertex trap_exit_step(const TrapSpec& spec, Vertex v) {
  if (v.y == spec.core_row()) return v.x > spec.left() ? Vertex{v.x - 1, v.y} : Vertex{v.x, v.y - 1};
  return v.x < spec.anchor.x ? Vertex{v.x + 1, v.y} : Vertex{v.x, v.y - 1};
}

}  // namespace trapwalk
