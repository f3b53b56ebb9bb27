// Shared descriptions used by the configuration oracles: the escape path to
// infinity and the structural pieces a configuration is assembled from.
#pragma once

#include <algorithm>
#include <concepts>
#include <optional>
#include <vector>

#include "trapwalk/lattice.hpp"
#include "trapwalk/trap.hpp"

namespace trapwalk {

/// Closed axis-aligned segment between two lattice points.
struct Segment {
  Vertex from;
  Vertex to;

  bool contains(Vertex v) const {
    if (from.x == to.x) return v.x == from.x && v.y >= std::min(from.y, to.y) && v.y <= std::max(from.y, to.y);
    return v.y == from.y && v.x >= std::min(from.x, to.x) && v.x <= std::max(from.x, to.x);
  }
};

/// The unique self-avoiding path from a start vertex to infinity: an explicit
/// prefix, a chain of segments, and a final rightward ray.
class EscapePath {
 public:
  EscapePath() = default;
  EscapePath(std::vector<Vertex> prefix, std::vector<Segment> segments, std::optional<Vertex> ray)
      : prefix_(std::move(prefix)), segments_(std::move(segments)), ray_(ray) {}

  bool contains(Vertex v) const {
    if (last_ < segments_.size() && segments_[last_].contains(v)) return true;
    for (std::size_t i = 0; i < segments_.size(); ++i) {
      if (segments_[i].contains(v)) {
        last_ = i;
        return true;
      }
    }
    if (ray_ && v.y == ray_->y && v.x >= ray_->x) return true;
    return std::find(prefix_.begin(), prefix_.end(), v) != prefix_.end();
  }

  const std::vector<Vertex>& prefix() const { return prefix_; }
  const std::vector<Segment>& segments() const { return segments_; }
  const std::optional<Vertex>& ray() const { return ray_; }

 private:
  std::vector<Vertex> prefix_;
  std::vector<Segment> segments_;
  std::optional<Vertex> ray_;
  mutable std::size_t last_ = 0;
};

enum class PieceKind { MainPart, Abutment, Trap };

/// A structural piece as an axis-aligned polyline. Attach points are the
/// polyline ends that legitimately coincide with a vertex of a main part.
struct StructurePiece {
  PieceKind kind = PieceKind::MainPart;
  std::vector<Vertex> polyline;
  bool first_attaches = false;
  bool last_attaches = false;
};

/// What the walker, network and audit code need from a configuration.
template <typename O>
concept ConfigOracle = requires(const O& o, Vertex v) {
  { o.neighbors(v) } -> std::same_as<Neighborhood>;
  { o.trap_cell(v) } -> std::same_as<std::optional<TrapCell>>;
  { o.anchored_trap(v) } -> std::same_as<std::optional<TrapSpec>>;
  { o.escape_step(v) } -> std::same_as<Vertex>;
  { o.pairing_point(v) } -> std::same_as<bool>;
  { o.truncation_x() } -> std::same_as<Coord>;
};

}  // namespace trapwalk
