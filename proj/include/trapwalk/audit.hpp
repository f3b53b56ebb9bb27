// Structural audit of a configuration oracle over a finite window.
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "trapwalk/lattice.hpp"
#include "trapwalk/structure.hpp"

namespace trapwalk {

struct AuditReport {
  std::uint64_t vertices = 0;  // window vertices with at least one open edge
  std::uint64_t edges = 0;     // open edges with both ends in the window
  std::uint64_t symmetry_violations = 0;
  std::uint64_t cycle_violations = 0;
  std::uint64_t overlap_violations = 0;
  std::uint64_t generator_mismatches = 0;
  bool structures_checked = false;
  std::vector<std::string> messages;  // first few violations, for diagnostics

  std::uint64_t violations() const {
    return symmetry_violations + cycle_violations + overlap_violations + generator_mismatches;
  }
  bool ok() const { return violations() == 0; }

  std::string summary() const {
    std::ostringstream os;
    os << "vertices=" << vertices << " edges=" << edges << " symmetry=" << symmetry_violations
       << " cycles=" << cycle_violations << " overlaps=" << overlap_violations
       << " generator=" << generator_mismatches << (structures_checked ? "" : " (structures unchecked)");
    return os.str();
  }
};

namespace detail {

inline Direction opposite(Direction d) {
  switch (d) {
    case Direction::Right: return Direction::Left;
    case Direction::Left: return Direction::Right;
    case Direction::Up: return Direction::Down;
    case Direction::Down: return Direction::Up;
  }
  return d;
}

class DisjointSets {
 public:
  explicit DisjointSets(std::uint32_t n) : parent_(n), rank_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0u); }

  std::uint32_t find(std::uint32_t a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }

  /// False when a and b were already connected.
  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint8_t> rank_;
};

}  // namespace detail

/// Enumerates every open edge in the window and checks neighbour symmetry,
/// acyclicity, and (when the oracle can list its structures) that no vertex is
/// claimed by two structures except at attach points and that the structures
/// generate exactly the oracle's edges.
template <typename Oracle>
AuditReport audit_window(const Oracle& oracle, const Window& w) {
  if (w.x1 < w.x0 || w.y1 < w.y0) throw std::invalid_argument("empty audit window");
  const Coord cells = checked_mul(w.width(), w.height());
  if (cells >= Coord(UINT32_MAX)) throw std::invalid_argument("audit window too large");
  if constexpr (requires { oracle.truncation_x(); }) {
    if (w.x1 + 1 >= oracle.truncation_x()) throw TruncationError("audit window reaches the truncation boundary");
  }

  const Coord H = w.height();
  auto index = [&](Vertex v) { return static_cast<std::uint32_t>((v.x - w.x0) * H + (v.y - w.y0)); };
  AuditReport rep;
  auto note = [&](const std::string& msg) {
    if (rep.messages.size() < 20) rep.messages.push_back(msg);
  };

  detail::DisjointSets sets(static_cast<std::uint32_t>(cells));
  for (Coord x = w.x0; x <= w.x1; ++x) {
    for (Coord y = w.y0; y <= w.y1; ++y) {
      const Vertex v{x, y};
      const Neighborhood n = oracle.neighbors(v);
      if (n.empty()) continue;
      ++rep.vertices;
      for (Direction d : kDirections) {
        if (!n.has(d)) continue;
        const Vertex u = step(v, d);
        if (!oracle.neighbors(u).has(detail::opposite(d))) {
          ++rep.symmetry_violations;
          std::ostringstream os;
          os << "asymmetric edge " << v << " -> " << u;
          note(os.str());
        }
        if ((d == Direction::Right || d == Direction::Up) && w.contains(u)) {
          ++rep.edges;
          if (!sets.unite(index(v), index(u))) {
            ++rep.cycle_violations;
            std::ostringstream os;
            os << "edge " << Edge(v, u) << " closes a cycle";
            note(os.str());
          }
        }
      }
    }
  }

  if constexpr (requires { oracle.for_each_structure(w, [](const StructurePiece&) {}); }) {
    rep.structures_checked = true;
    const auto n = static_cast<std::size_t>(cells);
    std::vector<std::uint8_t> main(n, 0), interior(n, 0), endpoint(n, 0);
    auto bump = [](std::uint8_t& c) {
      if (c < 255) ++c;
    };
    std::uint64_t generated = 0;

    oracle.for_each_structure(w, [&](const StructurePiece& piece) {
      const auto& pl = piece.polyline;
      auto claim = [&](Vertex v) {
        if (!w.contains(v)) return;
        const std::uint32_t i = index(v);
        if (piece.kind == PieceKind::MainPart) {
          bump(main[i]);
        } else if ((v == pl.front() && piece.first_attaches) || (v == pl.back() && piece.last_attaches)) {
          bump(endpoint[i]);
        } else {
          bump(interior[i]);
        }
      };
      auto check_edge = [&](Vertex a, Vertex b) {
        if (!w.contains(a) || !w.contains(b)) return;
        ++generated;
        if (!oracle.neighbors(a).has(*direction_between(a, b))) {
          ++rep.generator_mismatches;
          std::ostringstream os;
          os << "structure edge " << Edge(a, b) << " missing from oracle";
          note(os.str());
        }
      };
      if (pl.size() == 1) claim(pl[0]);
      for (std::size_t s = 0; s + 1 < pl.size(); ++s) {
        const Vertex from = pl[s];
        const Vertex to = pl[s + 1];
        const bool horizontal = from.y == to.y;
        if (!horizontal && from.x != to.x) throw std::logic_error("structure segment is not axis-aligned");
        // Clip the segment to the window before walking it.
        Coord lo, hi;
        if (horizontal) {
          if (from.y < w.y0 || from.y > w.y1) continue;
          lo = std::max(std::min(from.x, to.x), w.x0);
          hi = std::min(std::max(from.x, to.x), w.x1);
        } else {
          if (from.x < w.x0 || from.x > w.x1) continue;
          lo = std::max(std::min(from.y, to.y), w.y0);
          hi = std::min(std::max(from.y, to.y), w.y1);
        }
        for (Coord t = lo; t <= hi; ++t) {
          const Vertex v = horizontal ? Vertex{t, from.y} : Vertex{from.x, t};
          if (s == 0 || v != from) claim(v);
          if (t < hi) check_edge(v, horizontal ? Vertex{t + 1, from.y} : Vertex{from.x, t + 1});
        }
      }
    });

    for (Coord x = w.x0; x <= w.x1; ++x) {
      for (Coord y = w.y0; y <= w.y1; ++y) {
        const std::uint32_t i = index({x, y});
        const int m = main[i], in = interior[i], ep = endpoint[i];
        const bool bad = m >= 2 || in >= 2 || (in >= 1 && (m + ep) >= 1) || (ep >= 1 && m == 0);
        if (bad) {
          ++rep.overlap_violations;
          std::ostringstream os;
          os << "vertex " << Vertex{x, y} << " claimed main=" << m << " interior=" << in << " endpoint=" << ep;
          note(os.str());
        }
      }
    }
    if (generated != rep.edges) {
      ++rep.generator_mismatches;
      note("structures generate " + std::to_string(generated) + " edges, oracle has " + std::to_string(rep.edges));
    }
  }
  return rep;
}

/// Open edges with both ends in the window, in canonical orientation and
/// sorted lexicographically.
template <typename Oracle>
std::vector<Edge> window_edges(const Oracle& oracle, const Window& w) {
  if (w.x1 < w.x0 || w.y1 < w.y0) throw std::invalid_argument("empty window");
  if constexpr (requires { oracle.truncation_x(); }) {
    if (w.x1 + 1 >= oracle.truncation_x()) throw TruncationError("window reaches the truncation boundary");
  }
  std::vector<Edge> out;
  for (Coord x = w.x0; x <= w.x1; ++x)
    for (Coord y = w.y0; y <= w.y1; ++y) {
      const Vertex v{x, y};
      const Neighborhood n = oracle.neighbors(v);
      for (Direction d : {Direction::Right, Direction::Up}) {
        if (!n.has(d)) continue;
        const Vertex u = step(v, d);
        if (w.contains(u)) out.emplace_back(v, u);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace trapwalk
