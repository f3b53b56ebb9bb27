// Lattice primitives: 128-bit coordinates, vertices, edges and unit-step
// neighborhoods on Z^2.
#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace trapwalk {

using Coord = __int128;

class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// A query or walk reached the truncation boundary of a finite-order construction.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Coord checked_add(Coord a, Coord b) {
  Coord r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("coordinate overflow in addition");
  return r;
}

inline Coord checked_sub(Coord a, Coord b) {
  Coord r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("coordinate overflow in subtraction");
  return r;
}

inline Coord checked_mul(Coord a, Coord b) {
  Coord r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("coordinate overflow in multiplication");
  return r;
}

/// Floor division and non-negative remainder for a positive divisor.
inline Coord floor_div(Coord a, Coord d) {
  Coord q = a / d;
  if ((a % d != 0) && (a < 0)) --q;
  return q;
}

inline Coord floor_mod(Coord a, Coord d) {
  Coord r = a % d;
  return r < 0 ? r + d : r;
}

inline std::string to_string(Coord v) {
  if (v == 0) return "0";
  // The most negative value cannot be negated; peel one digit off first.
  bool neg = v < 0;
  std::string s;
  while (v != 0) {
    int digit = static_cast<int>(v % 10);
    s.push_back(static_cast<char>('0' + (neg ? -digit : digit)));
    v /= 10;
  }
  if (neg) s.push_back('-');
  return {s.rbegin(), s.rend()};
}

inline Coord parse_coord(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty coordinate");
  bool neg = false;
  std::size_t i = 0;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw std::invalid_argument("malformed coordinate: " + std::string(s));
  Coord v = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("malformed coordinate: " + std::string(s));
    v = checked_add(checked_mul(v, 10), neg ? -(s[i] - '0') : (s[i] - '0'));
  }
  return v;
}

struct Vertex {
  Coord x = 0;
  Coord y = 0;

  friend constexpr bool operator==(const Vertex&, const Vertex&) = default;
  friend constexpr auto operator<=>(const Vertex& a, const Vertex& b) {
    if (a.x != b.x) return a.x < b.x ? std::strong_ordering::less : std::strong_ordering::greater;
    if (a.y != b.y) return a.y < b.y ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
};

inline Vertex translate(Vertex v, Coord dx, Coord dy) {
  return {checked_add(v.x, dx), checked_add(v.y, dy)};
}

inline std::ostream& operator<<(std::ostream& os, const Vertex& v) {
  return os << '(' << to_string(v.x) << ',' << to_string(v.y) << ')';
}

struct VertexHash {
  std::size_t operator()(const Vertex& v) const noexcept {
    auto mix = [](std::uint64_t z) {
      z += 0x9e3779b97f4a7c15ULL;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      return z ^ (z >> 31);
    };
    auto lo = [](Coord c) { return static_cast<std::uint64_t>(static_cast<unsigned __int128>(c)); };
    auto hi = [](Coord c) { return static_cast<std::uint64_t>(static_cast<unsigned __int128>(c) >> 64); };
    return mix(lo(v.x) ^ mix(hi(v.x) ^ mix(lo(v.y) ^ mix(hi(v.y)))));
  }
};

/// Undirected unit edge, stored with the lexicographically smaller endpoint first.
class Edge {
 public:
  Edge(Vertex p, Vertex q) {
    Coord dx = p.x - q.x;
    Coord dy = p.y - q.y;
    bool unit = (dy == 0 && (dx == 1 || dx == -1)) || (dx == 0 && (dy == 1 || dy == -1));
    if (!unit) throw std::invalid_argument("edge endpoints are not at unit distance");
    if (q < p) std::swap(p, q);
    a_ = p;
    b_ = q;
  }

  const Vertex& a() const { return a_; }
  const Vertex& b() const { return b_; }
  bool horizontal() const { return a_.y == b_.y; }
  /// Larger x-coordinate of the two endpoints.
  Coord x_max() const { return b_.x; }

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge& l, const Edge& r) {
    if (auto c = l.a_ <=> r.a_; c != 0) return c;
    return l.b_ <=> r.b_;
  }

 private:
  Vertex a_;
  Vertex b_;
};

inline std::ostream& operator<<(std::ostream& os, const Edge& e) { return os << e.a() << '-' << e.b(); }

enum class Direction : std::uint8_t { Right = 1, Left = 2, Up = 4, Down = 8 };

inline constexpr Direction kDirections[4] = {Direction::Right, Direction::Left, Direction::Up, Direction::Down};

inline constexpr Coord dx_of(Direction d) {
  return d == Direction::Right ? 1 : (d == Direction::Left ? -1 : 0);
}
inline constexpr Coord dy_of(Direction d) {
  return d == Direction::Up ? 1 : (d == Direction::Down ? -1 : 0);
}

inline Vertex step(Vertex v, Direction d) { return translate(v, dx_of(d), dy_of(d)); }

inline std::optional<Direction> direction_between(Vertex from, Vertex to) {
  Coord dx = to.x - from.x;
  Coord dy = to.y - from.y;
  if (dy == 0 && dx == 1) return Direction::Right;
  if (dy == 0 && dx == -1) return Direction::Left;
  if (dx == 0 && dy == 1) return Direction::Up;
  if (dx == 0 && dy == -1) return Direction::Down;
  return std::nullopt;
}

/// Set of open unit steps out of a vertex, as a bitmask over Direction.
class Neighborhood {
 public:
  constexpr Neighborhood() = default;
  constexpr explicit Neighborhood(std::uint8_t bits) : bits_(bits & 0xF) {}

  constexpr bool has(Direction d) const { return bits_ & static_cast<std::uint8_t>(d); }
  constexpr void add(Direction d) { bits_ |= static_cast<std::uint8_t>(d); }
  constexpr void remove(Direction d) { bits_ &= static_cast<std::uint8_t>(~static_cast<std::uint8_t>(d)); }
  constexpr int size() const { return __builtin_popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint8_t bits() const { return bits_; }

  constexpr Neighborhood& operator|=(Neighborhood o) {
    bits_ |= o.bits_;
    return *this;
  }
  friend constexpr bool operator==(Neighborhood, Neighborhood) = default;

  std::vector<Vertex> vertices(Vertex v) const {
    std::vector<Vertex> out;
    for (Direction d : kDirections)
      if (has(d)) out.push_back(step(v, d));
    return out;
  }

 private:
  std::uint8_t bits_ = 0;
};

inline constexpr Neighborhood operator|(Neighborhood a, Direction d) {
  a.add(d);
  return a;
}

/// Inclusive axis-aligned rectangle of lattice points.
struct Window {
  Coord x0 = 0, x1 = 0, y0 = 0, y1 = 0;

  bool contains(Vertex v) const { return v.x >= x0 && v.x <= x1 && v.y >= y0 && v.y <= y1; }
  Coord width() const { return x1 - x0 + 1; }
  Coord height() const { return y1 - y0 + 1; }
};

}  // namespace trapwalk
