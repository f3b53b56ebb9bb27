// The fractal branch configuration with traps, answered lazily from the
// base-3 digit structure of x and the 2-adic order of y.
//
// Lines y = 3*2^(k-1)*l (l odd) carry branches of order k. Branch tips on an
// order-k line sit at multiples of b(k); an order-k branch exists over
// [tip, tip + b(k) - 1] iff no ancestor tiling leaves that stretch empty,
// i.e. floor(x / b(m)) mod 3^m != 3^m - 1 for every m in k..K-1.
#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "trapwalk/lattice.hpp"
#include "trapwalk/structure.hpp"
#include "trapwalk/trap.hpp"
#include "trapwalk/warmup.hpp"

namespace trapwalk {

struct BranchDescriptor {
  int order = 0;
  Vertex tip;
  Vertex corner;  // equal to tip when infinite
  Vertex root;    // equal to tip when infinite
  bool abutment_up = false;
  bool infinite = false;  // truncated branch of order >= max_order

  friend bool operator==(const BranchDescriptor&, const BranchDescriptor&) = default;
};

enum class SiteKind { Empty, MainPart, Abutment, Trap };

struct Location {
  SiteKind kind = SiteKind::Empty;
  std::optional<BranchDescriptor> branch;
  std::optional<TrapCell> trap;
};

class FractalConfig {
 public:
  static constexpr int kMaxSupportedOrder = 13;

  explicit FractalConfig(double gamma, int max_order = 8) : gamma_(gamma), K_(max_order) {
    if (!(gamma > 1.0) || !std::isfinite(gamma)) throw std::invalid_argument("gamma must be a finite real > 1");
    if (max_order < 1 || max_order > kMaxSupportedOrder)
      throw std::invalid_argument("max_order must lie in 1.." + std::to_string(kMaxSupportedOrder) +
                                  " so that b(max_order) fits in 128 bits");
    p3_.assign(K_ + 1, 1);
    for (int i = 1; i <= K_; ++i) p3_[i] = checked_mul(p3_[i - 1], 3);
    b_.assign(K_ + 1, 0);
    h_.assign(K_ + 1, 0);
    e_.assign(K_ + 1, 0);
    c_.assign(K_ + 1, 0);
    for (int k = 1; k <= K_; ++k) {
      Coord p = 1;
      for (int i = 0; i < k * (k - 1) / 2; ++i) p = checked_mul(p, 3);
      b_[k] = checked_mul(4, p);
      h_[k] = checked_mul(3, Coord(1) << (k - 1));
      if (k >= 2) {
        Coord ck = 1;
        for (int i = 0; i < (k - 1) * (k - 2) / 2; ++i) ck = checked_mul(ck, 3);
        c_[k] = ck;
        long long pre = robust_ceil(std::log(static_cast<long double>(k)) / std::log(static_cast<long double>(gamma)));
        e_[k] = std::max<Coord>(1, std::min<Coord>(pre, ck));
      }
    }
  }

  double gamma() const { return gamma_; }
  int max_order() const { return K_; }

  Coord b(int k) const { return b_.at(check_order(k)); }
  Coord q(int k) const { return p3_.at(check_order(k)) - 1; }
  /// Vertical spacing 3*2^(k-1) between an order-k line and its neighbours.
  Coord h(int k) const { return h_.at(check_order(k)); }
  Coord core_len(int k) const { return c_.at(check_trap_order(k)); }
  Coord entrance_len(int k) const { return e_.at(check_trap_order(k)); }

  /// Vertices with x >= truncation_x() lie beyond the truncated construction.
  Coord truncation_x() const { return b_[K_] - 1; }

  /// k with y = 3*2^(k-1)*l, l odd; none for y = 0 or y not a multiple of 3.
  static std::optional<int> line_order(Coord y) {
    if (y == 0 || y % 3 != 0) return std::nullopt;
    auto t = static_cast<unsigned __int128>(y < 0 ? -(y / 3) : y / 3);
    int k = 1;
    while ((t & 1) == 0) {
      t >>= 1;
      ++k;
    }
    return k;
  }

  /// Whether x >= 0 lies inside the order-k tiling (k < max_order).
  bool on_main(Coord x, int k) const {
    for (int m = k; m < K_; ++m)
      if ((x / b_[m]) % p3_[m] == p3_[m] - 1) return false;
    return true;
  }

  /// Direction of the abutment leaving an order-k line at height y.
  bool abutment_up(Coord y, int k) const { return floor_mod(y / h_[k], 4) == 1; }

  BranchDescriptor branch_at(Coord tip_x, Coord y, int k) const {
    BranchDescriptor d;
    d.order = k;
    d.tip = {tip_x, y};
    if (k >= K_) {
      d.infinite = true;
      d.corner = d.tip;
      d.root = d.tip;
      return d;
    }
    const Coord cx = tip_x + b_[k] - 1;
    d.abutment_up = abutment_up(y, k);
    d.corner = {cx, y};
    d.root = {cx, d.abutment_up ? checked_add(y, h_[k]) : checked_sub(y, h_[k])};
    return d;
  }

  /// Trap of the order-k branch with the given tip (2 <= k < max_order).
  TrapSpec trap_of(Coord tip_x, Coord y, int k) const {
    const Coord anchor_x = tip_x + b_[k] - 1 - b_[k - 1] / 2;
    return TrapSpec{{anchor_x, y}, e_[k], c_[k], k};
  }

  Location locate(Vertex v) const {
    check_range(v);
    Location loc;
    if (v.x < 0) return loc;
    const Coord ymod = floor_mod(v.y, 3);
    if (ymod == 0 && v.y != 0) {
      const int k = *line_order(v.y);
      if (k >= K_ || on_main(v.x, k)) {
        loc.kind = SiteKind::MainPart;
        loc.branch = branch_at(k >= K_ ? 0 : v.x - v.x % b_[k], v.y, k);
        return loc;
      }
    } else if (ymod != 0) {
      if (auto t = trap_near(v)) {
        if (auto cell = trapwalk::trap_cell(t->first, v)) {
          loc.kind = SiteKind::Trap;
          loc.trap = cell;
          loc.branch = t->second;
          return loc;
        }
      }
    }
    if (auto br = abutment_owner(v)) {
      loc.kind = SiteKind::Abutment;
      loc.branch = br;
    }
    return loc;
  }

  Neighborhood neighbors(Vertex v) const {
    check_range(v);
    Neighborhood n;
    if (v.x < 0) return n;
    const Coord ymod = floor_mod(v.y, 3);
    if (ymod == 0 && v.y != 0) {
      if (main_part_neighbors(v, *line_order(v.y), n)) return n;
    } else if (ymod != 0) {
      if (auto t = trap_near(v))
        if (auto tn = trap_neighborhood(t->first, v)) return *tn;
    }
    if (abutment_owner(v)) {
      n.add(Direction::Up);
      n.add(Direction::Down);
    }
    return n;
  }

  std::optional<TrapCell> trap_cell(Vertex v) const {
    check_range(v);
    if (v.x < 0 || floor_mod(v.y, 3) == 0) return std::nullopt;
    if (auto t = trap_near(v)) return trapwalk::trap_cell(t->first, v);
    return std::nullopt;
  }

  /// Trap whose anchor is v, if any.
  std::optional<TrapSpec> anchored_trap(Vertex v) const {
    check_range(v);
    if (v.x < 0 || v.y == 0 || v.y % 3 != 0) return std::nullopt;
    const int k = *line_order(v.y);
    if (k < 2 || k >= K_ || !on_main(v.x, k)) return std::nullopt;
    const Coord tip = v.x - v.x % b_[k];
    TrapSpec t = trap_of(tip, v.y, k);
    if (t.anchor != v) return std::nullopt;
    return t;
  }

  /// Next vertex on the unique path from v to infinity.
  Vertex escape_step(Vertex v) const {
    const Location loc = locate(v);
    switch (loc.kind) {
      case SiteKind::Trap:
        return trap_exit_step(loc.trap->spec, v);
      case SiteKind::Abutment:
        return {v.x, loc.branch->abutment_up ? v.y + 1 : v.y - 1};
      case SiteKind::MainPart:
        if (loc.branch->infinite || v.x < loc.branch->corner.x) return {checked_add(v.x, 1), v.y};
        return {v.x, loc.branch->abutment_up ? v.y + 1 : v.y - 1};
      case SiteKind::Empty:
        break;
    }
    throw std::invalid_argument("vertex is not in the fractal configuration");
  }

  /// Points past which the remaining path resistance is at most twice the
  /// horizontal tail: on a main part of order >= 2 at least 3*2^(k-1) left of
  /// its corner, or on a truncated infinite line.
  bool pairing_point(Vertex w) const {
    const Location loc = locate(w);
    if (loc.kind != SiteKind::MainPart) return false;
    const BranchDescriptor& br = *loc.branch;
    if (br.infinite) return true;
    return br.order >= 2 && br.corner.x - w.x >= h_[br.order];
  }

  EscapePath escape_path(Vertex start) const {
    std::vector<Vertex> prefix;
    std::vector<Segment> segments;
    Location loc = locate(start);
    Vertex v = start;
    while (loc.kind == SiteKind::Trap) {
      prefix.push_back(v);
      v = trap_exit_step(loc.trap->spec, v);
      loc = locate(v);
    }
    if (loc.kind == SiteKind::Empty) throw std::invalid_argument("vertex is not in the fractal configuration");
    if (loc.kind == SiteKind::Abutment) {
      segments.push_back({v, loc.branch->root});
      v = loc.branch->root;
      loc = locate(v);
    }
    for (;;) {
      const BranchDescriptor br = *loc.branch;
      if (br.infinite) return EscapePath(std::move(prefix), std::move(segments), v);
      segments.push_back({v, br.corner});
      segments.push_back({br.corner, br.root});
      v = br.root;
      loc = locate(v);
    }
  }

  /// Abutment x-coordinates a_1..a_n along the path from an order-1 main-part vertex.
  std::vector<std::pair<int, Coord>> path_to_infinity(Vertex start, int up_to_order) const {
    Location loc = locate(start);
    if (loc.kind != SiteKind::MainPart || loc.branch->order != 1)
      throw std::invalid_argument("path_to_infinity needs a start on an order-1 main part");
    if (up_to_order < 1 || up_to_order > K_) throw std::invalid_argument("up_to_order out of range");
    std::vector<std::pair<int, Coord>> out;
    for (int k = 1; k <= up_to_order; ++k) {
      const BranchDescriptor& br = *loc.branch;
      if (br.infinite) throw TruncationError("order " + std::to_string(k) + " branch is truncated");
      out.emplace_back(k, br.corner.x);
      loc = locate(br.root);
    }
    return out;
  }

  /// Every structural piece meeting the window, generated top-down from the
  /// truncated lines of order >= max_order.
  template <typename Visitor>
  void for_each_structure(const Window& w, Visitor&& visit) const {
    if (w.x1 >= truncation_x()) throw TruncationError("window reaches the truncation boundary");
    const Coord H = h_[K_];
    const Coord top = checked_add(w.y1, H);
    for (Coord y = floor_div(checked_sub(w.y0, H), H) * H; y <= top; y += H) {
      if (y == 0) continue;
      const int k = *line_order(y);
      if (y >= w.y0 - 1 && y <= w.y1 + 1)
        visit(StructurePiece{PieceKind::MainPart, {{0, y}, {truncation_x() - 1, y}}, false, false});
      if (k == K_ && K_ >= 2) {
        for_children(0, y, K_, w, visit);
      }
    }
  }

 private:
  int check_order(int k) const {
    if (k < 1 || k > K_) throw std::out_of_range("branch order out of range");
    return k;
  }
  int check_trap_order(int k) const {
    if (k < 2 || k > K_) throw std::out_of_range("trap order out of range");
    return k;
  }

  void check_range(Vertex v) const {
    if (v.x >= truncation_x())
      throw TruncationError("x = " + to_string(v.x) + " is beyond the order-" + std::to_string(K_) + " truncation");
  }

  bool main_part_neighbors(Vertex v, int k, Neighborhood& n) const {
    if (k >= K_) {
      if (v.x > 0) n.add(Direction::Left);
      n.add(Direction::Right);
      if (k == K_ && K_ >= 2) add_child_roots(v.x + 1, K_, n);
      return true;
    }
    if (!on_main(v.x, k)) return false;
    const Coord tip = v.x - v.x % b_[k];
    const Coord corner = tip + b_[k] - 1;
    if (v.x > tip) n.add(Direction::Left);
    if (v.x < corner) n.add(Direction::Right);
    if (v.x == corner) n.add(abutment_up(v.y, k) ? Direction::Up : Direction::Down);
    if (k >= 2) {
      add_child_roots(v.x - tip + 1, k, n);
      if (v.x == corner - b_[k - 1] / 2) n.add(Direction::Up);
    }
    return true;
  }

  void add_child_roots(Coord r, int k, Neighborhood& n) const {
    const Coord bc = b_[k - 1];
    if (r % bc != 0) return;
    const Coord j = r / bc;
    if (j >= 1 && j <= p3_[k - 1] - 1) {
      n.add(Direction::Up);
      n.add(Direction::Down);
    }
  }

  /// Trap whose rows contain v (v.y mod 3 != 0), with its owning branch.
  std::optional<std::pair<TrapSpec, BranchDescriptor>> trap_near(Vertex v) const {
    const Coord host = v.y - floor_mod(v.y, 3);
    if (host == 0) return std::nullopt;
    const int k = *line_order(host);
    if (k < 2 || k >= K_) return std::nullopt;
    const Coord tip = v.x - v.x % b_[k];
    if (!on_main(tip, k)) return std::nullopt;
    return std::make_pair(trap_of(tip, host, k), branch_at(tip, host, k));
  }

  /// Branch whose abutment passes strictly through v, if any.
  std::optional<BranchDescriptor> abutment_owner(Vertex v) const {
    const Coord x1 = v.x + 1;
    for (int j = 1; j < K_; ++j) {
      if (x1 % b_[j] != 0) break;
      const Coord hj = h_[j];
      if (floor_mod(v.y, hj) == 0) continue;
      const Coord m = floor_div(v.y, hj);
      const Coord odd = (m & 1) ? m : m + 1;
      const Coord even = (m & 1) ? m + 1 : m;
      if (floor_mod(even, 4) != 2) continue;
      const Coord tip = x1 - b_[j];
      if (!on_main(tip, j)) continue;
      return branch_at(tip, odd * hj, j);
    }
    return std::nullopt;
  }

  template <typename Visitor>
  void for_children(Coord tip, Coord y, int k, const Window& w, Visitor& visit) const {
    const Coord bc = b_[k - 1];
    const Coord hc = h_[k - 1];
    const Coord qc = p3_[k - 1] - 1;
    Coord jlo = std::max<Coord>(1, floor_div(w.x0 - 1 - tip, bc) + 1);
    Coord jhi = std::min<Coord>(qc, floor_div(w.x1 + 1 - tip, bc) + 1);
    for (Coord j = jlo; j <= jhi; ++j) {
      const Coord ctip = tip + (j - 1) * bc;
      emit_branch(ctip, y + hc, k - 1, w, visit);
      emit_branch(ctip, y - hc, k - 1, w, visit);
    }
  }

  template <typename Visitor>
  void emit_branch(Coord tip, Coord y, int k, const Window& w, Visitor& visit) const {
    const Coord corner = tip + b_[k] - 1;
    if (corner < w.x0 - 1 || tip > w.x1 + 1) return;
    if (y + h_[k] < w.y0 - 1 || y - h_[k] > w.y1 + 1) return;
    const BranchDescriptor br = branch_at(tip, y, k);
    visit(StructurePiece{PieceKind::MainPart, {br.tip, br.corner}, false, false});
    visit(StructurePiece{PieceKind::Abutment, {br.corner, br.root}, true, true});
    if (k >= 2) {
      const TrapSpec t = trap_of(tip, y, k);
      const Vertex a = t.anchor;
      visit(StructurePiece{PieceKind::Trap,
                           {a, {a.x, a.y + 1}, {t.left(), a.y + 1}, {t.left(), a.y + 2}, {t.core_right(), a.y + 2}},
                           true,
                           false});
      for_children(tip, y, k, w, visit);
    }
  }

  double gamma_;
  int K_;
  std::vector<Coord> p3_;
  std::vector<Coord> b_;
  std::vector<Coord> h_;
  std::vector<Coord> e_;
  std::vector<Coord> c_;
};

}  // namespace trapwalk
