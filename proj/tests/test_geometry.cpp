#include <gtest/gtest.h>

#include <map>
#include <set>

#include "trapwalk/audit.hpp"
#include "trapwalk/fractal.hpp"
#include "trapwalk/shifted.hpp"
#include "trapwalk/warmup.hpp"

using namespace trapwalk;

namespace {

std::set<Vertex> neighbor_set(const Neighborhood& n, Vertex v) {
  auto vs = n.vertices(v);
  return {vs.begin(), vs.end()};
}

Coord ipow(Coord b, int e) {
  Coord r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Explicit edge set built by attaching branches exactly as described: every
// order-k branch with tip (x, y) receives two order-(k-1) branches at each of
// (x + j*b_{k-1} - 1, y), j = 1..q_{k-1}, plus one trap in its final stretch.
class ExplicitFractal {
 public:
  ExplicitFractal(double gamma, int K, Coord x_limit, Coord y_lo, Coord y_hi) : gamma_(gamma), K_(K), xl_(x_limit) {
    const Coord HK = 3 * (Coord(1) << (K - 1));
    for (Coord y = (y_lo / HK - 2) * HK; y <= y_hi + 2 * HK; y += HK) {
      if (y == 0) continue;
      for (Coord x = 0; x + 1 < xl_; ++x) add({x, y}, {x + 1, y});
      if (order_of(y) == K) attach_children(0, y, K);
    }
  }

  bool has(Vertex a, Vertex b) const { return edges_.count(Edge(a, b)) > 0; }
  std::size_t size() const { return edges_.size(); }

 private:
  static int order_of(Coord y) {
    Coord t = y / 3;
    if (t < 0) t = -t;
    int k = 1;
    while (t % 2 == 0) {
      t /= 2;
      ++k;
    }
    return k;
  }
  Coord b(int k) const { return 4 * ipow(3, k * (k - 1) / 2); }
  Coord h(int k) const { return 3 * (Coord(1) << (k - 1)); }

  void add(Vertex a, Vertex b) { edges_.insert(Edge(a, b)); }

  void attach_children(Coord tip, Coord y, int k) {
    const Coord q = ipow(3, k - 1) - 1;
    for (Coord j = 1; j <= q; ++j) {
      const Coord root_x = tip + j * b(k - 1) - 1;
      if (root_x - b(k - 1) + 1 >= xl_) break;
      for (Coord dy : {h(k - 1), -h(k - 1)}) build_branch(root_x - b(k - 1) + 1, y + dy, k - 1, y);
    }
  }

  void build_branch(Coord tip, Coord y, int k, Coord root_y) {
    const Coord corner = tip + b(k) - 1;
    // The abutment must point at a line of the form 3*2^k*(odd).
    const Coord ry = root_y / (3 * (Coord(1) << k));
    ASSERT_TRUE(root_y % (3 * (Coord(1) << k)) == 0 && (ry % 2 != 0));
    for (Coord x = tip; x < corner && x + 1 < xl_; ++x) add({x, y}, {x + 1, y});
    const Coord step_y = root_y > y ? 1 : -1;
    if (corner < xl_)
      for (Coord yy = y; yy != root_y; yy += step_y) add({corner, yy}, {corner, yy + step_y});
    if (k >= 2) {
      const Coord c = ipow(3, (k - 1) * (k - 2) / 2);
      long long e = static_cast<long long>(std::ceil(std::log((double)k) / std::log(gamma_) - 1e-9));
      if (e > c) e = static_cast<long long>(c);
      TrapSpec t{{corner - 2 * c, y}, e, c, k};
      if (t.x_max() < xl_)
        for (const Edge& ed : trap_edges(t)) add(ed.a(), ed.b());
      attach_children(tip, y, k);
    }
  }

  double gamma_;
  int K_;
  Coord xl_;
  std::set<Edge> edges_;
};

}  // namespace

TEST(Warmup, NeighborExamples) {
  auto cfg = WarmupConfig::standard(1.0, 50);
  EXPECT_EQ(neighbor_set(cfg.neighbors({5, 0}), {5, 0}), (std::set<Vertex>{{4, 0}, {6, 0}}));
  EXPECT_EQ(neighbor_set(cfg.neighbors({27, 0}), {27, 0}), (std::set<Vertex>{{26, 0}, {28, 0}, {27, 1}}));
  EXPECT_TRUE(cfg.neighbors({-1, 0}).empty());
  EXPECT_TRUE(cfg.neighbors({5, 5}).empty());
  auto naked = WarmupConfig::naked();
  EXPECT_EQ(neighbor_set(naked.neighbors({0, 0}), {0, 0}), (std::set<Vertex>{{1, 0}}));
}

TEST(Warmup, DefaultParametersAndConstraints) {
  auto cfg = WarmupConfig::standard(1.0, 2000);
  const auto& t = cfg.traps();
  ASSERT_EQ(t.size(), 2000u);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const long long n = static_cast<long long>(i) + 1;
    EXPECT_EQ(t[i].anchor, (Vertex{Coord(n) * n * n, 0}));
    EXPECT_GE(t[i].entrance_len, 1);
    EXPECT_GE(t[i].core_len, 1);
    if (i == 0) continue;
    const Coord gap = t[i].anchor.x - t[i - 1].anchor.x;
    EXPECT_LT(t[i].entrance_len, gap);
    EXPECT_LT(t[i].entrance_len + t[i - 1].core_len - t[i - 1].entrance_len, gap);
  }
  // Large indices keep the unmodified values.
  EXPECT_EQ(t[99].core_len, 100);
  EXPECT_EQ(t[99].entrance_len, static_cast<Coord>(std::ceil(std::log(100.0))));
}

TEST(Warmup, SmallIndexCorrectionsShrinkCoreBeforeEntrance) {
  // d = 1, 8: gap 7; c_1 = 5 and e_2 = 4 violate e_2 + c_1 - e_1 < 7.
  std::vector<TrapSpec> traps{{{1, 0}, 1, 5, 1}, {{8, 0}, 4, 2, 2}};
  WarmupConfig::fit_constraints(traps);
  EXPECT_EQ(traps[1].entrance_len, 4);
  EXPECT_LT(traps[1].entrance_len + traps[0].core_len - traps[0].entrance_len, 7);
  EXPECT_EQ(traps[0].core_len, 3);
}

TEST(Warmup, RejectsOverlappingTraps) {
  std::vector<TrapSpec> traps{{{10, 0}, 1, 8, 1}, {{12, 0}, 1, 1, 2}};
  EXPECT_THROW(WarmupConfig::with_traps(traps), std::invalid_argument);
}

TEST(Warmup, AuditIsClean) {
  auto cfg = WarmupConfig::standard(1.0);
  auto rep = audit_window(cfg, {0, 1000, -1, 3});
  EXPECT_TRUE(rep.ok()) << rep.summary() << (rep.messages.empty() ? "" : rep.messages[0]);
  EXPECT_TRUE(rep.structures_checked);
  EXPECT_GT(rep.edges, 1000u);
}

TEST(Warmup, EscapePathFromInsideTrap) {
  auto cfg = WarmupConfig::standard(1.0, 20);
  const TrapSpec t = cfg.traps()[4];
  Vertex core_end{t.core_right(), 2};
  EscapePath p = cfg.escape_path(core_end);
  EXPECT_TRUE(p.contains(core_end));
  EXPECT_TRUE(p.contains({t.left(), 1}));
  EXPECT_TRUE(p.contains(t.anchor));
  EXPECT_TRUE(p.contains({t.anchor.x + 1000, 0}));
  EXPECT_FALSE(p.contains({t.anchor.x - 1, 0}));
}

TEST(Fractal, DerivedSequences) {
  FractalConfig cfg(2.0, 8);
  for (int k = 1; k < 8; ++k) EXPECT_EQ(cfg.b(k + 1), (cfg.q(k) + 1) * cfg.b(k));
  EXPECT_EQ(cfg.b(1), 4);
  EXPECT_EQ(cfg.b(2), 12);
  EXPECT_EQ(cfg.b(3), 108);
  EXPECT_EQ(cfg.b(5), 236196);
  for (int k = 2; k <= 8; ++k) {
    // The stretch after the last child root has length b(k-1); the anchor sits at its midpoint.
    EXPECT_EQ((cfg.b(k) - 1) - (cfg.q(k - 1) * cfg.b(k - 1) - 1), cfg.b(k - 1));
    EXPECT_EQ(cfg.b(k - 1) / 2, 2 * cfg.core_len(k));
    EXPECT_GE(cfg.entrance_len(k), 1);
    EXPECT_LE(cfg.entrance_len(k), cfg.core_len(k));
  }
  EXPECT_EQ(cfg.entrance_len(2), 1);
  EXPECT_EQ(cfg.entrance_len(4), 2);
  EXPECT_EQ(cfg.entrance_len(5), 3);
  // ceil(ln 3 / ln 1.01) = 111 is capped at c(3) = 3.
  EXPECT_EQ(FractalConfig(1.01, 8).entrance_len(3), 3);
}

TEST(Fractal, MaxOrderValidation) {
  EXPECT_NO_THROW(FractalConfig(2.0, 13));
  EXPECT_THROW(FractalConfig(2.0, 14), std::invalid_argument);
  EXPECT_THROW(FractalConfig(1.0, 8), std::invalid_argument);
  EXPECT_THROW(FractalConfig(2.0, 0), std::invalid_argument);
}

TEST(Fractal, LineOrder) {
  EXPECT_EQ(FractalConfig::line_order(3), 1);
  EXPECT_EQ(FractalConfig::line_order(12), 3);
  EXPECT_EQ(FractalConfig::line_order(-6), 2);
  EXPECT_EQ(FractalConfig::line_order(9), 1);
  EXPECT_FALSE(FractalConfig::line_order(5).has_value());
  EXPECT_FALSE(FractalConfig::line_order(0).has_value());
}

TEST(Fractal, LocateExamples) {
  FractalConfig cfg(2.0);
  auto l = cfg.locate({0, 3});
  ASSERT_EQ(l.kind, SiteKind::MainPart);
  EXPECT_EQ(l.branch->order, 1);
  EXPECT_EQ(l.branch->tip, (Vertex{0, 3}));
  EXPECT_EQ(l.branch->corner, (Vertex{3, 3}));
  EXPECT_EQ(l.branch->root, (Vertex{3, 6}));
  EXPECT_TRUE(l.branch->abutment_up);

  l = cfg.locate({11, 6});
  ASSERT_EQ(l.kind, SiteKind::MainPart);
  EXPECT_EQ(l.branch->order, 2);
  EXPECT_EQ(l.branch->tip, (Vertex{0, 6}));
  EXPECT_EQ(l.branch->corner, (Vertex{11, 6}));

  l = cfg.locate({9, 7});
  ASSERT_EQ(l.kind, SiteKind::Trap);
  EXPECT_EQ(l.trap->spec.anchor, (Vertex{9, 6}));
  EXPECT_EQ(l.trap->spec.entrance_len, 1);
  EXPECT_EQ(l.trap->spec.core_len, 1);
  EXPECT_EQ(l.trap->spec.index, 2);
  EXPECT_FALSE(l.trap->core);
  EXPECT_EQ(l.branch->order, 2);

  l = cfg.locate({4, 9});
  ASSERT_EQ(l.kind, SiteKind::MainPart);
  EXPECT_EQ(l.branch->order, 1);
  EXPECT_EQ(l.branch->tip, (Vertex{4, 9}));
  EXPECT_EQ(l.branch->corner, (Vertex{7, 9}));
  EXPECT_EQ(l.branch->root, (Vertex{7, 6}));
  EXPECT_FALSE(l.branch->abutment_up);

  l = cfg.locate({3, 4});
  ASSERT_EQ(l.kind, SiteKind::Abutment);
  EXPECT_EQ(l.branch->tip, (Vertex{0, 3}));

  // The gap left by the order-2 branch's final stretch on line 9.
  EXPECT_EQ(cfg.locate({9, 9}).kind, SiteKind::Empty);
  EXPECT_EQ(cfg.locate({0, 0}).kind, SiteKind::Empty);
  EXPECT_EQ(cfg.locate({-1, 3}).kind, SiteKind::Empty);
}

TEST(Fractal, NeighborExamples) {
  FractalConfig cfg(2.0);
  EXPECT_EQ(neighbor_set(cfg.neighbors({3, 3}), {3, 3}), (std::set<Vertex>{{2, 3}, {3, 4}}));
  EXPECT_EQ(neighbor_set(cfg.neighbors({3, 6}), {3, 6}), (std::set<Vertex>{{2, 6}, {4, 6}, {3, 5}, {3, 7}}));
  EXPECT_EQ(neighbor_set(cfg.neighbors({0, 3}), {0, 3}), (std::set<Vertex>{{1, 3}}));
  EXPECT_EQ(neighbor_set(cfg.neighbors({9, 6}), {9, 6}), (std::set<Vertex>{{8, 6}, {10, 6}, {9, 7}}));
  EXPECT_EQ(neighbor_set(cfg.neighbors({8, 8}), {8, 8}), (std::set<Vertex>{{8, 7}, {9, 8}}));
}

TEST(Fractal, TruncationBoundary) {
  FractalConfig cfg(2.0, 3);
  EXPECT_EQ(cfg.truncation_x(), 107);
  EXPECT_THROW(cfg.neighbors({107, 12}), TruncationError);
  EXPECT_NO_THROW(cfg.neighbors({106, 12}));
  // The order-3 line is an infinite main part.
  EXPECT_EQ(neighbor_set(cfg.neighbors({106, 12}), {106, 12}), (std::set<Vertex>{{105, 12}, {107, 12}}));
  EXPECT_FALSE(cfg.anchored_trap({107 - 6, 12}).has_value());
}

TEST(Fractal, AgreesWithExplicitConstruction) {
  for (double gamma : {2.0, 1.2}) {
    const int K = 4;
    FractalConfig cfg(gamma, K);
    const Coord xl = cfg.truncation_x() - 1;
    ExplicitFractal ref(gamma, K, xl + 1, -60, 60);
    for (Coord x = 0; x < xl; ++x) {
      for (Coord y = -60; y <= 60; ++y) {
        const Vertex v{x, y};
        const Neighborhood n = cfg.neighbors(v);
        for (Direction d : kDirections) {
          ASSERT_EQ(n.has(d), ref.has(v, step(v, d))) << "gamma=" << gamma << " v=" << v << " dir=" << int(d);
        }
      }
    }
  }
}

TEST(Fractal, LocateIsConsistentWithNeighbors) {
  FractalConfig cfg(2.0, 5);
  for (Coord x = 0; x < 400; ++x) {
    for (Coord y = -50; y <= 50; ++y) {
      const Vertex v{x, y};
      const bool occupied = !cfg.neighbors(v).empty();
      const Location loc = cfg.locate(v);
      ASSERT_EQ(occupied, loc.kind != SiteKind::Empty) << v;
      ASSERT_EQ(cfg.trap_cell(v).has_value(), loc.kind == SiteKind::Trap) << v;
      if (auto t = cfg.anchored_trap(v)) {
        EXPECT_EQ(t->anchor, v);
        EXPECT_TRUE(cfg.neighbors(v).has(Direction::Up));
        EXPECT_TRUE(cfg.trap_cell({x, y + 1}).has_value());
      }
    }
  }
}

TEST(Fractal, BranchDescriptorInvariants) {
  FractalConfig cfg(2.0, 6);
  for (Coord x = 0; x < 3000; x += 7) {
    for (Coord y = -200; y <= 200; ++y) {
      const Location loc = cfg.locate({x, y});
      if (loc.kind != SiteKind::MainPart || loc.branch->infinite) continue;
      const BranchDescriptor& br = *loc.branch;
      const int k = br.order;
      EXPECT_EQ(br.corner.x - br.tip.x, cfg.b(k) - 1);
      EXPECT_EQ(br.corner.y, br.tip.y);
      EXPECT_EQ(br.root.x, br.corner.x);
      const Coord dy = br.root.y - br.corner.y;
      EXPECT_EQ(dy < 0 ? -dy : dy, cfg.h(k));
      EXPECT_EQ(FractalConfig::line_order(br.tip.y), k);
      EXPECT_EQ(FractalConfig::line_order(br.root.y), k + 1);
    }
  }
}

TEST(Fractal, PathToInfinity) {
  FractalConfig cfg(2.0);
  auto path = cfg.path_to_infinity({0, 3}, 5);
  ASSERT_EQ(path.size(), 5u);
  EXPECT_EQ(path[0].second, 3);
  EXPECT_EQ(path[1].second, 11);
  EXPECT_EQ(path[2].second, 107);
  for (std::size_t i = 1; i < path.size(); ++i) {
    EXPECT_GT(path[i].second, path[i - 1].second);
    EXPECT_GE(path[i].second, cfg.b(path[i].first - 1));
  }
  EXPECT_THROW(cfg.path_to_infinity({0, 6}, 2), std::invalid_argument);
  EXPECT_THROW(cfg.path_to_infinity({0, 3}, 8), TruncationError);
}

TEST(Fractal, EscapePathFollowsEscapeSteps) {
  FractalConfig cfg(2.0, 6);
  for (Vertex start : {Vertex{0, 3}, Vertex{4, 9}, Vertex{9, 8}, Vertex{3, 4}, Vertex{50, -21}}) {
    ASSERT_NE(cfg.locate(start).kind, SiteKind::Empty) << start;
    EscapePath p = cfg.escape_path(start);
    Vertex v = start;
    for (int i = 0; i < 5000; ++i) {
      ASSERT_TRUE(p.contains(v)) << start << " lost at " << v;
      const Vertex next = cfg.escape_step(v);
      ASSERT_TRUE(cfg.neighbors(v).has(*direction_between(v, next)));
      v = next;
    }
  }
}

TEST(Fractal, AuditWindows) {
  FractalConfig cfg(2.0);
  auto rep = audit_window(cfg, {0, 120, 0, 30});
  EXPECT_TRUE(rep.ok()) << rep.summary() << (rep.messages.empty() ? "" : rep.messages[0]);
  EXPECT_TRUE(rep.structures_checked);
  rep = audit_window(cfg, {0, 1200, -200, 200});
  EXPECT_TRUE(rep.ok()) << rep.summary() << (rep.messages.empty() ? "" : rep.messages[0]);
  FractalConfig tight(1.05, 6);
  rep = audit_window(tight, {0, 3000, -100, 100});
  EXPECT_TRUE(rep.ok()) << rep.summary() << (rep.messages.empty() ? "" : rep.messages[0]);
}

TEST(Shifted, IdentityShift) {
  FractalConfig cfg(2.0);
  Rng rng(11);
  auto s = sample_shifts(cfg, 0, 1, rng);
  EXPECT_EQ(s.shift_y(), 0);
  EXPECT_LT(s.shift_x(), 4);
  ShiftedConfig<FractalConfig> id(cfg, 0, 0);
  for (Coord x = 0; x < 100; ++x)
    for (Coord y = -20; y < 20; ++y) EXPECT_EQ(id.neighbors({x, y}), cfg.neighbors({x, y}));
}

TEST(Shifted, SampleRanges) {
  FractalConfig cfg(2.0);
  Rng rng(5);
  std::set<Coord> ys, xs;
  for (int i = 0; i < 3000; ++i) {
    auto s = sample_shifts(cfg, 3, 2, rng);
    ys.insert(s.shift_y());
    xs.insert(s.shift_x());
  }
  EXPECT_EQ(ys.size(), 7u);
  EXPECT_EQ(*ys.begin(), -3);
  EXPECT_EQ(xs.size(), 12u);
  EXPECT_EQ(*xs.rbegin(), 11);
}

TEST(Shifted, EquivarianceProperty) {
  FractalConfig cfg(2.0);
  Rng rng(2024);
  for (int trial = 0; trial < 10; ++trial) {
    auto s = sample_shifts(cfg, 50, 4, rng);
    for (int i = 0; i < 100; ++i) {
      const Vertex v{uniform_between(rng, 0, 3000), uniform_between(rng, -100, 100)};
      const Vertex sv = s.from_base(v);
      ASSERT_EQ(s.neighbors(sv), cfg.neighbors(v));
      auto bs = neighbor_set(cfg.neighbors(v), v);
      std::set<Vertex> moved;
      for (Vertex u : bs) moved.insert(s.from_base(u));
      ASSERT_EQ(neighbor_set(s.neighbors(sv), sv), moved);
    }
    auto rep = audit_window(s, {0, 100, -20, 20});
    EXPECT_TRUE(rep.ok()) << rep.summary();
  }
}

namespace {
// Line oracle with one edge reported from one side only.
struct BrokenLine {
  Neighborhood neighbors(Vertex v) const {
    Neighborhood n;
    if (v.y != 0 || v.x < 0) return n;
    n.add(Direction::Right);
    if (v.x > 0) n.add(Direction::Left);
    if (v.x == 5) n.add(Direction::Up);
    return n;
  }
};

struct Square {
  Neighborhood neighbors(Vertex v) const {
    Neighborhood n;
    if (v.x < 0 || v.x > 1 || v.y < 0 || v.y > 1) return n;
    n.add(v.x == 0 ? Direction::Right : Direction::Left);
    n.add(v.y == 0 ? Direction::Up : Direction::Down);
    return n;
  }
};
}  // namespace

TEST(Audit, DetectsSingleAsymmetricEdge) {
  auto rep = audit_window(BrokenLine{}, {0, 20, -1, 2});
  EXPECT_EQ(rep.symmetry_violations, 1u);
  EXPECT_EQ(rep.cycle_violations, 0u);
  EXPECT_FALSE(rep.structures_checked);
}

TEST(Audit, DetectsCycle) {
  auto rep = audit_window(Square{}, {-1, 2, -1, 2});
  EXPECT_EQ(rep.cycle_violations, 1u);
  EXPECT_EQ(rep.symmetry_violations, 0u);
}
