#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "trapwalk/finite_graph.hpp"
#include "trapwalk/network.hpp"
#include "trapwalk/warmup.hpp"

using namespace trapwalk;

namespace {

// Plain Gauss-Seidel on the conductance walk: independent of absorbing_solve.
std::vector<double> iterate_hitting(const FiniteGraph& g, double beta, const std::vector<Vertex>& absorbing,
                                    const std::vector<Vertex>& targets, bool expected_time) {
  const std::size_t n = g.vertex_count();
  std::vector<char> fixed(n, 0);
  std::vector<double> h(n, 0.0);
  for (Vertex a : absorbing) fixed[g.index_of(a)] = 1;
  if (!expected_time)
    for (Vertex t : targets) h[g.index_of(t)] = 1.0;
  for (int sweep = 0; sweep < 200000; ++sweep) {
    double change = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (fixed[i]) continue;
      const Vertex v = g.vertices()[i];
      double wsum = 0, acc = 0;
      for (auto j : g.adjacent(i)) {
        const double w = g.vertices()[j].x > v.x ? beta : 1.0;
        wsum += w;
        acc += w * h[j];
      }
      const double next = (expected_time ? 1.0 : 0.0) + acc / wsum;
      change = std::max(change, std::fabs(next - h[i]));
      h[i] = next;
    }
    if (change < 1e-14) break;
  }
  return h;
}

FiniteGraph segment(Coord length) {
  std::vector<Edge> edges;
  for (Coord x = 0; x < length; ++x) edges.emplace_back(Vertex{x, 0}, Vertex{x + 1, 0});
  return FiniteGraph::from_edges(edges);
}

}  // namespace

TEST(Bias, RejectsBetaAtMostOne) {
  EXPECT_THROW(Bias(1.0), std::invalid_argument);
  EXPECT_THROW(Bias(0.5), std::invalid_argument);
  EXPECT_THROW(Bias(std::nan("")), std::invalid_argument);
  EXPECT_NO_THROW(Bias(1.0001));
}

TEST(Resistance, EdgeUsesLargerX) {
  const Bias b(2);
  EXPECT_DOUBLE_EQ(static_cast<double>(edge_resistance(Edge({3, 0}, {4, 0}), b)), 1.0 / 16);
  EXPECT_DOUBLE_EQ(static_cast<double>(edge_resistance(Edge({3, 0}, {3, 1}), b)), 1.0 / 8);
  EXPECT_DOUBLE_EQ(static_cast<double>(edge_resistance(Edge({1000000, 0}, {1000001, 0}), b, 1000000)), 0.5);
}

TEST(Resistance, PathExamples) {
  const Bias b(2);
  const WarmupConfig naked = WarmupConfig::naked();
  EXPECT_NEAR(static_cast<double>(effective_resistance_path({0, 0}, {3, 0}, naked, b)), 0.875, 1e-15);
  EXPECT_EQ(effective_resistance_path({5, 0}, {5, 0}, naked, b), 0);

  const WarmupConfig line = WarmupConfig::with_traps({TrapSpec{{8, 0}, 1, 3, 1}});
  const long double r = effective_resistance_path({8, 1}, {7, 2}, line, b);
  EXPECT_NEAR(static_cast<double>(r), std::ldexp(1.0, -7) + std::ldexp(1.0, -8), 1e-15);
  // Relative to x = 8 the same path reads 2 + 1.
  EXPECT_NEAR(static_cast<double>(effective_resistance_path({8, 1}, {7, 2}, line, b, 8)), 3.0, 1e-15);
  // Through the anchor into a trap and out along the line.
  const long double r2 = effective_resistance_path({7, 2}, {10, 0}, line, b, 0);
  EXPECT_NEAR(static_cast<double>(r2), std::ldexp(1.0, -7) + std::ldexp(1.0, -8) * 2 + std::ldexp(1.0, -9) +
                                           std::ldexp(1.0, -10),
              1e-15);
}

TEST(Resistance, ToInfinityOnLine) {
  for (double beta : {1.5, 2.0, 3.0}) {
    const Bias b(beta);
    const WarmupConfig naked = WarmupConfig::naked();
    for (Coord k : {0, 5, 40}) {
      const ResistanceBound r = resistance_to_infinity({k, 0}, naked, b, 60);
      // Relative to beta^-k the exact value is 1/(beta - 1).
      EXPECT_TRUE(r.value.contains(1.0L / (beta - 1))) << beta << " " << static_cast<long long>(k);
      EXPECT_EQ(r.ref_x, k);
    }
  }
  const Interval i0 = resistance_to_infinity({0, 0}, WarmupConfig::naked(), Bias(2), 30).value;
  EXPECT_TRUE(i0.contains(1.0L));
  const Interval i1 = resistance_to_infinity({0, 0}, WarmupConfig::naked(), Bias(2), 40).value;
  EXPECT_LT(i1.width(), i0.width());
}

TEST(Escape, AnchorAndPlainVertex) {
  const WarmupConfig cfg = WarmupConfig::standard(1.0, 200);
  for (double beta : {1.5, 2.0, 3.0, 4.0}) {
    const Bias b(beta);
    for (int n : {1, 3, 10, 50}) {
      const Vertex anchor = cfg.traps()[static_cast<std::size_t>(n - 1)].anchor;
      const Interval p = escape_probability(anchor, cfg, b, 200);
      EXPECT_TRUE(p.contains((beta - 1) / (beta + 2))) << beta << " " << n;
      EXPECT_LT(p.width(), 1e-6);
    }
    const Interval plain = escape_probability({2, 0}, cfg, b, 200);
    EXPECT_TRUE(plain.contains((beta - 1) / (beta + 1)));
  }
}

TEST(Escape, IntervalsShrinkAndNest) {
  const WarmupConfig cfg = WarmupConfig::standard(1.0, 100);
  const Bias b(1.5);
  const Vertex v = cfg.traps()[4].anchor;
  const Interval ref = escape_probability(v, cfg, b, 400);
  long double prev = INFINITY;
  for (Coord h : {0, 5, 10, 20, 40, 80}) {
    const Interval p = escape_probability(v, cfg, b, h);
    EXPECT_LE(p.width(), prev);
    EXPECT_LE(p.lo, ref.lo);
    EXPECT_GE(p.hi, ref.hi);
    prev = p.width();
  }
}

TEST(ClosedForms, SpotValues) {
  EXPECT_NEAR(static_cast<double>(hit_core_probability(1, Bias(2))), 0.25, 1e-15);
  EXPECT_NEAR(static_cast<double>(hit_core_probability(2, Bias(2))), 0.125, 1e-15);
  EXPECT_NEAR(static_cast<double>(hit_core_probability(1, Bias(3))), 0.2, 1e-15);
  EXPECT_LT(hit_core_probability(60, Bias(2)), 1e-17);
  EXPECT_NEAR(static_cast<double>(stay_in_core_lower_bound(1, Bias(2))), 1.0 / 16, 1e-15);
  EXPECT_NEAR(static_cast<double>(stay_in_core_lower_bound(2, Bias(2))), 1.0 / 32, 1e-15);
  for (double beta : {1.1, 1.5, 2.0, 3.0, 10.0})
    for (Coord e = 1; e <= 8; ++e) EXPECT_LE(stay_in_core_lower_bound(e, Bias(beta)), hit_core_probability(e, Bias(beta)));
  EXPECT_NEAR(static_cast<double>(expected_infinite_entrance_excursion(Bias(2))), 3.0, 1e-15);
  EXPECT_NEAR(static_cast<double>(expected_infinite_entrance_excursion(Bias(3))), 2.5, 1e-15);
  EXPECT_NEAR(static_cast<double>(expected_infinite_entrance_excursion(Bias(1e9))), 2.0, 1e-8);
  EXPECT_THROW(hit_core_probability(0, Bias(2)), std::invalid_argument);
}

TEST(ClosedForms, ConeConstant) {
  const ConeBound c2 = cone_return_time_bound(Bias(2));
  EXPECT_NEAR(static_cast<double>(c2.closed_form), 15.0, 1e-12);
  EXPECT_NEAR(static_cast<double>(c2.series), 15.0, 1e-12);
  EXPECT_NEAR(static_cast<double>(cone_return_time_bound(Bias(3)).closed_form), 9.0, 1e-12);
  EXPECT_EQ(cone_return_time_bound_exact(Rational(2)), Rational(15));
  EXPECT_EQ(cone_return_time_bound_exact(Rational(3)), Rational(9));
  // The series factor falls with beta; the (3 + beta)/2 prefactor rises, so
  // the constant itself bottoms out between 5 and 5.5.
  long double prev_sum = INFINITY;
  long double min_value = INFINITY, argmin = 0;
  for (double beta = 1.5; beta <= 10.0; beta += 0.25) {
    const ConeBound c = cone_return_time_bound(Bias(beta));
    EXPECT_NEAR(static_cast<double>(c.series / c.closed_form), 1.0, 1e-12);
    const long double sum = c.closed_form / ((3 + beta) / 2);
    EXPECT_LT(sum, prev_sum);
    prev_sum = sum;
    if (c.closed_form < min_value) {
      min_value = c.closed_form;
      argmin = beta;
    }
  }
  EXPECT_GT(argmin, 5.0);
  EXPECT_LT(argmin, 5.5);
}

TEST(AbsorbingSolve, TrapEntranceMatchesClosedForm) {
  for (double beta : {1.5, 2.0, 3.0}) {
    for (Coord e : {1, 2, 5}) {
      const TrapSpec trap{{40, 0}, e, 4, 1};
      const FiniteGraph g = FiniteGraph::from_edges(trap_edges(trap));
      const Vertex core_top{trap.left(), 2};
      const Vertex entry{40, 1};
      const auto h = absorbing_solve(g, Bias(beta), {trap.anchor, core_top}, Reward::HittingProbability, {core_top});
      const double expect = static_cast<double>(hit_core_probability(e, Bias(beta)));
      EXPECT_NEAR(static_cast<double>(h[g.index_of(entry)]), expect, 1e-10) << beta << " " << static_cast<long long>(e);
      const auto oracle = iterate_hitting(g, beta, {trap.anchor, core_top}, {core_top}, false);
      EXPECT_NEAR(oracle[g.index_of(entry)], expect, 1e-10);
    }
  }
}

TEST(AbsorbingSolve, SingleEdge) {
  const FiniteGraph g = FiniteGraph::from_edges({Edge({0, 0}, {0, 1})});
  const auto h = absorbing_solve(g, Bias(2), {{0, 1}}, Reward::HittingProbability, {{0, 1}});
  EXPECT_NEAR(static_cast<double>(h[g.index_of({0, 0})]), 1.0, 1e-15);
  const auto t = absorbing_solve(g, Bias(2), {{0, 1}}, Reward::ExpectedTime);
  EXPECT_NEAR(static_cast<double>(t[g.index_of({0, 0})]), 1.0, 1e-15);
}

TEST(AbsorbingSolve, GamblersRuinMatchesResistanceRatio) {
  const FiniteGraph g = segment(10);
  const WarmupConfig naked = WarmupConfig::naked();
  for (double beta : {1.5, 2.0, 3.0}) {
    const Bias b(beta);
    const auto h = absorbing_solve(g, b, {{0, 0}, {10, 0}}, Reward::HittingProbability, {{10, 0}});
    for (Coord i = 1; i < 10; ++i) {
      const long double ratio =
          effective_resistance_path({0, 0}, {i, 0}, naked, b) / effective_resistance_path({0, 0}, {10, 0}, naked, b);
      EXPECT_NEAR(static_cast<double>(h[g.index_of({i, 0})]), static_cast<double>(ratio), 1e-10);
      const double ruin = (1 - std::pow(1 / beta, static_cast<double>(i))) / (1 - std::pow(1 / beta, 10.0));
      EXPECT_NEAR(static_cast<double>(h[g.index_of({i, 0})]), ruin, 1e-10);
    }
  }
}

TEST(AbsorbingSolve, ExpectedTimeOnCycleUsesGeneralSolver) {
  // A square with a tail: not a tree, so the sparse path is exercised.
  const FiniteGraph g = FiniteGraph::from_edges({Edge({0, 0}, {1, 0}), Edge({1, 0}, {1, 1}), Edge({1, 1}, {0, 1}),
                                                 Edge({0, 1}, {0, 0}), Edge({1, 0}, {2, 0}), Edge({2, 0}, {3, 0}),
                                                 Edge({0, 1}, {0, 2})});
  ASSERT_FALSE(g.is_tree());
  for (double beta : {1.5, 2.0, 3.0}) {
    const auto t = absorbing_solve(g, Bias(beta), {{3, 0}}, Reward::ExpectedTime);
    const auto oracle = iterate_hitting(g, beta, {{3, 0}}, {}, true);
    for (std::size_t i = 0; i < g.vertex_count(); ++i) EXPECT_NEAR(static_cast<double>(t[i]), oracle[i], 1e-8);
    const auto h = absorbing_solve(g, Bias(beta), {{3, 0}, {0, 2}}, Reward::HittingProbability, {{0, 2}});
    const auto ho = iterate_hitting(g, beta, {{3, 0}, {0, 2}}, {{0, 2}}, false);
    for (std::size_t i = 0; i < g.vertex_count(); ++i) EXPECT_NEAR(static_cast<double>(h[i]), ho[i], 1e-10);
  }
}

TEST(AbsorbingSolve, TreeExpectedTimeMatchesIteration) {
  const TrapSpec trap{{20, 0}, 3, 5, 1};
  const FiniteGraph g = FiniteGraph::from_edges(trap_edges(trap));
  const auto t = absorbing_solve(g, Bias(2), {trap.anchor}, Reward::ExpectedTime);
  const auto oracle = iterate_hitting(g, 2.0, {trap.anchor}, {}, true);
  for (std::size_t i = 0; i < g.vertex_count(); ++i) EXPECT_NEAR(static_cast<double>(t[i]), oracle[i], 1e-8);
}

TEST(AbsorbingSolve, NoReachableAbsorbingIsSingular) {
  const FiniteGraph g = segment(3);
  EXPECT_THROW(absorbing_solve(g, Bias(2), {}, Reward::ExpectedTime), SingularSystemError);
}

TEST(StationaryReturn, SingleEdgeAndHittingTimes) {
  const FiniteGraph e = FiniteGraph::from_edges({Edge({0, 0}, {1, 0})});
  EXPECT_NEAR(static_cast<double>(stationary_return_time(e, Bias(2), {0, 0})), 2.0, 1e-15);

  // Return time to v = 1 + mean over the first step of the hitting time of v.
  const TrapSpec trap{{10, 0}, 2, 3, 1};
  FiniteGraph g = FiniteGraph::from_edges(trap_edges(trap));
  g.add_edge({9, 0}, {10, 0});
  g.add_edge({10, 0}, {11, 0});
  for (double beta : {1.5, 2.0, 3.0}) {
    for (Vertex v : {Vertex{10, 0}, Vertex{9, 1}, Vertex{11, 0}}) {
      const auto h = iterate_hitting(g, beta, {v}, {}, true);
      const std::size_t iv = g.index_of(v);
      double wsum = 0, acc = 0;
      for (auto j : g.adjacent(iv)) {
        const double w = g.vertices()[j].x > v.x ? beta : 1.0;
        wsum += w;
        acc += w * h[j];
      }
      EXPECT_NEAR(static_cast<double>(stationary_return_time(g, Bias(beta), v)), 1.0 + acc / wsum, 1e-8);
    }
  }
}
