// Electrical-network quantities for the biased walk: edge e carries
// resistance beta^(-x(e)), x(e) the larger x-coordinate of its endpoints.
//
// Resistances are reported relative to a reference column: a value r with
// reference x0 stands for r * beta^(-x0). Every formula used downstream is a
// ratio, so the reference cancels.
#pragma once

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "trapwalk/finite_graph.hpp"
#include "trapwalk/lattice.hpp"
#include "trapwalk/rational.hpp"
#include "trapwalk/structure.hpp"

namespace trapwalk {

class SingularSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Bias {
  double beta;

  explicit Bias(double b) : beta(b) {
    if (!(b > 1.0) || !std::isfinite(b)) throw std::invalid_argument("beta must be a finite real > 1");
  }
};

struct Interval {
  long double lo = 0;
  long double hi = 0;

  bool contains(long double v) const { return lo <= v && v <= hi; }
  long double width() const { return hi - lo; }
};

/// beta^(-(x(e) - ref_x)).
inline long double edge_resistance(const Edge& e, const Bias& bias, Coord ref_x = 0) {
  return std::pow(static_cast<long double>(bias.beta), -static_cast<long double>(e.x_max() - ref_x));
}

/// Conductances of the open edges at v, normalised; exact when T is Rational.
/// Each conductance is beta^(x(e)) computed with absolute exponents.
template <typename T>
std::vector<std::pair<Direction, T>> normalized_conductances(Vertex v, Neighborhood n, const T& beta) {
  std::vector<std::pair<Direction, T>> out;
  T total(0);
  for (Direction d : kDirections) {
    if (!n.has(d)) continue;
    const Coord xe = std::max(v.x, step(v, d).x);
    T c(1);
    if constexpr (std::is_same_v<T, Rational>) {
      c = pow(beta, static_cast<long long>(xe));
    } else {
      c = std::pow(beta, static_cast<T>(xe));
    }
    out.emplace_back(d, c);
    total = total + c;
  }
  for (auto& [d, c] : out) c = c / total;
  return out;
}

/// Sum of conductances at v relative to beta^(v.x): beta for a right edge, 1 otherwise.
inline long double relative_conductance_sum(Neighborhood n, const Bias& bias) {
  long double s = 0;
  for (Direction d : kDirections)
    if (n.has(d)) s += d == Direction::Right ? static_cast<long double>(bias.beta) : 1.0L;
  return s;
}

/// Resistance of the unique path between v1 and v2 in a tree-shaped
/// configuration, relative to ref_x. Searches from both ends at once.
template <typename Oracle>
long double effective_resistance_path(Vertex v1, Vertex v2, const Oracle& oracle, const Bias& bias, Coord ref_x = 0,
                                      std::size_t budget = 1000000) {
  if (v1 == v2) return 0;
  using Parents = std::unordered_map<Vertex, Vertex, VertexHash>;
  Parents from1{{v1, v1}}, from2{{v2, v2}};
  std::deque<Vertex> q1{v1}, q2{v2};
  auto expand = [&](std::deque<Vertex>& q, Parents& mine, const Parents& other) -> std::optional<Vertex> {
    const std::size_t layer = q.size();
    for (std::size_t i = 0; i < layer; ++i) {
      const Vertex v = q.front();
      q.pop_front();
      for (Vertex u : oracle.neighbors(v).vertices(v)) {
        if (mine.count(u)) continue;
        mine.emplace(u, v);
        if (other.count(u)) return u;
        q.push_back(u);
      }
    }
    return std::nullopt;
  };
  std::optional<Vertex> meet;
  while (!meet) {
    if (q1.empty() && q2.empty()) throw std::invalid_argument("vertices are not connected");
    if (from1.size() + from2.size() > budget) throw std::length_error("path search exceeded its budget");
    if (!q1.empty()) meet = expand(q1, from1, from2);
    if (!meet && !q2.empty()) meet = expand(q2, from2, from1);
    if (!meet && (q1.empty() || q2.empty())) throw std::invalid_argument("vertices are not connected");
  }
  long double r = 0;
  for (const Parents* p : {&from1, &from2}) {
    Vertex v = *meet;
    while (p->at(v) != v) {
      const Vertex u = p->at(v);
      r += edge_resistance(Edge(u, v), bias, ref_x);
      v = u;
    }
  }
  return r;
}

struct ResistanceBound {
  Interval value;         // relative to beta^(-ref_x)
  Coord ref_x = 0;
  Coord cutoff_x = 0;     // column where the explicit sum stopped
  std::size_t steps = 0;  // explicit path edges summed
};

/// Resistance from v to infinity along the escape path. The explicit sum runs
/// until the path is at least `horizon` columns right of v and at a pairing
/// point w; the remainder is bounded by [0, 2 beta^(-(w.x - v.x)) / (beta - 1)].
template <typename Oracle>
ResistanceBound resistance_to_infinity(Vertex v, const Oracle& oracle, const Bias& bias, Coord horizon,
                                       std::size_t max_steps = 50000000) {
  if (horizon < 0) throw std::invalid_argument("horizon must be non-negative");
  const long double beta = bias.beta;
  const Coord target = checked_add(v.x, horizon);
  if (oracle.neighbors(v).empty()) throw std::invalid_argument("vertex is not in the configuration");
  long double sum = 0;
  std::size_t steps = 0;
  Vertex w = v;
  while (!(w.x >= target && oracle.pairing_point(w))) {
    const Vertex next = oracle.escape_step(w);
    sum += std::pow(beta, -static_cast<long double>(std::max(w.x, next.x) - v.x));
    w = next;
    if (++steps > max_steps) throw std::length_error("escape path walk exceeded its step budget");
  }
  const long double tail = 2.0L * std::pow(beta, -static_cast<long double>(w.x - v.x)) / (beta - 1.0L);
  // Each summand carries at most a few ulps of error; widen outward by a bound on the accumulated rounding.
  const long double eps = (4.0L * static_cast<long double>(steps) + 16.0L) * std::numeric_limits<long double>::epsilon();
  ResistanceBound out;
  out.value = {sum * (1.0L - eps), (sum + tail) * (1.0L + eps)};
  out.ref_x = v.x;
  out.cutoff_x = w.x;
  out.steps = steps;
  return out;
}

/// Probability of leaving v and never returning: 1 / (R(v, inf) * sum of conductances at v).
template <typename Oracle>
Interval escape_probability(Vertex v, const Oracle& oracle, const Bias& bias, Coord horizon) {
  const ResistanceBound r = resistance_to_infinity(v, oracle, bias, horizon);
  const long double s = relative_conductance_sum(oracle.neighbors(v), bias);
  const long double eps = 4.0L * std::numeric_limits<long double>::epsilon();
  return {(1.0L - eps) / (r.value.hi * s), (1.0L + eps) / (r.value.lo * s)};
}

inline long double hit_core_probability(Coord entrance_len, const Bias& bias) {
  if (entrance_len < 1) throw std::invalid_argument("entrance length must be >= 1");
  const long double b = bias.beta;
  return (b - 1) / (std::pow(b, static_cast<long double>(entrance_len + 1)) + b - 2);
}

inline long double stay_in_core_lower_bound(Coord entrance_len, const Bias& bias) {
  if (entrance_len < 1) throw std::invalid_argument("entrance length must be >= 1");
  const long double b = bias.beta;
  return (b - 1) * (b - 1) / (2 * b * (std::pow(b, static_cast<long double>(entrance_len + 1)) + b - 2));
}

inline long double expected_infinite_entrance_excursion(const Bias& bias) {
  const long double b = bias.beta;
  return (2 * b - 1) / (b - 1);
}

struct ConeBound {
  long double series = 0;
  long double closed_form = 0;
  std::size_t terms = 0;
};

/// ((3 + beta) / 2) * sum_i (2i + 1) beta^(-i), by direct summation and in closed form.
inline ConeBound cone_return_time_bound(const Bias& bias) {
  const long double b = bias.beta;
  const long double r = 1.0L / b;
  ConeBound out;
  long double sum = 0, power = 1;
  for (std::size_t i = 0;; ++i) {
    const long double term = (2.0L * i + 1.0L) * power;
    sum += term;
    power *= r;
    out.terms = i + 1;
    // Remaining tail is below (2i+3) r^(i+1) / (1 - r)^2; stop once negligible.
    const long double rest = (2.0L * i + 3.0L) * power / ((1 - r) * (1 - r));
    if (rest < 1e-15L * sum) break;
  }
  out.series = (3 + b) / 2 * sum;
  out.closed_form = (3 + b) / 2 * (1 + r) / ((1 - r) * (1 - r));
  return out;
}

/// Exact cone constant for rational beta.
inline Rational cone_return_time_bound_exact(const Rational& beta) {
  const Rational r = Rational(1) / beta;
  const Rational one(1);
  return (Rational(3) + beta) / Rational(2) * (one + r) / ((one - r) * (one - r));
}

enum class Reward { HittingProbability, ExpectedTime };

/// Hitting probabilities of `targets` (a subset of `absorbing`) or expected
/// absorption times for the conductance-weighted walk on a finite graph.
/// Trees are eliminated from the leaves in extended precision; other graphs
/// use a sparse LU factorisation.
inline std::vector<long double> absorbing_solve(const FiniteGraph& g, const Bias& bias,
                                                const std::vector<Vertex>& absorbing, Reward reward,
                                                const std::vector<Vertex>& targets = {}) {
  const std::size_t n = g.vertex_count();
  if (n == 0) return {};
  if (!g.connected()) throw std::invalid_argument("absorbing_solve needs a connected graph");
  std::vector<char> is_abs(n, 0);
  std::vector<long double> boundary(n, 0);
  for (Vertex a : absorbing) is_abs[g.index_of(a)] = 1;
  for (Vertex t : targets) {
    const std::size_t i = g.index_of(t);
    if (!is_abs[i]) throw std::invalid_argument("targets must be absorbing");
    boundary[i] = 1;
  }
  if (std::find(is_abs.begin(), is_abs.end(), 1) == is_abs.end())
    throw SingularSystemError("no absorbing vertex: the system is singular");
  const long double rew = reward == Reward::ExpectedTime ? 1.0L : 0.0L;

  // Transition probabilities computed locally, relative to the current column.
  const long double beta = bias.beta;
  auto weight = [&](std::size_t u, std::size_t w) {
    return g.vertices()[w].x > g.vertices()[u].x ? beta : 1.0L;
  };
  std::vector<long double> total(n, 0);
  for (std::size_t u = 0; u < n; ++u)
    for (auto w : g.adjacent(u)) total[u] += weight(u, w);

  std::vector<long double> value(n, 0);
  if (g.is_tree()) {
    // Root at an absorbing vertex; each transient u satisfies f(u) = a(u) + b(u) f(parent(u)).
    std::size_t root = 0;
    while (!is_abs[root]) ++root;
    std::vector<std::uint32_t> order, parent(n, UINT32_MAX);
    order.reserve(n);
    std::vector<std::uint32_t> stack{static_cast<std::uint32_t>(root)};
    parent[root] = static_cast<std::uint32_t>(root);
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      order.push_back(v);
      for (auto u : g.adjacent(v))
        if (parent[u] == UINT32_MAX) {
          parent[u] = v;
          stack.push_back(u);
        }
    }
    std::vector<long double> a(n, 0), b(n, 0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const std::uint32_t u = *it;
      if (is_abs[u]) {
        a[u] = boundary[u];
        b[u] = 0;
        continue;
      }
      long double num = rew, keep = 0;
      for (auto w : g.adjacent(u)) {
        if (w == parent[u]) continue;
        const long double p = weight(u, w) / total[u];
        num += p * a[w];
        keep += p * b[w];
      }
      const long double d = 1.0L - keep;
      if (!(d > 0)) throw SingularSystemError("elimination pivot vanished");
      a[u] = num / d;
      b[u] = weight(u, parent[u]) / total[u] / d;
    }
    for (auto u : order) value[u] = is_abs[u] ? boundary[u] : a[u] + b[u] * value[parent[u]];
  } else {
    std::vector<int> slot(n, -1);
    int m = 0;
    for (std::size_t u = 0; u < n; ++u)
      if (!is_abs[u]) slot[u] = m++;
    std::vector<Eigen::Triplet<double>> trips;
    Eigen::VectorXd rhs = Eigen::VectorXd::Constant(m, static_cast<double>(rew));
    for (std::size_t u = 0; u < n; ++u) {
      if (is_abs[u]) continue;
      trips.emplace_back(slot[u], slot[u], 1.0);
      for (auto w : g.adjacent(u)) {
        const double p = static_cast<double>(weight(u, w) / total[u]);
        if (is_abs[w])
          rhs[slot[u]] += p * static_cast<double>(boundary[w]);
        else
          trips.emplace_back(slot[u], slot[w], -p);
      }
    }
    Eigen::SparseMatrix<double> A(m, m);
    A.setFromTriplets(trips.begin(), trips.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(A);
    if (lu.info() != Eigen::Success) throw SingularSystemError("sparse factorisation failed");
    Eigen::VectorXd sol = lu.solve(rhs);
    for (std::size_t u = 0; u < n; ++u) value[u] = is_abs[u] ? boundary[u] : sol[slot[u]];
  }

  long double scale = 1, resid = 0;
  for (std::size_t u = 0; u < n; ++u) scale = std::max(scale, std::fabs(value[u]));
  for (std::size_t u = 0; u < n; ++u) {
    if (is_abs[u]) continue;
    long double rhs = rew;
    for (auto w : g.adjacent(u)) rhs += weight(u, w) / total[u] * value[w];
    resid = std::max(resid, std::fabs(value[u] - rhs));
  }
  if (!(resid / scale < 1e-10L)) throw SingularSystemError("residual " + std::to_string((double)resid) + " too large");
  return value;
}

/// Sum over w of R^-1(w), divided by R^-1(v): the stationary expected return time to v.
inline long double stationary_return_time(const FiniteGraph& g, const Bias& bias, Vertex v) {
  if (!g.connected()) throw std::invalid_argument("stationary_return_time needs a connected graph");
  const std::size_t iv = g.index_of(v);
  const long double beta = bias.beta;
  std::vector<long double> cond(g.vertex_count(), 0);
  for (const Edge& e : g.edges()) {
    const long double c = std::pow(beta, static_cast<long double>(e.x_max() - v.x));
    cond[g.index_of(e.a())] += c;
    cond[g.index_of(e.b())] += c;
  }
  long double total = 0;
  for (long double c : cond) total += c;
  if (cond[iv] == 0) throw std::invalid_argument("vertex has no edges");
  return total / cond[iv];
}

}  // namespace trapwalk
