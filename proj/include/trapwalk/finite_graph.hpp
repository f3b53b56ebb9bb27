// Finite undirected subgraphs, either listed explicitly or explored out of a
// configuration oracle.
#pragma once

#include <cstdint>
#include <deque>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "trapwalk/lattice.hpp"

namespace trapwalk {

class FiniteGraph {
 public:
  FiniteGraph() = default;

  static FiniteGraph from_edges(const std::vector<Edge>& edges) {
    FiniteGraph g;
    for (const Edge& e : edges) g.add_edge(e.a(), e.b());
    return g;
  }

  /// Breadth-first exploration from `start`. Vertices in `stop_at` are
  /// included with the edges that reach them but are never expanded, so a
  /// cut vertex can be used to isolate the part of a tree hanging off it.
  template <typename Oracle>
  static FiniteGraph explore(const Oracle& oracle, Vertex start, const std::vector<Vertex>& stop_at = {},
                             std::size_t budget = 100000) {
    FiniteGraph g;
    std::unordered_set<Vertex, VertexHash> stops(stop_at.begin(), stop_at.end());
    std::deque<Vertex> queue{start};
    g.add_vertex(start);
    while (!queue.empty()) {
      const Vertex v = queue.front();
      queue.pop_front();
      if (stops.count(v)) continue;
      for (Vertex u : oracle.neighbors(v).vertices(v)) {
        const bool fresh = !g.contains(u);
        if (fresh) {
          if (g.vertex_count() >= budget) throw std::length_error("component exceeds the exploration budget");
          queue.push_back(u);
        }
        g.add_edge(v, u);
      }
    }
    return g;
  }

  std::size_t add_vertex(Vertex v) {
    auto [it, inserted] = index_.emplace(v, vertices_.size());
    if (inserted) {
      vertices_.push_back(v);
      adj_.emplace_back();
    }
    return it->second;
  }

  void add_edge(Vertex a, Vertex b) {
    Edge e(a, b);
    const std::size_t i = add_vertex(a), j = add_vertex(b);
    for (std::uint32_t k : adj_[i])
      if (k == j) return;
    adj_[i].push_back(static_cast<std::uint32_t>(j));
    adj_[j].push_back(static_cast<std::uint32_t>(i));
    edges_.push_back(e);
  }

  bool contains(Vertex v) const { return index_.count(v) > 0; }
  bool has_edge(Vertex a, Vertex b) const {
    auto ia = index_.find(a), ib = index_.find(b);
    if (ia == index_.end() || ib == index_.end()) return false;
    for (std::uint32_t k : adj_[ia->second])
      if (k == ib->second) return true;
    return false;
  }

  std::size_t index_of(Vertex v) const {
    auto it = index_.find(v);
    if (it == index_.end()) throw std::out_of_range("vertex not in graph");
    return it->second;
  }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::uint32_t>& adjacent(std::size_t i) const { return adj_[i]; }

  bool connected() const {
    if (vertices_.empty()) return true;
    std::vector<char> seen(vertices_.size(), 0);
    std::vector<std::uint32_t> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto u : adj_[v])
        if (!seen[u]) {
          seen[u] = 1;
          ++count;
          stack.push_back(u);
        }
    }
    return count == vertices_.size();
  }

  bool is_tree() const { return connected() && edges_.size() + 1 == vertices_.size(); }

  /// Neighbourhood of v within this graph.
  Neighborhood neighbors(Vertex v) const {
    Neighborhood n;
    auto it = index_.find(v);
    if (it == index_.end()) return n;
    for (auto u : adj_[it->second]) n.add(*direction_between(v, vertices_[u]));
    return n;
  }

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::uint32_t>> adj_;
  std::unordered_map<Vertex, std::size_t, VertexHash> index_;
};

}  // namespace trapwalk
