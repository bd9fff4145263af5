#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hmatch/error.hpp"
#include "hmatch/rational.hpp"

namespace hmatch {

/// Strictly increasing list of vertex indices.
using Edge = std::vector<std::size_t>;

/// Sorted set of edge indices. A matching when the edges are pairwise disjoint.
using Matching = std::vector<std::size_t>;

/// Finite hypergraph on vertices [0, vertex_count). Edges are nonempty, distinct,
/// and keep the order they were given in. Immutable after construction.
class Hypergraph {
 public:
  Hypergraph() = default;

  /// Validates and canonicalizes the raw edge lists (vertex lists are sorted and
  /// deduplicated; the edge order is preserved).
  static Hypergraph build(std::size_t vertex_count, std::vector<std::vector<std::size_t>> raw_edges) {
    Hypergraph h;
    h.vertex_count_ = vertex_count;
    h.edges_.reserve(raw_edges.size());
    for (std::size_t i = 0; i < raw_edges.size(); ++i) {
      Edge e = std::move(raw_edges[i]);
      if (e.empty()) throw Error(Errc::EmptyEdge, "edge " + std::to_string(i) + " has no vertices");
      std::sort(e.begin(), e.end());
      e.erase(std::unique(e.begin(), e.end()), e.end());
      if (e.back() >= vertex_count) {
        throw Error(Errc::VertexOutOfRange, "edge " + std::to_string(i) + " uses vertex " +
                                                std::to_string(e.back()) + " >= " +
                                                std::to_string(vertex_count));
      }
      h.edges_.push_back(std::move(e));
    }
    std::vector<std::size_t> order(h.edges_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return h.edges_[a] < h.edges_[b]; });
    for (std::size_t i = 1; i < order.size(); ++i) {
      if (h.edges_[order[i]] == h.edges_[order[i - 1]]) {
        throw Error(Errc::DuplicateEdge, "edges " + std::to_string(order[i - 1]) + " and " +
                                             std::to_string(order[i]) + " are identical");
      }
    }
    h.index();
    return h;
  }

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  const Edge& edge(std::size_t e) const {
    check_edge(e);
    return edges_[e];
  }

  std::size_t edge_size(std::size_t e) const { return edge(e).size(); }

  /// N(v): edges containing v, ascending.
  std::span<const std::size_t> incident(std::size_t v) const {
    if (v >= vertex_count_) throw Error(Errc::VertexOutOfRange, "vertex " + std::to_string(v));
    return incident_[v];
  }

  /// Largest edge size; 0 for an edgeless hypergraph.
  std::size_t rank() const noexcept {
    std::size_t r = 0;
    for (const auto& e : edges_) r = std::max(r, e.size());
    return r;
  }

  /// N(e) = {f != e : f meets e}, ascending.
  const std::vector<std::size_t>& neighborhood(std::size_t e) const {
    check_edge(e);
    return neighbors_[e];
  }

  /// N_k(e): neighbors of e with exactly k vertices.
  std::vector<std::size_t> neighborhood_k(std::size_t e, std::size_t k) const {
    std::vector<std::size_t> out;
    for (std::size_t f : neighborhood(e)) {
      if (edges_[f].size() == k) out.push_back(f);
    }
    return out;
  }

  bool intersects(std::size_t e, std::size_t f) const {
    const Edge& a = edge(e);
    const Edge& b = edge(f);
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
      if (*i == *j) return true;
      if (*i < *j) ++i; else ++j;
    }
    return false;
  }

  /// The hypergraph (V, E') for E' given as edge indices; edge i of the result is
  /// edge `subset[i]` of this one.
  Hypergraph subgraph(std::span<const std::size_t> subset) const {
    Hypergraph h;
    h.vertex_count_ = vertex_count_;
    h.edges_.reserve(subset.size());
    for (std::size_t e : subset) h.edges_.push_back(edge(e));
    std::vector<std::size_t> sorted(subset.begin(), subset.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw Error(Errc::DuplicateEdge, "subgraph edge subset repeats an index");
    }
    h.index();
    return h;
  }

  friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
    return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_;
  }

 private:
  void check_edge(std::size_t e) const {
    if (e >= edges_.size()) {
      throw Error(Errc::IndexOutOfRange, "edge index " + std::to_string(e) + " (edge count " +
                                             std::to_string(edges_.size()) + ")");
    }
  }

  void index() {
    incident_.assign(vertex_count_, {});
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      for (std::size_t v : edges_[e]) incident_[v].push_back(e);
    }
    neighbors_.assign(edges_.size(), {});
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      auto& out = neighbors_[e];
      for (std::size_t v : edges_[e]) {
        for (std::size_t f : incident_[v]) {
          if (f != e) out.push_back(f);
        }
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
    }
  }

  std::size_t vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> incident_;
  std::vector<std::vector<std::size_t>> neighbors_;
};

/// Hypergraph together with one weight per edge. Weights from input are nonnegative.
struct WeightedInstance {
  Hypergraph graph;
  EdgeValues weights;

  static WeightedInstance make(Hypergraph graph, EdgeValues weights) {
    if (weights.size() != graph.edge_count()) {
      throw Error(Errc::SizeMismatch, std::to_string(weights.size()) + " weights for " +
                                          std::to_string(graph.edge_count()) + " edges");
    }
    for (std::size_t e = 0; e < weights.size(); ++e) {
      if (weights[e] < 0) throw Error(Errc::NegativeWeight, "edge " + std::to_string(e));
    }
    return WeightedInstance{std::move(graph), std::move(weights)};
  }

  static WeightedInstance unit(Hypergraph graph) {
    EdgeValues w(graph.edge_count(), Rational(1));
    return WeightedInstance{std::move(graph), std::move(w)};
  }
};

inline void check_size(const Hypergraph& h, const EdgeValues& values, const char* what) {
  if (values.size() != h.edge_count()) {
    throw Error(Errc::SizeMismatch, std::string(what) + " has " + std::to_string(values.size()) +
                                        " entries for " + std::to_string(h.edge_count()) + " edges");
  }
}

/// Sum of x over the edges containing v.
inline Rational vertex_load(const Hypergraph& h, const EdgeValues& x, std::size_t v) {
  Rational load = 0;
  for (std::size_t e : h.incident(v)) load += x[e];
  return load;
}

inline bool is_matching(const Hypergraph& h, std::span<const std::size_t> edges) {
  std::vector<char> used(h.vertex_count(), 0);
  std::vector<std::size_t> seen(edges.begin(), edges.end());
  std::sort(seen.begin(), seen.end());
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (i > 0 && seen[i] == seen[i - 1]) continue;
    for (std::size_t v : h.edge(seen[i])) {
      if (used[v]) return false;
      used[v] = 1;
    }
  }
  return true;
}

/// x in [0,1]^E with load at most 1 on every vertex.
inline bool is_fractional_matching(const Hypergraph& h, const EdgeValues& x) {
  check_size(h, x, "x");
  for (const auto& value : x) {
    if (value < 0 || value > 1) return false;
  }
  for (std::size_t v = 0; v < h.vertex_count(); ++v) {
    if (vertex_load(h, x, v) > 1) return false;
  }
  return true;
}

/// B: vertices whose load is exactly 1.
inline std::vector<std::size_t> tight_vertices(const Hypergraph& h, const EdgeValues& x) {
  check_size(h, x, "x");
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < h.vertex_count(); ++v) {
    if (vertex_load(h, x, v) == 1) out.push_back(v);
  }
  return out;
}

/// Every value strictly inside (0,1).
inline bool is_reduced(const Hypergraph& h, const EdgeValues& x) {
  check_size(h, x, "x");
  return std::all_of(x.begin(), x.end(), [](const Rational& v) { return v > 0 && v < 1; });
}

inline EdgeValues indicator(const Hypergraph& h, std::span<const std::size_t> edges) {
  EdgeValues x(h.edge_count(), Rational(0));
  for (std::size_t e : edges) x.at(e) = 1;
  return x;
}

inline Rational weight_of(const EdgeValues& w, const EdgeValues& x) {
  Rational total = 0;
  for (std::size_t e = 0; e < w.size(); ++e) total += w[e] * x[e];
  return total;
}

}  // namespace hmatch
