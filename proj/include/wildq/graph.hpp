#ifndef WILDQ_GRAPH_HPP
#define WILDQ_GRAPH_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "wildq/errors.hpp"

namespace wildq {

// One weighted edge of the pattern-tuple graph.  The weight counts the
// distinct documents in which the tuple matched the pattern.
struct GraphEdge {
  int pattern = 0;
  int tuple = 0;
  int weight = 1;

  bool operator==(const GraphEdge&) const = default;
};

// Immutable bipartite graph between m patterns and n tuples.  Node sets
// are fixed; removing edges leaves isolated nodes in place so that score
// vectors keep their dimension.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;

  BipartiteGraph(int m, int n, std::vector<GraphEdge> edges)
      : m_(m), n_(n), edges_(std::move(edges)) {
    if (m_ < 0 || n_ < 0) fail(errc::invalid_argument, "negative node count");
    std::sort(edges_.begin(), edges_.end(), [](const GraphEdge& a, const GraphEdge& b) {
      return a.pattern != b.pattern ? a.pattern < b.pattern : a.tuple < b.tuple;
    });
    tuples_of_.assign(static_cast<size_t>(m_), {});
    patterns_of_.assign(static_cast<size_t>(n_), {});
    for (size_t i = 0; i < edges_.size(); ++i) {
      const GraphEdge& e = edges_[i];
      if (e.pattern < 0 || e.pattern >= m_ || e.tuple < 0 || e.tuple >= n_)
        fail(errc::invalid_argument, "edge endpoint out of range");
      if (e.weight < 1) fail(errc::invalid_argument, "edge weight must be >= 1");
      if (i > 0 && edges_[i - 1].pattern == e.pattern && edges_[i - 1].tuple == e.tuple)
        fail(errc::invalid_argument, "parallel edge");
      tuples_of_[static_cast<size_t>(e.pattern)].push_back({e.tuple, e.weight});
      patterns_of_[static_cast<size_t>(e.tuple)].push_back({e.pattern, e.weight});
    }
  }

  int pattern_count() const { return m_; }
  int tuple_count() const { return n_; }
  size_t edge_count() const { return edges_.size(); }
  const std::vector<GraphEdge>& edges() const { return edges_; }

  // (tuple, weight) pairs for a pattern, ascending by tuple.
  const std::vector<std::pair<int, int>>& tuples_of(int pattern) const {
    return tuples_of_[static_cast<size_t>(pattern)];
  }

  // (pattern, weight) pairs for a tuple, ascending by pattern.
  const std::vector<std::pair<int, int>>& patterns_of(int tuple) const {
    return patterns_of_[static_cast<size_t>(tuple)];
  }

  bool has_edge(int pattern, int tuple) const { return weight(pattern, tuple) > 0; }

  int weight(int pattern, int tuple) const {
    for (const auto& [t, w] : tuples_of_[static_cast<size_t>(pattern)])
      if (t == tuple) return w;
    return 0;
  }

  int max_weight() const {
    int c = 0;
    for (const auto& e : edges_) c = std::max(c, e.weight);
    return c;
  }

  // Graph with the given edges removed; node sets unchanged.
  BipartiteGraph without_edges(const std::vector<GraphEdge>& removed) const {
    std::vector<GraphEdge> kept;
    kept.reserve(edges_.size());
    for (const auto& e : edges_) {
      bool drop = false;
      for (const auto& r : removed)
        if (r.pattern == e.pattern && r.tuple == e.tuple) drop = true;
      if (!drop) kept.push_back(e);
    }
    return BipartiteGraph(m_, n_, std::move(kept));
  }

  BipartiteGraph without_edge_indices(const std::vector<size_t>& indices) const {
    std::vector<GraphEdge> removed;
    removed.reserve(indices.size());
    for (size_t i : indices) removed.push_back(edges_.at(i));
    return without_edges(removed);
  }

 private:
  int m_ = 0;
  int n_ = 0;
  std::vector<GraphEdge> edges_;
  std::vector<std::vector<std::pair<int, int>>> tuples_of_;
  std::vector<std::vector<std::pair<int, int>>> patterns_of_;
};

// Per-tuple (or per-pattern) score vector produced by a scoring function.
struct RankVector {
  std::vector<double> scores;
  std::string algorithm;

  size_t size() const { return scores.size(); }
  double operator[](size_t i) const { return scores[i]; }
};

}  // namespace wildq

#endif  // WILDQ_GRAPH_HPP
