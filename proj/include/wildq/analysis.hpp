#ifndef WILDQ_ANALYSIS_HPP
#define WILDQ_ANALYSIS_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <istream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "wildq/errors.hpp"
#include "wildq/graph.hpp"
#include "wildq/rank.hpp"
#include "wildq/text.hpp"

namespace wildq {

// Normalized Kendall tau distance:
//   d_kt(w1, w2) = 2 / (n (n-1)) * sum over (i, j) of I(i, j)
// with I(i, j) = 1 iff w1(i) < w1(j) AND w2(i) > w2(j).  Strict
// comparisons: ties contribute nothing.
inline double kendall_tau(const RankVector& w1, const RankVector& w2) {
  if (w1.size() != w2.size()) fail(errc::dimension_mismatch, "vector dimensions differ");
  size_t n = w1.size();
  if (n < 2) fail(errc::dimension_too_small, "kendall tau needs dimension >= 2");
  long long disagreements = 0;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (w1[i] < w1[j] && w2[i] > w2[j]) ++disagreements;
  return 2.0 * static_cast<double>(disagreements) / (static_cast<double>(n) * static_cast<double>(n - 1));
}

// Normalized Manhattan distance: d_1(w1, w2) = (1/n) sum |w1(i) - w2(i)|.
inline double manhattan(const RankVector& w1, const RankVector& w2) {
  if (w1.size() != w2.size()) fail(errc::dimension_mismatch, "vector dimensions differ");
  if (w1.size() == 0) fail(errc::dimension_too_small, "manhattan needs dimension >= 1");
  double sum = 0;
  for (size_t i = 0; i < w1.size(); ++i) sum += std::abs(w1[i] - w2[i]);
  return sum / static_cast<double>(w1.size());
}

// --- scoring function selection -------------------------------------------

enum class ScorerKind { npatterns, npages, pt_hits };

inline const char* scorer_name(ScorerKind k) {
  switch (k) {
    case ScorerKind::npatterns: return "npatterns";
    case ScorerKind::npages: return "npages";
    case ScorerKind::pt_hits: return "pt-hits";
  }
  return "?";
}

using Scorer = std::function<RankVector(const BipartiteGraph&)>;

// pt-hits on an edgeless graph is defined as all-zero here so that edge
// subset removal experiments cannot abort mid-run.
inline Scorer scorer_for(ScorerKind kind, int pt_max_iter = 100) {
  switch (kind) {
    case ScorerKind::npatterns:
      return [](const BipartiteGraph& g) { return npatterns(g); };
    case ScorerKind::npages:
      return [](const BipartiteGraph& g) { return npages(g); };
    case ScorerKind::pt_hits:
      return [pt_max_iter](const BipartiteGraph& g) {
        if (g.edge_count() == 0)
          return RankVector{std::vector<double>(static_cast<size_t>(g.tuple_count()), 0.0), "pt-hits"};
        return pt_hits(g, 1e-8, pt_max_iter).tuple_scores;
      };
  }
  fail(errc::invalid_argument, "unknown scorer");
}

// --- deterministic graph families ------------------------------------------

namespace detail {

inline uint64_t rng_below(std::mt19937_64& rng, uint64_t bound) {
  uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
  for (;;) {
    uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

inline double rng_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

struct GraphFamilySpec {
  enum class Family { random, adversarial_two_community };
  Family family = Family::random;
  int m = 12;
  int n = 100;
  double edge_prob = 0.3;  // random family
  int weight_max = 1;      // random family
  int bridge_edges = 1;    // adversarial family
  uint64_t seed = 1;

  static GraphFamilySpec random(int m, int n, double edge_prob, int weight_max, uint64_t seed) {
    GraphFamilySpec s;
    s.family = Family::random;
    s.m = m;
    s.n = n;
    s.edge_prob = edge_prob;
    s.weight_max = weight_max;
    s.seed = seed;
    return s;
  }

  static GraphFamilySpec adversarial(int m, int n, int bridge_edges, uint64_t seed) {
    GraphFamilySpec s;
    s.family = Family::adversarial_two_community;
    s.m = m;
    s.n = n;
    s.bridge_edges = bridge_edges;
    s.seed = seed;
    return s;
  }

  std::string family_name() const {
    return family == Family::random ? "random" : "adversarial-two-community";
  }
};

// Uniform random bipartite graph: each (p, t) edge present with
// probability edge_prob, weight uniform in 1..weight_max.
inline BipartiteGraph make_random_graph(int m, int n, double edge_prob, int weight_max,
                                        uint64_t seed) {
  if (m < 1 || n < 1) fail(errc::invalid_argument, "graph needs m, n >= 1");
  if (!(edge_prob > 0.0 && edge_prob <= 1.0)) fail(errc::invalid_argument, "edge probability in (0, 1]");
  if (weight_max < 1) fail(errc::invalid_argument, "weight_max >= 1");
  std::mt19937_64 rng(seed);
  std::vector<GraphEdge> edges;
  for (int p = 0; p < m; ++p) {
    for (int t = 0; t < n; ++t) {
      if (detail::rng_unit(rng) < edge_prob) {
        int w = 1 + static_cast<int>(detail::rng_below(rng, static_cast<uint64_t>(weight_max)));
        edges.push_back(GraphEdge{p, t, w});
      }
    }
  }
  return BipartiteGraph(m, n, std::move(edges));
}

// Two complete blocks joined by a few bridge edges from the first pattern
// of block A to the first tuples of block B.  With even m and n the blocks
// tie; removing block-internal edges hands dominance to the other side,
// which is what makes pt-hits orderings jump.  Odd sizes give block A one
// extra row of slack so that a single removal flips dominance.
inline BipartiteGraph make_adversarial_graph(int m, int n, int bridge_edges) {
  if (m < 2 || n < 2) fail(errc::invalid_argument, "adversarial family needs m, n >= 2");
  int ma = m / 2, na = (n + 1) / 2;
  int nb = n - na;
  std::vector<GraphEdge> edges;
  for (int p = 0; p < ma; ++p)
    for (int t = 0; t < na; ++t) edges.push_back(GraphEdge{p, t, 1});
  for (int p = ma; p < m; ++p)
    for (int t = na; t < n; ++t) edges.push_back(GraphEdge{p, t, 1});
  for (int b = 0; b < bridge_edges && b < nb; ++b)
    edges.push_back(GraphEdge{0, na + b, 1});
  return BipartiteGraph(m, n, std::move(edges));
}

inline BipartiteGraph make_graph(const GraphFamilySpec& spec) {
  if (spec.family == GraphFamilySpec::Family::random)
    return make_random_graph(spec.m, spec.n, spec.edge_prob, spec.weight_max, spec.seed);
  return make_adversarial_graph(spec.m, spec.n, spec.bridge_edges);
}

// --- stability experiments ---------------------------------------------------

struct StabilityRow {
  std::string family;
  int m = 0, n = 0, k = 0;
  std::string metric;  // "<scorer>.d_kt" or "<scorer>.d_1"
  double observed_max = 0;
  double bound = 0;     // theoretical bound, when one applies
  bool has_bound = false;
  bool pass = true;     // observed_max <= bound (always true without a bound)
};

struct StabilityReport {
  std::vector<StabilityRow> rows;

  bool all_pass() const {
    for (const auto& r : rows)
      if (r.has_bound && !r.pass) return false;
    return true;
  }
};

namespace detail {

template <typename Fn>
void for_each_k_subset(size_t total, int k, Fn&& fn) {
  std::vector<size_t> combo(static_cast<size_t>(k));
  std::function<void(size_t, int)> rec = [&](size_t start, int depth) {
    if (depth == k) {
      fn(combo);
      return;
    }
    for (size_t i = start; i + static_cast<size_t>(k - depth) <= total; ++i) {
      combo[static_cast<size_t>(depth)] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
}

inline std::vector<size_t> sample_k_distinct(std::mt19937_64& rng, size_t total, int k) {
  std::set<size_t> picked;
  while (picked.size() < static_cast<size_t>(k))
    picked.insert(rng_below(rng, static_cast<uint64_t>(total)));
  return {picked.begin(), picked.end()};
}

}  // namespace detail

// Measures max d(F(G), F(G minus k edges)) over `samples` random k-edge
// subsets per graph (plus every subset exhaustively when the graph has at
// most 12 edges) and compares against the proof bounds:
//   NPatterns: d_kt <= 2k/(n-1),  d_1 <= k/n
//   NPages:    d_kt <= 2k/(n-1),  d_1 <= c k/n  (c = max edge weight)
// pt-hits rows carry no bound; they are reported for inspection.
inline StabilityReport stability_experiment(ScorerKind kind, const std::vector<GraphFamilySpec>& specs,
                                            int k, int samples, uint64_t sample_seed = 17,
                                            int pt_max_iter = 200) {
  if (k < 0) fail(errc::invalid_argument, "k must be >= 0");
  Scorer score = scorer_for(kind, pt_max_iter);
  StabilityReport report;
  for (const auto& spec : specs) {
    BipartiteGraph g = make_graph(spec);
    if (k >= static_cast<int>(g.edge_count()))
      fail(errc::insufficient_edges, "k = " + std::to_string(k) + " but graph has " +
                                         std::to_string(g.edge_count()) + " edges");
    RankVector base = score(g);
    double max_kt = 0, max_l1 = 0;
    auto measure = [&](const std::vector<size_t>& subset) {
      BipartiteGraph reduced = g.without_edge_indices(subset);
      RankVector perturbed = score(reduced);
      max_kt = std::max(max_kt, kendall_tau(base, perturbed));
      max_l1 = std::max(max_l1, manhattan(base, perturbed));
    };
    if (k == 0) {
      measure({});
    } else {
      if (g.edge_count() <= 12) detail::for_each_k_subset(g.edge_count(), k, measure);
      std::mt19937_64 rng(sample_seed ^ (static_cast<uint64_t>(spec.n) << 20) ^
                          static_cast<uint64_t>(k));
      for (int s = 0; s < samples; ++s)
        measure(detail::sample_k_distinct(rng, g.edge_count(), k));
    }

    StabilityRow kt_row{spec.family_name(), spec.m, spec.n, k,
                        std::string(scorer_name(kind)) + ".d_kt", max_kt, 0, false, true};
    StabilityRow l1_row{spec.family_name(), spec.m, spec.n, k,
                        std::string(scorer_name(kind)) + ".d_1", max_l1, 0, false, true};
    if (kind == ScorerKind::npatterns || kind == ScorerKind::npages) {
      kt_row.has_bound = true;
      kt_row.bound = spec.n > 1 ? 2.0 * k / (spec.n - 1) : 0.0;
      kt_row.pass = max_kt <= kt_row.bound + 1e-12;
      l1_row.has_bound = true;
      double c = kind == ScorerKind::npages ? std::max(1, g.max_weight()) : 1;
      l1_row.bound = c * static_cast<double>(k) / spec.n;
      l1_row.pass = max_l1 <= l1_row.bound + 1e-12;
    }
    report.rows.push_back(std::move(kt_row));
    report.rows.push_back(std::move(l1_row));
  }
  return report;
}

// --- locality and monotonicity ---------------------------------------------

struct LocalityViolation {
  int tuple_i = 0, tuple_j = 0;
  double before_i = 0, before_j = 0, after_i = 0, after_j = 0;
};

// Strict ordering flips between tuples not adjacent to the removed edge.
inline std::vector<LocalityViolation> locality_check(const Scorer& score, const BipartiteGraph& g,
                                                     const GraphEdge& e, double eps = 1e-9) {
  if (!g.has_edge(e.pattern, e.tuple)) fail(errc::edge_not_in_graph, "edge not present");
  RankVector before = score(g);
  RankVector after = score(g.without_edges({e}));
  std::vector<LocalityViolation> violations;
  int n = g.tuple_count();
  for (int i = 0; i < n; ++i) {
    if (i == e.tuple) continue;
    for (int j = i + 1; j < n; ++j) {
      if (j == e.tuple) continue;
      double bi = before[static_cast<size_t>(i)], bj = before[static_cast<size_t>(j)];
      double ai = after[static_cast<size_t>(i)], aj = after[static_cast<size_t>(j)];
      bool flipped = (bi > bj + eps && aj > ai + eps) || (bj > bi + eps && ai > aj + eps);
      if (flipped) violations.push_back(LocalityViolation{i, j, bi, bj, ai, aj});
    }
  }
  return violations;
}

struct MonotonicityViolation {
  int t1 = 0, t2 = 0;
  double score1 = 0, score2 = 0;
};

// Whenever t2's pattern set contains t1's and dominates its weights
// edge-wise, score(t2) must be >= score(t1).
inline std::vector<MonotonicityViolation> monotonicity_check(const Scorer& score,
                                                             const BipartiteGraph& g,
                                                             double eps = 1e-9) {
  RankVector v = score(g);
  std::vector<MonotonicityViolation> violations;
  int n = g.tuple_count();
  for (int t1 = 0; t1 < n; ++t1) {
    for (int t2 = 0; t2 < n; ++t2) {
      if (t1 == t2) continue;
      bool dominated = true;
      for (const auto& [p, w1] : g.patterns_of(t1)) {
        int w2 = g.weight(p, t2);
        if (w2 < w1) {
          dominated = false;
          break;
        }
      }
      if (!dominated) continue;
      double s1 = v[static_cast<size_t>(t1)], s2 = v[static_cast<size_t>(t2)];
      if (s2 < s1 - eps) violations.push_back(MonotonicityViolation{t1, t2, s1, s2});
    }
  }
  return violations;
}

// --- precision / recall -------------------------------------------------------

struct PrPoint {
  int rank = 0;  // 1-based position
  bool correct = false;
  double recall = 0;
  double precision = 0;
};

// Truth entries with alternates ("New York|NY"), normalized.
using TruthSet = std::vector<std::vector<std::string>>;

inline TruthSet load_truth(std::istream& in) {
  TruthSet truth;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::vector<std::string> alternates;
    for (const auto& alt : split(t, '|')) {
      std::string norm = fold(collapse_ws(alt));
      if (!norm.empty()) alternates.push_back(norm);
    }
    if (!alternates.empty()) truth.push_back(std::move(alternates));
  }
  return truth;
}

// Interpolation-free precision/recall at every rank position.  A candidate
// is correct iff its normalized key matches any alternate of any truth
// entry; recall counts distinct matched entries over all entries.
inline std::vector<PrPoint> precision_recall(const std::vector<std::string>& ranked_keys,
                                             const TruthSet& truth) {
  if (truth.empty()) fail(errc::empty_truth, "truth set is empty");
  auto entry_of = [&](const std::string& key) -> int {
    for (size_t e = 0; e < truth.size(); ++e)
      for (const auto& alt : truth[e])
        if (alt == key) return static_cast<int>(e);
    return -1;
  };
  std::set<int> matched;
  std::vector<PrPoint> points;
  int correct_so_far = 0;
  for (size_t i = 0; i < ranked_keys.size(); ++i) {
    int entry = entry_of(fold(collapse_ws(ranked_keys[i])));
    PrPoint pt;
    pt.rank = static_cast<int>(i) + 1;
    pt.correct = entry >= 0;
    if (entry >= 0) {
      ++correct_so_far;
      matched.insert(entry);
    }
    pt.recall = static_cast<double>(matched.size()) / static_cast<double>(truth.size());
    pt.precision = static_cast<double>(correct_so_far) / static_cast<double>(pt.rank);
    points.push_back(pt);
  }
  return points;
}

// Precision at the first position where recall reaches the target; 0 when
// the target recall is never reached.
inline double precision_at_recall(const std::vector<PrPoint>& points, double target) {
  for (const auto& pt : points)
    if (pt.recall >= target) return pt.precision;
  return 0.0;
}

}  // namespace wildq

#endif  // WILDQ_ANALYSIS_HPP
