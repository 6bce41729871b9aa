#ifndef WILDQ_RANK_HPP
#define WILDQ_RANK_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "wildq/errors.hpp"
#include "wildq/graph.hpp"

namespace wildq {

// score(t) = number of distinct patterns with an edge to t.
inline RankVector npatterns(const BipartiteGraph& g) {
  RankVector v;
  v.algorithm = "npatterns";
  v.scores.resize(static_cast<size_t>(g.tuple_count()), 0.0);
  for (int t = 0; t < g.tuple_count(); ++t)
    v.scores[static_cast<size_t>(t)] = static_cast<double>(g.patterns_of(t).size());
  return v;
}

// score(t) = sum over patterns of w(p->t), the supporting document counts.
inline RankVector npages(const BipartiteGraph& g) {
  RankVector v;
  v.algorithm = "npages";
  v.scores.resize(static_cast<size_t>(g.tuple_count()), 0.0);
  for (int t = 0; t < g.tuple_count(); ++t) {
    double sum = 0;
    for (const auto& [p, w] : g.patterns_of(t)) sum += w;
    v.scores[static_cast<size_t>(t)] = sum;
  }
  return v;
}

// Document-frequency counts behind the mutual-information score.
struct MiCounts {
  long long df_q = 0;   // documents containing the query's literal text
  long long df_r = 0;   // documents containing candidate r
  long long df_qr = 0;  // documents containing r encoded in q
  long long n = 0;      // corpus size
};

struct MiScore {
  double mi = 0;           // log P(q,r) / (P(q) P(r)), natural log
  double score = 0;        // P(q,r) / P(r), the within-query ranking value
  double weighted_mi = 0;  // P(q,r) * mi variant
};

// MI over document frequencies.  df_qr = 0 gives score 0 and mi = -inf
// (the representable minimum); a zero marginal is an Undefined error.
inline MiScore mutual_information(const MiCounts& c) {
  if (c.n < 1) fail(errc::invalid_argument, "corpus size must be >= 1");
  if (c.df_qr < 0 || c.df_qr > std::min(c.df_q, c.df_r) || std::max(c.df_q, c.df_r) > c.n)
    fail(errc::invalid_argument, "document frequencies must satisfy 0 <= df_qr <= min(df_q, df_r) <= N");
  if (c.df_q <= 0 || c.df_r <= 0) fail(errc::undefined_mi, "zero marginal document frequency");
  MiScore s;
  double n = static_cast<double>(c.n);
  double pq = static_cast<double>(c.df_q) / n;
  double pr = static_cast<double>(c.df_r) / n;
  double pqr = static_cast<double>(c.df_qr) / n;
  if (c.df_qr <= 0) {
    s.mi = -std::numeric_limits<double>::infinity();
    s.score = 0;
    s.weighted_mi = 0;
    return s;
  }
  s.mi = std::log(pqr / (pq * pr));
  s.score = static_cast<double>(c.df_qr) / static_cast<double>(c.df_r);
  s.weighted_mi = pqr * s.mi;
  return s;
}

struct PtHitsResult {
  RankVector tuple_scores;
  RankVector pattern_scores;
  int iterations = 0;
  bool converged = false;
};

// Iterative mutual reinforcement between patterns and tuples:
//
//   w_T(t) = sum over patterns p extracting t of w_P(p)         (1)
//   w_P(p) = sum over tuples t extracted by p of w_T(t)         (2)
//
// All weights start at 1; after each full iteration both vectors are
// L1-normalized.  Stops when the largest per-entry change falls below tol
// or after max_iter iterations.  With `weighted` set, each summand is
// multiplied by the edge weight w(p->t); an extension, off by default.
inline PtHitsResult pt_hits(const BipartiteGraph& g, double tol = 1e-8, int max_iter = 100,
                            bool weighted = false) {
  if (g.edge_count() == 0) fail(errc::empty_graph, "pt_hits needs at least one edge");
  size_t m = static_cast<size_t>(g.pattern_count());
  size_t n = static_cast<size_t>(g.tuple_count());
  std::vector<double> wt(n, 1.0), wp(m, 1.0);
  std::vector<double> prev_wt, prev_wp;

  auto l1_normalize = [](std::vector<double>& v) {
    double sum = 0;
    for (double x : v) sum += x;
    if (sum > 0)
      for (double& x : v) x /= sum;
  };

  PtHitsResult r;
  for (int iter = 1; iter <= max_iter; ++iter) {
    prev_wt = wt;
    prev_wp = wp;
    for (size_t t = 0; t < n; ++t) {
      double sum = 0;
      for (const auto& [p, w] : g.patterns_of(static_cast<int>(t)))
        sum += wp[static_cast<size_t>(p)] * (weighted ? w : 1);
      wt[t] = sum;
    }
    for (size_t p = 0; p < m; ++p) {
      double sum = 0;
      for (const auto& [t, w] : g.tuples_of(static_cast<int>(p)))
        sum += wt[static_cast<size_t>(t)] * (weighted ? w : 1);
      wp[p] = sum;
    }
    l1_normalize(wt);
    l1_normalize(wp);
    r.iterations = iter;
    double delta = 0;
    for (size_t i = 0; i < n; ++i) delta = std::max(delta, std::abs(wt[i] - prev_wt[i]));
    for (size_t i = 0; i < m; ++i) delta = std::max(delta, std::abs(wp[i] - prev_wp[i]));
    if (delta < tol) {
      r.converged = true;
      break;
    }
  }
  r.tuple_scores = RankVector{std::move(wt), "pt-hits"};
  r.pattern_scores = RankVector{std::move(wp), "pt-hits"};
  return r;
}

// Tuples scoring at or above the threshold, sorted by score descending,
// ties by key ascending.  `keys` supplies the tie-break identity.
inline std::vector<std::pair<int, double>> apply_cutoff(const RankVector& v, double threshold,
                                                        const std::vector<std::vector<std::string>>& keys) {
  std::vector<std::pair<int, double>> out;
  for (size_t i = 0; i < v.scores.size(); ++i)
    if (v.scores[i] >= threshold) out.emplace_back(static_cast<int>(i), v.scores[i]);
  std::stable_sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    const auto& ka = keys[static_cast<size_t>(a.first)];
    const auto& kb = keys[static_cast<size_t>(b.first)];
    return ka < kb;
  });
  return out;
}

}  // namespace wildq

#endif  // WILDQ_RANK_HPP
