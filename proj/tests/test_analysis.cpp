#include "doctest.h"
#include "oracles.hpp"
#include "wildq/analysis.hpp"

#include <random>
#include <sstream>

using namespace wildq;

namespace {

RankVector rv(std::vector<double> scores) { return RankVector{std::move(scores), "test"}; }

// every bipartite graph on m patterns x n tuples, by edge subset
template <typename Fn>
void for_every_graph(int m, int n, Fn&& fn) {
  int cells = m * n;
  for (unsigned mask = 0; mask < (1u << cells); ++mask) {
    std::vector<GraphEdge> edges;
    for (int c = 0; c < cells; ++c)
      if (mask & (1u << c)) edges.push_back(GraphEdge{c / n, c % n, 1 + (c % 3)});
    fn(BipartiteGraph(m, n, std::move(edges)));
  }
}

}  // namespace

TEST_CASE("kendall tau basics") {
  CHECK(kendall_tau(rv({1, 2, 3}), rv({1, 2, 3})) == 0.0);
  CHECK(kendall_tau(rv({1, 2, 3}), rv({3, 2, 1})) == 1.0);
  CHECK(kendall_tau(rv({1, 1, 1}), rv({3, 2, 1})) == 0.0);  // ties contribute nothing
  try {
    kendall_tau(rv({1, 2}), rv({1, 2, 3}));
    FAIL("expected DimensionMismatch");
  } catch (const error& e) {
    CHECK(e.code() == errc::dimension_mismatch);
  }
  try {
    kendall_tau(rv({1}), rv({1}));
    FAIL("expected DimensionTooSmall");
  } catch (const error& e) {
    CHECK(e.code() == errc::dimension_too_small);
  }
}

TEST_CASE("manhattan basics") {
  CHECK(manhattan(rv({1, 2}), rv({1, 2})) == 0.0);
  CHECK(manhattan(rv({1, 2}), rv({2, 4})) == 1.5);
  try {
    manhattan(rv({1}), rv({1, 2}));
    FAIL("expected DimensionMismatch");
  } catch (const error& e) {
    CHECK(e.code() == errc::dimension_mismatch);
  }
}

TEST_CASE("distances match brute-force oracles on random vectors") {
  std::mt19937_64 rng(123);
  for (int iter = 0; iter < 300; ++iter) {
    size_t dim = 2 + rng() % 63;
    std::vector<double> a(dim), b(dim);
    for (size_t i = 0; i < dim; ++i) {
      a[i] = static_cast<double>(rng() % 1000) / 10.0;
      b[i] = static_cast<double>(rng() % 1000) / 10.0;
    }
    CHECK(kendall_tau(rv(a), rv(b)) == oracles::kendall_tau_pairs(a, b));
    CHECK(manhattan(rv(a), rv(b)) == oracles::manhattan_elementwise(a, b));
  }
}

TEST_CASE("kendall tau sees only the ordering") {
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 50; ++iter) {
    std::vector<double> a(10), b(10), a_scaled(10);
    for (size_t i = 0; i < 10; ++i) {
      a[i] = static_cast<double>(rng() % 100);
      b[i] = static_cast<double>(rng() % 100);
      a_scaled[i] = 3.0 * a[i] + 17.0;  // strictly monotone rescale
    }
    CHECK(kendall_tau(rv(a), rv(b)) == kendall_tau(rv(a_scaled), rv(b)));
  }
}

TEST_CASE("manhattan satisfies the triangle inequality") {
  std::mt19937_64 rng(9);
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<double> a(8), b(8), c(8);
    for (size_t i = 0; i < 8; ++i) {
      a[i] = static_cast<double>(rng() % 100);
      b[i] = static_cast<double>(rng() % 100);
      c[i] = static_cast<double>(rng() % 100);
    }
    CHECK(manhattan(rv(a), rv(c)) <= manhattan(rv(a), rv(b)) + manhattan(rv(b), rv(c)) + 1e-12);
  }
}

TEST_CASE("stability bounds hold for npatterns and npages") {
  std::vector<GraphFamilySpec> specs = {GraphFamilySpec::random(12, 50, 0.3, 3, 51),
                                        GraphFamilySpec::random(12, 100, 0.3, 3, 101)};
  for (int k : {1, 5}) {
    for (auto kind : {ScorerKind::npatterns, ScorerKind::npages}) {
      StabilityReport report = stability_experiment(kind, specs, k, 60);
      CHECK(report.all_pass());
      for (const auto& row : report.rows) {
        CHECK(row.has_bound);
        CHECK(row.observed_max <= row.bound + 1e-12);
      }
    }
  }
}

TEST_CASE("stability with k = 0 measures zero distance") {
  StabilityReport report = stability_experiment(
      ScorerKind::npatterns, {GraphFamilySpec::random(4, 10, 0.5, 2, 3)}, 0, 10);
  for (const auto& row : report.rows) CHECK(row.observed_max == 0.0);
}

TEST_CASE("stability covers tiny graphs exhaustively") {
  // 2x3 with p=1.0 has 6 edges <= 12, so every k-subset is enumerated
  StabilityReport report = stability_experiment(
      ScorerKind::npatterns, {GraphFamilySpec::random(2, 3, 1.0, 1, 1)}, 2, 5);
  CHECK(report.all_pass());
}

TEST_CASE("stability rejects k >= edge count") {
  try {
    stability_experiment(ScorerKind::npatterns, {GraphFamilySpec::random(2, 2, 1.0, 1, 1)}, 4, 5);
    FAIL("expected InsufficientEdges");
  } catch (const error& e) {
    CHECK(e.code() == errc::insufficient_edges);
  }
}

TEST_CASE("pt-hits is not stable on the two-community family") {
  double last = 0;
  for (int n : {8, 16, 32}) {
    auto report = stability_experiment(ScorerKind::pt_hits,
                                       {GraphFamilySpec::adversarial(4, n, 1, 1)}, 1, 60, 7, 400);
    for (const auto& row : report.rows) {
      CHECK(!row.has_bound);
      if (row.metric == "pt-hits.d_kt") last = row.observed_max;
    }
    CHECK(last > 0.25);  // does not shrink toward 0 as n grows
  }
}

TEST_CASE("locality: npatterns and npages never reorder non-adjacent tuples") {
  auto np = scorer_for(ScorerKind::npatterns);
  auto ng = scorer_for(ScorerKind::npages);
  for_every_graph(2, 3, [&](const BipartiteGraph& g) {
    for (const auto& e : g.edges()) {
      CHECK(locality_check(np, g, e).empty());
      CHECK(locality_check(ng, g, e).empty());
    }
  });
}

TEST_CASE("locality_check rejects absent edges") {
  BipartiteGraph g(2, 2, {{0, 0, 1}});
  try {
    locality_check(scorer_for(ScorerKind::npatterns), g, GraphEdge{1, 1, 1});
    FAIL("expected EdgeNotInGraph");
  } catch (const error& e) {
    CHECK(e.code() == errc::edge_not_in_graph);
  }
}

TEST_CASE("pt-hits flips non-adjacent tuples on the two-community witness") {
  BipartiteGraph g = make_adversarial_graph(7, 5, 1);
  // remove an edge inside the dominant block; tuples of the other block
  // overtake tuples the edge does not touch
  auto violations = locality_check(scorer_for(ScorerKind::pt_hits, 500), g, GraphEdge{2, 2, 1});
  CHECK(!violations.empty());
  for (const auto& v : violations) {
    CHECK(v.tuple_i != 2);
    CHECK(v.tuple_j != 2);
  }
}

TEST_CASE("monotonicity holds for all three scorers on random graphs") {
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    BipartiteGraph g = make_random_graph(5, 7, 0.5, 3, seed);
    if (g.edge_count() == 0) continue;
    CHECK(monotonicity_check(scorer_for(ScorerKind::npatterns), g).empty());
    CHECK(monotonicity_check(scorer_for(ScorerKind::npages), g).empty());
    CHECK(monotonicity_check(scorer_for(ScorerKind::pt_hits), g).empty());
  }
}

TEST_CASE("monotonicity: identical neighborhoods give equal npatterns scores") {
  BipartiteGraph g(2, 2, {{0, 0, 1}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}});
  RankVector v = npatterns(g);
  CHECK(v[0] == v[1]);
}

TEST_CASE("monotonicity negative control: negated npages is caught") {
  Scorer negated = [](const BipartiteGraph& g) {
    RankVector v = npages(g);
    for (double& x : v.scores) x = -x;
    v.algorithm = "negated-npages";
    return v;
  };
  BipartiteGraph g(2, 2, {{0, 0, 1}, {0, 1, 1}, {1, 1, 1}});  // t1 strictly dominates t0
  CHECK(!monotonicity_check(negated, g).empty());
}

TEST_CASE("precision_recall on a fully correct prefix") {
  TruthSet truth;
  std::vector<std::string> keys;
  for (int i = 0; i < 10; ++i) {
    truth.push_back({"item" + std::to_string(i)});
    keys.push_back("item" + std::to_string(i));
  }
  auto points = precision_recall(keys, truth);
  REQUIRE(points.size() == 10);
  for (const auto& pt : points) CHECK(pt.precision == 1.0);
  CHECK(points.back().recall == 1.0);
}

TEST_CASE("precision_recall accepts alternates") {
  TruthSet truth = {{"new york", "ny"}, {"texas", "tx"}};
  auto points = precision_recall({"NY", "nowhere", "Texas"}, truth);
  REQUIRE(points.size() == 3);
  CHECK(points[0].correct);
  CHECK(points[0].recall == 0.5);
  CHECK(!points[1].correct);
  CHECK(points[2].correct);
  CHECK(points[2].recall == 1.0);
  CHECK(points[2].precision == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("precision_recall hand-computed five item example") {
  TruthSet truth = {{"a"}, {"b"}, {"c"}};
  auto points = precision_recall({"a", "x", "b", "a", "y"}, truth);
  // rank: correct? recall precision
  //  1 a  yes  1/3  1/1
  //  2 x  no   1/3  1/2
  //  3 b  yes  2/3  2/3
  //  4 a  yes (duplicate entry already matched) 2/3 3/4
  //  5 y  no   2/3  3/5
  CHECK(points[0].recall == doctest::Approx(1.0 / 3));
  CHECK(points[0].precision == 1.0);
  CHECK(points[1].precision == 0.5);
  CHECK(points[2].recall == doctest::Approx(2.0 / 3));
  CHECK(points[2].precision == doctest::Approx(2.0 / 3));
  CHECK(points[3].recall == doctest::Approx(2.0 / 3));
  CHECK(points[3].precision == doctest::Approx(3.0 / 4));
  CHECK(points[4].precision == doctest::Approx(3.0 / 5));
  CHECK(precision_at_recall(points, 0.6) == doctest::Approx(2.0 / 3));
}

TEST_CASE("precision_recall requires truth entries") {
  try {
    precision_recall({"a"}, {});
    FAIL("expected EmptyTruth");
  } catch (const error& e) {
    CHECK(e.code() == errc::empty_truth);
  }
}

TEST_CASE("load_truth parses alternates and comments") {
  std::istringstream in("# states\nNew York|NY\nTexas\n\n");
  TruthSet truth = load_truth(in);
  REQUIRE(truth.size() == 2);
  CHECK(truth[0] == std::vector<std::string>{"new york", "ny"});
  CHECK(truth[1] == std::vector<std::string>{"texas"});
}

TEST_CASE("graph family constructors validate their inputs") {
  CHECK_THROWS_AS(make_random_graph(0, 5, 0.5, 1, 1), error);
  CHECK_THROWS_AS(make_random_graph(5, 5, 0.0, 1, 1), error);
  CHECK_THROWS_AS(make_random_graph(5, 5, 0.5, 0, 1), error);
  BipartiteGraph g = make_adversarial_graph(7, 5, 1);
  CHECK(g.edge_count() == 3 * 3 + 4 * 2 + 1);
  // same spec, same graph
  BipartiteGraph g2 = make_adversarial_graph(7, 5, 1);
  CHECK(g.edges() == g2.edges());
  BipartiteGraph r1 = make_random_graph(5, 9, 0.4, 4, 77);
  BipartiteGraph r2 = make_random_graph(5, 9, 0.4, 4, 77);
  CHECK(r1.edges() == r2.edges());
}
