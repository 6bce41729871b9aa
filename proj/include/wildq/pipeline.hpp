#ifndef WILDQ_PIPELINE_HPP
#define WILDQ_PIPELINE_HPP

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "wildq/analysis.hpp"
#include "wildq/builtin_lexicon.hpp"
#include "wildq/builtin_rules.hpp"
#include "wildq/corpus.hpp"
#include "wildq/extract.hpp"
#include "wildq/match.hpp"
#include "wildq/rank.hpp"
#include "wildq/rules.hpp"

namespace wildq {

enum class RankAlgo { pt_hits, npages, npatterns, mi };
enum class OutputFormat { table, tsv, json };

inline const char* rank_algo_name(RankAlgo a) {
  switch (a) {
    case RankAlgo::pt_hits: return "pt-hits";
    case RankAlgo::npages: return "npages";
    case RankAlgo::npatterns: return "npatterns";
    case RankAlgo::mi: return "mi";
  }
  return "?";
}

struct RunConfig {
  std::string corpus_path;
  std::vector<std::string> rule_paths;  // user rule files, applied after built-ins
  bool use_builtin_rules = true;
  std::string lexicon_dir;  // empty: embedded defaults
  int cap = 200;
  RankAlgo rank = RankAlgo::pt_hits;
  double cutoff = 0.0;
  OutputFormat format = OutputFormat::table;
  uint64_t seed = 0;
  bool weighted_edges = false;

  void validate() const {
    if (cap < 1) fail(errc::invalid_argument, "--cap must be >= 1");
    if (cutoff < 0) fail(errc::invalid_argument, "--cutoff must be >= 0");
  }
};

inline Lexicon load_lexicon(const RunConfig& config) {
  if (config.lexicon_dir.empty()) return builtin_lexicon();
  if (!std::filesystem::is_directory(config.lexicon_dir))
    fail(errc::io_error, "no such lexicon directory: " + config.lexicon_dir);
  return Lexicon::from_directory(config.lexicon_dir);
}

inline std::vector<RewriteRule> load_rules(const RunConfig& config) {
  std::vector<RewriteRule> rules;
  if (config.use_builtin_rules) rules = builtin_rules();
  for (const auto& path : config.rule_paths)
    for (auto& r : parse_rules_file(path)) rules.push_back(std::move(r));
  return rules;
}

struct PatternInfo {
  int id = 0;
  std::string text;
  std::string provenance;
  double weight = 0;
};

struct ResultRow {
  int rank = 0;
  int tuple = 0;
  double score = 0;
  std::vector<std::string> values;
};

struct QueryRun {
  QueryAst ast;
  std::vector<Pattern> patterns;
  ExtractionResult extraction;
  RankVector tuple_scores;
  std::vector<PatternInfo> pattern_table;  // weight descending
  std::vector<ResultRow> results;          // cutoff applied, score descending
  int pt_iterations = 0;
};

namespace detail {

inline bool run_matches_anywhere(const std::vector<std::string>& run,
                                 const std::vector<SToken>& tokens) {
  if (run.empty()) return false;
  for (size_t pos = 0; pos + run.size() <= tokens.size(); ++pos)
    if (run_matches_at(run, tokens, pos)) return true;
  return false;
}

// Documents whose text literally contains the pattern (wildcards ignored:
// every literal run present contiguously and in order).
inline int docs_matching_pattern(const Corpus& corpus, const CompiledPattern& p) {
  int count = 0;
  for (const auto& doc : corpus.documents) {
    bool found = false;
    for (const auto& s : doc.sentences) {
      if (any_alignment(p, s.tokens)) {
        found = true;
        break;
      }
    }
    if (found) ++count;
  }
  return count;
}

}  // namespace detail

// Mutual-information scores against the original query pattern (index 0).
inline RankVector mi_scores(const QueryRun& run, const Corpus& corpus) {
  RankVector v;
  v.algorithm = "mi";
  v.scores.resize(run.extraction.tuples.size(), 0.0);
  if (run.patterns.empty()) return v;
  CompiledPattern original = CompiledPattern::compile(run.patterns[0].text);
  int df_q = detail::docs_matching_pattern(corpus, original);
  for (size_t t = 0; t < run.extraction.tuples.size(); ++t) {
    const TupleRow& row = run.extraction.tuples[t];
    // df_r: documents containing every column value of the tuple
    int df_r = 0;
    for (const auto& doc : corpus.documents) {
      bool all = true;
      for (const auto& key : row.key) {
        std::vector<std::string> tokens = split_ws(key);
        bool found = false;
        for (const auto& s : doc.sentences)
          if (detail::run_matches_anywhere(tokens, s.tokens)) {
            found = true;
            break;
          }
        if (!found) {
          all = false;
          break;
        }
      }
      if (all) ++df_r;
    }
    std::set<int> qr_docs;
    for (const auto& ev : row.evidence)
      if (ev.pattern == 0) qr_docs.insert(ev.doc);
    MiCounts counts{df_q, df_r, static_cast<long long>(qr_docs.size()), corpus.doc_count()};
    try {
      v.scores[t] = mutual_information(counts).score;
    } catch (const error&) {
      v.scores[t] = 0.0;  // zero marginal: candidate unmatchable under this query
    }
  }
  return v;
}

// Full pipeline on a loaded corpus: flatten, rewrite, retrieve, extract,
// rank, cut off.  Per-pattern retrieval and extraction fan out across
// threads; results merge in pattern order, so output is deterministic.
inline QueryRun run_query(const std::string& query_text, const Corpus& corpus, const Lexicon& lex,
                          const std::vector<RewriteRule>& rules, const RunConfig& config) {
  config.validate();
  QueryRun run;
  run.ast = parse_query(query_text);
  if (run.ast.arity < 1) fail(errc::invalid_argument, "query must contain at least one %");
  run.patterns = expand_all(run.ast, rules, lex);

  // per-pattern extraction, merged in pattern order
  LocalScanBackend backend(corpus);
  run.extraction = extract_all(run.patterns, backend, config.cap, lex);

  const auto& tuples = run.extraction.tuples;
  const BipartiteGraph& graph = run.extraction.graph;

  std::vector<double> pattern_weights(run.patterns.size(), 0.0);
  switch (config.rank) {
    case RankAlgo::pt_hits: {
      if (graph.edge_count() > 0) {
        PtHitsResult hits = pt_hits(graph, 1e-8, 100, config.weighted_edges);
        run.tuple_scores = hits.tuple_scores;
        run.pt_iterations = hits.iterations;
        pattern_weights = hits.pattern_scores.scores;
      } else {
        run.tuple_scores = RankVector{std::vector<double>(tuples.size(), 0.0), "pt-hits"};
      }
      break;
    }
    case RankAlgo::npages:
      run.tuple_scores = npages(graph);
      break;
    case RankAlgo::npatterns:
      run.tuple_scores = npatterns(graph);
      break;
    case RankAlgo::mi:
      run.tuple_scores = mi_scores(run, corpus);
      break;
  }
  if (config.rank != RankAlgo::pt_hits) {
    // comparable per-pattern aggregate: sum of the pattern's tuple scores
    for (size_t p = 0; p < run.patterns.size(); ++p) {
      double sum = 0;
      for (const auto& [t, w] : graph.tuples_of(static_cast<int>(p)))
        sum += run.tuple_scores.scores[static_cast<size_t>(t)];
      pattern_weights[p] = sum;
    }
  }

  for (size_t p = 0; p < run.patterns.size(); ++p) {
    PatternInfo info;
    info.id = static_cast<int>(p);
    info.text = run.patterns[p].text;
    info.provenance = run.patterns[p].provenance.describe();
    info.weight = pattern_weights[p];
    run.pattern_table.push_back(std::move(info));
  }
  std::stable_sort(run.pattern_table.begin(), run.pattern_table.end(),
                   [](const PatternInfo& a, const PatternInfo& b) { return a.weight > b.weight; });

  std::vector<std::vector<std::string>> keys;
  keys.reserve(tuples.size());
  for (const auto& row : tuples) keys.push_back(row.key);
  int rank_pos = 0;
  for (const auto& [tuple, score] : apply_cutoff(run.tuple_scores, config.cutoff, keys)) {
    ResultRow row;
    row.rank = ++rank_pos;
    row.tuple = tuple;
    row.score = score;
    row.values = tuples[static_cast<size_t>(tuple)].display;
    run.results.push_back(std::move(row));
  }
  return run;
}

inline QueryRun run_query(const std::string& query_text, const RunConfig& config) {
  if (config.corpus_path.empty()) fail(errc::invalid_argument, "--corpus is required");
  Corpus corpus = open_corpus(config.corpus_path);
  Lexicon lex = load_lexicon(config);
  return run_query(query_text, corpus, lex, load_rules(config), config);
}

// --- output rendering ---------------------------------------------------------

inline std::string format_double(double x, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, x);
  return buf;
}

inline void write_query_table(const QueryRun& run, std::ostream& out) {
  size_t width = 8;
  for (const auto& p : run.pattern_table) width = std::max(width, p.text.size());
  out << "Patterns (" << run.pattern_table.size() << "):\n";
  for (const auto& p : run.pattern_table) {
    out << "  " << p.text;
    for (size_t i = p.text.size(); i < width + 2; ++i) out << ' ';
    out << format_double(p.weight, 4) << "\n";
  }
  out << "\nResults (" << run.results.size() << "):\n";
  for (const auto& r : run.results) {
    out << "  " << r.rank << ".\t" << format_double(r.score, 6) << "\t";
    for (size_t i = 0; i < r.values.size(); ++i) {
      if (i) out << " | ";
      out << r.values[i];
    }
    out << "\n";
  }
}

inline void write_query_tsv(const QueryRun& run, std::ostream& out) {
  out << "#patterns\tid\tpattern\tweight\tprovenance\n";
  for (const auto& p : run.pattern_table)
    out << "pattern\t" << p.id << "\t" << p.text << "\t" << format_double(p.weight, 6) << "\t"
        << p.provenance << "\n";
  out << "#results\trank\tscore\tdocs\tpatterns\tvalues...\n";
  for (const auto& r : run.results) {
    const TupleRow& row = run.extraction.tuples[static_cast<size_t>(r.tuple)];
    std::set<int> docs;
    for (const auto& ev : row.evidence) docs.insert(ev.doc);
    out << "result\t" << r.rank << "\t" << format_double(r.score, 6) << "\t" << docs.size() << "\t"
        << run.extraction.graph.patterns_of(r.tuple).size();
    for (const auto& v : r.values) out << "\t" << v;
    out << "\n";
  }
}

inline void write_query_json(const QueryRun& run, std::ostream& out) {
  nlohmann::ordered_json j;
  j["query"] = render_wildcard_form(run.ast);
  j["arity"] = run.ast.arity;
  j["algorithm"] = run.tuple_scores.algorithm;
  auto& patterns = j["patterns"] = nlohmann::ordered_json::array();
  for (const auto& p : run.pattern_table) {
    nlohmann::ordered_json jp;
    jp["id"] = p.id;
    jp["text"] = p.text;
    jp["provenance"] = p.provenance;
    jp["weight"] = p.weight;
    patterns.push_back(std::move(jp));
  }
  auto& results = j["results"] = nlohmann::ordered_json::array();
  for (const auto& r : run.results) {
    const TupleRow& row = run.extraction.tuples[static_cast<size_t>(r.tuple)];
    nlohmann::ordered_json jr;
    jr["rank"] = r.rank;
    jr["score"] = r.score;
    jr["values"] = r.values;
    auto& variants = jr["variants"] = nlohmann::ordered_json::array();
    for (const auto& [variant, count] : row.variants) {
      nlohmann::ordered_json jv;
      jv["surface"] = split(variant, '\t');
      jv["count"] = count;
      variants.push_back(std::move(jv));
    }
    auto& evidence = jr["evidence"] = nlohmann::ordered_json::array();
    for (const auto& ev : row.evidence) {
      nlohmann::ordered_json je;
      je["pattern"] = ev.pattern;
      je["doc"] = ev.doc;
      je["sentence"] = ev.sentence;
      evidence.push_back(std::move(je));
    }
    results.push_back(std::move(jr));
  }
  out << j.dump(2) << "\n";
}

inline void write_query_output(const QueryRun& run, OutputFormat format, std::ostream& out) {
  switch (format) {
    case OutputFormat::table: write_query_table(run, out); break;
    case OutputFormat::tsv: write_query_tsv(run, out); break;
    case OutputFormat::json: write_query_json(run, out); break;
  }
}

inline void write_stability_tsv(const StabilityReport& report, std::ostream& out) {
  out << "family\tm\tn\tk\tmetric\tobserved_max\tbound\tpass\n";
  for (const auto& r : report.rows) {
    out << r.family << "\t" << r.m << "\t" << r.n << "\t" << r.k << "\t" << r.metric << "\t"
        << format_double(r.observed_max, 6) << "\t";
    if (r.has_bound) out << format_double(r.bound, 6) << "\t" << (r.pass ? "yes" : "no");
    else out << "-\t-";
    out << "\n";
  }
}

inline void write_pr_tsv(const std::vector<PrPoint>& points, const std::vector<ResultRow>& rows,
                         std::ostream& out) {
  out << "rank\tvalue\tcorrect\trecall\tprecision\n";
  for (size_t i = 0; i < points.size(); ++i) {
    const auto& pt = points[i];
    std::string value;
    if (i < rows.size()) {
      for (size_t vi = 0; vi < rows[i].values.size(); ++vi) {
        if (vi) value += " | ";
        value += rows[i].values[vi];
      }
    }
    out << pt.rank << "\t" << value << "\t" << (pt.correct ? 1 : 0) << "\t"
        << format_double(pt.recall, 6) << "\t" << format_double(pt.precision, 6) << "\n";
  }
}

}  // namespace wildq

#endif  // WILDQ_PIPELINE_HPP
