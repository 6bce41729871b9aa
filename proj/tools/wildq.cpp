// wildq - wildcard query extraction over a local text corpus.
//
// Subcommands: corpus build, query, rules check, stability, eval.
// Exit codes: 0 success, 1 validation failure, 2 usage or I/O error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wildq/analysis.hpp"
#include "wildq/builtin_lexicon.hpp"
#include "wildq/builtin_rules.hpp"
#include "wildq/corpus.hpp"
#include "wildq/pipeline.hpp"

namespace {

struct QueryFlags {
  std::string corpus_path;
  std::vector<std::string> rule_paths;
  bool no_builtin_rules = false;
  std::string lexicon_dir;
  int cap = 200;
  std::string rank = "pt-hits";
  double cutoff = 0.0;
  std::string format = "table";
  std::uint64_t seed = 0;
  bool weighted_edges = false;
};

void add_query_flags(CLI::App* cmd, QueryFlags& flags) {
  cmd->add_option("--corpus", flags.corpus_path,
                  "corpus file from `corpus build`, a .txt file, or a directory of .txt files")
      ->required();
  cmd->add_option("--rules", flags.rule_paths, "extra rule files, applied after the built-in packs");
  cmd->add_flag("--no-builtin-rules", flags.no_builtin_rules, "drop the built-in rule packs");
  cmd->add_option("--lexicon", flags.lexicon_dir,
                  "lexicon directory (similar.tsv, inflect.tsv, verbs.tsv, nouns.txt, "
                  "stoplist.txt, adjectives.txt)");
  cmd->add_option("--cap", flags.cap, "max snippets retrieved per pattern (default 200)");
  cmd->add_option("--rank", flags.rank, "ranking algorithm: pt-hits | npages | npatterns | mi")
      ->check(CLI::IsMember({"pt-hits", "npages", "npatterns", "mi"}));
  cmd->add_option("--cutoff", flags.cutoff, "drop tuples scoring below this threshold");
  cmd->add_option("--format", flags.format, "output format: table | tsv | json")
      ->check(CLI::IsMember({"table", "tsv", "json"}));
  cmd->add_option("--seed", flags.seed, "random seed (reports are deterministic given the seed)");
  cmd->add_flag("--weighted-edges", flags.weighted_edges,
                "multiply pt-hits summands by the edge weight w(p->t)");
}

wildq::RunConfig to_config(const QueryFlags& flags) {
  wildq::RunConfig config;
  config.corpus_path = flags.corpus_path;
  config.rule_paths = flags.rule_paths;
  config.use_builtin_rules = !flags.no_builtin_rules;
  config.lexicon_dir = flags.lexicon_dir;
  config.cap = flags.cap;
  if (flags.rank == "npages") config.rank = wildq::RankAlgo::npages;
  else if (flags.rank == "npatterns") config.rank = wildq::RankAlgo::npatterns;
  else if (flags.rank == "mi") config.rank = wildq::RankAlgo::mi;
  else config.rank = wildq::RankAlgo::pt_hits;
  config.cutoff = flags.cutoff;
  if (flags.format == "tsv") config.format = wildq::OutputFormat::tsv;
  else if (flags.format == "json") config.format = wildq::OutputFormat::json;
  else config.format = wildq::OutputFormat::table;
  config.seed = flags.seed;
  config.weighted_edges = flags.weighted_edges;
  return config;
}

int cmd_corpus_build(const std::vector<std::string>& inputs, const std::string& out_path) {
  std::vector<std::filesystem::path> files;
  for (const auto& input : inputs) {
    std::filesystem::path p(input);
    if (!std::filesystem::exists(p)) wildq::fail(wildq::errc::io_error, "no such path: " + input);
    if (std::filesystem::is_directory(p)) {
      for (auto& f : wildq::collect_txt_files(p)) files.push_back(f);
    } else {
      files.push_back(p);
    }
  }
  wildq::Corpus corpus = wildq::ingest(files);
  wildq::save_corpus_file(corpus, out_path);
  std::cout << corpus.doc_count() << (corpus.doc_count() == 1 ? " document, " : " documents, ")
            << corpus.sentence_count()
            << (corpus.sentence_count() == 1 ? " sentence" : " sentences") << "\n";
  return 0;
}

int cmd_rules_check(const std::vector<std::string>& paths, bool dump) {
  if (dump) {
    std::cout << "# --- builtin hyponym pack ---\n"
              << wildq::builtin_hyponym_rules_text() << "\n# --- builtin morphology pack ---\n"
              << wildq::builtin_morphology_rules_text();
    return 0;
  }
  bool failed = false;
  int total = 0;
  auto report = [&](const std::string& source, const std::vector<wildq::RewriteRule>& rules) {
    for (const auto& r : rules) {
      std::cout << r.id << "\t" << r.heads.size() << (r.heads.size() == 1 ? " head\t" : " heads\t")
                << r.body.size() << (r.body.size() == 1 ? " rewriting" : " rewritings") << "\n";
      ++total;
    }
    if (rules.empty()) std::cout << source << ": 0 rules\n";
  };
  if (paths.empty()) {
    report("hyponym", wildq::builtin_hyponym_rules());
    report("morphology", wildq::builtin_morphology_rules());
  }
  for (const auto& path : paths) {
    try {
      report(path, wildq::parse_rules_file(path));
    } catch (const wildq::error& e) {
      std::cout << path << "\tFAIL\t" << e.what() << "\n";
      failed = true;
    }
  }
  std::cout << total << (total == 1 ? " rule OK" : " rules OK") << "\n";
  return failed ? 1 : 0;
}

std::vector<int> parse_int_list(const std::string& csv, const char* what) {
  std::vector<int> out;
  for (const auto& piece : wildq::split(csv, ',')) {
    std::string t = wildq::trim(piece);
    if (t.empty()) continue;
    try {
      out.push_back(std::stoi(t));
    } catch (...) {
      wildq::fail(wildq::errc::invalid_argument, std::string("bad ") + what + " value: " + t);
    }
  }
  if (out.empty()) wildq::fail(wildq::errc::invalid_argument, std::string("empty ") + what + " list");
  return out;
}

int cmd_stability(const std::string& family, int m, const std::string& n_csv,
                  const std::string& k_csv, int samples, double edge_prob, int weight_max,
                  int bridge_edges, const std::string& scorer_csv, std::uint64_t seed) {
  std::vector<wildq::GraphFamilySpec> specs;
  for (int n : parse_int_list(n_csv, "n")) {
    if (family == "adversarial")
      specs.push_back(wildq::GraphFamilySpec::adversarial(m, n, bridge_edges, seed));
    else
      specs.push_back(wildq::GraphFamilySpec::random(m, n, edge_prob, weight_max, seed + n));
  }
  std::vector<wildq::ScorerKind> scorers;
  for (const auto& name : wildq::split(scorer_csv, ',')) {
    std::string s = wildq::trim(name);
    if (s == "npatterns") scorers.push_back(wildq::ScorerKind::npatterns);
    else if (s == "npages") scorers.push_back(wildq::ScorerKind::npages);
    else if (s == "pt-hits") scorers.push_back(wildq::ScorerKind::pt_hits);
    else wildq::fail(wildq::errc::invalid_argument, "unknown scorer: " + s);
  }
  wildq::StabilityReport merged;
  for (int k : parse_int_list(k_csv, "k")) {
    for (auto kind : scorers) {
      auto report = wildq::stability_experiment(kind, specs, k, samples, seed);
      for (auto& row : report.rows) merged.rows.push_back(std::move(row));
    }
  }
  wildq::write_stability_tsv(merged, std::cout);
  return merged.all_pass() ? 0 : 1;
}

int cmd_eval(const std::string& query_text, const QueryFlags& flags, const std::string& truth_path) {
  std::ifstream in(truth_path);
  if (!in) wildq::fail(wildq::errc::io_error, "cannot open truth file " + truth_path);
  wildq::TruthSet truth = wildq::load_truth(in);
  wildq::QueryRun run = wildq::run_query(query_text, to_config(flags));
  std::vector<std::string> keys;
  for (const auto& r : run.results) {
    const auto& key = run.extraction.tuples[static_cast<size_t>(r.tuple)].key;
    std::string joined;
    for (const auto& col : key) {
      if (!joined.empty()) joined += " ";
      joined += col;
    }
    keys.push_back(joined);
  }
  auto points = wildq::precision_recall(keys, truth);
  wildq::write_pr_tsv(points, run.results, std::cout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wildq - wildcard query extraction over a local text corpus"};
  app.require_subcommand(1);

  // corpus build
  auto* corpus_cmd = app.add_subcommand("corpus", "corpus management");
  corpus_cmd->require_subcommand(1);
  auto* build_cmd = corpus_cmd->add_subcommand("build", "ingest text files into a corpus file");
  std::vector<std::string> build_inputs;
  std::string build_out = "corpus.wq";
  build_cmd->add_option("inputs", build_inputs, ".txt files or directories")->required();
  build_cmd->add_option("--out", build_out, "output corpus file (default corpus.wq)");

  // query
  auto* query_cmd = app.add_subcommand("query", "evaluate a wildcard query");
  std::string query_text;
  QueryFlags query_flags;
  query_cmd->add_option("query", query_text, "query text, e.g. \"US states such as %\"")->required();
  add_query_flags(query_cmd, query_flags);
  query_cmd->footer(
      "TSV output: 'pattern' rows (id, pattern, weight, provenance) followed by\n"
      "'result' rows (rank, score, supporting docs, supporting patterns, values...).");

  // rules check
  auto* rules_cmd = app.add_subcommand("rules", "rule file utilities");
  rules_cmd->require_subcommand(1);
  auto* check_cmd = rules_cmd->add_subcommand("check", "validate rule files (built-ins when none given)");
  std::vector<std::string> rule_files;
  bool rules_dump = false;
  check_cmd->add_option("files", rule_files, "rule files to validate");
  check_cmd->add_flag("--dump", rules_dump, "print the built-in packs and exit");

  // stability
  auto* stab_cmd = app.add_subcommand("stability", "edge-removal stability experiments (TSV report)");
  std::string stab_family = "random", stab_n = "50,100,500,1000", stab_k = "1,5";
  std::string stab_scorers = "npatterns,npages";
  int stab_m = 12, stab_samples = 200, stab_weight_max = 3, stab_bridges = 1;
  double stab_edge_prob = 0.3;
  std::uint64_t stab_seed = 17;
  stab_cmd->add_option("--family", stab_family, "graph family: random | adversarial")
      ->check(CLI::IsMember({"random", "adversarial"}));
  stab_cmd->add_option("--m", stab_m, "pattern count (default 12)");
  stab_cmd->add_option("--n", stab_n, "tuple counts, comma separated (default 50,100,500,1000)");
  stab_cmd->add_option("--k", stab_k, "removed edge counts, comma separated (default 1,5)");
  stab_cmd->add_option("--samples", stab_samples, "edge subsets sampled per graph (default 200)");
  stab_cmd->add_option("--edge-prob", stab_edge_prob, "random family edge probability (default 0.3)");
  stab_cmd->add_option("--weight-max", stab_weight_max, "random family max edge weight (default 3)");
  stab_cmd->add_option("--bridge-edges", stab_bridges, "adversarial family bridge edges (default 1)");
  stab_cmd->add_option("--scorer", stab_scorers,
                       "scorers, comma separated: npatterns | npages | pt-hits");
  stab_cmd->add_option("--seed", stab_seed, "sampling seed (default 17)");
  stab_cmd->footer(
      "TSV columns: family, m, n, k, metric (<scorer>.d_kt | <scorer>.d_1),\n"
      "observed_max, bound, pass ('-' where no bound applies).");

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "precision/recall against a truth file (TSV points)");
  std::string eval_query, eval_truth;
  QueryFlags eval_flags;
  eval_cmd->add_option("query", eval_query, "query text")->required();
  eval_cmd->add_option("--truth", eval_truth, "truth file: one entry per line, '|' alternates")
      ->required();
  add_query_flags(eval_cmd, eval_flags);
  eval_cmd->footer("TSV columns: rank, value, correct (0/1), recall, precision.");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (build_cmd->parsed()) return cmd_corpus_build(build_inputs, build_out);
    if (query_cmd->parsed()) {
      wildq::QueryRun run = wildq::run_query(query_text, to_config(query_flags));
      wildq::write_query_output(run, to_config(query_flags).format, std::cout);
      return 0;
    }
    if (check_cmd->parsed()) return cmd_rules_check(rule_files, rules_dump);
    if (stab_cmd->parsed())
      return cmd_stability(stab_family, stab_m, stab_n, stab_k, stab_samples, stab_edge_prob,
                           stab_weight_max, stab_bridges, stab_scorers, stab_seed);
    if (eval_cmd->parsed()) return cmd_eval(eval_query, eval_flags, eval_truth);
  } catch (const wildq::error& e) {
    std::cerr << "wildq: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "wildq: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
