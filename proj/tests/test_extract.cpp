#include "doctest.h"
#include "wildq/builtin_lexicon.hpp"
#include "wildq/extract.hpp"

#include <map>
#include <set>

using namespace wildq;

namespace {

const char* kMoviesSentence =
    "Popular summer movies such as Harry Potter, Shrek and Spiderman appeal to audience of all "
    "ages.";

Sentence first_sentence(const std::string& text) {
  auto sentences = segment_sentences(text, 0);
  REQUIRE(!sentences.empty());
  return sentences[0];
}

std::set<std::string> np_surfaces(const std::string& text, const Lexicon& lex) {
  std::set<std::string> out;
  for (const auto& np : chunk_noun_phrases(first_sentence(text), lex)) out.insert(np.surface);
  return out;
}

std::set<std::vector<std::string>> tuple_values(const Pattern& p, const std::string& text,
                                                const Lexicon& lex) {
  std::set<std::vector<std::string>> out;
  for (const auto& t : match_pattern(p, first_sentence(text), lex)) out.insert(t.values);
  return out;
}

Pattern make_pattern(const std::string& text) {
  Pattern p;
  p.text = text;
  int arity = 0;
  for (char c : text)
    if (c == '%') ++arity;
  p.arity = arity;
  return p;
}

// Brute-force oracle for the evidence graph: scan every sentence with
// every pattern directly (no retrieval pipeline, no cap) and recount
// distinct documents per (pattern, tuple) edge.
std::map<std::pair<int, std::vector<std::string>>, std::set<int>> oracle_edges(
    const std::vector<Pattern>& patterns, const Corpus& corpus, const Lexicon& lex) {
  std::map<std::pair<int, std::vector<std::string>>, std::set<int>> edges;
  for (size_t pi = 0; pi < patterns.size(); ++pi) {
    for (const auto& doc : corpus.documents) {
      for (const auto& sentence : doc.sentences) {
        for (const auto& cand : match_pattern(patterns[pi], sentence, lex))
          edges[{static_cast<int>(pi), cand.key}].insert(doc.id);
      }
    }
  }
  return edges;
}

void check_graph_equals_oracle(const std::vector<Pattern>& patterns, const Corpus& corpus,
                               const Lexicon& lex) {
  ExtractionResult result = extract_all(patterns, corpus, 1000000, lex);
  auto oracle = oracle_edges(patterns, corpus, lex);
  size_t graph_edges = result.graph.edge_count();
  REQUIRE(graph_edges == oracle.size());
  for (const auto& e : result.graph.edges()) {
    const auto& key = result.tuples[static_cast<size_t>(e.tuple)].key;
    auto it = oracle.find({e.pattern, key});
    REQUIRE(it != oracle.end());
    CHECK(e.weight == static_cast<int>(it->second.size()));
  }
}

}  // namespace

TEST_CASE("chunker finds the Edison noun phrases") {
  Lexicon lex = builtin_lexicon();
  auto nps = np_surfaces(
      "We all learned in our history classes that Thomas Edison invented the light bulb in 1879",
      lex);
  CHECK(nps.count("Thomas Edison") == 1);
  CHECK(nps.count("the light bulb") == 1);
  for (const auto& np : nps) CHECK(np.find("invented") == std::string::npos);
}

TEST_CASE("chunker rejects 'have' and sentence-initial unknown capitals") {
  Lexicon lex = builtin_lexicon();
  auto nps = np_surfaces("Thomas Edison is often said to have invented the light bulb", lex);
  CHECK(nps.count("Thomas Edison") == 1);
  for (const auto& np : nps) {
    CHECK(np != "have");
    CHECK(np.find("have") == std::string::npos);
  }
  // "Joe" at sentence start, unknown, followed by lowercase: not a proper noun
  CHECK(np_surfaces("Joe is a country singer", lex).count("Joe") == 0);
  // mid-sentence it is one
  CHECK(np_surfaces("Everyone knows Joe is a country singer", lex).count("Joe") == 1);
}

TEST_CASE("chunker with empty vocabulary and lowercase text finds nothing") {
  Lexicon lex;  // empty
  CHECK(np_surfaces("all lowercase words here", lex).empty());
}

TEST_CASE("chunker spans are maximal, left-greedy and non-overlapping") {
  Lexicon lex = builtin_lexicon();
  Sentence s = first_sentence(kMoviesSentence);
  auto spans = chunk_noun_phrases(s, lex);
  size_t last_end = 0;
  for (const auto& np : spans) {
    CHECK(np.begin >= last_end);
    CHECK(np.end > np.begin);
    last_end = np.end;
  }
  std::set<std::string> surfaces;
  for (const auto& np : spans) surfaces.insert(np.surface);
  CHECK(surfaces.count("Harry Potter") == 1);
  CHECK(surfaces.count("Shrek") == 1);
  CHECK(surfaces.count("Spiderman") == 1);
}

TEST_CASE("compound nouns match as single spans") {
  Lexicon lex = builtin_lexicon();
  auto nps = np_surfaces("The firm funds research and development heavily", lex);
  CHECK(nps.count("research and development") == 1);
}

TEST_CASE("match_pattern: conjunction list yields one tuple per conjunct") {
  Lexicon lex = builtin_lexicon();
  auto values = tuple_values(make_pattern("summer movies such as %"), kMoviesSentence, lex);
  std::set<std::vector<std::string>> expected = {
      {"Harry Potter"}, {"Shrek"}, {"Spiderman"}};
  CHECK(values == expected);
}

TEST_CASE("match_pattern: non-NP slot text yields nothing") {
  Lexicon lex = builtin_lexicon();
  CHECK(tuple_values(make_pattern("% invented the light bulb"),
                     "Thomas Edison is often said to have invented the light bulb.", lex)
            .empty());
}

TEST_CASE("match_pattern: leading slot binds the adjacent noun phrase") {
  Lexicon lex = builtin_lexicon();
  auto values = tuple_values(
      make_pattern("% invented the light bulb"),
      "We all learned in our history classes that Thomas Edison invented the light bulb in 1879.",
      lex);
  CHECK(values == std::set<std::vector<std::string>>{{"Thomas Edison"}});
}

TEST_CASE("match_pattern: two slots on a hand-built sentence") {
  Lexicon lex = builtin_lexicon();
  {
    std::istringstream nouns("google\nyoutube\n");
    lex.load_nouns(nouns);
  }
  auto values = tuple_values(make_pattern("% acquired %"), "Google acquired YouTube.", lex);
  CHECK(values == std::set<std::vector<std::string>>{{"Google", "YouTube"}});
}

TEST_CASE("match_pattern: middle slot must cover the whole gap") {
  Lexicon lex = builtin_lexicon();
  CHECK(tuple_values(make_pattern("movies such as % are popular"),
                     "Everyone says movies such as Shrek are popular.", lex) ==
        std::set<std::vector<std::string>>{{"Shrek"}});
  // gap not fully a noun phrase: nothing
  CHECK(tuple_values(make_pattern("movies such as % are popular"),
                     "Everyone says movies such as Shrek rarely are popular.", lex)
            .empty());
}

TEST_CASE("match_pattern: conjunction list splits only when every segment is an NP") {
  Lexicon lex = builtin_lexicon();
  auto values = tuple_values(make_pattern("the firm funds %"),
                             "Analysts say the firm funds research and development.", lex);
  CHECK(values == std::set<std::vector<std::string>>{{"research and development"}});
}

TEST_CASE("match_pattern caps the per-sentence cartesian product") {
  Lexicon lex = builtin_lexicon();
  std::string sentence =
      "People think movies, films, songs, stories, paintings or novels beat cars, trains, "
      "roads, farms, parks or lakes.";
  auto tuples = match_pattern(make_pattern("people think % beat %"), first_sentence(sentence), lex);
  CHECK(tuples.size() <= 16);
  CHECK(!tuples.empty());
}

TEST_CASE("extract_all: one pattern, one sentence, one edge of weight one") {
  Lexicon lex = builtin_lexicon();
  Corpus corpus = ingest_text("Summer movies such as Shrek entertain everyone.");
  auto result = extract_all({make_pattern("movies such as %")}, corpus, 200, lex);
  REQUIRE(result.tuples.size() == 1);
  CHECK(result.tuples[0].display == std::vector<std::string>{"Shrek"});
  REQUIRE(result.graph.edge_count() == 1);
  CHECK(result.graph.edges()[0].weight == 1);
}

TEST_CASE("extract_all: edge weight counts distinct documents") {
  Lexicon lex = builtin_lexicon();
  std::vector<std::filesystem::path> paths;
  auto dir = std::filesystem::temp_directory_path() / "wildq_extract_test";
  std::filesystem::create_directories(dir);
  for (int i = 0; i < 3; ++i) {
    auto p = dir / ("d" + std::to_string(i) + ".txt");
    // two matching sentences in the same document must still count once
    std::ofstream(p) << "Summer movies such as Shrek entertain everyone. "
                     << "Critics list movies such as Shrek every year.";
    paths.push_back(p);
  }
  Corpus corpus = ingest(paths);
  auto result = extract_all({make_pattern("movies such as %")}, corpus, 200, lex);
  REQUIRE(result.graph.edge_count() == 1);
  CHECK(result.graph.edges()[0].weight == 3);
  // evidence collapsed per (pattern, tuple, doc, sentence)
  CHECK(result.tuples[0].evidence.size() == 6);
}

TEST_CASE("extract_all display surface is the most frequent variant") {
  Lexicon lex = builtin_lexicon();
  Corpus corpus = ingest_text(
      "Fans adore movies such as SHREK these days. Critics list movies such as Shrek every "
      "year. Kids quote movies such as Shrek all winter.");
  auto result = extract_all({make_pattern("movies such as %")}, corpus, 200, lex);
  REQUIRE(result.tuples.size() == 1);
  CHECK(result.tuples[0].display == std::vector<std::string>{"Shrek"});
  CHECK(result.tuples[0].variants.size() == 2);
}

TEST_CASE("extract_all graph equals the brute-force oracle") {
  Lexicon lex = builtin_lexicon();
  Corpus corpus = ingest_text(
      "Surveys ranked US states such as Texas, Nevada and Ohio. Families visited Texas, Utah and "
      "other US states. Everyone agrees Texas is a US state. Guides praise US states, especially "
      "Maine and Ohio. Critics say Reno is a US state fair mainstay. Joe is a country singer. "
      "The committee reviewed the annual budget on Tuesday.");
  std::vector<Pattern> patterns = {
      make_pattern("US states such as %"), make_pattern("% and other US states"),
      make_pattern("% is a US state"),     make_pattern("US states, especially %"),
      make_pattern("%, a US state"),       make_pattern("US state %"),
  };
  check_graph_equals_oracle(patterns, corpus, lex);
}

TEST_CASE("extract_all is deterministic across runs") {
  Lexicon lex = builtin_lexicon();
  Corpus corpus = ingest_text(
      "Surveys ranked US states such as Texas, Nevada and Ohio. Families visited Texas, Utah and "
      "other US states. Everyone agrees Texas is a US state.");
  std::vector<Pattern> patterns = {make_pattern("US states such as %"),
                                   make_pattern("% and other US states"),
                                   make_pattern("% is a US state")};
  auto a = extract_all(patterns, corpus, 200, lex);
  auto b = extract_all(patterns, corpus, 200, lex);
  REQUIRE(a.tuples.size() == b.tuples.size());
  for (size_t i = 0; i < a.tuples.size(); ++i) {
    CHECK(a.tuples[i].key == b.tuples[i].key);
    CHECK(a.tuples[i].display == b.tuples[i].display);
    CHECK(a.tuples[i].evidence.size() == b.tuples[i].evidence.size());
  }
  REQUIRE(a.graph.edge_count() == b.graph.edge_count());
  for (size_t i = 0; i < a.graph.edges().size(); ++i) CHECK(a.graph.edges()[i] == b.graph.edges()[i]);
}

TEST_CASE("dedup idempotence: re-extracting adds nothing new") {
  Lexicon lex = builtin_lexicon();
  Corpus corpus = ingest_text(
      "Surveys ranked US states such as Texas and Ohio. Surveys ranked US states such as Texas "
      "and Ohio.");
  auto result = extract_all({make_pattern("US states such as %")}, corpus, 200, lex);
  CHECK(result.tuples.size() == 2);  // Texas, Ohio once each
  for (const auto& row : result.tuples) CHECK(row.evidence.size() == 2);  // two sentences, one doc
  CHECK(result.graph.edges()[0].weight == 1);
}
