#include "doctest.h"
#include "wildq/builtin_lexicon.hpp"
#include "wildq/builtin_rules.hpp"
#include "wildq/rules.hpp"

#include <algorithm>
#include <set>

using namespace wildq;

namespace {

const char* kExampleRule =
    "(.+),? such as (.+)\n"
    "(.+),? including (.+)\n"
    "->\n"
    "$2, and other $1 && plural($1)\n"
    "$2 is a $1 && singular($1)\n";

std::set<std::string> texts_of(const std::vector<Pattern>& patterns) {
  std::set<std::string> out;
  for (const auto& p : patterns) out.insert(p.text);
  return out;
}

}  // namespace

TEST_CASE("parse_rules reads the two-head two-body rule") {
  auto rules = parse_rules(kExampleRule, "example");
  REQUIRE(rules.size() == 1);
  const RewriteRule& r = rules[0];
  CHECK(r.id == "example:1");
  REQUIRE(r.head_sources.size() == 2);
  CHECK(r.head_sources[0] == "(.+),? such as (.+)");
  CHECK(r.head_sources[1] == "(.+),? including (.+)");
  CHECK(r.group_count == 2);
  REQUIRE(r.body.size() == 2);
  CHECK(r.body[0].text == "$2, and other $1");
  REQUIRE(r.body[0].transforms.size() == 1);
  CHECK(r.body[0].transforms[0] == Transform{TransformKind::plural, 1});
  CHECK(r.body[1].text == "$2 is a $1");
  CHECK(r.body[1].transforms[0] == Transform{TransformKind::singular, 1});
}

TEST_CASE("parse_rules on comments only yields no rules") {
  CHECK(parse_rules("# nothing here\n\n# still nothing\n").empty());
  CHECK(parse_rules("").empty());
}

TEST_CASE("parse_rules error cases") {
  try {
    parse_rules("(.+) such as (.+)\n->\n$3 bad\n");
    FAIL("expected BadBackReference");
  } catch (const error& e) {
    CHECK(e.code() == errc::bad_back_reference);
  }
  try {
    parse_rules("(.+ [unclosed\n->\n$1\n");
    FAIL("expected BadRegex");
  } catch (const error& e) {
    CHECK(e.code() == errc::bad_regex);
  }
  try {
    parse_rules("(.+) x (.+)\n->\n$1 && frobnicate($2)\n");
    FAIL("expected BadTransformName");
  } catch (const error& e) {
    CHECK(e.code() == errc::bad_transform_name);
  }
  try {
    parse_rules("(.+) x (.+)\n\n");  // heads but no body
    FAIL("expected EmptyRule");
  } catch (const error& e) {
    CHECK(e.code() == errc::empty_rule);
  }
  // back-reference must hold against every head: second head has 1 group
  try {
    parse_rules("(.+) a (.+)\n(.+) b\n->\n$2\n");
    FAIL("expected BadBackReference");
  } catch (const error& e) {
    CHECK(e.code() == errc::bad_back_reference);
  }
}

TEST_CASE("expand_stars: original first, then similar terms in file order") {
  Lexicon lex = builtin_lexicon();
  auto variants = expand_stars(parse_query("% is a *blockbuster*"), lex);
  REQUIRE(variants.size() == 3);
  CHECK(render(variants[0].ast) == "% is a blockbuster");
  CHECK(variants[0].substituted.empty());
  CHECK(render(variants[1].ast) == "% is a movie");
  CHECK(variants[1].substituted == "movie");
  CHECK(render(variants[2].ast) == "% is a film");
  CHECK(variants[2].substituted == "film");
}

TEST_CASE("expand_stars without stars is the identity") {
  Lexicon lex = builtin_lexicon();
  auto variants = expand_stars(parse_query("light bulb"), lex);
  REQUIRE(variants.size() == 1);
  CHECK(render(variants[0].ast) == "light bulb");
}

TEST_CASE("expand_stars cartesian product over two stars") {
  Lexicon lex;
  {
    std::istringstream in("alpha\tbeta,gamma\ndelta\tepsilon\n");
    lex.load_similar(in);
  }
  auto variants = expand_stars(parse_query("% *alpha* x *delta*"), lex);
  // (2+1) x (1+1) = 6 variants, enumeration oracle
  std::set<std::string> got;
  for (const auto& v : variants) got.insert(render(v.ast));
  std::set<std::string> expected;
  for (const char* a : {"alpha", "beta", "gamma"})
    for (const char* d : {"delta", "epsilon"}) expected.insert(std::string("% ") + a + " x " + d);
  CHECK(got == expected);
  REQUIRE(variants.size() == 6);
  CHECK(render(variants[0].ast) == "% alpha x delta");  // original first
}

TEST_CASE("apply_rules: §4.1 example rule on 'movies such as %'") {
  Lexicon lex = builtin_lexicon();
  auto rules = parse_rules(kExampleRule, "example");
  auto patterns = apply_rules("movies such as %", rules, lex);
  CHECK(texts_of(patterns) ==
        std::set<std::string>{"movies such as %", "%, and other movies", "% is a movie"});
  CHECK(patterns[0].provenance.kind == Provenance::Kind::user_query);
  CHECK(patterns[1].provenance.kind == Provenance::Kind::rule);
}

TEST_CASE("apply_rules: no matching head leaves only the original") {
  Lexicon lex = builtin_lexicon();
  auto patterns = apply_rules("quux frobnicates %", builtin_hyponym_rules(), lex);
  REQUIRE(patterns.size() == 1);
  CHECK(patterns[0].text == "quux frobnicates %");
}

TEST_CASE("hyponym pack reproduces the 12 pattern texts for 'US states such as %'") {
  Lexicon lex = builtin_lexicon();
  auto patterns = apply_rules("US states such as %", builtin_hyponym_rules(), lex);
  std::set<std::string> expected = {
      "US states, including %", "US states such as %", "% and other US states",
      "% is a US state",        "such US states as %", "US states, especially %",
      "% or other US states",   "% is the US state",   "US states %",
      "%, the US state",        "US state %",          "%, a US state"};
  CHECK(texts_of(patterns) == expected);
  CHECK(patterns.size() == 12);
}

TEST_CASE("hyponym pack is mutual: any Table 2 phrasing expands to the same set") {
  Lexicon lex = builtin_lexicon();
  auto rules = builtin_hyponym_rules();
  auto reference = texts_of(apply_rules("US states such as %", rules, lex));
  for (const char* q :
       {"US states, including %", "% and other US states", "% is a US state", "%, a US state"}) {
    CHECK(texts_of(apply_rules(q, rules, lex)) == reference);
  }
}

TEST_CASE("hyponym pack on '% is a country'") {
  Lexicon lex = builtin_lexicon();
  auto texts = texts_of(apply_rules("% is a country", builtin_hyponym_rules(), lex));
  CHECK(texts.count("countries such as %") == 1);
  CHECK(texts.count("countries, including %") == 1);
  CHECK(texts.count("% and other countries") == 1);
}

TEST_CASE("hyponym pack on 'countries such as %' includes '% and other countries'") {
  Lexicon lex = builtin_lexicon();
  auto texts = texts_of(apply_rules("countries such as %", builtin_hyponym_rules(), lex));
  CHECK(texts.count("% and other countries") == 1);
}

TEST_CASE("article agreement in instantiated templates") {
  Lexicon lex = builtin_lexicon();
  auto texts = texts_of(apply_rules("% is an automobile", builtin_hyponym_rules(), lex));
  CHECK(texts.count("%, an automobile") == 1);
  CHECK(texts.count("automobiles such as %") == 1);
}

TEST_CASE("morphology pack: active to passive and tenses") {
  Lexicon lex = builtin_lexicon();
  auto rules = builtin_morphology_rules();
  auto texts = texts_of(apply_rules("% invented the light bulb", rules, lex));
  CHECK(texts.count("the light bulb was invented by %") == 1);
  CHECK(texts.count("the light bulb has been invented by %") == 1);
  CHECK(texts.count("% has invented the light bulb") == 1);
  CHECK(texts.count("% invents the light bulb") == 1);

  auto google = texts_of(apply_rules("Google acquired %", rules, lex));
  CHECK(google.count("% was acquired by Google") == 1);
  CHECK(google.count("Google has acquired %") == 1);
  CHECK(google.count("Google acquires %") == 1);
}

TEST_CASE("morphology pack: passive back to active, irregular verb") {
  Lexicon lex = builtin_lexicon();
  auto texts = texts_of(apply_rules("the photo was taken by %", builtin_morphology_rules(), lex));
  CHECK(texts.count("% took the photo") == 1);
  CHECK(texts.count("% has taken the photo") == 1);
  CHECK(texts.count("% takes the photo") == 1);
}

TEST_CASE("expand_all composes star flattening with rewriting") {
  Lexicon lex = builtin_lexicon();
  auto patterns = expand_all(parse_query("% invented the light bulb"), builtin_rules(), lex);
  auto texts = texts_of(patterns);
  CHECK(texts.count("the light bulb was invented by %") == 1);
  CHECK(patterns[0].text == "% invented the light bulb");
}

TEST_CASE("expand_all enumeration oracle for m=2, n=3") {
  Lexicon lex;
  {
    std::istringstream in("alpha\tbeta,gamma\n");
    lex.load_similar(in);
  }
  auto rules = parse_rules("% q (.+)\n->\n% r1 $1\n% r2 $1\n% r3 $1\n", "three");
  auto patterns = expand_all(parse_query("% q *alpha*"), rules, lex);
  // enumeration oracle: every (variant, rewriting) pair, plus the originals
  std::set<std::string> expected;
  for (const char* term : {"alpha", "beta", "gamma"}) {
    expected.insert(std::string("% q ") + term);
    for (const char* r : {"r1", "r2", "r3"}) expected.insert(std::string("% ") + r + " " + term);
  }
  CHECK(texts_of(patterns) == expected);
  CHECK(patterns.size() == 12);  // 3 x (3+1)
}

TEST_CASE("rewriting preserves arity and drops slot-destroying templates") {
  Lexicon lex = builtin_lexicon();
  // this rule would drop the slot from "% x" rewritten as "$1 only"
  auto rules = parse_rules("(.+) x\n->\n$1 only\nstatic text\n", "bad");
  auto patterns = apply_rules("% x", rules, lex);
  CHECK(patterns.size() == 2);  // original + "% only"; "static text" has no slot
  for (const auto& p : patterns) {
    int percents = 0;
    for (char c : p.text)
      if (c == '%') ++percents;
    CHECK(percents == 1);
  }
}

TEST_CASE("expand_all is deterministic and duplicate-free") {
  Lexicon lex = builtin_lexicon();
  auto a = expand_all(parse_query("% is a *blockbuster*"), builtin_rules(), lex);
  auto b = expand_all(parse_query("% is a *blockbuster*"), builtin_rules(), lex);
  REQUIRE(a.size() == b.size());
  std::set<std::string> seen;
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].text == b[i].text);
    CHECK(seen.insert(a[i].text).second);
  }
}

TEST_CASE("no stars and no matching rule leaves exactly one pattern") {
  Lexicon lex = builtin_lexicon();
  auto patterns = expand_all(parse_query("quux frobnicates %"), builtin_rules(), lex);
  REQUIRE(patterns.size() == 1);
  CHECK(patterns[0].text == "quux frobnicates %");
  CHECK(patterns[0].provenance.kind == Provenance::Kind::user_query);
}

TEST_CASE("builtin packs parse cleanly") {
  CHECK(builtin_hyponym_rules().size() == 2);
  CHECK(builtin_morphology_rules().size() == 2);
  for (const auto& r : builtin_rules()) {
    CHECK(!r.heads.empty());
    CHECK(!r.body.empty());
  }
}

TEST_CASE("bundled example rule file parses and applies") {
  auto rules = parse_rules_file(std::filesystem::path(WILDQ_DATA_DIR) / "rules" / "example.rules");
  REQUIRE(rules.size() == 2);
  Lexicon lex = builtin_lexicon();
  auto texts = texts_of(apply_rules("% is located in France", rules, lex));
  CHECK(texts.count("% lies in France") == 1);
  CHECK(texts.count("% can be found in France") == 1);
}
