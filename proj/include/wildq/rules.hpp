#ifndef WILDQ_RULES_HPP
#define WILDQ_RULES_HPP

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "wildq/errors.hpp"
#include "wildq/lexicon.hpp"
#include "wildq/query.hpp"
#include "wildq/text.hpp"

namespace wildq {

// Rewriting rule language.  A rule file holds rules of the form
//
//     <head regex>            one or more, one per line
//     ->
//     <template> [&& transform($n)]...     one or more, one per line
//     <blank line>
//
// '#' lines are comments.  A rule matches a query when any head regex
// matches the full query text; every body template is then instantiated
// with the captured groups.  Transforms (plural, singular, past,
// past_participle, present_3s) are applied to a captured group before
// substitution; they inflect the last word of the capture.

enum class TransformKind { plural, singular, past, past_participle, present_3s };

inline const char* transform_name(TransformKind k) {
  switch (k) {
    case TransformKind::plural: return "plural";
    case TransformKind::singular: return "singular";
    case TransformKind::past: return "past";
    case TransformKind::past_participle: return "past_participle";
    case TransformKind::present_3s: return "present_3s";
  }
  return "?";
}

struct Transform {
  TransformKind kind;
  int group;  // 1-based capturing group ordinal

  bool operator==(const Transform&) const = default;
};

struct RewriteTemplate {
  std::string text;  // contains $n back-references
  std::vector<Transform> transforms;
};

struct RewriteRule {
  std::string id;
  std::vector<std::string> head_sources;  // original regex text, file order
  std::vector<std::regex> heads;
  std::vector<RewriteTemplate> body;
  int group_count = 0;  // minimum capture count over all heads
};

// Provenance of an instantiated extraction pattern.
struct Provenance {
  enum class Kind { user_query, star_expansion, rule };
  Kind kind = Kind::user_query;
  std::string detail;  // substituted term / rule id

  std::string describe() const {
    switch (kind) {
      case Kind::user_query: return "query";
      case Kind::star_expansion: return "star:" + detail;
      case Kind::rule: return "rule:" + detail;
    }
    return "?";
  }
};

// Fully instantiated extraction template: literals plus % slots.
struct Pattern {
  std::string text;
  int arity = 0;
  Provenance provenance;
};

namespace detail {

inline std::optional<TransformKind> transform_from_name(std::string_view name) {
  if (name == "plural") return TransformKind::plural;
  if (name == "singular") return TransformKind::singular;
  if (name == "past") return TransformKind::past;
  if (name == "past_participle") return TransformKind::past_participle;
  if (name == "present_3s") return TransformKind::present_3s;
  return std::nullopt;
}

// Collects $n ordinals appearing in a template text.
inline std::vector<int> back_references(std::string_view text) {
  std::vector<int> refs;
  for (size_t i = 0; i + 1 < text.size(); ++i) {
    if (text[i] != '$' || !is_digit(text[i + 1])) continue;
    size_t j = i + 1;
    int n = 0;
    while (j < text.size() && is_digit(text[j])) {
      n = n * 10 + (text[j] - '0');
      ++j;
    }
    refs.push_back(n);
    i = j - 1;
  }
  return refs;
}

inline std::string substitute_refs(std::string_view text, const std::vector<std::string>& values) {
  std::string out;
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '$' && i + 1 < text.size() && is_digit(text[i + 1])) {
      size_t j = i + 1;
      int n = 0;
      while (j < text.size() && is_digit(text[j])) {
        n = n * 10 + (text[j] - '0');
        ++j;
      }
      out += values[static_cast<size_t>(n)];
      i = j - 1;
    } else {
      out.push_back(text[i]);
    }
  }
  return out;
}

// Inflects the last whitespace-delimited word of a phrase.
template <typename Fn>
std::string transform_last_word(const std::string& phrase, Fn&& fn) {
  size_t pos = phrase.find_last_of(" \t");
  if (pos == std::string::npos) return fn(phrase);
  return phrase.substr(0, pos + 1) + fn(phrase.substr(pos + 1));
}

inline std::string apply_transform(const Lexicon& lex, TransformKind kind, const std::string& value) {
  auto one = [&](const std::string& w) -> std::string {
    switch (kind) {
      case TransformKind::plural: return lex.pluralize(w);
      case TransformKind::singular: return lex.singularize(w);
      case TransformKind::past: return lex.verb_past(w);
      case TransformKind::past_participle: return lex.verb_past_participle(w);
      case TransformKind::present_3s: return lex.verb_present_3s(w);
    }
    return w;
  };
  return transform_last_word(value, one);
}

// Rewrites "a"/"an" before the following word's initial letter.  'u' is
// left alone in both directions (a university / an umbrella are both
// common; the tables cannot tell them apart).
inline std::string fix_articles(const std::string& text) {
  auto words = split_ws(text);
  std::string out;
  for (size_t i = 0; i < words.size(); ++i) {
    std::string w = words[i];
    if (i + 1 < words.size() && !words[i + 1].empty() && is_alpha(words[i + 1][0])) {
      char initial = static_cast<char>(words[i + 1][0] | 0x20);
      bool vowel = initial == 'a' || initial == 'e' || initial == 'i' || initial == 'o';
      if ((w == "a" || w == "A") && vowel) w += "n";
      else if ((w == "an" || w == "An") && !vowel && initial != 'u') w.pop_back();
    }
    if (!out.empty()) out.push_back(' ');
    out += w;
  }
  return out;
}

inline int count_percent(std::string_view s) {
  int n = 0;
  for (char c : s)
    if (c == '%') ++n;
  return n;
}

}  // namespace detail

// Splits a template line on "&&" into the text part and transform clauses.
inline std::vector<std::string> split_on_and_and(std::string_view line) {
  std::vector<std::string> parts;
  size_t b = 0;
  for (size_t i = 0; i + 1 < line.size(); ++i) {
    if (line[i] == '&' && line[i + 1] == '&') {
      parts.emplace_back(line.substr(b, i - b));
      b = i + 2;
      ++i;
    }
  }
  parts.emplace_back(line.substr(b));
  return parts;
}

// Parses rule text.  source_name seeds the rule ids ("<source>:<ordinal>").
inline std::vector<RewriteRule> parse_rules(std::string_view text, const std::string& source_name = "rules") {
  std::vector<RewriteRule> rules;
  std::vector<std::pair<int, std::string>> head_lines;      // (line no, regex)
  std::vector<std::pair<int, std::string>> template_lines;  // (line no, template)
  bool in_body = false;
  int line_no = 0;
  int separator_line = 0;

  auto finish_rule = [&]() {
    if (head_lines.empty() && template_lines.empty() && !in_body) return;
    if (head_lines.empty())
      fail(errc::empty_rule, source_name + ": rule body without heads near line " +
                                 std::to_string(separator_line));
    if (!in_body || template_lines.empty())
      fail(errc::empty_rule, source_name + ": rule with heads but no body near line " +
                                 std::to_string(head_lines.front().first));

    RewriteRule rule;
    rule.id = source_name + ":" + std::to_string(rules.size() + 1);
    rule.group_count = -1;
    for (const auto& [ln, src] : head_lines) {
      try {
        rule.heads.emplace_back(src, std::regex::ECMAScript);
      } catch (const std::regex_error& e) {
        fail(errc::bad_regex, source_name + ":" + std::to_string(ln) + ": " + src + " (" + e.what() + ")");
      }
      rule.head_sources.push_back(src);
      int groups = static_cast<int>(rule.heads.back().mark_count());
      if (rule.group_count < 0 || groups < rule.group_count) rule.group_count = groups;
    }

    for (const auto& [ln, src] : template_lines) {
      RewriteTemplate tpl;
      auto clauses = split_on_and_and(src);
      tpl.text = trim(clauses.front());
      if (tpl.text.empty())
        fail(errc::empty_rule, source_name + ":" + std::to_string(ln) + ": empty template");
      for (size_t i = 1; i < clauses.size(); ++i) {
        std::string clause = trim(clauses[i]);
        static const std::regex clause_re(R"(^([a-z_0-9]+)\(\$([0-9]+)\)$)");
        std::smatch m;
        if (!std::regex_match(clause, m, clause_re))
          fail(errc::bad_transform_name,
               source_name + ":" + std::to_string(ln) + ": bad transform clause \"" + clause + "\"");
        auto kind = detail::transform_from_name(m[1].str());
        if (!kind)
          fail(errc::bad_transform_name,
               source_name + ":" + std::to_string(ln) + ": unknown transform \"" + m[1].str() + "\"");
        int group = std::stoi(m[2].str());
        tpl.transforms.push_back(Transform{*kind, group});
      }
      // validate $n against the weakest head
      std::vector<int> refs = detail::back_references(tpl.text);
      for (const auto& t : tpl.transforms) refs.push_back(t.group);
      for (int n : refs) {
        if (n < 1 || n > rule.group_count)
          fail(errc::bad_back_reference, rule.id + ": $" + std::to_string(n) + " exceeds " +
                                             std::to_string(rule.group_count) + " capturing group(s)");
      }
      rule.body.push_back(std::move(tpl));
    }
    rules.push_back(std::move(rule));
    head_lines.clear();
    template_lines.clear();
    in_body = false;
  };

  for (const auto& raw_line : split(std::string(text), '\n')) {
    ++line_no;
    std::string line = raw_line;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string stripped = trim(line);
    if (!stripped.empty() && stripped[0] == '#') continue;
    if (stripped.empty()) {
      finish_rule();
      continue;
    }
    if (stripped == "->") {
      if (in_body || head_lines.empty())
        fail(errc::empty_rule, source_name + ":" + std::to_string(line_no) + ": misplaced '->'");
      in_body = true;
      separator_line = line_no;
      continue;
    }
    if (in_body) template_lines.emplace_back(line_no, stripped);
    else head_lines.emplace_back(line_no, stripped);
  }
  finish_rule();
  return rules;
}

inline std::vector<RewriteRule> parse_rules_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(errc::io_error, "cannot open rule file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_rules(buf.str(), path.stem().string());
}

// One flattened query variant produced by '*' expansion.
struct StarVariant {
  QueryAst ast;
  std::string substituted;  // comma-joined replaced terms; empty for the original
};

// Step 1, query flattening: the original query plus the cartesian product
// of similar-term substitutions over every star term.  Original first,
// then substitutions in lexicon file order, duplicates removed.
inline std::vector<StarVariant> expand_stars(const QueryAst& ast, const Lexicon& lex) {
  int stars = count_star_terms(ast);
  std::vector<StarVariant> out;
  if (stars == 0) {
    out.push_back(StarVariant{ast, ""});
    return out;
  }

  // options per star position: own word first, then similar terms
  std::vector<std::vector<std::string>> options;
  std::vector<std::string> originals;
  for (const Token& t : ast.tokens) {
    if (!is_star(t)) continue;
    const auto& word = std::get<StarTerm>(t).word;
    originals.push_back(word);
    std::vector<std::string> opts{word};
    for (const auto& term : lex.similar_terms(word)) opts.push_back(term);
    options.push_back(std::move(opts));
  }

  std::set<std::string> seen;
  std::vector<size_t> idx(static_cast<size_t>(stars), 0);
  for (;;) {
    QueryAst variant = ast;
    std::vector<std::string> replaced;
    int star_pos = 0;
    for (Token& t : variant.tokens) {
      if (!is_star(t)) continue;
      const std::string& choice = options[static_cast<size_t>(star_pos)][idx[static_cast<size_t>(star_pos)]];
      if (choice != originals[static_cast<size_t>(star_pos)]) replaced.push_back(choice);
      std::get<StarTerm>(t).word = choice;
      ++star_pos;
    }
    std::string rendered = render(variant);
    if (seen.insert(rendered).second) {
      std::string detail;
      for (const auto& r : replaced) {
        if (!detail.empty()) detail += ",";
        detail += r;
      }
      out.push_back(StarVariant{std::move(variant), detail});
    }
    // odometer, rightmost fastest
    int pos = stars - 1;
    while (pos >= 0) {
      if (++idx[static_cast<size_t>(pos)] < options[static_cast<size_t>(pos)].size()) break;
      idx[static_cast<size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return out;
}

// Step 2, rule-based rewriting of one flattened query.  The original query
// always comes first; each matching rule appends its instantiated body
// templates in file order.  Duplicate pattern texts keep the earliest
// provenance.  Rewritings that fail to preserve the slot count are dropped.
inline std::vector<Pattern> apply_rules(const std::string& query_text,
                                        const std::vector<RewriteRule>& rules, const Lexicon& lex,
                                        const Provenance& base = {}) {
  std::string original = collapse_ws(query_text);
  int arity = detail::count_percent(original);

  std::vector<Pattern> out;
  std::set<std::string> seen;
  out.push_back(Pattern{original, arity, base});
  seen.insert(original);

  for (const auto& rule : rules) {
    std::smatch match;
    bool matched = false;
    for (const auto& head : rule.heads) {
      if (std::regex_match(original, match, head)) {
        matched = true;
        break;
      }
    }
    if (!matched) continue;

    for (const auto& tpl : rule.body) {
      // group values, transformed per this template
      std::vector<std::string> values(match.size());
      for (size_t g = 1; g < match.size(); ++g) values[g] = trim(match[g].str());
      for (const auto& t : tpl.transforms) {
        auto g = static_cast<size_t>(t.group);
        if (g < values.size()) values[g] = detail::apply_transform(lex, t.kind, values[g]);
      }
      std::string text = detail::fix_articles(collapse_ws(detail::substitute_refs(tpl.text, values)));
      if (text.empty()) continue;
      if (detail::count_percent(text) != arity) continue;  // rewriting must preserve slots
      if (seen.insert(text).second)
        out.push_back(Pattern{std::move(text), arity, Provenance{Provenance::Kind::rule, rule.id}});
    }
  }
  return out;
}

// Steps 1+2 composed: star flattening, then one round of rewriting per
// variant, with global dedup by pattern text.
inline std::vector<Pattern> expand_all(const QueryAst& ast, const std::vector<RewriteRule>& rules,
                                       const Lexicon& lex) {
  std::vector<Pattern> out;
  std::set<std::string> seen;
  for (const auto& variant : expand_stars(ast, lex)) {
    Provenance base;
    if (!variant.substituted.empty())
      base = Provenance{Provenance::Kind::star_expansion, variant.substituted};
    for (auto& p : apply_rules(render(variant.ast), rules, lex, base)) {
      if (seen.insert(p.text).second) out.push_back(std::move(p));
    }
  }
  return out;
}

}  // namespace wildq

#endif  // WILDQ_RULES_HPP
