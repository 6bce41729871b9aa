#ifndef WILDQ_QUERY_HPP
#define WILDQ_QUERY_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wildq/errors.hpp"
#include "wildq/text.hpp"

namespace wildq {

// A wildcard query is a sequence of tokens:
//   Literal      plain word (a lone "," is a literal too)
//   PercentSlot  '%': binds one or more noun phrases, one result column each
//   StarTerm     '*word*': also try terms similar to word at this position
struct Literal {
  std::string word;
  bool operator==(const Literal&) const = default;
};

struct PercentSlot {
  int ordinal = 0;  // 0-based, left to right
  bool operator==(const PercentSlot&) const = default;
};

struct StarTerm {
  std::string word;  // single term, no whitespace
  bool operator==(const StarTerm&) const = default;
};

using Token = std::variant<Literal, PercentSlot, StarTerm>;

struct QueryAst {
  std::vector<Token> tokens;
  int arity = 0;  // number of PercentSlot tokens

  bool operator==(const QueryAst&) const = default;
};

inline bool is_slot(const Token& t) { return std::holds_alternative<PercentSlot>(t); }
inline bool is_star(const Token& t) { return std::holds_alternative<StarTerm>(t); }

// Parses a query string into an AST.  Errors: EmptyQuery, UnbalancedStar
// (odd number of '*'), AdjacentPercentSlots, StarAroundMultiWord.
inline QueryAst parse_query(std::string_view text) {
  std::string trimmed = trim(text);
  if (trimmed.empty()) fail(errc::empty_query, "query is empty");

  size_t stars = 0;
  for (char c : trimmed)
    if (c == '*') ++stars;
  if (stars % 2 != 0) fail(errc::unbalanced_star, "odd number of '*' in \"" + trimmed + "\"");

  QueryAst ast;
  for (const std::string& raw : tokenize_query_text(trimmed)) {
    if (raw == "%") {
      if (!ast.tokens.empty() && is_slot(ast.tokens.back()))
        fail(errc::adjacent_percent_slots, "two % slots with no literal between them");
      ast.tokens.push_back(PercentSlot{ast.arity});
      ++ast.arity;
      continue;
    }
    if (raw.find('*') != std::string::npos) {
      // Well-formed star term: *word*, stars only at both ends, non-empty core.
      if (raw.size() >= 3 && raw.front() == '*' && raw.back() == '*' &&
          raw.find('*', 1) == raw.size() - 1) {
        ast.tokens.push_back(StarTerm{raw.substr(1, raw.size() - 2)});
        continue;
      }
      fail(errc::star_around_multi_word,
           "'*' must wrap exactly one whitespace-free term, got \"" + raw + "\"");
    }
    ast.tokens.push_back(Literal{raw});
  }
  if (ast.tokens.empty()) fail(errc::empty_query, "query has no tokens");
  return ast;
}

// Renders an AST to plain query text, joining tokens with single spaces.
// PercentSlot emits '%'.  StarTerm emits either the substitution for its
// star position (0-based over star terms, left to right) or its own word
// when the map is empty.  A non-empty map must cover every star position.
inline std::string render(const QueryAst& ast, const std::map<int, std::string>& star_substitutions = {}) {
  std::string out;
  int star_pos = 0;
  for (const Token& t : ast.tokens) {
    std::string piece;
    if (const auto* lit = std::get_if<Literal>(&t)) {
      piece = lit->word;
    } else if (std::holds_alternative<PercentSlot>(t)) {
      piece = "%";
    } else {
      const auto& star = std::get<StarTerm>(t);
      if (star_substitutions.empty()) {
        piece = star.word;
      } else {
        auto it = star_substitutions.find(star_pos);
        if (it == star_substitutions.end())
          fail(errc::missing_substitution, "no substitution for star position " + std::to_string(star_pos));
        piece = it->second;
      }
      ++star_pos;
    }
    if (!out.empty()) out.push_back(' ');
    out += piece;
  }
  return out;
}

// Renders with wildcard markers intact ('*word*'), for round-tripping.
inline std::string render_wildcard_form(const QueryAst& ast) {
  std::string out;
  for (const Token& t : ast.tokens) {
    std::string piece;
    if (const auto* lit = std::get_if<Literal>(&t)) piece = lit->word;
    else if (std::holds_alternative<PercentSlot>(t)) piece = "%";
    else piece = "*" + std::get<StarTerm>(t).word + "*";
    if (!out.empty()) out.push_back(' ');
    out += piece;
  }
  return out;
}

inline int count_star_terms(const QueryAst& ast) {
  int n = 0;
  for (const Token& t : ast.tokens)
    if (is_star(t)) ++n;
  return n;
}

}  // namespace wildq

#endif  // WILDQ_QUERY_HPP
