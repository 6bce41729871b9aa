#ifndef WILDQ_BUILTIN_RULES_HPP
#define WILDQ_BUILTIN_RULES_HPP

#include <string_view>
#include <vector>

#include "wildq/rules.hpp"

namespace wildq {

// Built-in rule packs, shipped in the same file format users write.
// Dump them with `wildq rules check --dump` to read, copy or extend.

// Hyponym rewritings.  Every template family is present in both rules so
// that a query phrased in any of them is rewritten into all the others.
// Group roles differ between the two rules because regex groups number by
// position: rule 1 captures (class, instances), rule 2 (instances, class).
inline std::string_view builtin_hyponym_rules_text() {
  return R"RULES(# Hyponym rewritings: class noun phrase <-> instance noun phrases.
# Rule 1: heads where the class comes first ($1 = class, $2 = instances).
(.+?),? such as (.+)
such (.+?) as (.+)
(.+?),? especially (.+)
(.+?),? including (.+)
# The bare "NP1 NP2" compound head would be "(.+?) (.+)"; it matches nearly
# every query, so it is disabled by default.  Its rewritings are still
# produced by the bodies below.
->
$1 such as $2 && plural($1)
such $1 as $2 && plural($1)
$1, especially $2 && plural($1)
$1, including $2 && plural($1)
$2 and other $1 && plural($1)
$2 or other $1 && plural($1)
$2, a $1 && singular($1)
$2, the $1 && singular($1)
$2 is a $1 && singular($1)
$2 is the $1 && singular($1)
$1 $2 && plural($1)
$1 $2 && singular($1)

# Rule 2: heads where the instances come first ($1 = instances, $2 = class).
(.+?),? and other (.+)
(.+?),? or other (.+)
(.+?), (?:a|an|the) (.+)
(.+?) is (?:a|an|the) (.+)
->
$2 such as $1 && plural($2)
such $2 as $1 && plural($2)
$2, especially $1 && plural($2)
$2, including $1 && plural($2)
$1 and other $2 && plural($2)
$1 or other $2 && plural($2)
$1, a $2 && singular($2)
$1, the $2 && singular($2)
$1 is a $2 && singular($2)
$1 is the $2 && singular($2)
$2 $1 && plural($2)
$2 $1 && singular($2)
)RULES";
}

// Morphological rewritings for "Subject transitive-Verb Object" queries:
// active <-> passive plus present / past / present-perfect tense variants.
// Heads anchor on surface verb shape (-ed suffix or a list of common
// irregular past forms) instead of part-of-speech tags.
inline std::string_view builtin_morphology_rules_text() {
  return R"RULES(# Active past tense -> passive and tense variants.
(?!.*\b(?:was|were|been|being|be|is|are)\b)(.+) (\S+ed) (.+)
(?!.*\b(?:was|were|been|being|be|is|are)\b)(.+) (bought|took|made|wrote|found|sold|held|gave|got|ran|became|began|saw|knew|grew|threw|drew|chose|spoke|broke|drove|rose|wore|ate|fell|felt|kept|left|lost|met|paid|read|said|sent|spent|stood|taught|thought|told|understood|brought|caught|fought|heard|led|fed|built|won|did|sang|drank|swam|rode) (.+)
->
$3 was $2 by $1 && past_participle($2)
$3 has been $2 by $1 && past_participle($2)
$1 has $2 $3 && past_participle($2)
$1 $2 $3 && present_3s($2)

# Passive -> active and tense variants.
(.+) (?:was|were) (\S+) by (.+)
(.+) (?:has|have) been (\S+) by (.+)
->
$3 $2 $1 && past($2)
$3 has $2 $1 && past_participle($2)
$3 $2 $1 && present_3s($2)
$1 was $2 by $3 && past_participle($2)
$1 has been $2 by $3 && past_participle($2)
)RULES";
}

inline std::vector<RewriteRule> builtin_hyponym_rules() {
  return parse_rules(builtin_hyponym_rules_text(), "hyponym");
}

inline std::vector<RewriteRule> builtin_morphology_rules() {
  return parse_rules(builtin_morphology_rules_text(), "morphology");
}

// Both packs, hyponym first.
inline std::vector<RewriteRule> builtin_rules() {
  auto rules = builtin_hyponym_rules();
  for (auto& r : builtin_morphology_rules()) rules.push_back(std::move(r));
  return rules;
}

}  // namespace wildq

#endif  // WILDQ_BUILTIN_RULES_HPP
