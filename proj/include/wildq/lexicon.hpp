#ifndef WILDQ_LEXICON_HPP
#define WILDQ_LEXICON_HPP

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "wildq/errors.hpp"
#include "wildq/text.hpp"

namespace wildq {

// Side tables driving '*' expansion, rule transforms and the NP chunker.
// All lookups are case-insensitive (keys are stored folded).
//
// File formats (UTF-8, '#' comment lines ignored):
//   similar.tsv     word TAB comma-separated similar terms
//   inflect.tsv     singular-noun TAB plural-noun
//   verbs.tsv       base TAB past TAB past-participle TAB present-3s
//   nouns.txt       one noun per line; multi-word lines are compound nouns
//   stoplist.txt    sentence-initial words never treated as proper nouns
//   adjectives.txt  words accepted in the adjective position of an NP
class Lexicon {
 public:
  struct VerbForms {
    std::string base, past, past_participle, present_3s;
  };

  std::map<std::string, std::vector<std::string>> similar;
  std::map<std::string, std::string> plural_of;    // singular -> plural
  std::map<std::string, std::string> singular_of;  // plural -> singular
  std::set<std::string> noun_vocab;                // single words
  std::set<std::string> compound_nouns;            // multi-word entries from nouns.txt
  std::set<std::string> proper_stoplist;
  std::set<std::string> adjectives;
  std::vector<VerbForms> verbs;

  // Ordered similar terms for a word; empty for unknown words.  Never
  // contains the word itself.
  std::vector<std::string> similar_terms(std::string_view word) const {
    auto it = similar.find(fold(word));
    if (it == similar.end()) return {};
    return it->second;
  }

  bool is_noun(std::string_view word) const { return noun_vocab.count(fold(word)) > 0; }
  bool is_adjective(std::string_view word) const { return adjectives.count(fold(word)) > 0; }
  bool in_proper_stoplist(std::string_view word) const { return proper_stoplist.count(fold(word)) > 0; }

  // Table lookup first, then suffix rules (-y -> -ies, -s/-x/-ch/-sh -> -es,
  // else +s).  Idempotent on forms the table already knows as plural.
  std::string pluralize(std::string_view word) const {
    std::string key = fold(word);
    if (auto it = plural_of.find(key); it != plural_of.end()) return match_case(word, it->second);
    if (singular_of.count(key)) return std::string(word);  // already plural
    return match_case(word, suffix_pluralize(key));
  }

  std::string singularize(std::string_view word) const {
    std::string key = fold(word);
    if (auto it = singular_of.find(key); it != singular_of.end()) return match_case(word, it->second);
    if (plural_of.count(key)) return std::string(word);  // already singular
    return match_case(word, suffix_singularize(key));
  }

  std::string verb_past(std::string_view word) const { return verb_form(word, &VerbForms::past); }
  std::string verb_past_participle(std::string_view word) const {
    return verb_form(word, &VerbForms::past_participle);
  }
  std::string verb_present_3s(std::string_view word) const {
    return verb_form(word, &VerbForms::present_3s);
  }

  // --- loading ---------------------------------------------------------

  void load_similar(std::istream& in) {
    for_each_data_line(in, [this](const std::string& line) {
      auto cols = split(line, '\t');
      if (cols.size() < 2) return;
      std::string key = fold(trim(cols[0]));
      if (key.empty()) return;
      if (key.find(' ') != std::string::npos) {
        std::cerr << "wildq: similar.tsv: multi-word key \"" << key << "\" skipped\n";
        return;
      }
      auto& list = similar[key];
      for (const auto& piece : split(cols[1], ',')) {
        std::string term = collapse_ws(piece);
        if (term.empty() || fold(term) == key) continue;
        bool dup = false;
        for (const auto& have : list)
          if (fold(have) == fold(term)) dup = true;
        if (!dup) list.push_back(term);
      }
    });
  }

  void load_inflections(std::istream& in) {
    for_each_data_line(in, [this](const std::string& line) {
      auto cols = split(line, '\t');
      if (cols.size() < 2) return;
      std::string sg = fold(trim(cols[0])), pl = fold(trim(cols[1]));
      if (sg.empty() || pl.empty()) return;
      plural_of.emplace(sg, pl);
      singular_of.emplace(pl, sg);
      add_noun(sg);
      add_noun(pl);
    });
  }

  void load_verbs(std::istream& in) {
    for_each_data_line(in, [this](const std::string& line) {
      auto cols = split(line, '\t');
      if (cols.size() < 4) return;
      VerbForms f{fold(trim(cols[0])), fold(trim(cols[1])), fold(trim(cols[2])), fold(trim(cols[3]))};
      if (f.base.empty()) return;
      verbs.push_back(std::move(f));
    });
  }

  void load_nouns(std::istream& in) {
    for_each_data_line(in, [this](const std::string& line) { add_noun(fold(collapse_ws(line))); });
  }

  void load_stoplist(std::istream& in) {
    for_each_data_line(in, [this](const std::string& line) { proper_stoplist.insert(fold(trim(line))); });
  }

  void load_adjectives(std::istream& in) {
    for_each_data_line(in, [this](const std::string& line) { adjectives.insert(fold(trim(line))); });
  }

  // Loads every recognized file present under dir; missing files are fine.
  static Lexicon from_directory(const std::filesystem::path& dir) {
    Lexicon lex;
    lex.merge_directory(dir);
    return lex;
  }

  void merge_directory(const std::filesystem::path& dir) {
    auto load = [&](const char* name, void (Lexicon::*fn)(std::istream&)) {
      std::filesystem::path p = dir / name;
      if (!std::filesystem::exists(p)) return;
      std::ifstream in(p);
      if (!in) fail(errc::io_error, "cannot open " + p.string());
      (this->*fn)(in);
    };
    load("similar.tsv", &Lexicon::load_similar);
    load("inflect.tsv", &Lexicon::load_inflections);
    load("verbs.tsv", &Lexicon::load_verbs);
    load("nouns.txt", &Lexicon::load_nouns);
    load("stoplist.txt", &Lexicon::load_stoplist);
    load("adjectives.txt", &Lexicon::load_adjectives);
  }

 private:
  void add_noun(const std::string& folded) {
    if (folded.empty()) return;
    if (folded.find(' ') != std::string::npos) compound_nouns.insert(folded);
    else noun_vocab.insert(folded);
  }

  template <typename Fn>
  static void for_each_data_line(std::istream& in, Fn&& fn) {
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      std::string t = trim(line);
      if (t.empty() || t[0] == '#') continue;
      fn(line);
    }
  }

  std::string verb_form(std::string_view word, std::string VerbForms::* member) const {
    std::string key = fold(word);
    for (const auto& v : verbs) {
      if (v.base == key || v.past == key || v.past_participle == key || v.present_3s == key)
        return match_case(word, v.*member);
    }
    return match_case(word, suffix_verb(key, member));
  }

  static std::string suffix_pluralize(const std::string& w) {
    if (w.size() >= 2 && w.back() == 'y' && !is_vowel(w[w.size() - 2]))
      return w.substr(0, w.size() - 1) + "ies";
    if (ends_with(w, "s") || ends_with(w, "x") || ends_with(w, "ch") || ends_with(w, "sh"))
      return w + "es";
    return w + "s";
  }

  static std::string suffix_singularize(const std::string& w) {
    if (ends_with(w, "ies") && w.size() > 3) return w.substr(0, w.size() - 3) + "y";
    if (w.size() > 2 &&
        (ends_with(w, "ses") || ends_with(w, "xes") || ends_with(w, "ches") || ends_with(w, "shes")))
      return w.substr(0, w.size() - 2);
    if (ends_with(w, "s") && !ends_with(w, "ss") && w.size() > 1) return w.substr(0, w.size() - 1);
    return w;
  }

  static std::string suffix_verb(const std::string& w, std::string VerbForms::* member) {
    // past and past participle share the regular -ed form
    if (member == &VerbForms::present_3s) {
      if (w.size() >= 2 && w.back() == 'y' && !is_vowel(w[w.size() - 2]))
        return w.substr(0, w.size() - 1) + "ies";
      if (ends_with(w, "s") || ends_with(w, "x") || ends_with(w, "ch") || ends_with(w, "sh"))
        return w + "es";
      return w + "s";
    }
    if (ends_with(w, "ed")) return w;  // already inflected
    if (ends_with(w, "e")) return w + "d";
    if (w.size() >= 2 && w.back() == 'y' && !is_vowel(w[w.size() - 2]))
      return w.substr(0, w.size() - 1) + "ied";
    return w + "ed";
  }

  static bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

  // Keeps a leading capital from the input on the transformed output.
  static std::string match_case(std::string_view original, std::string out) {
    if (!original.empty() && !out.empty() && is_upper(original[0]) && is_lower(out[0]))
      out[0] = static_cast<char>(out[0] - 'a' + 'A');
    return out;
  }
};

}  // namespace wildq

#endif  // WILDQ_LEXICON_HPP
