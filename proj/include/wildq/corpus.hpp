#ifndef WILDQ_CORPUS_HPP
#define WILDQ_CORPUS_HPP

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "wildq/errors.hpp"
#include "wildq/text.hpp"

namespace wildq {

struct SToken {
  std::string surface;
  std::string folded;
};

struct Sentence {
  int doc = 0;       // document id
  int index = 0;     // sentence ordinal within the document
  size_t begin = 0;  // character offsets into the document text
  size_t end = 0;
  std::string raw;
  std::vector<SToken> tokens;
};

struct Document {
  int id = 0;
  std::string source;
  std::vector<Sentence> sentences;
};

struct Corpus {
  std::vector<Document> documents;

  int doc_count() const { return static_cast<int>(documents.size()); }

  size_t sentence_count() const {
    size_t n = 0;
    for (const auto& d : documents) n += d.sentences.size();
    return n;
  }
};

namespace detail {

// Abbreviations that do not end a sentence (compared folded, final dot and
// one leading opener stripped).  Single letters are handled separately.
inline const std::set<std::string>& abbreviation_stoplist() {
  // everyday words that double as abbreviations (sat, no, mar, wed, sun)
  // are deliberately absent: mistaking a word for an abbreviation merges
  // two sentences, which is worse than the occasional extra split
  static const std::set<std::string> set = {
      "dr",  "mr",  "mrs", "ms",  "prof", "rev",  "gen",  "sen", "rep",  "gov",  "capt",
      "col", "lt",  "sgt", "st",  "jr",   "sr",   "vs",   "etc", "inc",  "ltd",  "co",
      "corp", "dept", "univ", "assn", "bros", "e.g", "i.e", "u.s", "u.k", "u.n", "a.m",
      "p.m", "vol", "fig", "al",  "ed",   "eds",  "cf",   "ca",  "approx", "est",
      "jan", "feb", "apr", "jun", "jul",  "aug",  "sep",  "sept", "oct", "nov",  "dec",
      "mon", "tue", "thu", "fri", "mt",   "ft"};
  return set;
}

inline bool is_open_punct(char c) { return c == '(' || c == '[' || c == '{' || c == '"' || c == '\''; }
inline bool is_close_punct(char c) {
  return c == ',' || c == ';' || c == ':' || c == ')' || c == ']' || c == '}' || c == '"' ||
         c == '\'' || c == '!' || c == '?';
}

inline bool abbreviation_before(std::string_view text, size_t dot) {
  size_t b = dot;
  while (b > 0 && !is_space(text[b - 1])) --b;
  std::string token(text.substr(b, dot - b));
  while (!token.empty() && is_open_punct(token.front())) token.erase(token.begin());
  if (token.empty()) return false;
  if (token.size() == 1 && is_alpha(token[0])) return true;  // initials: "Thomas A. Edison"
  return abbreviation_stoplist().count(fold(token)) > 0;
}

}  // namespace detail

// Sentence-side tokenization: whitespace split; ',' ';' ':' quotes and
// brackets peel off as their own tokens; terminal '.' '!' '?' of the
// sentence are dropped.  Dots inside or at the end of interior chunks stay
// attached (abbreviations: "Dr.", "U.S.").
inline std::vector<SToken> tokenize_sentence_text(std::string_view raw) {
  std::vector<std::string> words;
  auto chunks = split_ws(raw);
  for (size_t ci = 0; ci < chunks.size(); ++ci) {
    std::string chunk = chunks[ci];
    std::vector<std::string> leading, trailing;
    if (ci + 1 == chunks.size()) {
      // terminal '.', '!', '?' are dropped, even behind closing quotes
      while (!chunk.empty()) {
        char c = chunk.back();
        if (c == '.' || c == '!' || c == '?') chunk.pop_back();
        else if (detail::is_close_punct(c)) {
          trailing.insert(trailing.begin(), std::string(1, c));
          chunk.pop_back();
        } else {
          break;
        }
      }
    }
    while (!chunk.empty() && detail::is_open_punct(chunk.front())) {
      leading.push_back(std::string(1, chunk.front()));
      chunk.erase(chunk.begin());
    }
    while (!chunk.empty() && detail::is_close_punct(chunk.back())) {
      trailing.insert(trailing.begin(), std::string(1, chunk.back()));
      chunk.pop_back();
    }
    for (auto& t : leading) words.push_back(std::move(t));
    if (!chunk.empty()) words.push_back(std::move(chunk));
    for (auto& t : trailing) words.push_back(std::move(t));
  }
  std::vector<SToken> tokens;
  tokens.reserve(words.size());
  for (auto& w : words) {
    std::string folded = fold(w);
    tokens.push_back(SToken{std::move(w), std::move(folded)});
  }
  return tokens;
}

// Splits text into sentences on '.', '!', '?' followed by whitespace and a
// capital, with an abbreviation stoplist.  Blank lines also end a sentence.
inline std::vector<Sentence> segment_sentences(std::string_view text, int doc_id) {
  std::vector<Sentence> sentences;
  auto emit = [&](size_t b, size_t e) {
    while (b < e && is_space(text[b])) ++b;
    size_t e2 = e;
    while (e2 > b && is_space(text[e2 - 1])) --e2;
    if (e2 <= b) return;
    Sentence s;
    s.doc = doc_id;
    s.index = static_cast<int>(sentences.size());
    s.begin = b;
    s.end = e2;
    s.raw = std::string(text.substr(b, e2 - b));
    s.tokens = tokenize_sentence_text(s.raw);
    if (!s.tokens.empty()) sentences.push_back(std::move(s));
  };

  size_t start = 0;
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '\n') {
      // paragraph break: a second newline with only blanks between
      size_t j = i + 1;
      while (j < text.size() && (text[j] == ' ' || text[j] == '\t' || text[j] == '\r')) ++j;
      if (j < text.size() && text[j] == '\n') {
        emit(start, i);
        start = j + 1;
        i = j;
      }
      continue;
    }
    if (c != '.' && c != '!' && c != '?') continue;
    size_t j = i + 1;
    while (j < text.size() && (text[j] == '"' || text[j] == '\'' || text[j] == ')' || text[j] == ']'))
      ++j;
    size_t after_punct = j;
    if (j < text.size() && !is_space(text[j])) continue;  // no whitespace: not a boundary
    while (j < text.size() && is_space(text[j])) ++j;
    while (j < text.size() && detail::is_open_punct(text[j])) ++j;
    bool at_eof = j >= text.size();
    if (!at_eof && !is_upper(text[j])) continue;
    if (c == '.' && !at_eof && detail::abbreviation_before(text, i)) continue;
    emit(start, after_punct);
    start = after_punct;
    i = after_punct - 1;
  }
  emit(start, text.size());
  return sentences;
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::io_error, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  if (!valid_utf8(text)) fail(errc::not_utf8, path.string() + " is not valid UTF-8");
  return text;
}

// Builds a corpus from plain-text files, one document per file, ids in
// path order.
inline Corpus ingest(const std::vector<std::filesystem::path>& paths) {
  Corpus corpus;
  for (const auto& path : paths) {
    Document doc;
    doc.id = static_cast<int>(corpus.documents.size());
    doc.source = path.string();
    doc.sentences = segment_sentences(read_text_file(path), doc.id);
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

inline Corpus ingest_text(std::string_view text, const std::string& source = "<memory>") {
  Corpus corpus;
  Document doc;
  doc.id = 0;
  doc.source = source;
  doc.sentences = segment_sentences(text, 0);
  corpus.documents.push_back(std::move(doc));
  return corpus;
}

// All .txt files under dir (recursive), alphabetical by path.
inline std::vector<std::filesystem::path> collect_txt_files(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> paths;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end(),
            [](const auto& a, const auto& b) { return a.string() < b.string(); });
  return paths;
}

// --- serialized corpus file (line-JSON, versioned) ------------------------

inline constexpr std::string_view kCorpusMagic = "wildq-corpus";

inline void save_corpus(const Corpus& corpus, std::ostream& out) {
  nlohmann::ordered_json header;
  header["format"] = std::string(kCorpusMagic);
  header["version"] = 1;
  header["documents"] = corpus.doc_count();
  out << header.dump() << "\n";
  for (const auto& doc : corpus.documents) {
    nlohmann::ordered_json j;
    j["id"] = doc.id;
    j["source"] = doc.source;
    auto& sents = j["sentences"] = nlohmann::ordered_json::array();
    for (const auto& s : doc.sentences) {
      nlohmann::ordered_json js;
      js["i"] = s.index;
      js["b"] = s.begin;
      js["e"] = s.end;
      js["raw"] = s.raw;
      auto& toks = js["tokens"] = nlohmann::ordered_json::array();
      for (const auto& t : s.tokens) toks.push_back(t.surface);
      sents.push_back(std::move(js));
    }
    out << j.dump() << "\n";
  }
}

inline void save_corpus_file(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::io_error, "cannot write " + path.string());
  save_corpus(corpus, out);
}

inline bool looks_like_corpus_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::string first;
  std::getline(in, first);
  return first.find(kCorpusMagic) != std::string::npos && !first.empty() && first[0] == '{';
}

inline Corpus load_corpus(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) fail(errc::io_error, source + ": empty corpus file");
  nlohmann::json header = nlohmann::json::parse(line, nullptr, false);
  if (header.is_discarded() || header.value("format", "") != kCorpusMagic)
    fail(errc::io_error, source + ": missing corpus file header");
  if (header.value("version", 0) != 1)
    fail(errc::io_error, source + ": unsupported corpus version");
  Corpus corpus;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) fail(errc::io_error, source + ": bad document record");
    Document doc;
    doc.id = j.value("id", 0);
    if (doc.id != corpus.doc_count())
      fail(errc::io_error, source + ": document ids must be dense and in order");
    doc.source = j.value("source", "");
    for (const auto& js : j["sentences"]) {
      Sentence s;
      s.doc = doc.id;
      s.index = js.value("i", 0);
      s.begin = js.value("b", size_t{0});
      s.end = js.value("e", size_t{0});
      s.raw = js.value("raw", "");
      for (const auto& t : js["tokens"]) {
        std::string surface = t.get<std::string>();
        std::string folded = fold(surface);
        s.tokens.push_back(SToken{std::move(surface), std::move(folded)});
      }
      doc.sentences.push_back(std::move(s));
    }
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

inline Corpus load_corpus_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::io_error, "cannot open " + path.string());
  return load_corpus(in, path.string());
}

// Accepts a serialized corpus file, a raw .txt file, or a directory tree.
inline Corpus open_corpus(const std::filesystem::path& path) {
  if (std::filesystem::is_directory(path)) return ingest(collect_txt_files(path));
  if (!std::filesystem::exists(path)) fail(errc::io_error, "no such corpus: " + path.string());
  if (looks_like_corpus_file(path)) return load_corpus_file(path);
  return ingest({path});
}

}  // namespace wildq

#endif  // WILDQ_CORPUS_HPP
