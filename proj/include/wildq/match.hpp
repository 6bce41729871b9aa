#ifndef WILDQ_MATCH_HPP
#define WILDQ_MATCH_HPP

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "wildq/corpus.hpp"
#include "wildq/errors.hpp"
#include "wildq/text.hpp"

namespace wildq {

// A pattern reduced to literal token runs and the slots around them.
// Slots between consecutive runs are implicit (exactly one each).
struct CompiledPattern {
  bool valid = true;  // false: degenerate slot layout, matches nothing
  std::vector<std::vector<std::string>> runs;  // folded literal tokens
  bool leading_slot = false;
  bool trailing_slot = false;
  int arity = 0;

  static CompiledPattern compile(std::string_view pattern_text) {
    CompiledPattern p;
    auto tokens = tokenize_query_text(pattern_text);
    bool last_was_slot = false;
    for (const auto& tok : tokens) {
      if (tok == "%") {
        ++p.arity;
        if (last_was_slot) p.valid = false;  // adjacent slots: ambiguous boundary
        if (p.runs.empty()) p.leading_slot = true;
        p.trailing_slot = true;
        last_was_slot = true;
      } else {
        if (p.runs.empty() || last_was_slot) p.runs.emplace_back();
        p.runs.back().push_back(fold(tok));
        p.trailing_slot = false;
        last_was_slot = false;
      }
    }
    if (tokens.empty()) p.valid = false;
    if (p.runs.empty() && p.arity > 1) p.valid = false;
    return p;
  }

  // Number of slots implied by the layout; equals arity when valid.
  int slot_count() const {
    if (runs.empty()) return leading_slot ? 1 : 0;
    return static_cast<int>(runs.size()) - 1 + (leading_slot ? 1 : 0) + (trailing_slot ? 1 : 0);
  }
};

namespace detail {

inline bool run_matches_at(const std::vector<std::string>& run, const std::vector<SToken>& tokens,
                           size_t pos) {
  if (pos + run.size() > tokens.size()) return false;
  for (size_t i = 0; i < run.size(); ++i)
    if (tokens[pos + i].folded != run[i]) return false;
  return true;
}

// Enumerates run placements (start position of each run) satisfying the
// slot gaps: >= 1 token before the first run if there is a leading slot,
// >= 1 token between consecutive runs, >= 1 token after the last run if
// there is a trailing slot.  Stops after max_alignments.
inline void enumerate_alignments(const CompiledPattern& p, const std::vector<SToken>& tokens,
                                 size_t max_alignments,
                                 const std::function<bool(const std::vector<size_t>&)>& visit) {
  if (!p.valid) return;
  size_t L = tokens.size();
  if (p.runs.empty()) {
    // bare "%": a single empty placement; extraction decides what binds
    if (p.arity == 1 && L > 0) visit({});
    return;
  }
  // occurrence lists per run
  std::vector<std::vector<size_t>> occ(p.runs.size());
  for (size_t r = 0; r < p.runs.size(); ++r) {
    for (size_t pos = 0; pos + p.runs[r].size() <= L; ++pos)
      if (run_matches_at(p.runs[r], tokens, pos)) occ[r].push_back(pos);
    if (occ[r].empty()) return;
  }
  size_t count = 0;
  std::vector<size_t> chosen(p.runs.size());
  std::function<bool(size_t, size_t)> dfs = [&](size_t r, size_t min_pos) -> bool {
    if (count >= max_alignments) return false;
    if (r == p.runs.size()) {
      size_t last_end = chosen.back() + p.runs.back().size();
      if (p.trailing_slot && last_end + 1 > L) return true;  // no room for trailing slot
      ++count;
      return visit(chosen);
    }
    for (size_t pos : occ[r]) {
      if (pos < min_pos) continue;
      chosen[r] = pos;
      if (!dfs(r + 1, pos + p.runs[r].size() + 1)) return false;
    }
    return true;
  };
  dfs(0, p.leading_slot ? 1 : 0);
}

inline bool any_alignment(const CompiledPattern& p, const std::vector<SToken>& tokens) {
  bool found = false;
  enumerate_alignments(p, tokens, 1, [&](const std::vector<size_t>&) {
    found = true;
    return false;  // stop
  });
  return found;
}

}  // namespace detail

// Sentences whose tokens contain the pattern's literal runs contiguously
// and in order, with at least one token position for each slot.  At most
// cap results, in (doc id, sentence index) order.
inline std::vector<Sentence> retrieve(std::string_view pattern_text, const Corpus& corpus, int cap) {
  if (cap < 1) fail(errc::invalid_argument, "snippet cap must be >= 1");
  CompiledPattern p = CompiledPattern::compile(pattern_text);
  std::vector<Sentence> out;
  for (const auto& doc : corpus.documents) {
    for (const auto& sentence : doc.sentences) {
      if (detail::any_alignment(p, sentence.tokens)) {
        out.push_back(sentence);
        if (static_cast<int>(out.size()) >= cap) return out;
      }
    }
  }
  return out;
}

// Retrieval backend seam: the engine only needs "pattern text + cap ->
// snippet sentences", so a remote search client could be slotted in.
class RetrievalBackend {
 public:
  virtual ~RetrievalBackend() = default;
  virtual std::vector<Sentence> retrieve(const std::string& pattern_text, int cap) const = 0;
};

class LocalScanBackend final : public RetrievalBackend {
 public:
  explicit LocalScanBackend(const Corpus& corpus) : corpus_(&corpus) {}

  std::vector<Sentence> retrieve(const std::string& pattern_text, int cap) const override {
    return wildq::retrieve(pattern_text, *corpus_, cap);
  }

 private:
  const Corpus* corpus_;
};

}  // namespace wildq

#endif  // WILDQ_MATCH_HPP
