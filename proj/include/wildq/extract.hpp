#ifndef WILDQ_EXTRACT_HPP
#define WILDQ_EXTRACT_HPP

#include <future>
#include <thread>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "wildq/corpus.hpp"
#include "wildq/graph.hpp"
#include "wildq/lexicon.hpp"
#include "wildq/match.hpp"
#include "wildq/rules.hpp"

namespace wildq {

// Noun phrase found by the chunker: a token span of the sentence.
struct NounPhrase {
  std::string surface;  // joined original tokens
  size_t begin = 0;     // token span [begin, end)
  size_t end = 0;
};

// One extracted k-column row.
struct CandidateTuple {
  std::vector<std::string> values;  // surface forms
  std::vector<std::string> key;     // case-folded, whitespace-collapsed
};

// One (pattern, tuple, document, sentence) match record.
struct Evidence {
  int pattern = 0;
  int tuple = 0;
  int doc = 0;
  int sentence = 0;

  bool operator<(const Evidence& o) const {
    if (pattern != o.pattern) return pattern < o.pattern;
    if (tuple != o.tuple) return tuple < o.tuple;
    if (doc != o.doc) return doc < o.doc;
    return sentence < o.sentence;
  }
};

namespace detail {

inline bool capitalized(const std::string& surface) {
  return !surface.empty() && is_upper(surface[0]);
}

struct TokenClasses {
  std::vector<bool> det, adj, noun;
};

// A token counts as a noun when it is (a) capitalized and not sentence
// initial, (b) sentence initial, capitalized, not stoplisted, and either in
// the noun vocabulary or followed by another capitalized token, or (c) in
// the noun vocabulary.
inline TokenClasses classify_tokens(const Sentence& sentence, const Lexicon& lex) {
  const auto& toks = sentence.tokens;
  TokenClasses c;
  c.det.resize(toks.size());
  c.adj.resize(toks.size());
  c.noun.resize(toks.size());
  for (size_t i = 0; i < toks.size(); ++i) {
    const std::string& folded = toks[i].folded;
    c.det[i] = folded == "the" || folded == "a" || folded == "an";
    bool noun = false;
    if (lex.noun_vocab.count(folded)) {
      noun = true;
    } else if (capitalized(toks[i].surface)) {
      if (i > 0) {
        noun = true;  // proper noun
      } else if (!lex.proper_stoplist.count(folded)) {
        noun = i + 1 < toks.size() && capitalized(toks[i + 1].surface);
      }
    }
    c.noun[i] = noun && !c.det[i];
    c.adj[i] = !c.noun[i] && !c.det[i] && lex.adjectives.count(folded) > 0;
  }
  return c;
}

// Longest compound noun ("research and development") starting at pos, or 0.
inline size_t compound_length_at(const Sentence& sentence, const Lexicon& lex, size_t pos) {
  size_t best = 0;
  std::string joined;
  for (size_t j = pos; j < sentence.tokens.size() && j < pos + 6; ++j) {
    if (!joined.empty()) joined += " ";
    joined += sentence.tokens[j].folded;
    if (lex.compound_nouns.count(joined)) best = j - pos + 1;
  }
  return best;
}

}  // namespace detail

// Maximal noun-phrase spans: optional determiner, adjectives, one or more
// nouns.  Left-greedy and non-overlapping.  Multi-word entries in the noun
// vocabulary match as single compound spans.
inline std::vector<NounPhrase> chunk_noun_phrases(const Sentence& sentence, const Lexicon& lex) {
  const auto& toks = sentence.tokens;
  auto cls = detail::classify_tokens(sentence, lex);
  std::vector<NounPhrase> out;
  auto emit = [&](size_t b, size_t e) {
    NounPhrase np;
    np.begin = b;
    np.end = e;
    for (size_t i = b; i < e; ++i) {
      if (!np.surface.empty()) np.surface += " ";
      np.surface += toks[i].surface;
    }
    out.push_back(std::move(np));
  };

  size_t i = 0;
  while (i < toks.size()) {
    if (size_t len = detail::compound_length_at(sentence, lex, i); len > 0) {
      emit(i, i + len);
      i += len;
      continue;
    }
    size_t j = i;
    if (cls.det[j]) ++j;
    while (j < toks.size() && cls.adj[j]) ++j;
    size_t noun_begin = j;
    while (j < toks.size() && (cls.noun[j] || detail::compound_length_at(sentence, lex, j) > 0)) {
      if (size_t len = detail::compound_length_at(sentence, lex, j); len > 0) j += len;
      else ++j;
    }
    if (j > noun_begin) {
      emit(i, j);
      i = j;
    } else {
      ++i;
    }
  }
  return out;
}

namespace detail {

struct SpanIndex {
  std::vector<int> starting_at;  // token pos -> NP index or -1
  std::vector<int> ending_at;    // token pos (exclusive end) -> NP index or -1
  const std::vector<NounPhrase>* nps = nullptr;

  SpanIndex(const std::vector<NounPhrase>& spans, size_t n_tokens) : nps(&spans) {
    starting_at.assign(n_tokens + 1, -1);
    ending_at.assign(n_tokens + 1, -1);
    for (size_t k = 0; k < spans.size(); ++k) {
      starting_at[spans[k].begin] = static_cast<int>(k);
      ending_at[spans[k].end] = static_cast<int>(k);
    }
  }
};

inline bool is_list_sep(const SToken& t) {
  return t.folded == "," || t.folded == "and" || t.folded == "or";
}

// Conjunction list growing rightward from pos; stops at region_end.
inline std::vector<const NounPhrase*> forward_list(const SpanIndex& idx,
                                                   const std::vector<SToken>& toks, size_t pos,
                                                   size_t region_end) {
  std::vector<const NounPhrase*> conjuncts;
  size_t cur = pos;
  while (true) {
    int k = cur <= toks.size() ? idx.starting_at[cur] : -1;
    if (k < 0) break;
    const NounPhrase& np = (*idx.nps)[static_cast<size_t>(k)];
    if (np.end > region_end) break;
    conjuncts.push_back(&np);
    size_t q = np.end;
    size_t next = 0;
    if (q + 1 < region_end && toks[q].folded == "," &&
        (toks[q + 1].folded == "and" || toks[q + 1].folded == "or")) {
      next = q + 2;
    } else if (q < region_end && is_list_sep(toks[q])) {
      next = q + 1;
    } else {
      break;
    }
    if (next >= region_end || idx.starting_at[next] < 0) break;
    cur = next;
  }
  return conjuncts;
}

// Conjunction list growing leftward from exclusive end position pos.
inline std::vector<const NounPhrase*> backward_list(const SpanIndex& idx,
                                                    const std::vector<SToken>& toks, size_t pos,
                                                    size_t region_begin) {
  std::vector<const NounPhrase*> reversed;
  size_t cur = pos;
  while (true) {
    int k = idx.ending_at[cur];
    if (k < 0) break;
    const NounPhrase& np = (*idx.nps)[static_cast<size_t>(k)];
    if (np.begin < region_begin) break;
    reversed.push_back(&np);
    size_t p = np.begin;
    size_t prev = 0;
    bool found = false;
    if (p >= region_begin + 2 && (toks[p - 1].folded == "and" || toks[p - 1].folded == "or") &&
        toks[p - 2].folded == ",") {
      prev = p - 2;
      found = true;
    } else if (p >= region_begin + 1 && is_list_sep(toks[p - 1])) {
      prev = p - 1;
      found = true;
    }
    if (!found || idx.ending_at[prev] < 0) break;
    cur = prev;
  }
  return {reversed.rbegin(), reversed.rend()};
}

// Middle slot: the region between two literal runs must be fully consumed
// by a conjunction list, or be exactly one noun phrase.
inline std::vector<const NounPhrase*> cover_region(const SpanIndex& idx,
                                                   const std::vector<SToken>& toks, size_t begin,
                                                   size_t end) {
  auto list = forward_list(idx, toks, begin, end);
  if (!list.empty() && list.back()->end == end && list.front()->begin == begin) return list;
  int k = idx.starting_at[begin];
  if (k >= 0) {
    const NounPhrase& np = (*idx.nps)[static_cast<size_t>(k)];
    if (np.begin == begin && np.end == end) return {&np};
  }
  return {};
}

inline std::vector<std::string> tuple_key(const std::vector<std::string>& values) {
  std::vector<std::string> key;
  key.reserve(values.size());
  for (const auto& v : values) key.push_back(fold(collapse_ws(v)));
  return key;
}

}  // namespace detail

// Tuples extracted from one retrieved sentence, with per-sentence evidence.
// Slot text that is not a noun phrase (or conjunction list of noun phrases)
// yields nothing.  Multi-slot bindings combine as a cartesian product,
// capped at 16 tuples per sentence.
inline std::vector<CandidateTuple> match_pattern(const Pattern& pattern, const Sentence& sentence,
                                                 const Lexicon& lex) {
  constexpr size_t kMaxTuplesPerSentence = 16;
  constexpr size_t kMaxAlignments = 64;

  CompiledPattern p = CompiledPattern::compile(pattern.text);
  if (!p.valid) return {};
  const auto& toks = sentence.tokens;
  auto spans = chunk_noun_phrases(sentence, lex);
  detail::SpanIndex idx(spans, toks.size());

  std::vector<CandidateTuple> out;
  std::set<std::vector<std::string>> seen_keys;

  auto add_tuple = [&](std::vector<std::string> values) {
    if (out.size() >= kMaxTuplesPerSentence) return;
    auto key = detail::tuple_key(values);
    if (!seen_keys.insert(key).second) return;
    out.push_back(CandidateTuple{std::move(values), std::move(key)});
  };

  detail::enumerate_alignments(p, toks, kMaxAlignments, [&](const std::vector<size_t>& starts) {
    // bindings per slot, in slot order
    std::vector<std::vector<const NounPhrase*>> slot_bindings;
    if (p.runs.empty()) {
      // bare "%": every noun phrase is a candidate binding
      std::vector<const NounPhrase*> all;
      for (const auto& np : spans) all.push_back(&np);
      slot_bindings.push_back(std::move(all));
    } else {
      if (p.leading_slot)
        slot_bindings.push_back(detail::backward_list(idx, toks, starts.front(), 0));
      for (size_t r = 0; r + 1 < p.runs.size(); ++r) {
        size_t gap_begin = starts[r] + p.runs[r].size();
        size_t gap_end = starts[r + 1];
        slot_bindings.push_back(detail::cover_region(idx, toks, gap_begin, gap_end));
      }
      if (p.trailing_slot) {
        size_t last_end = starts.back() + p.runs.back().size();
        slot_bindings.push_back(detail::forward_list(idx, toks, last_end, toks.size()));
      }
    }
    for (const auto& binding : slot_bindings)
      if (binding.empty()) return true;  // this alignment binds nothing

    // cartesian product over slots
    std::vector<size_t> pick(slot_bindings.size(), 0);
    for (;;) {
      std::vector<std::string> values;
      values.reserve(pick.size());
      for (size_t s = 0; s < pick.size(); ++s) values.push_back(slot_bindings[s][pick[s]]->surface);
      add_tuple(std::move(values));
      if (out.size() >= kMaxTuplesPerSentence) return false;
      int pos = static_cast<int>(pick.size()) - 1;
      while (pos >= 0) {
        if (++pick[static_cast<size_t>(pos)] < slot_bindings[static_cast<size_t>(pos)].size()) break;
        pick[static_cast<size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
    return true;
  });
  return out;
}

// Deduplicated tuple table plus the pattern-tuple evidence graph.
struct TupleRow {
  std::vector<std::string> display;  // most frequent surface variant
  std::vector<std::string> key;
  std::vector<Evidence> evidence;                    // sorted, deduplicated
  std::vector<std::pair<std::string, int>> variants; // joined surface -> count
};

struct ExtractionResult {
  std::vector<TupleRow> tuples;
  BipartiteGraph graph;  // edge weight = distinct supporting documents
};

// Runs retrieve + match_pattern for every pattern and merges the results.
// Tuples are deduplicated by normalized key; edge weight w(p->t) counts the
// distinct documents over that edge's evidence.  Per-pattern work runs
// concurrently; the merge walks patterns in order, so the result does not
// depend on scheduling.
inline ExtractionResult extract_all(const std::vector<Pattern>& patterns,
                                    const RetrievalBackend& backend, int cap, const Lexicon& lex) {
  struct SentenceMatches {
    int doc = 0;
    int sentence = 0;
    std::vector<CandidateTuple> candidates;
  };
  auto match_one = [&backend, &lex, cap](const Pattern& pattern) {
    std::vector<SentenceMatches> out;
    for (const Sentence& sentence : backend.retrieve(pattern.text, cap)) {
      auto candidates = match_pattern(pattern, sentence, lex);
      if (!candidates.empty())
        out.push_back(SentenceMatches{sentence.doc, sentence.index, std::move(candidates)});
    }
    return out;
  };
  // fan out in bounded windows; results land indexed by pattern
  std::vector<std::vector<SentenceMatches>> matches(patterns.size());
  size_t window = std::max<size_t>(1, std::thread::hardware_concurrency());
  for (size_t base = 0; base < patterns.size(); base += window) {
    size_t end = std::min(patterns.size(), base + window);
    std::vector<std::future<std::vector<SentenceMatches>>> jobs;
    jobs.reserve(end - base);
    for (size_t pi = base; pi < end; ++pi)
      jobs.push_back(std::async(std::launch::async, match_one, std::cref(patterns[pi])));
    for (size_t pi = base; pi < end; ++pi) matches[pi] = jobs[pi - base].get();
  }

  std::vector<TupleRow> tuples;
  std::map<std::vector<std::string>, int> tuple_index;
  std::set<Evidence> evidence_set;
  std::map<std::pair<int, int>, std::set<int>> edge_docs;  // (pattern, tuple) -> docs
  std::map<int, std::map<std::string, std::pair<int, int>>> variant_counts;  // tuple -> variant -> (count, first)
  int variant_order = 0;

  for (size_t pi = 0; pi < patterns.size(); ++pi) {
    for (auto& matched : matches[pi]) {
      for (auto& cand : matched.candidates) {
        auto [it, fresh] = tuple_index.try_emplace(cand.key, static_cast<int>(tuples.size()));
        if (fresh) {
          TupleRow row;
          row.display = cand.values;
          row.key = cand.key;
          tuples.push_back(std::move(row));
        }
        int ti = it->second;
        std::string joined;
        for (const auto& v : cand.values) {
          if (!joined.empty()) joined += "\t";
          joined += v;
        }
        auto& vc = variant_counts[ti];
        auto vit = vc.find(joined);
        if (vit == vc.end()) vc.emplace(joined, std::make_pair(1, variant_order++));
        else vit->second.first += 1;

        Evidence ev{static_cast<int>(pi), ti, matched.doc, matched.sentence};
        if (evidence_set.insert(ev).second) {
          tuples[static_cast<size_t>(ti)].evidence.push_back(ev);
          edge_docs[{static_cast<int>(pi), ti}].insert(matched.doc);
        }
      }
    }
  }

  // choose display variants: highest count, ties by first occurrence
  for (auto& [ti, vc] : variant_counts) {
    const std::string* best = nullptr;
    int best_count = -1, best_order = 0;
    for (const auto& [variant, info] : vc) {
      auto [count, order] = info;
      if (count > best_count || (count == best_count && order < best_order)) {
        best = &variant;
        best_count = count;
        best_order = order;
      }
      tuples[static_cast<size_t>(ti)].variants.emplace_back(variant, count);
    }
    if (best) {
      auto cols = split(*best, '\t');
      tuples[static_cast<size_t>(ti)].display.assign(cols.begin(), cols.end());
    }
  }

  std::vector<GraphEdge> edges;
  edges.reserve(edge_docs.size());
  for (const auto& [pt, docs] : edge_docs)
    edges.push_back(GraphEdge{pt.first, pt.second, static_cast<int>(docs.size())});

  ExtractionResult result;
  result.graph = BipartiteGraph(static_cast<int>(patterns.size()), static_cast<int>(tuples.size()),
                                std::move(edges));
  result.tuples = std::move(tuples);
  return result;
}

inline ExtractionResult extract_all(const std::vector<Pattern>& patterns, const Corpus& corpus,
                                    int cap, const Lexicon& lex) {
  return extract_all(patterns, LocalScanBackend(corpus), cap, lex);
}

}  // namespace wildq

#endif  // WILDQ_EXTRACT_HPP
