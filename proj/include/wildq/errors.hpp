#ifndef WILDQ_ERRORS_HPP
#define WILDQ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wildq {

// Every typed failure in the library carries one of these codes.
enum class errc {
  // query parsing
  empty_query,
  unbalanced_star,
  adjacent_percent_slots,
  star_around_multi_word,
  missing_substitution,
  // rewrite rules
  bad_regex,
  bad_back_reference,
  bad_transform_name,
  empty_rule,
  // corpus
  io_error,
  not_utf8,
  // ranking
  empty_graph,
  undefined_mi,
  // analysis
  dimension_mismatch,
  dimension_too_small,
  insufficient_edges,
  edge_not_in_graph,
  empty_truth,
  // configuration / CLI
  invalid_argument,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::empty_query: return "EmptyQuery";
    case errc::unbalanced_star: return "UnbalancedStar";
    case errc::adjacent_percent_slots: return "AdjacentPercentSlots";
    case errc::star_around_multi_word: return "StarAroundMultiWord";
    case errc::missing_substitution: return "MissingSubstitution";
    case errc::bad_regex: return "BadRegex";
    case errc::bad_back_reference: return "BadBackReference";
    case errc::bad_transform_name: return "BadTransformName";
    case errc::empty_rule: return "EmptyRule";
    case errc::io_error: return "IoError";
    case errc::not_utf8: return "NotUtf8";
    case errc::empty_graph: return "EmptyGraph";
    case errc::undefined_mi: return "Undefined";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::dimension_too_small: return "DimensionTooSmall";
    case errc::insufficient_edges: return "InsufficientEdges";
    case errc::edge_not_in_graph: return "EdgeNotInGraph";
    case errc::empty_truth: return "EmptyTruth";
    case errc::invalid_argument: return "InvalidArgument";
  }
  return "UnknownError";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace wildq

#endif  // WILDQ_ERRORS_HPP
