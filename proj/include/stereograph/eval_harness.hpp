#ifndef STEREOGRAPH_EVAL_HARNESS_HPP
#define STEREOGRAPH_EVAL_HARNESS_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "stereograph/graph_store.hpp"
#include "stereograph/query.hpp"

namespace stereograph::evaluation {

// Tokenization contract (bit-exact, see README): text is split on Unicode
// whitespace, each token is stripped of leading/trailing ASCII punctuation
// and ASCII-lowercased, and tokens that become empty are dropped. Matching
// is whole-token: "violin" never matches "violent".
std::vector<std::string> tokenize(std::string_view text);

struct GenerationRecord {
  std::string id;
  std::string text;
  std::optional<std::string> locale;
  std::optional<std::string> produced_at;
};

// Reads line-delimited JSON generation records ({id, text, locale?,
// producedAt?}); throws on malformed lines, naming the line number.
std::vector<GenerationRecord> generations_from_stream(std::istream& in);

// Canonical identity/attribute term -> additional surface forms. Keys and
// surfaces are case-folded on entry; empty surfaces are rejected.
class AliasTable {
 public:
  void add(std::string_view canonical, std::string_view surface);
  std::vector<std::string> surfaces_of(std::string_view canonical) const;

  // {"netherlanders": ["dutch"], ...}
  static AliasTable from_json(const nlohmann::json& doc);

 private:
  std::map<std::string, std::set<std::string>, std::less<>> surfaces_;
};

// Inclusive token index range of one matched surface form.
struct TokenSpan {
  std::size_t start_token = 0;
  std::size_t end_token = 0;

  auto operator<=>(const TokenSpan&) const = default;
};

struct StereotypeHit {
  std::string generation_id;
  std::string assertion_id;
  TokenSpan group_span;
  TokenSpan attribute_span;
  std::size_t token_distance = 0;  // 0 when the spans touch or overlap

  auto operator<=>(const StereotypeHit&) const = default;
};

// Immutable lexical pattern set compiled from the in-scope assertions:
// per assertion, the group surface forms (every constituent identity plus
// its aliases) and the attribute surface forms (term plus aliases).
class Matcher {
 public:
  struct Pattern {
    std::string assertion_id;
    std::vector<std::vector<std::string>> group_forms;      // token sequences
    std::vector<std::vector<std::string>> attribute_forms;  // token sequences
  };

  explicit Matcher(std::vector<Pattern> patterns) : patterns_(std::move(patterns)) {}

  std::size_t pattern_count() const { return patterns_.size(); }
  const std::vector<Pattern>& patterns() const { return patterns_; }

 private:
  std::vector<Pattern> patterns_;
};

Matcher build_matcher(const GraphStore& store,
                      const std::optional<query::QueryAst>& scope = std::nullopt,
                      const AliasTable& aliases = {},
                      const query::CategoryLexicon& lexicon = {});

struct ScanSummary {
  std::size_t generations = 0;
  std::size_t unscannable = 0;  // texts yielding no tokens
  std::size_t hits = 0;
};

// Emits one hit per (generation, assertion, group span, attribute span)
// whose token distance is within the window. Output order is
// (generationId, assertionId, spans) regardless of input order.
std::vector<StereotypeHit> scan(const Matcher& matcher,
                                const std::vector<GenerationRecord>& generations,
                                std::size_t window = 10, ScanSummary* summary = nullptr);

enum class SliceDim { Axis, Marginalized, Offensiveness, Source, PerceiverRegion };

std::optional<SliceDim> slice_dim_from_string(std::string_view name);
std::string_view to_string(SliceDim dim);

// Counts hits per combination of the requested dimensions (keys joined
// with "|" in the fixed dimension order above). Counts sum to |hits|;
// multi-axis targets count once under their combined axis key. Throws
// DanglingAssertionError when a hit references an id absent from the store.
std::map<std::string, std::size_t> summarize(const std::vector<StereotypeHit>& hits,
                                             const GraphStore& store,
                                             const std::vector<SliceDim>& group_by);

}  // namespace stereograph::evaluation

#endif  // STEREOGRAPH_EVAL_HARNESS_HPP
