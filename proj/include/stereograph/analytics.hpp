#ifndef STEREOGRAPH_ANALYTICS_HPP
#define STEREOGRAPH_ANALYTICS_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "stereograph/graph_store.hpp"
#include "stereograph/query.hpp"

namespace stereograph::analytics {

// One row per (target, unordered attribute-term pair) with at least two
// distinct terms asserted on the target within scope. supportCount is the
// number of assertions contributing either term.
struct CooccurrenceRow {
  std::string target_key;
  std::pair<std::string, std::string> terms;  // lexicographically ordered
  std::size_t support_count = 0;
  std::set<std::string> source_ids;

  bool operator==(const CooccurrenceRow&) const = default;
};

std::vector<CooccurrenceRow> cooccurrence(
    const GraphStore& store, const std::optional<query::QueryAst>& scope = std::nullopt,
    const query::CategoryLexicon& lexicon = {});

struct TimeSeriesPoint {
  int bucket_start_year = 0;
  std::size_t assertion_count = 0;
  std::map<Ordinal, std::size_t> offensiveness_histogram;  // nonzero entries only

  bool operator==(const TimeSeriesPoint&) const = default;
};

// Timed assertions count in every bucket their interval overlaps; untimed
// assertions are reported separately and never silently bucketed.
struct TimeSeries {
  int bucket_years = 1;
  std::vector<TimeSeriesPoint> points;  // ascending, non-overlapping buckets
  std::size_t untimed_count = 0;

  bool operator==(const TimeSeries&) const = default;
};

// target_key narrows the series to one target (UnknownTargetError when the
// key does not exist); attribute_term narrows further when present.
TimeSeries temporal_series(const GraphStore& store,
                           const std::optional<std::string>& target_key,
                           const std::optional<std::string>& attribute_term, int bucket_years);

// Attribute-term sets per perceiver group for one target. Assertions
// without a perceiver social group fall under "(unspecified)".
struct PerceiverDiff {
  std::string target_key;
  std::map<std::string, std::set<std::string>> per_group;
  std::map<std::pair<std::string, std::string>, double> pairwise_jaccard;

  bool operator==(const PerceiverDiff&) const = default;
};

inline constexpr std::string_view kUnspecifiedGroup = "(unspecified)";

PerceiverDiff perceiver_diff(const GraphStore& store, const std::string& target_key);

// Curated unordered pairs of attribute terms declared contradictory.
class AntonymLexicon {
 public:
  // Throws InvalidRangeError on a (t, t) pair.
  void add(const std::string& a, const std::string& b);
  bool contains(const std::string& a, const std::string& b) const;
  const std::set<std::pair<std::string, std::string>>& pairs() const { return pairs_; }

  // JSON form: [["lazy", "industrious"], ...]
  static AntonymLexicon from_json(const nlohmann::json& doc);

 private:
  std::set<std::pair<std::string, std::string>> pairs_;  // each stored sorted
};

struct ConflictRow {
  std::string target_key;
  std::pair<std::string, std::string> assertion_ids;  // id-ordered
  std::pair<std::string, std::string> terms;          // lexicographically ordered

  bool operator==(const ConflictRow&) const = default;
};

// Pairs of assertions on the same target whose terms form an antonym pair.
std::vector<ConflictRow> conflicts(const GraphStore& store, const AntonymLexicon& lexicon);

struct SynergyRow {
  std::string target_key;
  std::pair<std::string, std::string> assertion_ids;  // id-ordered

  bool operator==(const SynergyRow&) const = default;
};

// Pairs of marginalized-true assertions on the same target where both
// attributes carry high offensiveness. One concrete operationalization of
// mutually reinforcing stereotypes, not the only possible one.
std::vector<SynergyRow> synergies(const GraphStore& store);

struct CoverageSlice {
  std::size_t count = 0;
  double percent = 0.0;

  bool operator==(const CoverageSlice&) const = default;
};

// Per-dimension tallies. Intersectional targets count once under each
// constituent axis, so byAxis percentages are normalized by the constituent
// total, not the assertion count. Region uses the full perceiver region
// path, with "(unspecified)" for assertions lacking one.
struct CoverageReport {
  std::map<std::string, CoverageSlice> by_axis;
  std::map<std::string, CoverageSlice> by_region;
  std::map<std::string, CoverageSlice> by_source;
  double untimed_percent = 0.0;
  double perceiver_unspecified_percent = 0.0;
  std::size_t assertion_count = 0;

  bool empty() const { return assertion_count == 0; }
};

CoverageReport coverage_report(const GraphStore& store);

// Report serialization: interchange-style JSON and aligned-column text.
nlohmann::ordered_json to_json(const std::vector<CooccurrenceRow>& rows);
nlohmann::ordered_json to_json(const TimeSeries& series);
nlohmann::ordered_json to_json(const PerceiverDiff& diff);
nlohmann::ordered_json to_json(const std::vector<ConflictRow>& rows);
nlohmann::ordered_json to_json(const std::vector<SynergyRow>& rows);
nlohmann::ordered_json to_json(const CoverageReport& report);

std::string to_text(const std::vector<CooccurrenceRow>& rows);
std::string to_text(const TimeSeries& series);
std::string to_text(const PerceiverDiff& diff);
std::string to_text(const std::vector<ConflictRow>& rows);
std::string to_text(const std::vector<SynergyRow>& rows);
std::string to_text(const CoverageReport& report);

}  // namespace stereograph::analytics

#endif  // STEREOGRAPH_ANALYTICS_HPP
