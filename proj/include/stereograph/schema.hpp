#ifndef STEREOGRAPH_SCHEMA_HPP
#define STEREOGRAPH_SCHEMA_HPP

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "stereograph/ordinal.hpp"

namespace stereograph {

// One (axis, identity) constituent of a target group, e.g. (caste, "dalits").
// Canonical form is case-folded and whitespace-trimmed.
struct AxisIdentity {
  std::string axis;
  std::string identity;

  auto operator<=>(const AxisIdentity&) const = default;
};

// The group a stereotype is about. Intersectionality is never stored; it is
// derived from the constituent count. marginalized/demographic are
// per-assertion annotations and are never inferred from the axis.
struct TargetGroup {
  std::vector<AxisIdentity> constituents;  // canonical: sorted by (axis, identity), deduplicated
  TriState marginalized = TriState::Unknown;
  TriState demographic = TriState::Unknown;

  bool operator==(const TargetGroup&) const = default;
};

// Qualitative ratings of an attribute term. All four are always present;
// a rating the source does not supply is Unspecified.
struct Valence {
  Ordinal warmth = Ordinal::Unspecified;
  Ordinal competence = Ordinal::Unspecified;
  Ordinal offensiveness = Ordinal::Unspecified;
  Ordinal morality = Ordinal::Unspecified;

  bool operator==(const Valence&) const = default;
};

struct Attribute {
  std::string term;  // canonical: case-folded, trimmed, non-empty
  Valence valence;
  std::set<Modality> modalities;  // empty set means unspecified

  bool operator==(const Attribute&) const = default;
};

struct CorpusSalience {
  double value = 0.0;  // in [0,1]
  std::string corpus_ref;

  bool operator==(const CorpusSalience&) const = default;
};

// Metadata about the association itself, as opposed to the attribute in
// isolation: the same attribute may carry a different impact per target.
struct AssociationMeta {
  StatisticalBasis statistical_basis = StatisticalBasis::Unknown;
  Ordinal impact = Ordinal::Unspecified;
  std::optional<double> social_salience;       // in [0,1] when present
  std::optional<CorpusSalience> corpus_salience;

  bool operator==(const AssociationMeta&) const = default;
};

// The group holding the belief. region is a containment path from the
// broadest area to the narrowest, e.g. {"Asia", "South Asia", "India"};
// single-segment paths are legal. Empty vector means no region recorded.
struct Perceiver {
  std::optional<std::string> social_group;
  std::vector<std::string> region;

  bool operator==(const Perceiver&) const = default;
};

struct TimeInterval {
  std::optional<int> start_year;
  std::optional<int> end_year;  // start_year <= end_year when both present

  bool operator==(const TimeInterval&) const = default;
};

struct Context {
  std::optional<TimeInterval> time_interval;
  std::string reference;  // dataset/model/societal artifact; always non-empty
  ProvenanceCategory provenance_category = ProvenanceCategory::Unknown;

  bool operator==(const Context&) const = default;
};

struct SourceRecord {
  std::string source_id;
  std::string record_locator;
  std::string retrieved_on;  // ISO-8601 date; excluded from the content hash
  std::optional<std::string> license;

  bool operator==(const SourceRecord&) const = default;
};

// One reified stereotype observation binding all five framework components
// to a single provenance record. id is the 64-hex content hash of the
// canonical record (retrievedOn excluded), so identical content dedupes.
struct StereotypeAssertion {
  std::string id;
  TargetGroup target;
  Attribute attribute;
  AssociationMeta association;
  Perceiver perceiver;
  Context context;
  SourceRecord source;

  bool operator==(const StereotypeAssertion&) const = default;
};

enum class Severity { Error, Warning };

struct Violation {
  Severity severity = Severity::Error;
  std::string field;
  std::string message;

  bool operator==(const Violation&) const = default;
};

// A record as assembled from some upstream source, before canonicalization.
// Same shape as an assertion but with no id and no normalization guarantees.
struct RawRecord {
  TargetGroup target;
  Attribute attribute;
  AssociationMeta association;
  Perceiver perceiver;
  Context context;
  SourceRecord source;
};

}  // namespace stereograph

#endif  // STEREOGRAPH_SCHEMA_HPP
