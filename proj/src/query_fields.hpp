#ifndef STEREOGRAPH_SRC_QUERY_FIELDS_HPP
#define STEREOGRAPH_SRC_QUERY_FIELDS_HPP

#include <optional>
#include <string>
#include <string_view>

namespace stereograph::query {

// Internal registry of queryable fields. Each entry couples a concrete
// accessor with a typing class the parser enforces.
enum class FieldId {
  Id,
  TargetAxis,
  TargetIdentity,
  TargetKey,
  TargetMarginalized,
  TargetDemographic,
  TargetIntersectional,
  AttributeTerm,
  Warmth,
  Competence,
  Offensiveness,
  Morality,
  Modality,
  StatisticalBasis,
  Impact,
  SocialGroup,
  Region,
  Reference,
  Provenance,
  Time,
  SourceId,
};

enum class FieldClass {
  StringExact,   // =/!= against a string literal
  MultiString,   // =/!= existential over a value set
  TriBool,       // =/!= against true/false; unknown matches neither
  DerivedBool,   // target.intersectional; normalized to IsTrue at parse
  OrdinalField,  // =/!=/>=/<= against an ordinal literal
  RegionPath,    // WITHIN, or =/!= against the full path string
  TimeField,     // OVERLAPS only
};

struct FieldInfo {
  FieldId id;
  FieldClass cls;
  std::string_view canonical_path;
};

// Resolves a user-written path (including accepted alias spellings like
// attribute.valence.offensiveness) to its field entry, or nullopt.
std::optional<FieldInfo> resolve_field(std::string_view path);

}  // namespace stereograph::query

#endif  // STEREOGRAPH_SRC_QUERY_FIELDS_HPP
