#ifndef STEREOGRAPH_CANONICAL_HPP
#define STEREOGRAPH_CANONICAL_HPP

#include <string>
#include <string_view>
#include <vector>

#include "stereograph/schema.hpp"

namespace stereograph {

// Axes validation recognizes; anything else is accepted with a warning.
const std::vector<std::string>& known_axes();
bool is_known_axis(std::string_view axis);

// ASCII case-fold + trim. Identity normalization is deliberately no more
// than this; alias tables handle surface variation explicitly.
std::string fold_and_trim(std::string_view text);
std::string trim(std::string_view text);

// Region containment paths, slash-separated: "Asia/South Asia/India".
std::vector<std::string> split_region_path(std::string_view path);
std::string join_region_path(const std::vector<std::string>& segments);

// Canonical key for a target group: constituents sorted by (axis, identity)
// and joined as "axis:identity|axis:identity". Any spelling of the same
// constituent set produces the same key.
std::string target_key(const TargetGroup& target);

// True iff the deduplicated constituent set spans more than one entry.
bool derive_intersectional(const TargetGroup& target);

// Normalizes a raw record into an assertion: folds and trims strings, sorts
// and deduplicates constituents, drops empty time intervals, and computes
// the content id. Idempotent. Throws MissingFieldError / InvalidRangeError.
StereotypeAssertion canonicalize(const RawRecord& raw);

// 64-hex SHA-256 of the canonical record, excluding id and
// source.retrievedOn, so re-ingesting the same content on a different day
// produces the same id.
std::string content_hash(const StereotypeAssertion& assertion);

// Checks every schema invariant on an already-constructed assertion.
// Invariant breaches are errors; an unknown axis is a warning. Returns an
// empty list iff the assertion is fully well-formed.
std::vector<Violation> validate(const StereotypeAssertion& assertion);

}  // namespace stereograph

#endif  // STEREOGRAPH_CANONICAL_HPP
