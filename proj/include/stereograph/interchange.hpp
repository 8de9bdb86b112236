#ifndef STEREOGRAPH_INTERCHANGE_HPP
#define STEREOGRAPH_INTERCHANGE_HPP

#include <string>
#include <string_view>

#include <json.hpp>

#include "stereograph/schema.hpp"

namespace stereograph {

// Canonical interchange format: one assertion per line, UTF-8 JSON with a
// fixed key order and absent optional fields omitted (never null). The same
// serialization (minus id and source.retrievedOn) feeds the content hash,
// so it must stay byte-stable.
using Json = nlohmann::ordered_json;

Json assertion_to_json(const StereotypeAssertion& assertion);

// Compact single-line form with the trailing newline left to the caller.
std::string assertion_to_line(const StereotypeAssertion& assertion);

// Parses one interchange line. Throws Error subclasses on malformed input:
// missing required keys, bad enum tokens, wrong types.
StereotypeAssertion assertion_from_json(const Json& value);
StereotypeAssertion assertion_from_line(std::string_view line);

}  // namespace stereograph

#endif  // STEREOGRAPH_INTERCHANGE_HPP
