#ifndef STEREOGRAPH_INGEST_HPP
#define STEREOGRAPH_INGEST_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "stereograph/graph_store.hpp"
#include "stereograph/schema.hpp"

namespace stereograph::ingest {

// Declarative recipe turning one tabular resource into canonical raw
// records: canonical field paths are filled from source columns, constants
// supply fields the source lacks, and value translations map source tokens
// (e.g. "T", "-") to canonical ones. Loaded from a JSON document with keys
// sourceId, columnMap, constants, valueTranslations.
struct MappingSpec {
  std::string source_id;
  std::map<std::string, std::string> column_map;  // field path -> source column
  std::map<std::string, std::string> constants;   // field path -> literal token
  std::map<std::string, std::map<std::string, std::string>> value_translations;
};

// Throws SpecParseError on malformed documents or unrecognized field paths
// and SpecIncompleteError when a required field path (target constituents,
// attribute.term) is covered by neither columnMap nor constants.
// context.reference defaults to the sourceId when uncovered.
MappingSpec load_mapping_spec(std::string_view text);

// Field paths accepted in columnMap/constants/valueTranslations.
bool is_mapping_path(std::string_view path);

// Builds the raw record for one row and canonicalizes it. The source
// triple is (spec.sourceId, locator, retrieved_on). Throws
// MissingColumnError when the spec references a column the row lacks and
// propagates canonicalize errors.
//
// Multi-axis rows: an axis cell holding a comma-separated list of n axes
// is zipped against the identity cell's n whitespace-separated words, one
// constituent per pair ("gay men" x "SO, gender" -> (SO, gay), (gender, men)).
StereotypeAssertion apply_mapping(const MappingSpec& spec,
                                  const std::map<std::string, std::string>& row,
                                  const std::string& locator, const std::string& retrieved_on);

struct TabularRow {
  std::string locator;  // 1-based file line number as text
  std::map<std::string, std::string> cells;
};

struct TabularFile {
  std::vector<std::string> columns;
  std::vector<TabularRow> rows;
};

// TSV (no quoting) or RFC-4180-style CSV depending on the delimiter; CRLF
// tolerated. Short rows are padded with empty cells.
TabularFile read_tabular(std::istream& in, char delimiter);
char delimiter_for_path(std::string_view path);  // ".csv" -> ',', else '\t'

struct IngestReport {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t deduped_ids = 0;  // accepted rows whose id already existed
  std::vector<std::pair<std::string, Violation>> violations;  // (locator, violation)
};

// Upserts every valid row; invalid rows are recorded and never abort the
// stream. accepted + rejected equals the input row count.
IngestReport ingest_stream(const MappingSpec& spec, const TabularFile& file, GraphStore& sink,
                           const std::string& retrieved_on);

nlohmann::ordered_json report_to_json(const IngestReport& report);

}  // namespace stereograph::ingest

#endif  // STEREOGRAPH_INGEST_HPP
