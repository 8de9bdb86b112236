#include "stereograph/ingest.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

#include "stereograph/canonical.hpp"
#include "stereograph/errors.hpp"

namespace stereograph::ingest {

namespace {

constexpr std::size_t kMaxConstituents = 8;

bool is_constituent_path(std::string_view path, std::string_view leaf) {
  // target.constituents[K].axis / .identity
  constexpr std::string_view prefix = "target.constituents[";
  if (path.substr(0, prefix.size()) != prefix) return false;
  std::size_t close = path.find(']', prefix.size());
  if (close == std::string_view::npos) return false;
  std::string_view index = path.substr(prefix.size(), close - prefix.size());
  if (index.empty() || index.size() > 1 || !std::isdigit(static_cast<unsigned char>(index[0]))) {
    return false;
  }
  return path.substr(close + 1) == std::string(".") + std::string(leaf);
}

const std::vector<std::string>& scalar_mapping_paths() {
  static const std::vector<std::string> paths = {
      "target.marginalized",
      "target.demographic",
      "attribute.term",
      "attribute.valence.warmth",
      "attribute.valence.competence",
      "attribute.valence.offensiveness",
      "attribute.valence.morality",
      "attribute.modalities",
      "association.statisticalBasis",
      "association.impact",
      "association.socialSalience",
      "association.corpusSalience.value",
      "association.corpusSalience.corpusRef",
      "perceiver.socialGroup",
      "perceiver.region",
      "context.timeInterval.startYear",
      "context.timeInterval.endYear",
      "context.reference",
      "context.provenanceCategory",
      "source.license",
  };
  return paths;
}

std::size_t line_of_byte(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

// Resolves one field path to its value for a row: column cell or constant,
// then translation, then trim. Empty means "not supplied".
class RowView {
 public:
  RowView(const MappingSpec& spec, const std::map<std::string, std::string>& row)
      : spec_(spec), row_(row) {}

  std::string value_of(const std::string& path) const {
    std::string raw;
    if (auto it = spec_.column_map.find(path); it != spec_.column_map.end()) {
      auto cell = row_.find(it->second);
      if (cell == row_.end()) throw MissingColumnError(it->second);
      raw = cell->second;
    } else if (auto ct = spec_.constants.find(path); ct != spec_.constants.end()) {
      raw = ct->second;
    } else {
      return "";
    }
    return translate(path, trim(raw));
  }

  std::string translate(const std::string& path, std::string token) const {
    auto table = spec_.value_translations.find(path);
    if (table == spec_.value_translations.end()) return token;
    auto hit = table->second.find(token);
    return hit == table->second.end() ? std::move(token) : hit->second;
  }

  bool covers(const std::string& path) const {
    return spec_.column_map.count(path) > 0 || spec_.constants.count(path) > 0;
  }

 private:
  const MappingSpec& spec_;
  const std::map<std::string, std::string>& row_;
};

Ordinal parse_ordinal_token(const std::string& path, const std::string& token) {
  auto parsed = ordinal_from_string(fold_and_trim(token));
  if (!parsed) throw InvalidRangeError(path, "unrecognized ordinal token \"" + token + "\"");
  return *parsed;
}

TriState parse_tristate_token(const std::string& path, const std::string& token) {
  auto parsed = tristate_from_string(fold_and_trim(token));
  if (!parsed) throw InvalidRangeError(path, "unrecognized tri-state token \"" + token + "\"");
  return *parsed;
}

std::vector<std::string> split_list(std::string_view text, char separator) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t pos = text.find(separator, start);
    if (pos == std::string_view::npos) pos = text.size();
    std::string piece = trim(text.substr(start, pos - start));
    if (!piece.empty()) out.push_back(std::move(piece));
    start = pos + 1;
  }
  return out;
}

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream stream{std::string(text)};
  std::string word;
  while (stream >> word) out.push_back(word);
  return out;
}

}  // namespace

bool is_mapping_path(std::string_view path) {
  const auto& scalars = scalar_mapping_paths();
  if (std::find(scalars.begin(), scalars.end(), path) != scalars.end()) return true;
  return is_constituent_path(path, "axis") || is_constituent_path(path, "identity");
}

MappingSpec load_mapping_spec(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SpecParseError(line_of_byte(text, e.byte), e.what());
  }
  if (!doc.is_object()) throw SpecParseError(1, "mapping spec must be a JSON object");

  MappingSpec spec;
  if (!doc.contains("sourceId") || !doc["sourceId"].is_string() ||
      doc["sourceId"].get<std::string>().empty()) {
    throw SpecParseError(1, "sourceId must be a non-empty string");
  }
  spec.source_id = doc["sourceId"].get<std::string>();

  auto read_string_map = [&](const char* key, std::map<std::string, std::string>& out) {
    if (!doc.contains(key)) return;
    if (!doc[key].is_object()) throw SpecParseError(1, std::string(key) + " must be an object");
    for (const auto& [path, value] : doc[key].items()) {
      if (!value.is_string()) {
        throw SpecParseError(1, std::string(key) + "." + path + " must map to a string");
      }
      if (!is_mapping_path(path)) {
        throw SpecParseError(1, "unrecognized field path in " + std::string(key) + ": " + path);
      }
      out[path] = value.get<std::string>();
    }
  };
  read_string_map("columnMap", spec.column_map);
  read_string_map("constants", spec.constants);

  if (doc.contains("valueTranslations")) {
    if (!doc["valueTranslations"].is_object()) {
      throw SpecParseError(1, "valueTranslations must be an object");
    }
    for (const auto& [path, table] : doc["valueTranslations"].items()) {
      if (!is_mapping_path(path)) {
        throw SpecParseError(1, "unrecognized field path in valueTranslations: " + path);
      }
      if (!table.is_object()) {
        throw SpecParseError(1, "valueTranslations." + path + " must be an object");
      }
      for (const auto& [token, replacement] : table.items()) {
        if (!replacement.is_string()) {
          throw SpecParseError(1, "valueTranslations." + path + " values must be strings");
        }
        spec.value_translations[path][token] = replacement.get<std::string>();
      }
    }
  }

  // Every required canonical field must be covered. context.reference
  // defaults to the source id when the resource has no reference column.
  auto covered = [&spec](const std::string& path) {
    return spec.column_map.count(path) > 0 || spec.constants.count(path) > 0;
  };
  std::vector<std::string> missing;
  if (!covered("target.constituents[0].identity")) {
    missing.push_back("target.constituents[0].identity");
  }
  if (!covered("target.constituents[0].axis")) missing.push_back("target.constituents[0].axis");
  if (!covered("attribute.term")) missing.push_back("attribute.term");
  if (!missing.empty()) throw SpecIncompleteError(std::move(missing));
  if (!covered("context.reference")) spec.constants["context.reference"] = spec.source_id;

  return spec;
}

StereotypeAssertion apply_mapping(const MappingSpec& spec,
                                  const std::map<std::string, std::string>& row,
                                  const std::string& locator, const std::string& retrieved_on) {
  RowView view(spec, row);
  RawRecord raw;

  for (std::size_t k = 0; k < kMaxConstituents; ++k) {
    const std::string base = "target.constituents[" + std::to_string(k) + "]";
    if (!view.covers(base + ".identity") && !view.covers(base + ".axis")) continue;
    std::string identity = view.value_of(base + ".identity");
    std::string axis_cell = view.value_of(base + ".axis");
    if (identity.empty() && axis_cell.empty()) continue;

    std::vector<std::string> axes = split_list(axis_cell, ',');
    if (axes.size() > 1) {
      // Zip the identity's words against the axis list.
      for (auto& axis : axes) axis = view.translate(base + ".axis", trim(axis));
      std::vector<std::string> words = split_words(identity);
      if (words.size() != axes.size()) {
        throw InvalidRangeError(base, "identity \"" + identity + "\" has " +
                                          std::to_string(words.size()) + " words for " +
                                          std::to_string(axes.size()) + " axes");
      }
      for (std::size_t i = 0; i < axes.size(); ++i) {
        raw.target.constituents.push_back({axes[i], words[i]});
      }
    } else {
      raw.target.constituents.push_back({axis_cell, identity});
    }
  }

  if (std::string v = view.value_of("target.marginalized"); !v.empty()) {
    raw.target.marginalized = parse_tristate_token("target.marginalized", v);
  }
  if (std::string v = view.value_of("target.demographic"); !v.empty()) {
    raw.target.demographic = parse_tristate_token("target.demographic", v);
  }

  raw.attribute.term = view.value_of("attribute.term");
  if (std::string v = view.value_of("attribute.valence.warmth"); !v.empty()) {
    raw.attribute.valence.warmth = parse_ordinal_token("attribute.valence.warmth", v);
  }
  if (std::string v = view.value_of("attribute.valence.competence"); !v.empty()) {
    raw.attribute.valence.competence = parse_ordinal_token("attribute.valence.competence", v);
  }
  if (std::string v = view.value_of("attribute.valence.offensiveness"); !v.empty()) {
    raw.attribute.valence.offensiveness =
        parse_ordinal_token("attribute.valence.offensiveness", v);
  }
  if (std::string v = view.value_of("attribute.valence.morality"); !v.empty()) {
    raw.attribute.valence.morality = parse_ordinal_token("attribute.valence.morality", v);
  }
  if (std::string v = view.value_of("attribute.modalities"); !v.empty()) {
    for (const auto& token : split_list(v, ',')) {
      auto modality = modality_from_string(fold_and_trim(token));
      if (!modality) {
        throw InvalidRangeError("attribute.modalities", "unrecognized modality \"" + token + "\"");
      }
      raw.attribute.modalities.insert(*modality);
    }
  }

  if (std::string v = view.value_of("association.statisticalBasis"); !v.empty()) {
    auto basis = statistical_basis_from_string(fold_and_trim(v));
    if (!basis) {
      throw InvalidRangeError("association.statisticalBasis", "unrecognized token \"" + v + "\"");
    }
    raw.association.statistical_basis = *basis;
  }
  if (std::string v = view.value_of("association.impact"); !v.empty()) {
    raw.association.impact = parse_ordinal_token("association.impact", v);
  }
  if (std::string v = view.value_of("association.socialSalience"); !v.empty()) {
    try {
      raw.association.social_salience = std::stod(v);
    } catch (const std::exception&) {
      throw InvalidRangeError("association.socialSalience", "not a number: \"" + v + "\"");
    }
  }
  std::string cs_value = view.value_of("association.corpusSalience.value");
  std::string cs_ref = view.value_of("association.corpusSalience.corpusRef");
  if (!cs_value.empty()) {
    CorpusSalience cs;
    try {
      cs.value = std::stod(cs_value);
    } catch (const std::exception&) {
      throw InvalidRangeError("association.corpusSalience.value",
                              "not a number: \"" + cs_value + "\"");
    }
    cs.corpus_ref = cs_ref.empty() ? spec.source_id : cs_ref;
    raw.association.corpus_salience = std::move(cs);
  }

  if (std::string v = view.value_of("perceiver.socialGroup"); !v.empty()) {
    raw.perceiver.social_group = v;
  }
  if (std::string v = view.value_of("perceiver.region"); !v.empty()) {
    raw.perceiver.region = split_region_path(v);
  }

  TimeInterval interval;
  if (std::string v = view.value_of("context.timeInterval.startYear"); !v.empty()) {
    try {
      interval.start_year = std::stoi(v);
    } catch (const std::exception&) {
      throw InvalidRangeError("context.timeInterval.startYear", "not a year: \"" + v + "\"");
    }
  }
  if (std::string v = view.value_of("context.timeInterval.endYear"); !v.empty()) {
    try {
      interval.end_year = std::stoi(v);
    } catch (const std::exception&) {
      throw InvalidRangeError("context.timeInterval.endYear", "not a year: \"" + v + "\"");
    }
  }
  if (interval.start_year || interval.end_year) raw.context.time_interval = interval;

  raw.context.reference = view.value_of("context.reference");
  if (std::string v = view.value_of("context.provenanceCategory"); !v.empty()) {
    auto category = provenance_from_string(fold_and_trim(v));
    if (!category) {
      throw InvalidRangeError("context.provenanceCategory", "unrecognized token \"" + v + "\"");
    }
    raw.context.provenance_category = *category;
  }

  raw.source.source_id = spec.source_id;
  raw.source.record_locator = locator;
  raw.source.retrieved_on = retrieved_on;
  if (std::string v = view.value_of("source.license"); !v.empty()) raw.source.license = v;

  return canonicalize(raw);
}

TabularFile read_tabular(std::istream& in, char delimiter) {
  auto split_line = [delimiter](const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      char c = line[i];
      if (delimiter == ',' && c == '"') {
        if (quoted && i + 1 < line.size() && line[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = !quoted;
        }
        continue;
      }
      if (c == delimiter && !quoted) {
        cells.push_back(std::move(cell));
        cell.clear();
        continue;
      }
      cell += c;
    }
    cells.push_back(std::move(cell));
    return cells;
  };

  TabularFile file;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      for (auto& column : split_line(line)) file.columns.push_back(trim(column));
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string> cells = split_line(line);
    TabularRow row;
    row.locator = std::to_string(line_no);
    for (std::size_t i = 0; i < file.columns.size(); ++i) {
      row.cells[file.columns[i]] = i < cells.size() ? cells[i] : "";
    }
    file.rows.push_back(std::move(row));
  }
  return file;
}

char delimiter_for_path(std::string_view path) {
  return path.size() >= 4 && path.substr(path.size() - 4) == ".csv" ? ',' : '\t';
}

IngestReport ingest_stream(const MappingSpec& spec, const TabularFile& file, GraphStore& sink,
                           const std::string& retrieved_on) {
  IngestReport report;
  for (const TabularRow& row : file.rows) {
    try {
      StereotypeAssertion assertion = apply_mapping(spec, row.cells, row.locator, retrieved_on);
      if (sink.upsert(assertion) == UpsertResult::Duplicate) ++report.deduped_ids;
      ++report.accepted;
    } catch (const MissingColumnError& e) {
      ++report.rejected;
      report.violations.emplace_back(row.locator, Violation{Severity::Error, e.column, e.what()});
    } catch (const MissingFieldError& e) {
      ++report.rejected;
      report.violations.emplace_back(row.locator, Violation{Severity::Error, e.field, e.what()});
    } catch (const InvalidRangeError& e) {
      ++report.rejected;
      report.violations.emplace_back(row.locator, Violation{Severity::Error, e.field, e.what()});
    } catch (const ValidationFailedError& e) {
      ++report.rejected;
      Violation first = e.violations.empty() ? Violation{Severity::Error, "", "validation failed"}
                                             : e.violations.front();
      report.violations.emplace_back(row.locator, std::move(first));
    }
  }
  return report;
}

nlohmann::ordered_json report_to_json(const IngestReport& report) {
  nlohmann::ordered_json j;
  j["accepted"] = report.accepted;
  j["rejected"] = report.rejected;
  j["dedupedIds"] = report.deduped_ids;
  nlohmann::ordered_json violations = nlohmann::ordered_json::array();
  for (const auto& [locator, violation] : report.violations) {
    violations.push_back({{"recordLocator", locator},
                          {"severity", violation.severity == Severity::Error ? "error" : "warning"},
                          {"field", violation.field},
                          {"message", violation.message}});
  }
  j["violations"] = std::move(violations);
  return j;
}

}  // namespace stereograph::ingest
