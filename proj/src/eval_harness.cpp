#include "stereograph/eval_harness.hpp"

#include <algorithm>
#include <cctype>
#include <istream>

#include "stereograph/canonical.hpp"
#include "stereograph/errors.hpp"

namespace stereograph::evaluation {

namespace {

// Code points treated as whitespace: ASCII space/control whitespace plus
// the common Unicode space separators.
bool is_space_codepoint(char32_t cp) {
  switch (cp) {
    case U' ': case U'\t': case U'\n': case U'\r': case U'\v': case U'\f':
    case 0x00A0: case 0x1680: case 0x2028: case 0x2029: case 0x202F:
    case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

// Minimal UTF-8 decode; malformed bytes are treated as opaque single-byte
// non-space characters so scanning never fails on odd input.
char32_t decode_utf8(std::string_view text, std::size_t pos, std::size_t& length) {
  unsigned char c = static_cast<unsigned char>(text[pos]);
  length = 1;
  if (c < 0x80) return c;
  int extra = 0;
  char32_t cp = 0;
  if ((c & 0xE0) == 0xC0) { extra = 1; cp = c & 0x1F; }
  else if ((c & 0xF0) == 0xE0) { extra = 2; cp = c & 0x0F; }
  else if ((c & 0xF8) == 0xF0) { extra = 3; cp = c & 0x07; }
  else return 0xFFFD;
  if (pos + extra >= text.size()) return 0xFFFD;
  for (int i = 1; i <= extra; ++i) {
    unsigned char cc = static_cast<unsigned char>(text[pos + i]);
    if ((cc & 0xC0) != 0x80) return 0xFFFD;
    cp = (cp << 6) | (cc & 0x3F);
  }
  length = 1 + extra;
  return cp;
}

bool is_ascii_punct(char c) {
  return std::ispunct(static_cast<unsigned char>(c)) != 0;
}

std::string normalize_token(std::string_view raw) {
  std::size_t begin = 0;
  std::size_t end = raw.size();
  while (begin < end && is_ascii_punct(raw[begin])) ++begin;
  while (end > begin && is_ascii_punct(raw[end - 1])) --end;
  std::string out(raw.substr(begin, end - begin));
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

// All start positions where `form` matches a contiguous token run.
std::vector<TokenSpan> find_occurrences(const std::vector<std::string>& tokens,
                                        const std::vector<std::string>& form) {
  std::vector<TokenSpan> spans;
  if (form.empty() || form.size() > tokens.size()) return spans;
  for (std::size_t start = 0; start + form.size() <= tokens.size(); ++start) {
    if (std::equal(form.begin(), form.end(), tokens.begin() + start)) {
      spans.push_back({start, start + form.size() - 1});
    }
  }
  return spans;
}

std::size_t span_distance(const TokenSpan& a, const TokenSpan& b) {
  if (a.end_token < b.start_token) return b.start_token - a.end_token;
  if (b.end_token < a.start_token) return a.start_token - b.end_token;
  return 0;  // overlapping spans
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t length = 1;
    char32_t cp = decode_utf8(text, pos, length);
    if (is_space_codepoint(cp)) {
      if (!current.empty()) {
        std::string token = normalize_token(current);
        if (!token.empty()) tokens.push_back(std::move(token));
        current.clear();
      }
    } else {
      current.append(text.substr(pos, length));
    }
    pos += length;
  }
  if (!current.empty()) {
    std::string token = normalize_token(current);
    if (!token.empty()) tokens.push_back(std::move(token));
  }
  return tokens;
}

std::vector<GenerationRecord> generations_from_stream(std::istream& in) {
  std::vector<GenerationRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw Error("generations line " + std::to_string(line_no) + " is not a JSON object");
    }
    GenerationRecord record;
    if (!j.contains("id") || !j["id"].is_string() || !j.contains("text") ||
        !j["text"].is_string()) {
      throw Error("generations line " + std::to_string(line_no) +
                  " must carry string fields id and text");
    }
    record.id = j["id"].get<std::string>();
    record.text = j["text"].get<std::string>();
    if (record.text.empty()) {
      throw Error("generations line " + std::to_string(line_no) + " has empty text");
    }
    if (j.contains("locale") && j["locale"].is_string()) {
      record.locale = j["locale"].get<std::string>();
    }
    if (j.contains("producedAt") && j["producedAt"].is_string()) {
      record.produced_at = j["producedAt"].get<std::string>();
    }
    out.push_back(std::move(record));
  }
  return out;
}

void AliasTable::add(std::string_view canonical, std::string_view surface) {
  std::string key = fold_and_trim(canonical);
  std::string form = fold_and_trim(surface);
  if (key.empty() || form.empty()) {
    throw InvalidRangeError("alias table", "empty canonical term or surface form");
  }
  surfaces_[key].insert(std::move(form));
}

std::vector<std::string> AliasTable::surfaces_of(std::string_view canonical) const {
  auto it = surfaces_.find(canonical);
  if (it == surfaces_.end()) return {};
  return {it->second.begin(), it->second.end()};
}

AliasTable AliasTable::from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw Error("alias table must be a JSON object");
  AliasTable table;
  for (const auto& [canonical, surfaces] : doc.items()) {
    if (!surfaces.is_array()) {
      throw Error("alias table entry \"" + canonical + "\" must map to an array");
    }
    for (const auto& s : surfaces) {
      if (!s.is_string()) {
        throw Error("alias table entry \"" + canonical + "\" has a non-string surface");
      }
      table.add(canonical, s.get<std::string>());
    }
  }
  return table;
}

Matcher build_matcher(const GraphStore& store, const std::optional<query::QueryAst>& scope,
                      const AliasTable& aliases, const query::CategoryLexicon& lexicon) {
  std::vector<const StereotypeAssertion*> in_scope =
      scope ? query::execute(*scope, store, lexicon) : store.all();

  auto forms_for = [&aliases](const std::string& canonical) {
    std::vector<std::vector<std::string>> forms;
    auto push = [&forms](std::string_view surface) {
      std::vector<std::string> tokens = tokenize(surface);
      if (tokens.empty()) return;
      if (std::find(forms.begin(), forms.end(), tokens) == forms.end()) {
        forms.push_back(std::move(tokens));
      }
    };
    push(canonical);
    for (const auto& surface : aliases.surfaces_of(canonical)) push(surface);
    return forms;
  };

  std::vector<Matcher::Pattern> patterns;
  patterns.reserve(in_scope.size());
  for (const StereotypeAssertion* a : in_scope) {
    Matcher::Pattern pattern;
    pattern.assertion_id = a->id;
    for (const auto& c : a->target.constituents) {
      for (auto& form : forms_for(c.identity)) {
        if (std::find(pattern.group_forms.begin(), pattern.group_forms.end(), form) ==
            pattern.group_forms.end()) {
          pattern.group_forms.push_back(std::move(form));
        }
      }
    }
    pattern.attribute_forms = forms_for(a->attribute.term);
    patterns.push_back(std::move(pattern));
  }
  std::sort(patterns.begin(), patterns.end(),
            [](const Matcher::Pattern& a, const Matcher::Pattern& b) {
              return a.assertion_id < b.assertion_id;
            });
  return Matcher(std::move(patterns));
}

std::vector<StereotypeHit> scan(const Matcher& matcher,
                                const std::vector<GenerationRecord>& generations,
                                std::size_t window, ScanSummary* summary) {
  if (window < 1) throw InvalidRangeError("window", "must be >= 1");
  std::vector<StereotypeHit> hits;
  ScanSummary local;
  local.generations = generations.size();

  for (const GenerationRecord& generation : generations) {
    std::vector<std::string> tokens = tokenize(generation.text);
    if (tokens.empty()) {
      ++local.unscannable;
      continue;
    }
    for (const Matcher::Pattern& pattern : matcher.patterns()) {
      std::vector<TokenSpan> group_spans;
      for (const auto& form : pattern.group_forms) {
        for (const TokenSpan& span : find_occurrences(tokens, form)) group_spans.push_back(span);
      }
      if (group_spans.empty()) continue;
      std::vector<TokenSpan> attribute_spans;
      for (const auto& form : pattern.attribute_forms) {
        for (const TokenSpan& span : find_occurrences(tokens, form)) {
          attribute_spans.push_back(span);
        }
      }
      if (attribute_spans.empty()) continue;
      for (const TokenSpan& g : group_spans) {
        for (const TokenSpan& at : attribute_spans) {
          std::size_t distance = span_distance(g, at);
          if (distance <= window) {
            hits.push_back({generation.id, pattern.assertion_id, g, at, distance});
          }
        }
      }
    }
  }

  std::sort(hits.begin(), hits.end());
  hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
  local.hits = hits.size();
  if (summary) *summary = local;
  return hits;
}

std::optional<SliceDim> slice_dim_from_string(std::string_view name) {
  if (name == "axis") return SliceDim::Axis;
  if (name == "marginalized") return SliceDim::Marginalized;
  if (name == "offensiveness") return SliceDim::Offensiveness;
  if (name == "source") return SliceDim::Source;
  if (name == "perceiverRegion") return SliceDim::PerceiverRegion;
  return std::nullopt;
}

std::string_view to_string(SliceDim dim) {
  switch (dim) {
    case SliceDim::Axis: return "axis";
    case SliceDim::Marginalized: return "marginalized";
    case SliceDim::Offensiveness: return "offensiveness";
    case SliceDim::Source: return "source";
    case SliceDim::PerceiverRegion: return "perceiverRegion";
  }
  return "axis";
}

std::map<std::string, std::size_t> summarize(const std::vector<StereotypeHit>& hits,
                                             const GraphStore& store,
                                             const std::vector<SliceDim>& group_by) {
  // Dimensions apply in a fixed order no matter how they were requested.
  std::vector<SliceDim> dims = group_by;
  std::sort(dims.begin(), dims.end());
  dims.erase(std::unique(dims.begin(), dims.end()), dims.end());

  std::map<std::string, std::size_t> counts;
  for (const StereotypeHit& hit : hits) {
    const StereotypeAssertion* a = store.find(hit.assertion_id);
    if (!a) throw DanglingAssertionError(hit.assertion_id);
    std::string key;
    for (SliceDim dim : dims) {
      if (!key.empty()) key += '|';
      switch (dim) {
        case SliceDim::Axis: {
          std::set<std::string> axes;
          for (const auto& c : a->target.constituents) axes.insert(c.axis);
          std::string joined;
          for (const auto& axis : axes) {
            if (!joined.empty()) joined += '+';
            joined += axis;
          }
          key += joined;
          break;
        }
        case SliceDim::Marginalized: key += to_string(a->target.marginalized); break;
        case SliceDim::Offensiveness:
          key += to_string(a->attribute.valence.offensiveness);
          break;
        case SliceDim::Source: key += a->source.source_id; break;
        case SliceDim::PerceiverRegion:
          key += a->perceiver.region.empty() ? "(unspecified)"
                                             : join_region_path(a->perceiver.region);
          break;
      }
    }
    ++counts[key];
  }
  return counts;
}

}  // namespace stereograph::evaluation
