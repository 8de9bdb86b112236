#include "stereograph/canonical.hpp"

#include <algorithm>
#include <cctype>

#include <openssl/evp.h>

#include "stereograph/errors.hpp"
#include "stereograph/interchange.hpp"

namespace stereograph {

const std::vector<std::string>& known_axes() {
  static const std::vector<std::string> axes = {
      "nationality", "race",       "gender",     "caste",
      "region",      "age",        "disability", "profession",
      "religion",    "sexual-orientation",       "other",
  };
  return axes;
}

bool is_known_axis(std::string_view axis) {
  const auto& axes = known_axes();
  return std::find(axes.begin(), axes.end(), axis) != axes.end();
}

std::string trim(std::string_view text) {
  auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && is_space(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && is_space(static_cast<unsigned char>(text[end - 1]))) --end;
  return std::string(text.substr(begin, end - begin));
}

std::string fold_and_trim(std::string_view text) {
  std::string out = trim(text);
  // ASCII-only fold; multi-byte UTF-8 sequences pass through untouched.
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  // Collapse internal whitespace runs to a single space.
  std::string collapsed;
  collapsed.reserve(out.size());
  bool in_space = false;
  for (char c : out) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      in_space = true;
      continue;
    }
    if (in_space && !collapsed.empty()) collapsed += ' ';
    in_space = false;
    collapsed += c;
  }
  return collapsed;
}

std::vector<std::string> split_region_path(std::string_view path) {
  std::vector<std::string> segments;
  std::size_t start = 0;
  while (start <= path.size()) {
    std::size_t slash = path.find('/', start);
    if (slash == std::string_view::npos) slash = path.size();
    std::string segment = trim(path.substr(start, slash - start));
    if (!segment.empty()) segments.push_back(std::move(segment));
    start = slash + 1;
  }
  return segments;
}

std::string join_region_path(const std::vector<std::string>& segments) {
  std::string out;
  for (const auto& s : segments) {
    if (!out.empty()) out += '/';
    out += s;
  }
  return out;
}

std::string target_key(const TargetGroup& target) {
  std::vector<AxisIdentity> sorted = target.constituents;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::string key;
  for (const auto& c : sorted) {
    if (!key.empty()) key += '|';
    key += c.axis;
    key += ':';
    key += c.identity;
  }
  return key;
}

bool derive_intersectional(const TargetGroup& target) {
  std::vector<AxisIdentity> sorted = target.constituents;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  return sorted.size() > 1;
}

namespace {

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr);
  static const char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0x0f];
  }
  return out;
}

void check_salience(const char* field, const std::optional<double>& value) {
  if (value && (*value < 0.0 || *value > 1.0)) {
    throw InvalidRangeError(field, std::to_string(*value) + " outside [0,1]");
  }
}

}  // namespace

std::string content_hash(const StereotypeAssertion& assertion) {
  Json j = assertion_to_json(assertion);
  j.erase("id");
  j["source"].erase("retrievedOn");
  return sha256_hex(j.dump());
}

StereotypeAssertion canonicalize(const RawRecord& raw) {
  StereotypeAssertion out;

  // Target constituents: fold, drop empties early so MissingField fires on
  // effectively-empty input, then sort and dedup.
  if (raw.target.constituents.empty()) throw MissingFieldError("target.constituents");
  for (const auto& c : raw.target.constituents) {
    AxisIdentity norm{fold_and_trim(c.axis), fold_and_trim(c.identity)};
    if (norm.identity.empty()) throw MissingFieldError("target.constituents.identity");
    if (norm.axis.empty()) throw MissingFieldError("target.constituents.axis");
    out.target.constituents.push_back(std::move(norm));
  }
  std::sort(out.target.constituents.begin(), out.target.constituents.end());
  out.target.constituents.erase(
      std::unique(out.target.constituents.begin(), out.target.constituents.end()),
      out.target.constituents.end());
  out.target.marginalized = raw.target.marginalized;
  out.target.demographic = raw.target.demographic;

  out.attribute.term = fold_and_trim(raw.attribute.term);
  if (out.attribute.term.empty()) throw MissingFieldError("attribute.term");
  out.attribute.valence = raw.attribute.valence;
  out.attribute.modalities = raw.attribute.modalities;

  out.association = raw.association;
  check_salience("association.socialSalience", out.association.social_salience);
  if (out.association.corpus_salience) {
    auto& cs = *out.association.corpus_salience;
    if (cs.value < 0.0 || cs.value > 1.0) {
      throw InvalidRangeError("association.corpusSalience.value",
                              std::to_string(cs.value) + " outside [0,1]");
    }
    cs.corpus_ref = trim(cs.corpus_ref);
  }

  if (raw.perceiver.social_group) {
    std::string group = trim(*raw.perceiver.social_group);
    if (!group.empty()) out.perceiver.social_group = std::move(group);
  }
  out.perceiver.region = split_region_path(join_region_path(raw.perceiver.region));

  if (raw.context.time_interval) {
    const auto& ti = *raw.context.time_interval;
    if (ti.start_year || ti.end_year) {
      if (ti.start_year && ti.end_year && *ti.start_year > *ti.end_year) {
        throw InvalidRangeError("context.timeInterval",
                                "startYear " + std::to_string(*ti.start_year) +
                                    " > endYear " + std::to_string(*ti.end_year));
      }
      out.context.time_interval = ti;
    }
  }
  out.context.reference = trim(raw.context.reference);
  if (out.context.reference.empty()) throw MissingFieldError("context.reference");
  out.context.provenance_category = raw.context.provenance_category;

  out.source.source_id = trim(raw.source.source_id);
  if (out.source.source_id.empty()) throw MissingFieldError("source.sourceId");
  out.source.record_locator = trim(raw.source.record_locator);
  if (out.source.record_locator.empty()) throw MissingFieldError("source.recordLocator");
  out.source.retrieved_on = trim(raw.source.retrieved_on);
  if (out.source.retrieved_on.empty()) throw MissingFieldError("source.retrievedOn");
  if (raw.source.license) {
    std::string license = trim(*raw.source.license);
    if (!license.empty()) out.source.license = std::move(license);
  }

  out.id = content_hash(out);
  return out;
}

std::vector<Violation> validate(const StereotypeAssertion& assertion) {
  std::vector<Violation> out;
  auto error = [&out](std::string field, std::string message) {
    out.push_back({Severity::Error, std::move(field), std::move(message)});
  };
  auto warning = [&out](std::string field, std::string message) {
    out.push_back({Severity::Warning, std::move(field), std::move(message)});
  };

  if (assertion.target.constituents.empty()) {
    error("target.constituents", "must contain at least one (axis, identity) pair");
  }
  for (std::size_t i = 0; i < assertion.target.constituents.size(); ++i) {
    const auto& c = assertion.target.constituents[i];
    const std::string field = "target.constituents[" + std::to_string(i) + "]";
    if (c.identity.empty()) error(field + ".identity", "identity is empty");
    if (c.axis.empty()) {
      error(field + ".axis", "axis is empty");
    } else if (!is_known_axis(c.axis)) {
      warning(field + ".axis", "unknown axis \"" + c.axis + "\"");
    }
    if (c.identity != fold_and_trim(c.identity)) {
      error(field + ".identity", "identity is not in canonical form");
    }
    if (i > 0 && !(assertion.target.constituents[i - 1] < c)) {
      error("target.constituents", "constituents not sorted or contain duplicates");
    }
  }

  if (assertion.attribute.term.empty()) {
    error("attribute.term", "term is empty");
  } else if (assertion.attribute.term != fold_and_trim(assertion.attribute.term)) {
    error("attribute.term", "term is not in canonical form");
  }

  if (assertion.association.social_salience) {
    double v = *assertion.association.social_salience;
    if (v < 0.0 || v > 1.0) {
      error("association.socialSalience", "out of [0,1]: " + std::to_string(v));
    }
  }
  if (assertion.association.corpus_salience) {
    const auto& cs = *assertion.association.corpus_salience;
    if (cs.value < 0.0 || cs.value > 1.0) {
      error("association.corpusSalience.value", "out of [0,1]: " + std::to_string(cs.value));
    }
    if (cs.corpus_ref.empty()) {
      error("association.corpusSalience.corpusRef", "corpusRef is empty");
    }
  }

  if (assertion.perceiver.social_group && assertion.perceiver.social_group->empty()) {
    error("perceiver.socialGroup", "present but empty");
  }
  for (const auto& segment : assertion.perceiver.region) {
    if (segment.empty()) error("perceiver.region", "region path contains an empty segment");
  }

  if (assertion.context.time_interval) {
    const auto& ti = *assertion.context.time_interval;
    if (!ti.start_year && !ti.end_year) {
      error("context.timeInterval", "present but has neither year");
    } else if (ti.start_year && ti.end_year && *ti.start_year > *ti.end_year) {
      error("context.timeInterval", "startYear > endYear");
    }
  }
  if (assertion.context.reference.empty()) error("context.reference", "reference is empty");

  if (assertion.source.source_id.empty()) error("source.sourceId", "sourceId is empty");
  if (assertion.source.record_locator.empty()) {
    error("source.recordLocator", "recordLocator is empty");
  }

  if (assertion.id.size() != 64 ||
      assertion.id.find_first_not_of("0123456789abcdef") != std::string::npos) {
    error("id", "id is not a 64-hex content hash");
  } else if (out.empty() && assertion.id != content_hash(assertion)) {
    // Only meaningful when the record is otherwise canonical.
    error("id", "id does not match the content hash of the record");
  }

  return out;
}

}  // namespace stereograph
