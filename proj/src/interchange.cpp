#include "stereograph/interchange.hpp"

#include "stereograph/canonical.hpp"
#include "stereograph/errors.hpp"

namespace stereograph {

namespace {

const Json& require_key(const Json& obj, const char* key, const char* where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw Error(std::string("interchange record missing ") + where + "." + key);
  }
  return *it;
}

std::string require_string(const Json& obj, const char* key, const char* where) {
  const Json& v = require_key(obj, key, where);
  if (!v.is_string()) {
    throw Error(std::string("interchange field ") + where + "." + key + " must be a string");
  }
  return v.get<std::string>();
}

template <typename Enum>
Enum parse_enum(const Json& obj, const char* key, const char* where,
                std::optional<Enum> (*parser)(std::string_view)) {
  std::string token = require_string(obj, key, where);
  auto parsed = parser(token);
  if (!parsed) {
    throw Error(std::string("interchange field ") + where + "." + key +
                " has unrecognized value \"" + token + "\"");
  }
  return *parsed;
}

}  // namespace

Json assertion_to_json(const StereotypeAssertion& a) {
  Json j;
  j["id"] = a.id;

  Json target;
  Json constituents = Json::array();
  for (const auto& c : a.target.constituents) {
    constituents.push_back(Json{{"axis", c.axis}, {"identity", c.identity}});
  }
  target["constituents"] = std::move(constituents);
  target["marginalized"] = std::string(to_string(a.target.marginalized));
  target["demographic"] = std::string(to_string(a.target.demographic));
  j["target"] = std::move(target);

  Json attribute;
  attribute["term"] = a.attribute.term;
  Json valence;
  valence["warmth"] = std::string(to_string(a.attribute.valence.warmth));
  valence["competence"] = std::string(to_string(a.attribute.valence.competence));
  valence["offensiveness"] = std::string(to_string(a.attribute.valence.offensiveness));
  valence["morality"] = std::string(to_string(a.attribute.valence.morality));
  attribute["valence"] = std::move(valence);
  if (!a.attribute.modalities.empty()) {
    Json modalities = Json::array();
    for (Modality m : a.attribute.modalities) modalities.push_back(std::string(to_string(m)));
    attribute["modalities"] = std::move(modalities);
  }
  j["attribute"] = std::move(attribute);

  Json association;
  association["statisticalBasis"] = std::string(to_string(a.association.statistical_basis));
  association["impact"] = std::string(to_string(a.association.impact));
  if (a.association.social_salience) {
    association["socialSalience"] = *a.association.social_salience;
  }
  if (a.association.corpus_salience) {
    association["corpusSalience"] = Json{{"value", a.association.corpus_salience->value},
                                         {"corpusRef", a.association.corpus_salience->corpus_ref}};
  }
  j["association"] = std::move(association);

  if (a.perceiver.social_group || !a.perceiver.region.empty()) {
    Json perceiver;
    if (a.perceiver.social_group) perceiver["socialGroup"] = *a.perceiver.social_group;
    if (!a.perceiver.region.empty()) perceiver["region"] = join_region_path(a.perceiver.region);
    j["perceiver"] = std::move(perceiver);
  }

  Json context;
  if (a.context.time_interval) {
    Json interval;
    if (a.context.time_interval->start_year) {
      interval["startYear"] = *a.context.time_interval->start_year;
    }
    if (a.context.time_interval->end_year) {
      interval["endYear"] = *a.context.time_interval->end_year;
    }
    context["timeInterval"] = std::move(interval);
  }
  context["reference"] = a.context.reference;
  context["provenanceCategory"] = std::string(to_string(a.context.provenance_category));
  j["context"] = std::move(context);

  Json source;
  source["sourceId"] = a.source.source_id;
  source["recordLocator"] = a.source.record_locator;
  source["retrievedOn"] = a.source.retrieved_on;
  if (a.source.license) source["license"] = *a.source.license;
  j["source"] = std::move(source);

  return j;
}

std::string assertion_to_line(const StereotypeAssertion& assertion) {
  return assertion_to_json(assertion).dump();
}

StereotypeAssertion assertion_from_json(const Json& j) {
  if (!j.is_object()) throw Error("interchange record must be a JSON object");
  StereotypeAssertion a;
  a.id = require_string(j, "id", "");

  const Json& target = require_key(j, "target", "");
  const Json& constituents = require_key(target, "constituents", "target");
  if (!constituents.is_array() || constituents.empty()) {
    throw Error("target.constituents must be a non-empty array");
  }
  for (const Json& c : constituents) {
    a.target.constituents.push_back(
        {require_string(c, "axis", "target.constituents"),
         require_string(c, "identity", "target.constituents")});
  }
  a.target.marginalized = parse_enum(target, "marginalized", "target", tristate_from_string);
  a.target.demographic = parse_enum(target, "demographic", "target", tristate_from_string);

  const Json& attribute = require_key(j, "attribute", "");
  a.attribute.term = require_string(attribute, "term", "attribute");
  const Json& valence = require_key(attribute, "valence", "attribute");
  a.attribute.valence.warmth = parse_enum(valence, "warmth", "valence", ordinal_from_string);
  a.attribute.valence.competence =
      parse_enum(valence, "competence", "valence", ordinal_from_string);
  a.attribute.valence.offensiveness =
      parse_enum(valence, "offensiveness", "valence", ordinal_from_string);
  a.attribute.valence.morality = parse_enum(valence, "morality", "valence", ordinal_from_string);
  if (auto it = attribute.find("modalities"); it != attribute.end()) {
    if (!it->is_array()) throw Error("attribute.modalities must be an array");
    for (const Json& m : *it) {
      if (!m.is_string()) throw Error("attribute.modalities entries must be strings");
      auto modality = modality_from_string(m.get<std::string>());
      if (!modality) {
        throw Error("attribute.modalities has unrecognized value \"" + m.get<std::string>() +
                    "\"");
      }
      a.attribute.modalities.insert(*modality);
    }
  }

  const Json& association = require_key(j, "association", "");
  a.association.statistical_basis =
      parse_enum(association, "statisticalBasis", "association", statistical_basis_from_string);
  a.association.impact = parse_enum(association, "impact", "association", ordinal_from_string);
  if (auto it = association.find("socialSalience"); it != association.end()) {
    if (!it->is_number()) throw Error("association.socialSalience must be a number");
    a.association.social_salience = it->get<double>();
  }
  if (auto it = association.find("corpusSalience"); it != association.end()) {
    const Json& cs = *it;
    const Json& value = require_key(cs, "value", "association.corpusSalience");
    if (!value.is_number()) throw Error("association.corpusSalience.value must be a number");
    a.association.corpus_salience =
        CorpusSalience{value.get<double>(),
                       require_string(cs, "corpusRef", "association.corpusSalience")};
  }

  if (auto it = j.find("perceiver"); it != j.end()) {
    const Json& perceiver = *it;
    if (auto sg = perceiver.find("socialGroup"); sg != perceiver.end()) {
      if (!sg->is_string()) throw Error("perceiver.socialGroup must be a string");
      a.perceiver.social_group = sg->get<std::string>();
    }
    if (auto region = perceiver.find("region"); region != perceiver.end()) {
      if (!region->is_string()) throw Error("perceiver.region must be a path string");
      a.perceiver.region = split_region_path(region->get<std::string>());
    }
  }

  const Json& context = require_key(j, "context", "");
  if (auto it = context.find("timeInterval"); it != context.end()) {
    TimeInterval interval;
    if (auto start = it->find("startYear"); start != it->end()) {
      if (!start->is_number_integer()) throw Error("timeInterval.startYear must be an integer");
      interval.start_year = start->get<int>();
    }
    if (auto end = it->find("endYear"); end != it->end()) {
      if (!end->is_number_integer()) throw Error("timeInterval.endYear must be an integer");
      interval.end_year = end->get<int>();
    }
    if (interval.start_year || interval.end_year) a.context.time_interval = interval;
  }
  a.context.reference = require_string(context, "reference", "context");
  a.context.provenance_category =
      parse_enum(context, "provenanceCategory", "context", provenance_from_string);

  const Json& source = require_key(j, "source", "");
  a.source.source_id = require_string(source, "sourceId", "source");
  a.source.record_locator = require_string(source, "recordLocator", "source");
  a.source.retrieved_on = require_string(source, "retrievedOn", "source");
  if (auto it = source.find("license"); it != source.end()) {
    if (!it->is_string()) throw Error("source.license must be a string");
    a.source.license = it->get<std::string>();
  }

  return a;
}

StereotypeAssertion assertion_from_line(std::string_view line) {
  Json j = Json::parse(line, nullptr, false);
  if (j.is_discarded()) throw Error("line is not valid JSON");
  return assertion_from_json(j);
}

}  // namespace stereograph
