#include "stereograph/analytics.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

#include "stereograph/canonical.hpp"
#include "stereograph/errors.hpp"
#include "stereograph/text_table.hpp"

namespace stereograph::analytics {

namespace {

std::pair<std::string, std::string> ordered_pair(std::string a, std::string b) {
  if (b < a) std::swap(a, b);
  return {std::move(a), std::move(b)};
}

std::map<std::string, std::vector<const StereotypeAssertion*>> group_by_target(
    const std::vector<const StereotypeAssertion*>& assertions) {
  std::map<std::string, std::vector<const StereotypeAssertion*>> out;
  for (const StereotypeAssertion* a : assertions) out[target_key(a->target)].push_back(a);
  return out;
}

}  // namespace

std::vector<CooccurrenceRow> cooccurrence(const GraphStore& store,
                                          const std::optional<query::QueryAst>& scope,
                                          const query::CategoryLexicon& lexicon) {
  std::vector<const StereotypeAssertion*> in_scope =
      scope ? query::execute(*scope, store, lexicon) : store.all();

  std::vector<CooccurrenceRow> rows;
  for (const auto& [key, assertions] : group_by_target(in_scope)) {
    std::map<std::string, std::vector<const StereotypeAssertion*>> by_term;
    for (const StereotypeAssertion* a : assertions) by_term[a->attribute.term].push_back(a);
    if (by_term.size() < 2) continue;
    for (auto first = by_term.begin(); first != by_term.end(); ++first) {
      for (auto second = std::next(first); second != by_term.end(); ++second) {
        CooccurrenceRow row;
        row.target_key = key;
        row.terms = {first->first, second->first};
        row.support_count = first->second.size() + second->second.size();
        for (const StereotypeAssertion* a : first->second) {
          row.source_ids.insert(a->source.source_id);
        }
        for (const StereotypeAssertion* a : second->second) {
          row.source_ids.insert(a->source.source_id);
        }
        rows.push_back(std::move(row));
      }
    }
  }
  std::sort(rows.begin(), rows.end(), [](const CooccurrenceRow& a, const CooccurrenceRow& b) {
    if (a.support_count != b.support_count) return a.support_count > b.support_count;
    if (a.target_key != b.target_key) return a.target_key < b.target_key;
    return a.terms < b.terms;
  });
  return rows;
}

TimeSeries temporal_series(const GraphStore& store, const std::optional<std::string>& target,
                           const std::optional<std::string>& attribute_term, int bucket_years) {
  if (bucket_years < 1) throw InvalidRangeError("bucketYears", "must be >= 1");
  if (target && store.lookup(IndexKind::ByTargetKey, *target).empty()) {
    throw UnknownTargetError(*target);
  }

  std::vector<const StereotypeAssertion*> in_scope;
  for (const StereotypeAssertion* a : store.all()) {
    if (target && target_key(a->target) != *target) continue;
    if (attribute_term && a->attribute.term != *attribute_term) continue;
    in_scope.push_back(a);
  }

  TimeSeries series;
  series.bucket_years = bucket_years;

  // Bucket grid is anchored at the earliest year present in the data.
  std::optional<int> min_year, max_year;
  std::vector<const StereotypeAssertion*> timed;
  for (const StereotypeAssertion* a : in_scope) {
    if (!a->context.time_interval) {
      ++series.untimed_count;
      continue;
    }
    timed.push_back(a);
    const TimeInterval& ti = *a->context.time_interval;
    for (const auto& year : {ti.start_year, ti.end_year}) {
      if (!year) continue;
      if (!min_year || *year < *min_year) min_year = *year;
      if (!max_year || *year > *max_year) max_year = *year;
    }
  }
  if (timed.empty() || !min_year) return series;

  for (long long start = *min_year; start <= *max_year; start += bucket_years) {
    TimeSeriesPoint point;
    point.bucket_start_year = static_cast<int>(start);
    long long bucket_end = start + bucket_years - 1;  // inclusive
    for (const StereotypeAssertion* a : timed) {
      const TimeInterval& ti = *a->context.time_interval;
      long long s = ti.start_year ? *ti.start_year : std::numeric_limits<long long>::min();
      long long e = ti.end_year ? *ti.end_year : std::numeric_limits<long long>::max();
      if (s <= bucket_end && start <= e) {
        ++point.assertion_count;
        ++point.offensiveness_histogram[a->attribute.valence.offensiveness];
      }
    }
    series.points.push_back(std::move(point));
  }
  return series;
}

PerceiverDiff perceiver_diff(const GraphStore& store, const std::string& target) {
  std::set<std::string> ids = store.lookup(IndexKind::ByTargetKey, target);
  if (ids.empty()) throw UnknownTargetError(target);

  PerceiverDiff diff;
  diff.target_key = target;
  for (const auto& id : ids) {
    const StereotypeAssertion* a = store.find(id);
    std::string group = a->perceiver.social_group ? *a->perceiver.social_group
                                                  : std::string(kUnspecifiedGroup);
    diff.per_group[group].insert(a->attribute.term);
  }
  for (auto first = diff.per_group.begin(); first != diff.per_group.end(); ++first) {
    for (auto second = std::next(first); second != diff.per_group.end(); ++second) {
      const auto& sa = first->second;
      const auto& sb = second->second;
      std::vector<std::string> inter;
      std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(),
                            std::back_inserter(inter));
      std::vector<std::string> uni;
      std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(uni));
      double jaccard = uni.empty() ? 0.0
                                   : static_cast<double>(inter.size()) /
                                         static_cast<double>(uni.size());
      diff.pairwise_jaccard[{first->first, second->first}] = jaccard;
    }
  }
  return diff;
}

void AntonymLexicon::add(const std::string& a, const std::string& b) {
  if (a == b) throw InvalidRangeError("antonym pair", "(" + a + ", " + b + ") is reflexive");
  pairs_.insert(ordered_pair(a, b));
}

bool AntonymLexicon::contains(const std::string& a, const std::string& b) const {
  if (a == b) return false;
  return pairs_.count(ordered_pair(a, b)) > 0;
}

AntonymLexicon AntonymLexicon::from_json(const nlohmann::json& doc) {
  if (!doc.is_array()) throw Error("antonym lexicon must be a JSON array of pairs");
  AntonymLexicon lexicon;
  for (const auto& pair : doc) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string()) {
      throw Error("antonym lexicon entries must be [\"term\", \"term\"] pairs");
    }
    lexicon.add(pair[0].get<std::string>(), pair[1].get<std::string>());
  }
  return lexicon;
}

std::vector<ConflictRow> conflicts(const GraphStore& store, const AntonymLexicon& lexicon) {
  std::vector<ConflictRow> rows;
  if (lexicon.pairs().empty()) return rows;
  for (const auto& [key, assertions] : group_by_target(store.all())) {
    for (std::size_t i = 0; i < assertions.size(); ++i) {
      for (std::size_t j = i + 1; j < assertions.size(); ++j) {
        const auto& a = *assertions[i];
        const auto& b = *assertions[j];
        if (!lexicon.contains(a.attribute.term, b.attribute.term)) continue;
        ConflictRow row;
        row.target_key = key;
        row.assertion_ids = ordered_pair(a.id, b.id);
        row.terms = ordered_pair(a.attribute.term, b.attribute.term);
        rows.push_back(std::move(row));
      }
    }
  }
  std::sort(rows.begin(), rows.end(), [](const ConflictRow& a, const ConflictRow& b) {
    if (a.target_key != b.target_key) return a.target_key < b.target_key;
    if (a.terms != b.terms) return a.terms < b.terms;
    return a.assertion_ids < b.assertion_ids;
  });
  return rows;
}

std::vector<SynergyRow> synergies(const GraphStore& store) {
  std::vector<SynergyRow> rows;
  for (const auto& [key, assertions] : group_by_target(store.all())) {
    for (std::size_t i = 0; i < assertions.size(); ++i) {
      for (std::size_t j = i + 1; j < assertions.size(); ++j) {
        const auto& a = *assertions[i];
        const auto& b = *assertions[j];
        bool marginalized = a.target.marginalized == TriState::True &&
                            b.target.marginalized == TriState::True;
        bool offensive = a.attribute.valence.offensiveness == Ordinal::High &&
                         b.attribute.valence.offensiveness == Ordinal::High;
        if (!marginalized || !offensive) continue;
        rows.push_back({key, ordered_pair(a.id, b.id)});
      }
    }
  }
  std::sort(rows.begin(), rows.end(), [](const SynergyRow& a, const SynergyRow& b) {
    if (a.target_key != b.target_key) return a.target_key < b.target_key;
    return a.assertion_ids < b.assertion_ids;
  });
  return rows;
}

CoverageReport coverage_report(const GraphStore& store) {
  CoverageReport report;
  std::map<std::string, std::size_t> axis_counts, region_counts, source_counts;
  std::size_t axis_total = 0;
  std::size_t untimed = 0, unspecified_perceiver = 0;

  for (const StereotypeAssertion* a : store.all()) {
    ++report.assertion_count;
    std::set<std::string> axes;
    for (const auto& c : a->target.constituents) axes.insert(c.axis);
    for (const auto& axis : axes) {
      ++axis_counts[axis];
      ++axis_total;
    }
    std::string region = a->perceiver.region.empty() ? "(unspecified)"
                                                     : join_region_path(a->perceiver.region);
    ++region_counts[region];
    ++source_counts[a->source.source_id];
    if (!a->context.time_interval) ++untimed;
    if (!a->perceiver.social_group) ++unspecified_perceiver;
  }
  if (report.assertion_count == 0) return report;

  auto fill = [](const std::map<std::string, std::size_t>& counts, std::size_t total,
                 std::map<std::string, CoverageSlice>& out) {
    for (const auto& [key, count] : counts) {
      out[key] = {count, 100.0 * static_cast<double>(count) / static_cast<double>(total)};
    }
  };
  fill(axis_counts, axis_total, report.by_axis);
  fill(region_counts, report.assertion_count, report.by_region);
  fill(source_counts, report.assertion_count, report.by_source);
  report.untimed_percent =
      100.0 * static_cast<double>(untimed) / static_cast<double>(report.assertion_count);
  report.perceiver_unspecified_percent =
      100.0 * static_cast<double>(unspecified_perceiver) /
      static_cast<double>(report.assertion_count);
  return report;
}

// ---- serialization ----

namespace {

using Json = nlohmann::ordered_json;

std::string fixed2(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.2f", value);
  return buffer;
}

std::string short_id(const std::string& id) {
  return id.substr(0, 12);
}

Json histogram_to_json(const std::map<Ordinal, std::size_t>& histogram) {
  Json out = Json::object();
  // stable order: low, medium, high, unspecified
  for (Ordinal o : {Ordinal::Low, Ordinal::Medium, Ordinal::High, Ordinal::Unspecified}) {
    auto it = histogram.find(o);
    if (it != histogram.end()) out[std::string(to_string(o))] = it->second;
  }
  return out;
}

}  // namespace

Json to_json(const std::vector<CooccurrenceRow>& rows) {
  Json out = Json::array();
  for (const auto& row : rows) {
    out.push_back({{"targetKey", row.target_key},
                   {"terms", {row.terms.first, row.terms.second}},
                   {"supportCount", row.support_count},
                   {"sourceIds", row.source_ids}});
  }
  return out;
}

Json to_json(const TimeSeries& series) {
  Json points = Json::array();
  for (const auto& point : series.points) {
    points.push_back({{"bucketStartYear", point.bucket_start_year},
                      {"assertionCount", point.assertion_count},
                      {"offensivenessHistogram", histogram_to_json(point.offensiveness_histogram)}});
  }
  return Json{{"bucketYears", series.bucket_years},
              {"untimedCount", series.untimed_count},
              {"points", std::move(points)}};
}

Json to_json(const PerceiverDiff& diff) {
  Json per_group = Json::object();
  for (const auto& [group, terms] : diff.per_group) per_group[group] = terms;
  Json jaccard = Json::array();
  for (const auto& [pair, value] : diff.pairwise_jaccard) {
    jaccard.push_back({{"groups", {pair.first, pair.second}}, {"jaccard", value}});
  }
  return Json{{"targetKey", diff.target_key},
              {"perGroup", std::move(per_group)},
              {"pairwiseJaccard", std::move(jaccard)}};
}

Json to_json(const std::vector<ConflictRow>& rows) {
  Json out = Json::array();
  for (const auto& row : rows) {
    out.push_back({{"targetKey", row.target_key},
                   {"assertionIds", {row.assertion_ids.first, row.assertion_ids.second}},
                   {"terms", {row.terms.first, row.terms.second}}});
  }
  return out;
}

Json to_json(const std::vector<SynergyRow>& rows) {
  Json out = Json::array();
  for (const auto& row : rows) {
    out.push_back({{"targetKey", row.target_key},
                   {"assertionIds", {row.assertion_ids.first, row.assertion_ids.second}}});
  }
  return out;
}

Json to_json(const CoverageReport& report) {
  auto dimension = [](const std::map<std::string, CoverageSlice>& slices) {
    Json out = Json::object();
    for (const auto& [key, slice] : slices) {
      out[key] = {{"count", slice.count}, {"percent", slice.percent}};
    }
    return out;
  };
  return Json{{"assertionCount", report.assertion_count},
              {"byAxis", dimension(report.by_axis)},
              {"byRegion", dimension(report.by_region)},
              {"bySource", dimension(report.by_source)},
              {"untimedPercent", report.untimed_percent},
              {"perceiverUnspecifiedPercent", report.perceiver_unspecified_percent}};
}

std::string to_text(const std::vector<CooccurrenceRow>& rows) {
  TextTable table({"target", "termA", "termB", "support", "sources"});
  for (const auto& row : rows) {
    std::string sources;
    for (const auto& s : row.source_ids) {
      if (!sources.empty()) sources += ',';
      sources += s;
    }
    table.add_row({row.target_key, row.terms.first, row.terms.second,
                   std::to_string(row.support_count), sources});
  }
  return table.render();
}

std::string to_text(const TimeSeries& series) {
  TextTable table({"bucketStart", "count", "low", "medium", "high", "unspecified"});
  for (const auto& point : series.points) {
    auto cell = [&point](Ordinal o) {
      auto it = point.offensiveness_histogram.find(o);
      return std::to_string(it == point.offensiveness_histogram.end() ? 0 : it->second);
    };
    table.add_row({std::to_string(point.bucket_start_year),
                   std::to_string(point.assertion_count), cell(Ordinal::Low),
                   cell(Ordinal::Medium), cell(Ordinal::High), cell(Ordinal::Unspecified)});
  }
  return table.render() + "untimed  " + std::to_string(series.untimed_count) + "\n";
}

std::string to_text(const PerceiverDiff& diff) {
  TextTable groups({"perceiverGroup", "terms"});
  for (const auto& [group, terms] : diff.per_group) {
    std::string joined;
    for (const auto& t : terms) {
      if (!joined.empty()) joined += ',';
      joined += t;
    }
    groups.add_row({group, joined});
  }
  std::string out = "target  " + diff.target_key + "\n" + groups.render();
  if (!diff.pairwise_jaccard.empty()) {
    TextTable jaccard({"groupA", "groupB", "jaccard"});
    for (const auto& [pair, value] : diff.pairwise_jaccard) {
      jaccard.add_row({pair.first, pair.second, fixed2(value)});
    }
    out += jaccard.render();
  }
  return out;
}

std::string to_text(const std::vector<ConflictRow>& rows) {
  TextTable table({"target", "termA", "termB", "assertionA", "assertionB"});
  for (const auto& row : rows) {
    table.add_row({row.target_key, row.terms.first, row.terms.second,
                   short_id(row.assertion_ids.first), short_id(row.assertion_ids.second)});
  }
  return table.render();
}

std::string to_text(const std::vector<SynergyRow>& rows) {
  TextTable table({"target", "assertionA", "assertionB"});
  for (const auto& row : rows) {
    table.add_row({row.target_key, short_id(row.assertion_ids.first),
                   short_id(row.assertion_ids.second)});
  }
  return table.render();
}

std::string to_text(const CoverageReport& report) {
  TextTable table({"dimension", "key", "count", "percent"});
  auto add = [&table](const char* dimension, const std::map<std::string, CoverageSlice>& slices) {
    for (const auto& [key, slice] : slices) {
      table.add_row({dimension, key, std::to_string(slice.count), fixed2(slice.percent)});
    }
  };
  add("axis", report.by_axis);
  add("region", report.by_region);
  add("source", report.by_source);
  std::string out = table.render();
  out += "untimedPercent  " + fixed2(report.untimed_percent) + "\n";
  out += "perceiverUnspecifiedPercent  " + fixed2(report.perceiver_unspecified_percent) + "\n";
  return out;
}

}  // namespace stereograph::analytics
