#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "stereograph/canonical.hpp"
#include "stereograph/errors.hpp"
#include "stereograph/ingest.hpp"
#include "support/fixtures.hpp"
#include "support/random_gen.hpp"

using namespace stereograph;
using namespace stereograph::ingest;

TEST_CASE("bundled SeeGULL spec covers target, attribute, valence, perceiver") {
  MappingSpec spec = load_mapping_spec(
      testsupport::read_file(testsupport::fixture_dir() / "specs/seegull.map"));
  CHECK(spec.source_id == "SeeGULL");
  CHECK(spec.column_map.count("target.constituents[0].identity"));
  CHECK(spec.column_map.count("target.constituents[0].axis"));
  CHECK(spec.column_map.count("attribute.term"));
  // all four canonical valence fields are covered, morality as a constant
  CHECK(spec.column_map.count("attribute.valence.warmth"));
  CHECK(spec.column_map.count("attribute.valence.competence"));
  CHECK(spec.column_map.count("attribute.valence.offensiveness"));
  CHECK(spec.constants.count("attribute.valence.morality"));
  CHECK(spec.column_map.count("perceiver.socialGroup"));
  CHECK(spec.column_map.count("perceiver.region"));
  // reference defaults to the source id when no column supplies it
  CHECK(spec.constants.at("context.reference") == "SeeGULL");
}

TEST_CASE("spec omitting attribute.term is incomplete") {
  const char* text = R"({
    "sourceId": "X",
    "columnMap": {
      "target.constituents[0].identity": "group",
      "target.constituents[0].axis": "axis"
    }
  })";
  CHECK_THROWS_AS(load_mapping_spec(text), SpecIncompleteError);
  try {
    load_mapping_spec(text);
  } catch (const SpecIncompleteError& e) {
    REQUIRE(e.missing.size() == 1);
    CHECK(e.missing[0] == "attribute.term");
  }
}

TEST_CASE("malformed documents and unknown paths are parse errors") {
  CHECK_THROWS_AS(load_mapping_spec("{ not json"), SpecParseError);
  CHECK_THROWS_AS(load_mapping_spec(R"({"sourceId": "X", "columnMap": {"bogus.path": "c"}})"),
                  SpecParseError);
  CHECK_THROWS_AS(load_mapping_spec(R"({"columnMap": {}})"), SpecParseError);
}

TEST_CASE("dash cells translate to unspecified ordinals") {
  MappingSpec spec = load_mapping_spec(
      testsupport::read_file(testsupport::fixture_dir() / "specs/stereolms.map"));
  std::map<std::string, std::string> row = {
      {"target", "dentists"}, {"axis", "profession"}, {"marg", "F"}, {"demo", "F"},
      {"attribute", "weird"}, {"warmth", "-"},        {"competence", "-"},
      {"offensiveness", "low"}};
  StereotypeAssertion a = apply_mapping(spec, row, "3", "2024-06-01");
  CHECK(a.attribute.valence.warmth == Ordinal::Unspecified);
  CHECK(a.attribute.valence.competence == Ordinal::Unspecified);
  CHECK(a.attribute.valence.offensiveness == Ordinal::Low);
  CHECK(a.attribute.valence.morality == Ordinal::Unspecified);
}

TEST_CASE("SPICE row maps to caste constituent with Indian perceiver") {
  MappingSpec spec = load_mapping_spec(
      testsupport::read_file(testsupport::fixture_dir() / "specs/spice.map"));
  std::map<std::string, std::string> row = {
      {"group", "dalits"},     {"axis", "caste"},       {"marg", "T"},
      {"demo", "T"},           {"attribute", "uneducated"}, {"warmth", "-"},
      {"competence", "low"},   {"offensiveness", "high"},   {"region", "India"}};
  StereotypeAssertion a = apply_mapping(spec, row, "4", "2024-06-01");
  REQUIRE(a.target.constituents.size() == 1);
  CHECK(a.target.constituents[0] == AxisIdentity{"caste", "dalits"});
  CHECK(a.target.marginalized == TriState::True);
  CHECK(a.perceiver.region == std::vector<std::string>{"India"});
  CHECK(a.perceiver.social_group == "Indian");
  CHECK(a.source.source_id == "SPICE");
  CHECK(a.source.record_locator == "4");
}

TEST_CASE("SBF multi-axis row zips into two constituents") {
  MappingSpec spec =
      load_mapping_spec(testsupport::read_file(testsupport::fixture_dir() / "specs/sbf.map"));
  std::map<std::string, std::string> row = {
      {"group", "gay men"}, {"axes", "SO, gender"}, {"marg", "T"},
      {"demo", "T"},        {"attribute", "disgusting"}, {"warmth", "-"},
      {"competence", "-"},  {"offensiveness", "high"}};
  StereotypeAssertion a = apply_mapping(spec, row, "2", "2024-06-01");
  REQUIRE(a.target.constituents.size() == 2);
  CHECK(a.target.constituents[0] == AxisIdentity{"gender", "men"});
  CHECK(a.target.constituents[1] == AxisIdentity{"sexual-orientation", "gay"});
  CHECK(derive_intersectional(a.target));
  CHECK(target_key(a.target) == "gender:men|sexual-orientation:gay");
}

TEST_CASE("a row missing a mapped column names the column") {
  MappingSpec spec =
      load_mapping_spec(testsupport::read_file(testsupport::fixture_dir() / "specs/sbf.map"));
  std::map<std::string, std::string> row = {{"group", "women"},  {"axes", "gender"},
                                            {"marg", "F"},       {"demo", "T"},
                                            {"warmth", "-"},     {"competence", "low"},
                                            {"offensiveness", "high"}};
  CHECK_THROWS_AS(apply_mapping(spec, row, "9", "2024-06-01"), MissingColumnError);
  try {
    apply_mapping(spec, row, "9", "2024-06-01");
  } catch (const MissingColumnError& e) {
    CHECK(e.column == "attribute");
  }
}

TEST_CASE("ingesting the five Table 1 slices yields exactly 15 assertions") {
  GraphStore store;
  std::size_t accepted = 0;
  for (const auto& [spec_file, data_file] : testsupport::fixture_spec_files()) {
    auto spec =
        load_mapping_spec(testsupport::read_file(testsupport::fixture_dir() / spec_file));
    std::ifstream data(testsupport::fixture_dir() / data_file);
    auto table = read_tabular(data, '\t');
    auto report = ingest_stream(spec, table, store, "2024-06-01");
    CHECK(report.accepted == 3);
    CHECK(report.rejected == 0);
    CHECK(report.accepted + report.rejected == table.rows.size());
    accepted += report.accepted;
  }
  CHECK(accepted == 15);
  CHECK(store.size() == 15);  // 15 distinct content ids
}

TEST_CASE("re-ingesting the same file is a dedup no-op") {
  GraphStore store;
  auto spec = load_mapping_spec(
      testsupport::read_file(testsupport::fixture_dir() / "specs/seegull.map"));
  auto load = [&] {
    std::ifstream data(testsupport::fixture_dir() / "table1_seegull.tsv");
    return read_tabular(data, '\t');
  };
  auto first = ingest_stream(spec, load(), store, "2024-06-01");
  CHECK(first.accepted == 3);
  CHECK(first.deduped_ids == 0);
  CHECK(store.size() == 3);

  // Different retrieval date on the second pass: ids must still collide.
  auto second = ingest_stream(spec, load(), store, "2024-07-15");
  CHECK(second.accepted == 3);
  CHECK(second.deduped_ids == 3);
  CHECK(store.size() == 3);
}

TEST_CASE("a corrupted row is rejected with its locator, the rest ingests") {
  auto spec = load_mapping_spec(
      testsupport::read_file(testsupport::fixture_dir() / "specs/spice.map"));
  std::ifstream data(testsupport::fixture_dir() / "table1_spice.tsv");
  auto table = read_tabular(data, '\t');
  REQUIRE(table.rows.size() == 3);
  table.rows[1].cells["group"] = "";  // blank the dalits group cell

  GraphStore store;
  auto report = ingest_stream(spec, table, store, "2024-06-01");
  CHECK(report.accepted == 2);
  CHECK(report.rejected == 1);
  CHECK(store.size() == 2);
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].first == table.rows[1].locator);
  CHECK(report.violations[0].second.severity == Severity::Error);
}

TEST_CASE("ingest is order independent") {
  auto spec = load_mapping_spec(
      testsupport::read_file(testsupport::fixture_dir() / "specs/crowspairs.map"));
  std::ifstream data(testsupport::fixture_dir() / "table1_crowspairs.tsv");
  auto table = read_tabular(data, '\t');

  GraphStore forward;
  ingest_stream(spec, table, forward, "2024-06-01");

  std::reverse(table.rows.begin(), table.rows.end());
  GraphStore reversed;
  ingest_stream(spec, table, reversed, "2024-06-01");

  CHECK(forward.save().to_bytes() == reversed.save().to_bytes());
}

TEST_CASE("fixture fidelity: the store reproduces every Table 1 cell") {
  GraphStore store = testsupport::load_fixture_store();
  auto truth = testsupport::read_table1_truth();
  REQUIRE(truth.size() == 15);
  REQUIRE(store.size() == 15);

  std::size_t marginalized_true = 0, intersectional_true = 0;
  for (const auto& row : truth) {
    auto expected = row.expected_constituents();
    TargetGroup target;
    target.constituents = expected;
    auto ids = store.lookup(IndexKind::ByTargetKey, target_key(target));
    REQUIRE_MESSAGE(ids.size() == 1, "expected one assertion for ", row.group);
    const StereotypeAssertion* a = store.find(*ids.begin());
    REQUIRE(a != nullptr);

    CHECK(a->target.constituents == expected);
    CHECK(derive_intersectional(a->target) == row.intersectional);
    CHECK(a->target.marginalized == (row.marginalized ? TriState::True : TriState::False));
    CHECK(a->target.demographic == (row.demographic ? TriState::True : TriState::False));
    CHECK(a->attribute.term == row.attribute);
    auto expect_ordinal = [](const std::string& token) {
      return token == "-" ? Ordinal::Unspecified : *ordinal_from_string(token);
    };
    CHECK(a->attribute.valence.warmth == expect_ordinal(row.warmth));
    CHECK(a->attribute.valence.competence == expect_ordinal(row.competence));
    CHECK(a->attribute.valence.offensiveness == expect_ordinal(row.offensiveness));
    CHECK(a->attribute.valence.morality == Ordinal::Unspecified);
    if (row.social_group == "-") {
      CHECK_FALSE(a->perceiver.social_group.has_value());
    } else {
      CHECK(a->perceiver.social_group == row.social_group);
    }
    if (row.region == "-") {
      CHECK(a->perceiver.region.empty());
    } else {
      CHECK(join_region_path(a->perceiver.region) == row.region);
    }
    CHECK(a->source.source_id == row.source);
    CHECK_FALSE(a->context.time_interval.has_value());

    marginalized_true += row.marginalized ? 1 : 0;
    intersectional_true += derive_intersectional(a->target) ? 1 : 0;
  }
  CHECK(marginalized_true == 6);
  CHECK(intersectional_true == 1);
}

TEST_CASE("property: random batches ingest order-independently") {
  testsupport::Rng rng(811);
  for (int round = 0; round < 10; ++round) {
    std::vector<StereotypeAssertion> batch;
    int n = rng.range(1, 60);
    for (int i = 0; i < n; ++i) batch.push_back(canonicalize(testsupport::random_raw(rng)));

    GraphStore in_order;
    for (const auto& a : batch) in_order.upsert(a);

    std::shuffle(batch.begin(), batch.end(), rng.engine);
    GraphStore shuffled;
    for (const auto& a : batch) shuffled.upsert(a);

    CHECK(in_order.save().to_bytes() == shuffled.save().to_bytes());
  }
}

TEST_CASE("csv reader honors quoting, tsv reader does not") {
  std::istringstream csv("a,b\n\"x, y\",2\n");
  auto file = read_tabular(csv, ',');
  REQUIRE(file.rows.size() == 1);
  CHECK(file.rows[0].cells.at("a") == "x, y");
  CHECK(file.rows[0].cells.at("b") == "2");
  CHECK(file.rows[0].locator == "2");

  std::istringstream tsv("a\tb\n\"x\ty\n");
  auto tfile = read_tabular(tsv, '\t');
  REQUIRE(tfile.rows.size() == 1);
  CHECK(tfile.rows[0].cells.at("a") == "\"x");

  CHECK(delimiter_for_path("rows.csv") == ',');
  CHECK(delimiter_for_path("rows.tsv") == '\t');
}
