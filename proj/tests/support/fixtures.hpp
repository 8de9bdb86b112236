#ifndef STEREOGRAPH_TESTS_SUPPORT_FIXTURES_HPP
#define STEREOGRAPH_TESTS_SUPPORT_FIXTURES_HPP

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "stereograph/graph_store.hpp"
#include "stereograph/ingest.hpp"

namespace testsupport {

inline std::filesystem::path fixture_dir() {
  return std::filesystem::path(STEREOGRAPH_FIXTURE_DIR);
}

inline std::filesystem::path golden_dir() {
  return std::filesystem::path(STEREOGRAPH_GOLDEN_DIR);
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "cannot open ", path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline constexpr const char* kFixtureAsOf = "2024-06-01";

// (mapping spec file, slice file) pairs for the five bundled resources.
inline std::vector<std::pair<std::string, std::string>> fixture_spec_files() {
  return {
      {"specs/seegull.map", "table1_seegull.tsv"},
      {"specs/stereolms.map", "table1_stereolms.tsv"},
      {"specs/spice.map", "table1_spice.tsv"},
      {"specs/crowspairs.map", "table1_crowspairs.tsv"},
      {"specs/sbf.map", "table1_sbf.tsv"},
  };
}

// Ingests all five Table 1 slices through their mapping specs.
inline stereograph::GraphStore load_fixture_store(const std::string& as_of = kFixtureAsOf) {
  stereograph::GraphStore store;
  for (const auto& [spec_file, data_file] : fixture_spec_files()) {
    auto spec = stereograph::ingest::load_mapping_spec(read_file(fixture_dir() / spec_file));
    std::ifstream data(fixture_dir() / data_file);
    REQUIRE(data.good());
    auto table = stereograph::ingest::read_tabular(data, '\t');
    auto report = stereograph::ingest::ingest_stream(spec, table, store, as_of);
    REQUIRE(report.rejected == 0);
  }
  return store;
}

// One row of the verbatim Table 1 transcription (fixtures/table1.tsv). The
// fixture file, not memory, is ground truth; this reader is deliberately
// independent of the ingest module.
struct Table1Row {
  std::string source;
  std::string group;
  std::string axes;  // raw cell, may be a comma-separated list
  bool intersectional = false;
  bool marginalized = false;
  bool demographic = false;
  std::string attribute;
  std::string warmth;         // "-" or ordinal token
  std::string competence;
  std::string offensiveness;
  std::string social_group;   // "-" means absent
  std::string region;         // "-" means absent

  // Expected canonical constituents under the documented multi-axis rule:
  // a comma-separated axis list zips against the identity's words, with
  // "SO" expanding to "sexual-orientation".
  std::vector<stereograph::AxisIdentity> expected_constituents() const {
    auto fold = [](std::string s) {
      for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      return s;
    };
    std::vector<std::string> axis_list;
    {
      std::stringstream ss(axes);
      std::string piece;
      while (std::getline(ss, piece, ',')) {
        while (!piece.empty() && piece.front() == ' ') piece.erase(piece.begin());
        while (!piece.empty() && piece.back() == ' ') piece.pop_back();
        if (piece == "SO") piece = "sexual-orientation";
        axis_list.push_back(fold(piece));
      }
    }
    std::vector<stereograph::AxisIdentity> out;
    if (axis_list.size() <= 1) {
      out.push_back({axis_list.empty() ? "" : axis_list[0], fold(group)});
    } else {
      std::stringstream ss(group);
      std::string word;
      std::vector<std::string> words;
      while (ss >> word) words.push_back(fold(word));
      REQUIRE(words.size() == axis_list.size());
      for (std::size_t i = 0; i < words.size(); ++i) out.push_back({axis_list[i], words[i]});
    }
    std::sort(out.begin(), out.end());
    return out;
  }
};

inline std::vector<Table1Row> read_table1_truth() {
  std::ifstream in(fixture_dir() / "table1.tsv");
  REQUIRE(in.good());
  std::vector<Table1Row> rows;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      header = false;
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, '\t')) cells.push_back(cell);
    REQUIRE(cells.size() == 12);
    Table1Row row;
    row.source = cells[0];
    row.group = cells[1];
    row.axes = cells[2];
    row.intersectional = cells[3] == "T";
    row.marginalized = cells[4] == "T";
    row.demographic = cells[5] == "T";
    row.attribute = cells[6];
    row.warmth = cells[7];
    row.competence = cells[8];
    row.offensiveness = cells[9];
    row.social_group = cells[10];
    row.region = cells[11];
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace testsupport

#endif  // STEREOGRAPH_TESTS_SUPPORT_FIXTURES_HPP
