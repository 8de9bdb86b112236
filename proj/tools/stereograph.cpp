// stereograph: command-line front end over the stereotype knowledge graph.
// Exit codes: 0 success, 1 operational error, 2 usage error. Machine output
// goes to stdout, diagnostics to stderr; --format json|table is honored by
// every subcommand that prints records.

#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "stereograph/analytics.hpp"
#include "stereograph/canonical.hpp"
#include "stereograph/errors.hpp"
#include "stereograph/eval_harness.hpp"
#include "stereograph/graph_store.hpp"
#include "stereograph/ingest.hpp"
#include "stereograph/interchange.hpp"
#include "stereograph/query.hpp"
#include "stereograph/text_table.hpp"

namespace {

using namespace stereograph;

constexpr int kExitOk = 0;
constexpr int kExitOperational = 1;
constexpr int kExitUsage = 2;

struct UsageError : Error {
  using Error::Error;
};

bool valid_iso_date(const std::string& text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return false;
  for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  return true;
}

std::string today_iso_date() {
  std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buffer[16];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%d", &utc);
  return buffer;
}

std::string read_file_or_fail(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) throw Error("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

GraphStore load_store(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) throw Error("cannot open store snapshot: " + path);
  return GraphStore::load_stream(in);
}

void save_store(const GraphStore& store, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out.good()) throw SinkUnavailableError("cannot write store snapshot: " + path);
  store.save_stream(out);
  if (!out.good()) throw SinkUnavailableError("failed while writing snapshot: " + path);
}

std::string short_id(const std::string& id) { return id.substr(0, 12); }

std::string span_text(const evaluation::TokenSpan& span) {
  return std::to_string(span.start_token) + ".." + std::to_string(span.end_token);
}

void print_assertions(const std::vector<const StereotypeAssertion*>& rows,
                      const std::string& format) {
  if (format == "json") {
    for (const auto* a : rows) std::cout << assertion_to_line(*a) << "\n";
    return;
  }
  TextTable table({"id", "target", "attribute", "offensiveness", "marginalized", "source"});
  for (const auto* a : rows) {
    table.add_row({short_id(a->id), target_key(a->target), a->attribute.term,
                   std::string(to_string(a->attribute.valence.offensiveness)),
                   std::string(to_string(a->target.marginalized)), a->source.source_id});
  }
  std::cout << table.render();
}

query::CategoryLexicon load_lexicon(const std::string& path) {
  if (path.empty()) return {};
  return query::CategoryLexicon::from_json(nlohmann::json::parse(read_file_or_fail(path)));
}

int run_ingest(const std::string& source, const std::string& mapping_path,
               const std::string& input_path, const std::string& store_path,
               const std::string& as_of, const std::string& format) {
  ingest::MappingSpec spec = ingest::load_mapping_spec(read_file_or_fail(mapping_path));
  if (!source.empty() && source != spec.source_id) {
    // --source selects the resource; it must agree with the mapping file.
    throw UsageError("--source \"" + source + "\" does not match mapping sourceId \"" +
                     spec.source_id + "\"");
  }

  std::ifstream input(input_path);
  if (!input.good()) throw Error("cannot open input file: " + input_path);
  ingest::TabularFile table =
      ingest::read_tabular(input, ingest::delimiter_for_path(input_path));

  GraphStore store = std::filesystem::exists(store_path) ? load_store(store_path) : GraphStore{};
  ingest::IngestReport report = ingest::ingest_stream(spec, table, store, as_of);
  save_store(store, store_path);

  if (format == "json") {
    std::cout << ingest::report_to_json(report).dump() << "\n";
  } else {
    std::cout << "accepted=" << report.accepted << " rejected=" << report.rejected
              << " deduped=" << report.deduped_ids << "\n";
  }
  for (const auto& [locator, violation] : report.violations) {
    std::cerr << "row " << locator << ": [" << violation.field << "] " << violation.message
              << "\n";
  }
  return kExitOk;
}

int run_validate(const std::string& store_path, const std::string& format) {
  GraphStore store = load_store(store_path);
  std::size_t errors = 0, warnings = 0;
  TextTable table({"assertion", "severity", "field", "message"});
  for (const auto* a : store.all()) {
    for (const Violation& v : validate(*a)) {
      (v.severity == Severity::Error ? errors : warnings) += 1;
      if (format == "json") {
        nlohmann::ordered_json line{
            {"assertionId", a->id},
            {"severity", v.severity == Severity::Error ? "error" : "warning"},
            {"field", v.field},
            {"message", v.message}};
        std::cout << line.dump() << "\n";
      } else {
        table.add_row({short_id(a->id), v.severity == Severity::Error ? "error" : "warning",
                       v.field, v.message});
      }
    }
  }
  if (format != "json") std::cout << table.render();
  std::cerr << "assertions=" << store.size() << " errors=" << errors
            << " warnings=" << warnings << "\n";
  return kExitOk;
}

int run_query(const std::string& text, const std::string& store_path,
              const std::string& lexicon_path, const std::string& format, bool explain) {
  query::QueryAst ast = query::parse(text);
  GraphStore store = load_store(store_path);
  query::QueryPlan plan = query::plan(ast, store);
  if (explain) std::cerr << "plan: " << plan.describe() << "\n";
  auto rows = query::execute(plan, store, load_lexicon(lexicon_path));
  print_assertions(rows, format);
  std::cerr << "rows=" << rows.size() << "\n";
  return kExitOk;
}

int run_report(const std::string& kind, const std::string& store_path,
               const std::string& target, int bucket, const std::string& antonyms_path,
               const std::string& format) {
  GraphStore store = load_store(store_path);
  const bool json = format == "json";

  if (kind == "coverage") {
    analytics::CoverageReport report = analytics::coverage_report(store);
    std::cout << (json ? analytics::to_json(report).dump() + "\n" : analytics::to_text(report));
    return kExitOk;
  }
  if (kind == "cooccur") {
    auto rows = analytics::cooccurrence(store);
    std::cout << (json ? analytics::to_json(rows).dump() + "\n" : analytics::to_text(rows));
    return kExitOk;
  }
  if (kind == "conflicts") {
    analytics::AntonymLexicon lexicon;
    if (!antonyms_path.empty()) {
      lexicon = analytics::AntonymLexicon::from_json(
          nlohmann::json::parse(read_file_or_fail(antonyms_path)));
    }
    auto rows = analytics::conflicts(store, lexicon);
    std::cout << (json ? analytics::to_json(rows).dump() + "\n" : analytics::to_text(rows));
    return kExitOk;
  }
  if (kind == "synergies") {
    auto rows = analytics::synergies(store);
    std::cout << (json ? analytics::to_json(rows).dump() + "\n" : analytics::to_text(rows));
    return kExitOk;
  }
  if (kind == "perceiver-diff") {
    if (target.empty()) throw UsageError("report perceiver-diff requires --target KEY");
    analytics::PerceiverDiff diff = analytics::perceiver_diff(store, target);
    std::cout << (json ? analytics::to_json(diff).dump() + "\n" : analytics::to_text(diff));
    return kExitOk;
  }
  if (kind == "temporal") {
    std::optional<std::string> key;
    if (!target.empty()) key = target;
    analytics::TimeSeries series = analytics::temporal_series(store, key, std::nullopt, bucket);
    std::cout << (json ? analytics::to_json(series).dump() + "\n" : analytics::to_text(series));
    return kExitOk;
  }
  throw UsageError("unknown report kind: " + kind +
                   " (expected coverage|cooccur|conflicts|synergies|perceiver-diff|temporal)");
}

int run_evaluate(const std::string& generations_path, const std::string& store_path,
                 const std::string& scope_text, const std::string& aliases_path,
                 const std::string& lexicon_path, std::size_t window,
                 const std::string& format) {
  std::optional<query::QueryAst> scope;
  if (!scope_text.empty()) scope = query::parse(scope_text);

  GraphStore store = load_store(store_path);
  evaluation::AliasTable aliases;
  if (!aliases_path.empty()) {
    aliases = evaluation::AliasTable::from_json(
        nlohmann::json::parse(read_file_or_fail(aliases_path)));
  }
  std::ifstream gen_in(generations_path);
  if (!gen_in.good()) throw Error("cannot open generations file: " + generations_path);
  auto generations = evaluation::generations_from_stream(gen_in);

  evaluation::Matcher matcher =
      evaluation::build_matcher(store, scope, aliases, load_lexicon(lexicon_path));
  evaluation::ScanSummary summary;
  auto hits = evaluation::scan(matcher, generations, window, &summary);

  if (format == "json") {
    for (const auto& hit : hits) {
      nlohmann::ordered_json line{
          {"generationId", hit.generation_id},
          {"assertionId", hit.assertion_id},
          {"groupSpan", {hit.group_span.start_token, hit.group_span.end_token}},
          {"attributeSpan", {hit.attribute_span.start_token, hit.attribute_span.end_token}},
          {"tokenDistance", hit.token_distance}};
      std::cout << line.dump() << "\n";
    }
  } else {
    TextTable table({"generation", "assertion", "groupSpan", "attributeSpan", "distance"});
    for (const auto& hit : hits) {
      table.add_row({hit.generation_id, short_id(hit.assertion_id), span_text(hit.group_span),
                     span_text(hit.attribute_span), std::to_string(hit.token_distance)});
    }
    std::cout << table.render();
  }
  // Lexical matching counts negated mentions ("X are not Y") as hits.
  std::cerr << "generations=" << summary.generations << " unscannable=" << summary.unscannable
            << " hits=" << summary.hits << " window=" << window
            << " patterns=" << matcher.pattern_count() << " note=negated-mentions-counted\n";
  return kExitOk;
}

int run_export(const std::string& store_path, const std::string& out_path) {
  GraphStore store = load_store(store_path);
  save_store(store, out_path);
  std::cerr << "exported " << store.size() << " assertions to " << out_path << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stereograph: a stereotype knowledge-graph toolkit"};
  app.require_subcommand(1);

  const char* env_store = std::getenv("STEREOGRAPH_STORE");
  const std::string default_store = env_store ? env_store : "";
  auto add_store_option = [&default_store](CLI::App* cmd, std::string& target) {
    target = default_store;
    CLI::Option* opt = cmd->add_option("--store", target, "store snapshot file");
    if (default_store.empty()) opt->required();
    return opt;
  };

  std::string format = "table";

  auto* ingest_cmd = app.add_subcommand("ingest", "normalize a tabular resource into the store");
  std::string ingest_source, ingest_mapping, ingest_input, ingest_store;
  std::string ingest_as_of = today_iso_date();
  ingest_cmd->add_option("--source", ingest_source, "source id (must match the mapping spec)")
      ->required();
  ingest_cmd->add_option("--mapping", ingest_mapping, "mapping spec file")->required();
  ingest_cmd->add_option("input", ingest_input, "tabular input file (TSV/CSV)")->required();
  add_store_option(ingest_cmd, ingest_store);
  ingest_cmd->add_option("--as-of", ingest_as_of,
                         "override retrievedOn (YYYY-MM-DD) for reproducible output");
  ingest_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "table"}));

  auto* validate_cmd = app.add_subcommand("validate", "re-check every stored assertion");
  std::string validate_store;
  add_store_option(validate_cmd, validate_store);
  validate_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "table"}));

  auto* query_cmd = app.add_subcommand("query", "run a DSL query against the store");
  std::string query_text, query_store, query_lexicon;
  bool query_explain = false;
  query_cmd->add_option("dsl", query_text, "FIND assertions WHERE ...")->required();
  add_store_option(query_cmd, query_store);
  query_cmd->add_option("--lexicon", query_lexicon, "category lexicon JSON file");
  query_cmd->add_flag("--explain", query_explain, "print the chosen plan to stderr");
  query_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "table"}));

  auto* report_cmd = app.add_subcommand("report", "run a framework analysis");
  std::string report_kind, report_store, report_target, report_antonyms;
  int report_bucket = 10;
  report_cmd
      ->add_option("kind", report_kind,
                   "coverage|cooccur|conflicts|synergies|perceiver-diff|temporal")
      ->required();
  add_store_option(report_cmd, report_store);
  report_cmd->add_option("--target", report_target, "target key, e.g. caste:dalits");
  report_cmd->add_option("--bucket", report_bucket, "bucket size in years (temporal)")
      ->check(CLI::PositiveNumber);
  report_cmd->add_option("--antonyms", report_antonyms, "antonym lexicon JSON file");
  report_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "table"}));

  auto* evaluate_cmd =
      app.add_subcommand("evaluate", "scan model generations for registry stereotypes");
  std::string eval_generations, eval_store, eval_scope, eval_aliases, eval_lexicon;
  std::size_t eval_window = 10;
  evaluate_cmd->add_option("--generations", eval_generations, "JSONL generations file")
      ->required();
  add_store_option(evaluate_cmd, eval_store);
  evaluate_cmd->add_option("--scope", eval_scope, "DSL query narrowing the matcher");
  evaluate_cmd->add_option("--aliases", eval_aliases, "alias table JSON file");
  evaluate_cmd->add_option("--lexicon", eval_lexicon, "category lexicon for --scope");
  evaluate_cmd->add_option("--window", eval_window, "token window")->check(CLI::PositiveNumber);
  evaluate_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "table"}));

  auto* export_cmd = app.add_subcommand("export", "write a deterministic snapshot copy");
  std::string export_store, export_out;
  add_store_option(export_cmd, export_store);
  export_cmd->add_option("--out", export_out, "output snapshot file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e, std::cout, std::cerr);
    return kExitUsage;
  }

  try {
    if (ingest_cmd->parsed()) {
      if (!valid_iso_date(ingest_as_of)) {
        throw UsageError("--as-of must be YYYY-MM-DD, got \"" + ingest_as_of + "\"");
      }
      return run_ingest(ingest_source, ingest_mapping, ingest_input, ingest_store, ingest_as_of,
                        format);
    }
    if (validate_cmd->parsed()) return run_validate(validate_store, format);
    if (query_cmd->parsed()) {
      return run_query(query_text, query_store, query_lexicon, format, query_explain);
    }
    if (report_cmd->parsed()) {
      return run_report(report_kind, report_store, report_target, report_bucket, report_antonyms,
                        format);
    }
    if (evaluate_cmd->parsed()) {
      return run_evaluate(eval_generations, eval_store, eval_scope, eval_aliases, eval_lexicon,
                          eval_window, format);
    }
    if (export_cmd->parsed()) return run_export(export_store, export_out);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const QuerySyntaxError& e) {
    std::cerr << "query error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnknownFieldError& e) {
    std::cerr << "query error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const TypeMismatchError& e) {
    std::cerr << "query error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOperational;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOperational;
  }
  return kExitUsage;
}
