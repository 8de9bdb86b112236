#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <string>

#include "stereograph/canonical.hpp"
#include "stereograph/errors.hpp"
#include "stereograph/query.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"
#include "support/random_gen.hpp"

using namespace stereograph;
using namespace stereograph::query;

namespace {

std::set<std::string> identities_of(const std::vector<const StereotypeAssertion*>& rows) {
  std::set<std::string> out;
  for (const auto* a : rows) {
    std::string joined;
    for (const auto& c : a->target.constituents) {
      if (!joined.empty()) joined += ' ';
      joined += c.identity;
    }
    out.insert(joined);
  }
  return out;
}

}  // namespace

TEST_CASE("single comparison parses to one Compare leaf") {
  QueryAst ast = parse(R"(FIND assertions WHERE target.axis = "caste")");
  REQUIRE(ast.predicate);
  CHECK(ast.predicate->kind == Node::Kind::Compare);
  CHECK(ast.predicate->path == "target.axis");
  CHECK(ast.predicate->op == CompareOp::Eq);
  CHECK(ast.predicate->literal == Literal::of(std::string("caste")));
  CHECK_FALSE(ast.order_by);
  CHECK_FALSE(ast.limit);
}

TEST_CASE("conjunction parse matches the committed golden AST") {
  QueryAst ast = parse(
      "FIND assertions WHERE attribute.offensiveness >= high AND target.marginalized = true");
  std::string golden = testsupport::read_file(testsupport::golden_dir() / "and_query_ast.txt");
  CHECK(dump(ast) == golden);
}

TEST_CASE("syntax errors carry a 1-based byte offset and expectation") {
  std::string query = "FIND assertions WHERE target.axis = ";
  CHECK_THROWS_AS(parse(query), QuerySyntaxError);
  try {
    parse(query);
  } catch (const QuerySyntaxError& e) {
    CHECK(e.offset == query.size() + 1);  // end of input
    CHECK(e.expected == "literal");
  }

  try {
    parse("FIND WHERE");
  } catch (const QuerySyntaxError& e) {
    CHECK(e.offset == 6);
    CHECK(e.expected == "assertions");
  }

  try {
    parse("FIND assertions WHERE (attribute.term = \"x\"");
  } catch (const QuerySyntaxError& e) {
    CHECK(e.expected == ")");
  }

  CHECK_THROWS_AS(parse("FIND assertions LIMIT 0"), QuerySyntaxError);
  CHECK_THROWS_AS(parse("FIND assertions WHERE context.time OVERLAPS [1990 2000]"),
                  QuerySyntaxError);
}

TEST_CASE("unknown fields and type mismatches are rejected at parse time") {
  CHECK_THROWS_AS(parse("FIND assertions WHERE target.bogus = \"x\""), UnknownFieldError);
  CHECK_THROWS_AS(parse("FIND assertions WHERE attribute.term >= \"x\""), TypeMismatchError);
  CHECK_THROWS_AS(parse("FIND assertions WHERE target.marginalized = \"yes\""),
                  TypeMismatchError);
  CHECK_THROWS_AS(parse("FIND assertions WHERE attribute.offensiveness >= 3"),
                  TypeMismatchError);
  CHECK_THROWS_AS(parse("FIND assertions WHERE attribute.term OVERLAPS [1990, 2000]"),
                  TypeMismatchError);
  CHECK_THROWS_AS(parse("FIND assertions WHERE target.axis WITHIN \"Europe\""),
                  TypeMismatchError);
  CHECK_THROWS_AS(parse("FIND assertions WHERE target.axis IN category(\"x\")"),
                  TypeMismatchError);
  CHECK_THROWS_AS(parse("FIND assertions ORDER BY context.time"), TypeMismatchError);
}

TEST_CASE("precedence is NOT over AND over OR, parentheses regroup") {
  QueryAst flat = parse(
      R"(FIND assertions WHERE NOT target.axis = "race" AND attribute.term = "lazy" OR target.marginalized = true)");
  REQUIRE(flat.predicate);
  CHECK(flat.predicate->kind == Node::Kind::Or);
  CHECK(flat.predicate->lhs->kind == Node::Kind::And);
  CHECK(flat.predicate->lhs->lhs->kind == Node::Kind::Not);
  CHECK(flat.predicate->lhs->lhs->lhs->kind == Node::Kind::Compare);
  CHECK(flat.predicate->rhs->kind == Node::Kind::Compare);

  QueryAst grouped = parse(
      R"(FIND assertions WHERE NOT target.axis = "race" AND (attribute.term = "lazy" OR target.marginalized = true))");
  CHECK(grouped.predicate->kind == Node::Kind::And);
  CHECK(grouped.predicate->rhs->kind == Node::Kind::Or);

  // keywords are case-insensitive, paths case-sensitive
  CHECK(ast_equal(parse("find AssertionS where target.axis = \"caste\""),
                  parse("FIND assertions WHERE target.axis = \"caste\"")));
  CHECK_THROWS_AS(parse("FIND assertions WHERE TARGET.AXIS = \"caste\""), UnknownFieldError);
}

TEST_CASE("alias spellings normalize to the canonical path") {
  QueryAst long_form = parse("FIND assertions WHERE attribute.valence.offensiveness >= high");
  CHECK(long_form.predicate->path == "attribute.offensiveness");
  CHECK(ast_equal(long_form, parse("FIND assertions WHERE attribute.offensiveness >= high")));
}

TEST_CASE("intersectional comparisons normalize to the derived flag") {
  QueryAst affirmative = parse("FIND assertions WHERE target.intersectional = true");
  CHECK(affirmative.predicate->kind == Node::Kind::IsTrue);
  QueryAst negated = parse("FIND assertions WHERE target.intersectional = false");
  CHECK(negated.predicate->kind == Node::Kind::Not);
  CHECK(negated.predicate->lhs->kind == Node::Kind::IsTrue);
  CHECK(ast_equal(parse("FIND assertions WHERE target.intersectional != false"), affirmative));
}

TEST_CASE("caste query returns the two SPICE assertions") {
  GraphStore store = testsupport::load_fixture_store();
  auto rows = execute(parse(R"(FIND assertions WHERE target.axis = "caste")"), store);
  REQUIRE(rows.size() == 2);
  CHECK(identities_of(rows) == std::set<std::string>{"brahmins", "dalits"});
}

TEST_CASE("offensive-and-marginalized query returns the six Table 1 rows") {
  GraphStore store = testsupport::load_fixture_store();
  auto rows = execute(
      parse("FIND assertions WHERE attribute.offensiveness >= high AND "
            "target.marginalized = true"),
      store);
  REQUIRE(rows.size() == 6);
  CHECK(identities_of(rows) == std::set<std::string>{"palestinian", "afghans", "dalits",
                                                     "native americans", "men gay",
                                                     "immigrants"});
}

TEST_CASE("category filters expand through the lexicon") {
  GraphStore store = testsupport::load_fixture_store();
  CategoryLexicon lexicon;
  lexicon.define("laziness", {"lazy"});
  auto rows =
      execute(parse(R"(FIND assertions WHERE attribute.term IN category("laziness"))"), store,
              lexicon);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0]->attribute.term == "lazy");

  CHECK_THROWS_AS(
      execute(parse(R"(FIND assertions WHERE attribute.term IN category("unknown"))"), store,
              lexicon),
      UnknownCategoryError);
}

TEST_CASE("threshold comparisons exclude unspecified ordinals") {
  GraphStore store = testsupport::load_fixture_store();
  // Only Palestinian and Afghans carry a warmth rating at all (both low).
  auto rows = execute(parse("FIND assertions WHERE attribute.warmth >= low"), store);
  REQUIRE(rows.size() == 2);
  CHECK(identities_of(rows) == std::set<std::string>{"palestinian", "afghans"});
  // <= high excludes them too: unspecified is incomparable, not "below high"
  auto le_rows = execute(parse("FIND assertions WHERE attribute.warmth <= high"), store);
  CHECK(le_rows.size() == 2);
}

TEST_CASE("untimed assertions never satisfy OVERLAPS") {
  GraphStore store = testsupport::load_fixture_store();  // Table 1 has no time column
  auto rows = execute(parse("FIND assertions WHERE context.time OVERLAPS [1900, 2100]"), store);
  CHECK(rows.empty());
}

TEST_CASE("WITHIN honors region containment paths") {
  GraphStore store;
  RawRecord raw;
  raw.target.constituents = {{"nationality", "alphans"}};
  raw.attribute.term = "stoic";
  raw.context.reference = "ref";
  raw.source = {"SrcA", "1", "2024-01-01", std::nullopt};
  raw.perceiver.region = {"Asia", "South Asia", "India"};
  store.upsert(canonicalize(raw));

  CHECK(execute(parse(R"(FIND assertions WHERE perceiver.region WITHIN "Asia")"), store).size() ==
        1);
  CHECK(execute(parse(R"(FIND assertions WHERE perceiver.region WITHIN "Asia/South Asia")"),
                store)
            .size() == 1);
  CHECK(execute(parse(R"(FIND assertions WHERE perceiver.region WITHIN "Europe")"), store)
            .empty());
  // exact equality needs the full path
  CHECK(execute(parse(R"(FIND assertions WHERE perceiver.region = "Asia")"), store).empty());
  CHECK(
      execute(parse(R"(FIND assertions WHERE perceiver.region = "Asia/South Asia/India")"), store)
          .size() == 1);
}

TEST_CASE("ORDER BY and LIMIT shape the result list") {
  GraphStore store = testsupport::load_fixture_store();
  auto rows = execute(parse("FIND assertions ORDER BY attribute.term LIMIT 3"), store);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0]->attribute.term == "aggressive");
  CHECK(rows[1]->attribute.term == "blunt");
  CHECK(rows[2]->attribute.term == "disgusting");

  // absent values order after present ones
  auto by_group = execute(parse("FIND assertions ORDER BY perceiver.socialGroup"), store);
  REQUIRE(by_group.size() == 15);
  CHECK(by_group.front()->perceiver.social_group.has_value());
  CHECK_FALSE(by_group.back()->perceiver.social_group.has_value());
}

TEST_CASE("plans probe the single most selective index") {
  GraphStore store = testsupport::load_fixture_store();

  QueryPlan axis_plan = plan(parse(R"(FIND assertions WHERE target.axis = "caste")"), store);
  REQUIRE(axis_plan.probe);
  CHECK(*axis_plan.probe == IndexProbe{IndexKind::ByAxis, "caste"});

  QueryPlan not_plan = plan(parse(R"(FIND assertions WHERE NOT target.axis = "caste")"), store);
  CHECK_FALSE(not_plan.probe);
  CHECK(not_plan.describe() == "full-scan");

  QueryPlan residual_plan = plan(
      parse(R"(FIND assertions WHERE target.axis = "caste" AND attribute.offensiveness >= high)"),
      store);
  REQUIRE(residual_plan.probe);
  CHECK(*residual_plan.probe == IndexProbe{IndexKind::ByAxis, "caste"});

  // the narrower term index wins over the axis index
  QueryPlan narrower = plan(
      parse(R"(FIND assertions WHERE target.axis = "nationality" AND attribute.term = "blunt")"),
      store);
  REQUIRE(narrower.probe);
  CHECK(*narrower.probe == IndexProbe{IndexKind::ByAttributeTerm, "blunt"});

  // leaves under OR are not necessary conditions, no probe
  QueryPlan or_plan = plan(
      parse(R"(FIND assertions WHERE target.axis = "caste" OR attribute.term = "blunt")"), store);
  CHECK_FALSE(or_plan.probe);

  QueryPlan scan_all = plan(parse("FIND assertions"), store);
  CHECK_FALSE(scan_all.probe);
}

TEST_CASE("plan execution equals direct execution on the fixture") {
  GraphStore store = testsupport::load_fixture_store();
  const char* queries[] = {
      R"(FIND assertions WHERE target.axis = "caste")",
      R"(FIND assertions WHERE NOT target.axis = "caste")",
      R"(FIND assertions WHERE target.axis = "nationality" AND attribute.offensiveness >= high)",
      R"(FIND assertions WHERE perceiver.region WITHIN "Europe")",
      "FIND assertions ORDER BY attribute.offensiveness LIMIT 5",
  };
  for (const char* text : queries) {
    QueryAst ast = parse(text);
    auto direct = execute(ast, store);
    auto planned = execute(plan(ast, store), store);
    CHECK(direct == planned);
  }
}

TEST_CASE("print(parse(q)) reparses to an identical AST") {
  const char* queries[] = {
      "FIND assertions",
      R"(FIND assertions WHERE target.axis = "caste")",
      R"(FIND assertions WHERE NOT (target.axis = "race" OR target.axis = "caste") AND attribute.offensiveness >= medium)",
      R"(FIND assertions WHERE attribute.term IN category("laziness") ORDER BY id LIMIT 7)",
      R"(FIND assertions WHERE context.time OVERLAPS [1990, ] OR context.time OVERLAPS [, 1800])",
      R"(FIND assertions WHERE perceiver.region WITHIN "Asia/South Asia" AND perceiver.socialGroup != "x \"quoted\"")",
      "FIND assertions WHERE target.intersectional = false ORDER BY perceiver.region",
  };
  for (const char* text : queries) {
    QueryAst ast = parse(text);
    CHECK(ast_equal(ast, parse(print(ast))));
  }
}

TEST_CASE("property: print/parse round-trip on random ASTs") {
  testsupport::Rng rng(1011);
  for (int i = 0; i < 300; ++i) {
    QueryAst ast = testsupport::random_ast(rng, 4);
    QueryAst reparsed = parse(print(ast));
    CHECK(ast_equal(ast, reparsed));
  }
}

TEST_CASE("property: planner-executed results equal the brute-force oracle") {
  testsupport::Rng rng(1012);
  CategoryLexicon lexicon = testsupport::test_lexicon();
  for (int round = 0; round < 6; ++round) {
    GraphStore store = testsupport::random_store(rng, 300);
    auto all = store.all();
    for (int q = 0; q < 40; ++q) {
      QueryAst ast = testsupport::random_ast(rng, 4);
      auto expected = testsupport::oracle_execute(ast, all, lexicon);
      auto actual = execute(ast, store, lexicon);
      REQUIRE(actual == expected);
    }
  }
}

TEST_CASE("property: De Morgan rewrites return identical result sets") {
  testsupport::Rng rng(1013);
  CategoryLexicon lexicon = testsupport::test_lexicon();
  for (int round = 0; round < 5; ++round) {
    GraphStore store = testsupport::random_store(rng, 200);
    for (int q = 0; q < 30; ++q) {
      NodePtr a = testsupport::random_node(rng, 2);
      NodePtr b = testsupport::random_node(rng, 2);
      QueryAst lhs, rhs;
      lhs.predicate = make_not(make_and(a, b));
      rhs.predicate = make_or(make_not(a), make_not(b));
      CHECK(execute(lhs, store, lexicon) == execute(rhs, store, lexicon));
    }
  }
}
