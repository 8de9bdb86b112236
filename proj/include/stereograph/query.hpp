#ifndef STEREOGRAPH_QUERY_HPP
#define STEREOGRAPH_QUERY_HPP

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "stereograph/graph_store.hpp"
#include "stereograph/schema.hpp"

namespace stereograph::query {

// Grammar (keywords case-insensitive, paths case-sensitive):
//   query      := "FIND" "assertions" ["WHERE" or-expr]
//                 ["ORDER" "BY" path] ["LIMIT" int]
//   or-expr    := and-expr {"OR" and-expr}
//   and-expr   := unary {"AND" unary}
//   unary      := ["NOT"] (comparison | "(" or-expr ")")
//   comparison := path (("="|"!="|">="|"<=") literal
//               | "IN" "category(" string ")"
//               | "OVERLAPS" "[" int? "," int? "]"
//               | "WITHIN" string)
// Literals: double-quoted strings, integers, true/false, low/medium/high.

enum class CompareOp { Eq, Ne, Ge, Le };

std::string_view to_string(CompareOp op);

struct Literal {
  enum class Kind { String, Int, Bool, OrdinalValue };
  Kind kind = Kind::String;
  std::string text;
  long long number = 0;
  bool boolean = false;
  Ordinal ordinal = Ordinal::Unspecified;

  bool operator==(const Literal&) const = default;

  static Literal of(std::string s) { return {Kind::String, std::move(s), 0, false, {}}; }
  static Literal of(long long n) { return {Kind::Int, {}, n, false, {}}; }
  static Literal of(bool b) { return {Kind::Bool, {}, 0, b, {}}; }
  static Literal of(Ordinal o) { return {Kind::OrdinalValue, {}, 0, false, o}; }
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

// One tagged node type for the whole predicate tree keeps the parser,
// printer, and planner walks straightforward.
struct Node {
  enum class Kind { And, Or, Not, Compare, InCategory, Overlaps, Within, IsTrue };
  Kind kind = Kind::Compare;

  NodePtr lhs;  // And/Or left operand; Not operand
  NodePtr rhs;  // And/Or right operand

  std::string path;
  CompareOp op = CompareOp::Eq;
  Literal literal;

  std::string category;                // InCategory
  std::optional<int> interval_start;   // Overlaps
  std::optional<int> interval_end;
  std::string region;                  // Within
};

NodePtr make_and(NodePtr lhs, NodePtr rhs);
NodePtr make_or(NodePtr lhs, NodePtr rhs);
NodePtr make_not(NodePtr operand);

bool node_equal(const NodePtr& a, const NodePtr& b);

struct QueryAst {
  NodePtr predicate;  // null means no WHERE clause (match everything)
  std::optional<std::string> order_by;
  std::optional<std::size_t> limit;
};

bool ast_equal(const QueryAst& a, const QueryAst& b);

// Throws QuerySyntaxError (1-based byte offset of the first unacceptable
// character; input length + 1 at end of input), UnknownFieldError, or
// TypeMismatchError. Field paths are checked against the published schema
// paths and operators against the field's type at parse time.
QueryAst parse(std::string_view text);

// Prints a query that reparses to an identical AST.
std::string print(const QueryAst& ast);

// Indented s-expression dump, used by golden tests and --explain output.
std::string dump(const QueryAst& ast);

// Named attribute-term sets for `IN category("...")` filters. The paper's
// "similar in meaning" expansion is explicit and user-supplied; no
// embedding machinery is involved.
class CategoryLexicon {
 public:
  // Throws InvalidRangeError on duplicate names or empty term sets.
  void define(std::string name, std::set<std::string> terms);
  const std::set<std::string>* find(std::string_view name) const;
  std::size_t size() const { return categories_.size(); }

  // {"laziness": ["lazy", "idle"], ...}
  static CategoryLexicon from_json(const nlohmann::json& doc);

 private:
  std::map<std::string, std::set<std::string>, std::less<>> categories_;
};

struct IndexProbe {
  IndexKind index;
  std::string key;

  bool operator==(const IndexProbe&) const = default;
};

// At most one index probe (the most selective necessary Compare/Within
// leaf) followed by residual filtering with the full predicate. A pure
// optimization: executing the plan equals brute-force evaluation.
struct QueryPlan {
  QueryAst ast;
  std::optional<IndexProbe> probe;

  std::string describe() const;
};

QueryPlan plan(const QueryAst& ast, const GraphStore& store);

// Results are ordered by the orderBy path (absent values last, ties by id)
// or by id when no ordering is requested, then truncated to limit.
// Throws UnknownCategoryError when the predicate names an undefined
// category.
std::vector<const StereotypeAssertion*> execute(const QueryAst& ast, const GraphStore& store,
                                                const CategoryLexicon& lexicon = {});
std::vector<const StereotypeAssertion*> execute(const QueryPlan& plan, const GraphStore& store,
                                                const CategoryLexicon& lexicon = {});

bool matches(const NodePtr& predicate, const StereotypeAssertion& assertion,
             const CategoryLexicon& lexicon);

// Ordering key for one assertion under a path: (present, key). Absent or
// unspecified values report present=false and sort after present ones.
std::pair<bool, std::string> sort_key(const StereotypeAssertion& assertion,
                                      const std::string& path);

// The published queryable paths (canonical spellings).
const std::vector<std::string>& published_paths();

}  // namespace stereograph::query

#endif  // STEREOGRAPH_QUERY_HPP
