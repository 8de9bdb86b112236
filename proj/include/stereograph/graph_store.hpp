#ifndef STEREOGRAPH_GRAPH_STORE_HPP
#define STEREOGRAPH_GRAPH_STORE_HPP

#include <iosfwd>
#include <map>
#include <set>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "stereograph/errors.hpp"
#include "stereograph/schema.hpp"

namespace stereograph {

enum class NodeKind { Group, Attribute, Assertion, PerceiverGroup, Source };
enum class EdgeLabel { HasTarget, HasAttribute, PerceivedBy, FromSource };

std::string_view to_string(NodeKind kind);
std::string_view to_string(EdgeLabel label);

// (kind, key) is unique within a store. Keys: Group uses the sorted
// constituent list, Attribute the term, Assertion the id, PerceiverGroup the
// social group, Source the sourceId.
struct GraphNode {
  NodeKind kind;
  std::string key;

  auto operator<=>(const GraphNode&) const = default;
};

struct GraphEdge {
  GraphNode from;
  GraphNode to;
  EdgeLabel label;

  auto operator<=>(const GraphEdge&) const = default;
};

enum class IndexKind { ByAxis, ByTargetKey, ByAttributeTerm, ByRegionPrefix, BySource };

// Maps CLI/user-facing index names (byAxis, byTargetKey, ...) to the enum;
// throws UnknownIndexError for anything else.
IndexKind index_kind_from_string(std::string_view name);
std::string_view to_string(IndexKind kind);

enum class UpsertResult { Inserted, Duplicate };

// Deterministic serialization of a whole store: a header line followed by
// one interchange line per assertion in id order. Byte-identical for
// identical store contents.
struct GraphSnapshot {
  int format_version = 1;
  std::vector<std::string> lines;  // interchange records sorted by id

  std::string to_bytes() const;  // header + lines, LF endings
};

// In-memory reified property graph over assertions, with secondary indices
// and snapshot persistence. Concurrency contract: many readers or one
// writer; all public member functions take the appropriate lock.
class GraphStore {
 public:
  GraphStore() = default;

  // Not copyable (owns a mutex). Move transfers contents into a store with
  // a fresh lock; only valid while no other thread touches the source.
  GraphStore(const GraphStore&) = delete;
  GraphStore& operator=(const GraphStore&) = delete;
  GraphStore(GraphStore&& other) noexcept;
  GraphStore& operator=(GraphStore&&) = delete;

  // Inserts the assertion and auto-creates its Group/Attribute/
  // PerceiverGroup/Source nodes and edges. A duplicate id is a no-op.
  // Throws ValidationFailedError when validate() reports errors
  // (warnings are allowed through).
  UpsertResult upsert(const StereotypeAssertion& assertion);

  std::set<std::string> lookup(IndexKind index, std::string_view key) const;

  bool contains(std::string_view id) const;
  const StereotypeAssertion* find(std::string_view id) const;

  std::size_t size() const;
  std::vector<const StereotypeAssertion*> all() const;  // ordered by id

  std::size_t node_count(NodeKind kind) const;
  std::vector<GraphNode> nodes() const;           // deterministic order
  std::vector<GraphEdge> edges() const;           // deterministic order
  std::vector<GraphEdge> edges_of(std::string_view assertion_id) const;

  // Distinct target keys present, in key order.
  std::vector<std::string> target_keys() const;

  GraphSnapshot save() const;
  static GraphStore load(const GraphSnapshot& snapshot);

  // Stream forms used by the CLI. load_stream throws UnsupportedVersionError
  // or CorruptSnapshotError (with the offending 1-based line number).
  void save_stream(std::ostream& out) const;
  static GraphStore load_stream(std::istream& in);

 private:
  void index_assertion(const StereotypeAssertion& a);

  mutable std::shared_mutex mutex_;
  std::map<std::string, StereotypeAssertion> assertions_;  // by id

  std::map<std::string, std::set<std::string>> by_axis_;
  std::map<std::string, std::set<std::string>> by_target_key_;
  std::map<std::string, std::set<std::string>> by_attribute_term_;
  std::map<std::string, std::set<std::string>> by_region_path_;  // full path -> ids
  std::map<std::string, std::set<std::string>> by_source_;
};

struct ValidationFailedError : Error {
  explicit ValidationFailedError(std::vector<Violation> found)
      : Error(render(found)), violations(std::move(found)) {}
  std::vector<Violation> violations;

 private:
  static std::string render(const std::vector<Violation>& violations) {
    std::string msg = "assertion failed validation:";
    for (const auto& v : violations) msg += " [" + v.field + "] " + v.message + ";";
    return msg;
  }
};

inline constexpr std::string_view kSnapshotHeader = "stereograph-snapshot v1";

}  // namespace stereograph

#endif  // STEREOGRAPH_GRAPH_STORE_HPP
