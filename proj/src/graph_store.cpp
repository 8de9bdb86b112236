#include "stereograph/graph_store.hpp"

#include <algorithm>
#include <mutex>
#include <ostream>
#include <sstream>

#include "stereograph/canonical.hpp"
#include "stereograph/interchange.hpp"

namespace stereograph {

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Group: return "Group";
    case NodeKind::Attribute: return "Attribute";
    case NodeKind::Assertion: return "Assertion";
    case NodeKind::PerceiverGroup: return "PerceiverGroup";
    case NodeKind::Source: return "Source";
  }
  return "Assertion";
}

std::string_view to_string(EdgeLabel label) {
  switch (label) {
    case EdgeLabel::HasTarget: return "HAS_TARGET";
    case EdgeLabel::HasAttribute: return "HAS_ATTRIBUTE";
    case EdgeLabel::PerceivedBy: return "PERCEIVED_BY";
    case EdgeLabel::FromSource: return "FROM_SOURCE";
  }
  return "HAS_TARGET";
}

IndexKind index_kind_from_string(std::string_view name) {
  if (name == "byAxis") return IndexKind::ByAxis;
  if (name == "byTargetKey") return IndexKind::ByTargetKey;
  if (name == "byAttributeTerm") return IndexKind::ByAttributeTerm;
  if (name == "byRegionPrefix") return IndexKind::ByRegionPrefix;
  if (name == "bySource") return IndexKind::BySource;
  throw UnknownIndexError(std::string(name));
}

std::string_view to_string(IndexKind kind) {
  switch (kind) {
    case IndexKind::ByAxis: return "byAxis";
    case IndexKind::ByTargetKey: return "byTargetKey";
    case IndexKind::ByAttributeTerm: return "byAttributeTerm";
    case IndexKind::ByRegionPrefix: return "byRegionPrefix";
    case IndexKind::BySource: return "bySource";
  }
  return "byAxis";
}

std::string GraphSnapshot::to_bytes() const {
  std::string out{kSnapshotHeader};
  out += '\n';
  for (const auto& line : lines) {
    out += line;
    out += '\n';
  }
  return out;
}

GraphStore::GraphStore(GraphStore&& other) noexcept {
  std::unique_lock lock(other.mutex_);
  assertions_ = std::move(other.assertions_);
  by_axis_ = std::move(other.by_axis_);
  by_target_key_ = std::move(other.by_target_key_);
  by_attribute_term_ = std::move(other.by_attribute_term_);
  by_region_path_ = std::move(other.by_region_path_);
  by_source_ = std::move(other.by_source_);
}

UpsertResult GraphStore::upsert(const StereotypeAssertion& assertion) {
  std::vector<Violation> violations = validate(assertion);
  std::erase_if(violations, [](const Violation& v) { return v.severity != Severity::Error; });
  if (!violations.empty()) throw ValidationFailedError(std::move(violations));

  std::unique_lock lock(mutex_);
  auto [it, inserted] = assertions_.emplace(assertion.id, assertion);
  if (!inserted) return UpsertResult::Duplicate;
  index_assertion(it->second);
  return UpsertResult::Inserted;
}

void GraphStore::index_assertion(const StereotypeAssertion& a) {
  for (const auto& c : a.target.constituents) by_axis_[c.axis].insert(a.id);
  by_target_key_[target_key(a.target)].insert(a.id);
  by_attribute_term_[a.attribute.term].insert(a.id);
  if (!a.perceiver.region.empty()) {
    by_region_path_[join_region_path(a.perceiver.region)].insert(a.id);
  }
  by_source_[a.source.source_id].insert(a.id);
}

std::set<std::string> GraphStore::lookup(IndexKind index, std::string_view key) const {
  std::shared_lock lock(mutex_);
  const std::map<std::string, std::set<std::string>>* table = nullptr;
  switch (index) {
    case IndexKind::ByAxis: table = &by_axis_; break;
    case IndexKind::ByTargetKey: table = &by_target_key_; break;
    case IndexKind::ByAttributeTerm: table = &by_attribute_term_; break;
    case IndexKind::BySource: table = &by_source_; break;
    case IndexKind::ByRegionPrefix: {
      // A path matches when its segment list starts with the key's segments.
      std::set<std::string> out;
      auto prefix = split_region_path(key);
      for (const auto& [path, ids] : by_region_path_) {
        auto segments = split_region_path(path);
        if (segments.size() < prefix.size()) continue;
        if (std::equal(prefix.begin(), prefix.end(), segments.begin())) {
          out.insert(ids.begin(), ids.end());
        }
      }
      return out;
    }
  }
  auto it = table->find(std::string(key));
  if (it == table->end()) return {};
  return it->second;
}

bool GraphStore::contains(std::string_view id) const {
  std::shared_lock lock(mutex_);
  return assertions_.count(std::string(id)) > 0;
}

const StereotypeAssertion* GraphStore::find(std::string_view id) const {
  std::shared_lock lock(mutex_);
  auto it = assertions_.find(std::string(id));
  return it == assertions_.end() ? nullptr : &it->second;
}

std::size_t GraphStore::size() const {
  std::shared_lock lock(mutex_);
  return assertions_.size();
}

std::vector<const StereotypeAssertion*> GraphStore::all() const {
  std::shared_lock lock(mutex_);
  std::vector<const StereotypeAssertion*> out;
  out.reserve(assertions_.size());
  for (const auto& [id, a] : assertions_) out.push_back(&a);
  return out;
}

std::size_t GraphStore::node_count(NodeKind kind) const {
  std::shared_lock lock(mutex_);
  switch (kind) {
    case NodeKind::Assertion: return assertions_.size();
    case NodeKind::Group: return by_target_key_.size();
    case NodeKind::Attribute: return by_attribute_term_.size();
    case NodeKind::Source: return by_source_.size();
    case NodeKind::PerceiverGroup: {
      std::set<std::string> groups;
      for (const auto& [id, a] : assertions_) {
        if (a.perceiver.social_group) groups.insert(*a.perceiver.social_group);
      }
      return groups.size();
    }
  }
  return 0;
}

std::vector<GraphNode> GraphStore::nodes() const {
  std::shared_lock lock(mutex_);
  std::vector<GraphNode> out;
  for (const auto& [key, ids] : by_target_key_) out.push_back({NodeKind::Group, key});
  for (const auto& [term, ids] : by_attribute_term_) out.push_back({NodeKind::Attribute, term});
  for (const auto& [id, a] : assertions_) out.push_back({NodeKind::Assertion, id});
  std::set<std::string> groups;
  for (const auto& [id, a] : assertions_) {
    if (a.perceiver.social_group) groups.insert(*a.perceiver.social_group);
  }
  for (const auto& g : groups) out.push_back({NodeKind::PerceiverGroup, g});
  for (const auto& [source, ids] : by_source_) out.push_back({NodeKind::Source, source});
  return out;
}

std::vector<GraphEdge> GraphStore::edges() const {
  std::shared_lock lock(mutex_);
  std::vector<GraphEdge> out;
  for (const auto& [id, a] : assertions_) {
    GraphNode from{NodeKind::Assertion, id};
    out.push_back({from, {NodeKind::Group, target_key(a.target)}, EdgeLabel::HasTarget});
    out.push_back({from, {NodeKind::Attribute, a.attribute.term}, EdgeLabel::HasAttribute});
    if (a.perceiver.social_group) {
      out.push_back(
          {from, {NodeKind::PerceiverGroup, *a.perceiver.social_group}, EdgeLabel::PerceivedBy});
    }
    out.push_back({from, {NodeKind::Source, a.source.source_id}, EdgeLabel::FromSource});
  }
  return out;
}

std::vector<GraphEdge> GraphStore::edges_of(std::string_view assertion_id) const {
  std::shared_lock lock(mutex_);
  auto it = assertions_.find(std::string(assertion_id));
  if (it == assertions_.end()) return {};
  const auto& a = it->second;
  std::vector<GraphEdge> out;
  GraphNode from{NodeKind::Assertion, a.id};
  out.push_back({from, {NodeKind::Group, target_key(a.target)}, EdgeLabel::HasTarget});
  out.push_back({from, {NodeKind::Attribute, a.attribute.term}, EdgeLabel::HasAttribute});
  if (a.perceiver.social_group) {
    out.push_back(
        {from, {NodeKind::PerceiverGroup, *a.perceiver.social_group}, EdgeLabel::PerceivedBy});
  }
  out.push_back({from, {NodeKind::Source, a.source.source_id}, EdgeLabel::FromSource});
  return out;
}

std::vector<std::string> GraphStore::target_keys() const {
  std::shared_lock lock(mutex_);
  std::vector<std::string> out;
  out.reserve(by_target_key_.size());
  for (const auto& [key, ids] : by_target_key_) out.push_back(key);
  return out;
}

GraphSnapshot GraphStore::save() const {
  std::shared_lock lock(mutex_);
  GraphSnapshot snapshot;
  snapshot.lines.reserve(assertions_.size());
  for (const auto& [id, a] : assertions_) snapshot.lines.push_back(assertion_to_line(a));
  return snapshot;
}

GraphStore GraphStore::load(const GraphSnapshot& snapshot) {
  if (snapshot.format_version != 1) throw UnsupportedVersionError(snapshot.format_version);
  GraphStore store;
  std::size_t line_no = 1;  // line 1 is the header
  for (const auto& line : snapshot.lines) {
    ++line_no;
    StereotypeAssertion a;
    try {
      a = assertion_from_line(line);
    } catch (const Error& e) {
      throw CorruptSnapshotError(line_no, e.what());
    }
    if (a.id != content_hash(a)) {
      throw CorruptSnapshotError(line_no, "id does not match record content");
    }
    // Snapshot lines were written canonically; loading bypasses the upsert
    // validation gate so `validate` can be run over historical stores.
    auto [it, inserted] = store.assertions_.emplace(a.id, std::move(a));
    if (inserted) store.index_assertion(it->second);
  }
  return store;
}

void GraphStore::save_stream(std::ostream& out) const {
  out << save().to_bytes();
}

GraphStore GraphStore::load_stream(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw CorruptSnapshotError(1, "missing header line");
  if (header != kSnapshotHeader) {
    // Recognize other versions of our own header to report them precisely.
    if (header.rfind("stereograph-snapshot v", 0) == 0) {
      try {
        int version = std::stoi(header.substr(std::string_view("stereograph-snapshot v").size()));
        throw UnsupportedVersionError(version);
      } catch (const std::invalid_argument&) {
        throw CorruptSnapshotError(1, "malformed header: " + header);
      } catch (const std::out_of_range&) {
        throw CorruptSnapshotError(1, "malformed header: " + header);
      }
    }
    throw CorruptSnapshotError(1, "not a stereograph snapshot");
  }
  GraphSnapshot snapshot;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) snapshot.lines.push_back(line);
  }
  return load(snapshot);
}

}  // namespace stereograph
