#include <algorithm>
#include <limits>

#include "query_fields.hpp"
#include "stereograph/canonical.hpp"
#include "stereograph/errors.hpp"
#include "stereograph/query.hpp"

namespace stereograph::query {

namespace {

bool eval_compare_strings(CompareOp op, bool any_equal) {
  return op == CompareOp::Eq ? any_equal : !any_equal;
}

bool eval_tristate(CompareOp op, TriState value, bool literal) {
  bool equal = literal ? value == TriState::True : value == TriState::False;
  return op == CompareOp::Eq ? equal : !equal;
}

bool eval_ordinal(CompareOp op, Ordinal value, Ordinal literal) {
  switch (op) {
    case CompareOp::Eq: return value == literal;
    case CompareOp::Ne: return value != literal;
    case CompareOp::Ge: return ordinal_at_least(value, literal);
    case CompareOp::Le: return ordinal_at_most(value, literal);
  }
  return false;
}

bool eval_leaf_compare(const Node& node, const StereotypeAssertion& a) {
  FieldInfo info = *resolve_field(node.path);
  const Literal& lit = node.literal;
  switch (info.id) {
    case FieldId::Id:
      return eval_compare_strings(node.op, a.id == lit.text);
    case FieldId::TargetAxis: {
      bool any = std::any_of(a.target.constituents.begin(), a.target.constituents.end(),
                             [&](const AxisIdentity& c) { return c.axis == lit.text; });
      return eval_compare_strings(node.op, any);
    }
    case FieldId::TargetIdentity: {
      bool any = std::any_of(a.target.constituents.begin(), a.target.constituents.end(),
                             [&](const AxisIdentity& c) { return c.identity == lit.text; });
      return eval_compare_strings(node.op, any);
    }
    case FieldId::TargetKey:
      return eval_compare_strings(node.op, target_key(a.target) == lit.text);
    case FieldId::TargetMarginalized:
      return eval_tristate(node.op, a.target.marginalized, lit.boolean);
    case FieldId::TargetDemographic:
      return eval_tristate(node.op, a.target.demographic, lit.boolean);
    case FieldId::TargetIntersectional:
      // Unreachable: parse normalizes to IsTrue. Kept for direct AST users.
      return eval_compare_strings(node.op, derive_intersectional(a.target) == lit.boolean);
    case FieldId::AttributeTerm:
      return eval_compare_strings(node.op, a.attribute.term == lit.text);
    case FieldId::Warmth:
      return eval_ordinal(node.op, a.attribute.valence.warmth, lit.ordinal);
    case FieldId::Competence:
      return eval_ordinal(node.op, a.attribute.valence.competence, lit.ordinal);
    case FieldId::Offensiveness:
      return eval_ordinal(node.op, a.attribute.valence.offensiveness, lit.ordinal);
    case FieldId::Morality:
      return eval_ordinal(node.op, a.attribute.valence.morality, lit.ordinal);
    case FieldId::Modality: {
      bool any = std::any_of(a.attribute.modalities.begin(), a.attribute.modalities.end(),
                             [&](Modality m) { return to_string(m) == lit.text; });
      return eval_compare_strings(node.op, any);
    }
    case FieldId::StatisticalBasis:
      return eval_compare_strings(node.op, to_string(a.association.statistical_basis) == lit.text);
    case FieldId::Impact:
      return eval_ordinal(node.op, a.association.impact, lit.ordinal);
    case FieldId::SocialGroup: {
      bool equal = a.perceiver.social_group && *a.perceiver.social_group == lit.text;
      return eval_compare_strings(node.op, equal);
    }
    case FieldId::Region:
      return eval_compare_strings(node.op, join_region_path(a.perceiver.region) == lit.text);
    case FieldId::Reference:
      return eval_compare_strings(node.op, a.context.reference == lit.text);
    case FieldId::Provenance:
      return eval_compare_strings(node.op,
                                  to_string(a.context.provenance_category) == lit.text);
    case FieldId::SourceId:
      return eval_compare_strings(node.op, a.source.source_id == lit.text);
    case FieldId::Time:
      return false;  // Compare is rejected on time at parse
  }
  return false;
}

constexpr long long kYearMin = std::numeric_limits<long long>::min();
constexpr long long kYearMax = std::numeric_limits<long long>::max();

bool eval_overlaps(const Node& node, const StereotypeAssertion& a) {
  // Untimed assertions never pass a time filter.
  if (!a.context.time_interval) return false;
  const TimeInterval& ti = *a.context.time_interval;
  long long s = ti.start_year ? *ti.start_year : kYearMin;
  long long e = ti.end_year ? *ti.end_year : kYearMax;
  long long lo = node.interval_start ? *node.interval_start : kYearMin;
  long long hi = node.interval_end ? *node.interval_end : kYearMax;
  return s <= hi && lo <= e;
}

bool region_has_prefix(const std::vector<std::string>& region, std::string_view prefix_path) {
  if (region.empty()) return false;
  auto prefix = split_region_path(prefix_path);
  if (prefix.empty() || prefix.size() > region.size()) return false;
  return std::equal(prefix.begin(), prefix.end(), region.begin());
}

void collect_categories(const NodePtr& node, std::vector<std::string>& out) {
  if (!node) return;
  if (node->kind == Node::Kind::InCategory) out.push_back(node->category);
  collect_categories(node->lhs, out);
  collect_categories(node->rhs, out);
}

// Leaves that must hold for the whole predicate: the conjunctive spine.
void conjunctive_spine(const NodePtr& node, std::vector<const Node*>& out) {
  if (!node) return;
  if (node->kind == Node::Kind::And) {
    conjunctive_spine(node->lhs, out);
    conjunctive_spine(node->rhs, out);
    return;
  }
  out.push_back(node.get());
}

}  // namespace

bool matches(const NodePtr& predicate, const StereotypeAssertion& a,
             const CategoryLexicon& lexicon) {
  if (!predicate) return true;
  const Node& node = *predicate;
  switch (node.kind) {
    case Node::Kind::And:
      return matches(node.lhs, a, lexicon) && matches(node.rhs, a, lexicon);
    case Node::Kind::Or:
      return matches(node.lhs, a, lexicon) || matches(node.rhs, a, lexicon);
    case Node::Kind::Not:
      return !matches(node.lhs, a, lexicon);
    case Node::Kind::Compare:
      return eval_leaf_compare(node, a);
    case Node::Kind::InCategory: {
      const std::set<std::string>* terms = lexicon.find(node.category);
      if (!terms) throw UnknownCategoryError(node.category);
      return terms->count(a.attribute.term) > 0;
    }
    case Node::Kind::Overlaps:
      return eval_overlaps(node, a);
    case Node::Kind::Within:
      return region_has_prefix(a.perceiver.region, node.region);
    case Node::Kind::IsTrue:
      return derive_intersectional(a.target);
  }
  return false;
}

std::pair<bool, std::string> sort_key(const StereotypeAssertion& a, const std::string& path) {
  auto info = resolve_field(path);
  if (!info) throw UnknownFieldError(path);
  auto joined = [](auto begin, auto end, auto&& proj) {
    std::vector<std::string> values;
    for (auto it = begin; it != end; ++it) values.push_back(proj(*it));
    std::sort(values.begin(), values.end());
    std::string out;
    for (const auto& v : values) {
      if (!out.empty()) out += '|';
      out += v;
    }
    return out;
  };
  switch (info->id) {
    case FieldId::Id: return {true, a.id};
    case FieldId::TargetAxis:
      return {true, joined(a.target.constituents.begin(), a.target.constituents.end(),
                           [](const AxisIdentity& c) { return c.axis; })};
    case FieldId::TargetIdentity:
      return {true, joined(a.target.constituents.begin(), a.target.constituents.end(),
                           [](const AxisIdentity& c) { return c.identity; })};
    case FieldId::TargetKey: return {true, target_key(a.target)};
    case FieldId::TargetMarginalized:
    case FieldId::TargetDemographic: {
      TriState value = info->id == FieldId::TargetMarginalized ? a.target.marginalized
                                                               : a.target.demographic;
      if (value == TriState::Unknown) return {false, ""};
      return {true, value == TriState::True ? "1" : "0"};
    }
    case FieldId::TargetIntersectional:
      return {true, derive_intersectional(a.target) ? "1" : "0"};
    case FieldId::AttributeTerm: return {true, a.attribute.term};
    case FieldId::Warmth:
    case FieldId::Competence:
    case FieldId::Offensiveness:
    case FieldId::Morality:
    case FieldId::Impact: {
      Ordinal value = info->id == FieldId::Warmth          ? a.attribute.valence.warmth
                      : info->id == FieldId::Competence    ? a.attribute.valence.competence
                      : info->id == FieldId::Offensiveness ? a.attribute.valence.offensiveness
                      : info->id == FieldId::Morality      ? a.attribute.valence.morality
                                                           : a.association.impact;
      if (value == Ordinal::Unspecified) return {false, ""};
      return {true, std::string(1, static_cast<char>('0' + ordinal_rank(value)))};
    }
    case FieldId::Modality: {
      if (a.attribute.modalities.empty()) return {false, ""};
      return {true, joined(a.attribute.modalities.begin(), a.attribute.modalities.end(),
                           [](Modality m) { return std::string(to_string(m)); })};
    }
    case FieldId::StatisticalBasis:
      return {true, std::string(to_string(a.association.statistical_basis))};
    case FieldId::SocialGroup:
      if (!a.perceiver.social_group) return {false, ""};
      return {true, *a.perceiver.social_group};
    case FieldId::Region:
      if (a.perceiver.region.empty()) return {false, ""};
      return {true, join_region_path(a.perceiver.region)};
    case FieldId::Reference: return {true, a.context.reference};
    case FieldId::Provenance:
      return {true, std::string(to_string(a.context.provenance_category))};
    case FieldId::SourceId: return {true, a.source.source_id};
    case FieldId::Time: throw TypeMismatchError(path, "ORDER BY");
  }
  return {false, ""};
}

std::string QueryPlan::describe() const {
  if (!probe) return "full-scan";
  return std::string("probe ") + std::string(to_string(probe->index)) + "[" + probe->key +
         "] then residual filter";
}

QueryPlan plan(const QueryAst& ast, const GraphStore& store) {
  QueryPlan out;
  out.ast = ast;
  if (!ast.predicate) return out;

  std::vector<const Node*> spine;
  conjunctive_spine(ast.predicate, spine);

  std::optional<IndexProbe> best;
  std::size_t best_size = 0;
  auto consider = [&](IndexKind index, const std::string& key) {
    std::size_t size = store.lookup(index, key).size();
    if (!best || size < best_size ||
        (size == best_size && static_cast<int>(index) < static_cast<int>(best->index)) ||
        (size == best_size && index == best->index && key < best->key)) {
      best = IndexProbe{index, key};
      best_size = size;
    }
  };
  for (const Node* leaf : spine) {
    if (leaf->kind == Node::Kind::Compare && leaf->op == CompareOp::Eq) {
      auto info = resolve_field(leaf->path);
      if (!info) continue;
      switch (info->id) {
        case FieldId::TargetAxis: consider(IndexKind::ByAxis, leaf->literal.text); break;
        case FieldId::TargetKey: consider(IndexKind::ByTargetKey, leaf->literal.text); break;
        case FieldId::AttributeTerm:
          consider(IndexKind::ByAttributeTerm, leaf->literal.text);
          break;
        case FieldId::SourceId: consider(IndexKind::BySource, leaf->literal.text); break;
        case FieldId::Region:
          // Exact path matches are a subset of the prefix probe; the
          // residual filter restores exactness.
          consider(IndexKind::ByRegionPrefix, leaf->literal.text);
          break;
        default: break;
      }
    } else if (leaf->kind == Node::Kind::Within) {
      consider(IndexKind::ByRegionPrefix, leaf->region);
    }
  }
  out.probe = best;
  return out;
}

std::vector<const StereotypeAssertion*> execute(const QueryPlan& plan, const GraphStore& store,
                                                const CategoryLexicon& lexicon) {
  // Unknown categories are an error even when no assertion reaches the leaf.
  std::vector<std::string> categories;
  collect_categories(plan.ast.predicate, categories);
  for (const auto& name : categories) {
    if (!lexicon.find(name)) throw UnknownCategoryError(name);
  }

  std::vector<const StereotypeAssertion*> candidates;
  if (plan.probe) {
    for (const auto& id : store.lookup(plan.probe->index, plan.probe->key)) {
      if (const StereotypeAssertion* a = store.find(id)) candidates.push_back(a);
    }
  } else {
    candidates = store.all();
  }

  std::vector<const StereotypeAssertion*> out;
  for (const StereotypeAssertion* a : candidates) {
    if (matches(plan.ast.predicate, *a, lexicon)) out.push_back(a);
  }

  if (plan.ast.order_by) {
    const std::string& path = *plan.ast.order_by;
    std::sort(out.begin(), out.end(),
              [&path](const StereotypeAssertion* x, const StereotypeAssertion* y) {
                auto [xp, xk] = sort_key(*x, path);
                auto [yp, yk] = sort_key(*y, path);
                if (xp != yp) return xp;  // present before absent
                if (xk != yk) return xk < yk;
                return x->id < y->id;
              });
  } else {
    std::sort(out.begin(), out.end(),
              [](const StereotypeAssertion* x, const StereotypeAssertion* y) {
                return x->id < y->id;
              });
  }

  if (plan.ast.limit && out.size() > *plan.ast.limit) out.resize(*plan.ast.limit);
  return out;
}

std::vector<const StereotypeAssertion*> execute(const QueryAst& ast, const GraphStore& store,
                                                const CategoryLexicon& lexicon) {
  return execute(plan(ast, store), store, lexicon);
}

}  // namespace stereograph::query
