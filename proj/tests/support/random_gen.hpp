#ifndef STEREOGRAPH_TESTS_SUPPORT_RANDOM_GEN_HPP
#define STEREOGRAPH_TESTS_SUPPORT_RANDOM_GEN_HPP

// Hand-rolled generators for randomized property tests: valid-by-
// construction assertions, stores, and grammar-valid query ASTs.

#include <random>
#include <string>
#include <vector>

#include "stereograph/canonical.hpp"
#include "stereograph/graph_store.hpp"
#include "stereograph/query.hpp"
#include "stereograph/schema.hpp"

namespace testsupport {

struct Rng {
  explicit Rng(unsigned seed) : engine(seed) {}

  std::mt19937 engine;

  int range(int lo, int hi) {  // inclusive
    return std::uniform_int_distribution<int>(lo, hi)(engine);
  }
  bool chance(double p) { return std::uniform_real_distribution<>(0.0, 1.0)(engine) < p; }
  template <typename T>
  const T& pick(const std::vector<T>& pool) {
    return pool[static_cast<std::size_t>(range(0, static_cast<int>(pool.size()) - 1))];
  }
};

inline const std::vector<std::string>& axis_pool() {
  static const std::vector<std::string> pool = {
      "nationality", "race", "gender", "caste", "age",
      "profession",  "disability", "religion", "sexual-orientation", "zodiac-sign"};
  return pool;
}

inline const std::vector<std::string>& identity_pool() {
  static const std::vector<std::string> pool = {
      "alphans", "betans", "gammans", "deltans", "epsilons", "zetans",
      "etans",   "thetans", "iotans",  "kappans"};
  return pool;
}

inline const std::vector<std::string>& term_pool() {
  static const std::vector<std::string> pool = {
      "stoic",  "brash", "frugal", "jovial", "stern",
      "timid",  "crafty", "blunt", "meek",  "proud"};
  return pool;
}

inline const std::vector<std::string>& social_group_pool() {
  static const std::vector<std::string> pool = {"Northerners", "Southerners", "Islanders",
                                                "Highlanders"};
  return pool;
}

inline const std::vector<std::string>& region_pool() {
  static const std::vector<std::string> pool = {
      "Atlantis", "Atlantis/Coast", "Atlantis/Coast/Harbour", "Mu", "Mu/Plains", "Lemuria"};
  return pool;
}

inline const std::vector<std::string>& source_pool() {
  static const std::vector<std::string> pool = {"SrcA", "SrcB", "SrcC"};
  return pool;
}

inline stereograph::Ordinal random_ordinal(Rng& rng, bool allow_unspecified = true) {
  using stereograph::Ordinal;
  int hi = allow_unspecified ? 3 : 2;
  switch (rng.range(0, hi)) {
    case 0: return Ordinal::Low;
    case 1: return Ordinal::Medium;
    case 2: return Ordinal::High;
    default: return Ordinal::Unspecified;
  }
}

inline stereograph::TriState random_tristate(Rng& rng) {
  switch (rng.range(0, 2)) {
    case 0: return stereograph::TriState::True;
    case 1: return stereograph::TriState::False;
    default: return stereograph::TriState::Unknown;
  }
}

inline stereograph::RawRecord random_raw(Rng& rng) {
  using namespace stereograph;
  RawRecord raw;
  int constituents = rng.chance(0.2) ? 2 : 1;
  for (int i = 0; i < constituents; ++i) {
    raw.target.constituents.push_back({rng.pick(axis_pool()), rng.pick(identity_pool())});
  }
  raw.target.marginalized = random_tristate(rng);
  raw.target.demographic = random_tristate(rng);

  raw.attribute.term = rng.pick(term_pool());
  raw.attribute.valence.warmth = random_ordinal(rng);
  raw.attribute.valence.competence = random_ordinal(rng);
  raw.attribute.valence.offensiveness = random_ordinal(rng);
  raw.attribute.valence.morality = random_ordinal(rng);
  if (rng.chance(0.3)) raw.attribute.modalities.insert(Modality::Text);
  if (rng.chance(0.15)) raw.attribute.modalities.insert(Modality::Image);

  raw.association.statistical_basis =
      rng.chance(0.4) ? StatisticalBasis::Unknown
                      : (rng.chance(0.5) ? StatisticalBasis::Supported
                                         : StatisticalBasis::Unsupported);
  raw.association.impact = random_ordinal(rng);
  if (rng.chance(0.3)) raw.association.social_salience = rng.range(0, 100) / 100.0;
  if (rng.chance(0.2)) {
    raw.association.corpus_salience =
        CorpusSalience{rng.range(0, 100) / 100.0, rng.pick(source_pool())};
  }

  if (rng.chance(0.6)) raw.perceiver.social_group = rng.pick(social_group_pool());
  if (rng.chance(0.6)) raw.perceiver.region = split_region_path(rng.pick(region_pool()));

  if (rng.chance(0.5)) {
    TimeInterval interval;
    int year = rng.range(1900, 2020);
    int style = rng.range(0, 2);
    if (style == 0) {
      interval.start_year = year;
      interval.end_year = year + rng.range(0, 30);
    } else if (style == 1) {
      interval.start_year = year;
    } else {
      interval.end_year = year;
    }
    raw.context.time_interval = interval;
  }
  raw.context.reference = rng.chance(0.5) ? "corpus-alpha" : "corpus-beta";
  switch (rng.range(0, 5)) {
    case 0: raw.context.provenance_category = ProvenanceCategory::Media; break;
    case 1: raw.context.provenance_category = ProvenanceCategory::Political; break;
    case 2: raw.context.provenance_category = ProvenanceCategory::Religious; break;
    case 3: raw.context.provenance_category = ProvenanceCategory::Scientific; break;
    case 4: raw.context.provenance_category = ProvenanceCategory::Folklore; break;
    default: raw.context.provenance_category = ProvenanceCategory::Unknown; break;
  }

  raw.source.source_id = rng.pick(source_pool());
  raw.source.record_locator = std::to_string(rng.range(1, 100000));
  raw.source.retrieved_on = "2024-01-15";
  if (rng.chance(0.2)) raw.source.license = "CC-BY-4.0";
  return raw;
}

inline stereograph::GraphStore random_store(Rng& rng, int max_assertions) {
  stereograph::GraphStore store;
  int n = rng.range(0, max_assertions);
  for (int i = 0; i < n; ++i) {
    store.upsert(stereograph::canonicalize(random_raw(rng)));
  }
  return store;
}

inline stereograph::query::CategoryLexicon test_lexicon() {
  stereograph::query::CategoryLexicon lexicon;
  lexicon.define("calm", {"stoic", "meek", "timid"});
  lexicon.define("forceful", {"brash", "stern", "blunt", "proud"});
  return lexicon;
}

inline stereograph::query::NodePtr random_leaf(Rng& rng) {
  using namespace stereograph::query;
  auto compare = [&](std::string path, CompareOp op, Literal lit) {
    auto node = std::make_shared<Node>();
    node->kind = Node::Kind::Compare;
    node->path = std::move(path);
    node->op = op;
    node->literal = std::move(lit);
    return NodePtr(node);
  };
  CompareOp eqne = rng.chance(0.7) ? CompareOp::Eq : CompareOp::Ne;
  switch (rng.range(0, 13)) {
    case 0: return compare("target.axis", eqne, Literal::of(rng.pick(axis_pool())));
    case 1: return compare("target.identity", eqne, Literal::of(rng.pick(identity_pool())));
    case 2: return compare("target.marginalized", eqne, Literal::of(rng.chance(0.5)));
    case 3: return compare("target.demographic", eqne, Literal::of(rng.chance(0.5)));
    case 4: {
      // target.intersectional normalizes to IsTrue / Not(IsTrue)
      auto is_true = std::make_shared<Node>();
      is_true->kind = Node::Kind::IsTrue;
      is_true->path = "target.intersectional";
      return rng.chance(0.5) ? NodePtr(is_true) : make_not(is_true);
    }
    case 5: return compare("attribute.term", eqne, Literal::of(rng.pick(term_pool())));
    case 6: {
      const char* paths[] = {"attribute.warmth", "attribute.competence",
                             "attribute.offensiveness", "attribute.morality",
                             "association.impact"};
      CompareOp ops[] = {CompareOp::Eq, CompareOp::Ne, CompareOp::Ge, CompareOp::Le};
      return compare(paths[rng.range(0, 4)], ops[rng.range(0, 3)],
                     Literal::of(random_ordinal(rng, false)));
    }
    case 7:
      return compare("attribute.modality", eqne, Literal::of(std::string(rng.chance(0.5) ? "text" : "image")));
    case 8: {
      const char* tokens[] = {"supported", "unsupported", "unknown"};
      return compare("association.statisticalBasis", eqne,
                     Literal::of(std::string(tokens[rng.range(0, 2)])));
    }
    case 9:
      return compare("perceiver.socialGroup", eqne, Literal::of(rng.pick(social_group_pool())));
    case 10: {
      if (rng.chance(0.5)) {
        auto node = std::make_shared<Node>();
        node->kind = Node::Kind::Within;
        node->path = "perceiver.region";
        node->region = rng.pick(region_pool());
        return node;
      }
      return compare("perceiver.region", eqne, Literal::of(rng.pick(region_pool())));
    }
    case 11: {
      auto node = std::make_shared<Node>();
      node->kind = Node::Kind::Overlaps;
      node->path = "context.time";
      if (rng.chance(0.8)) node->interval_start = rng.range(1890, 2010);
      if (rng.chance(0.8)) {
        int lo = node->interval_start ? *node->interval_start : 1890;
        node->interval_end = lo + rng.range(0, 40);
      }
      return node;
    }
    case 12: {
      auto node = std::make_shared<Node>();
      node->kind = Node::Kind::InCategory;
      node->path = "attribute.term";
      node->category = rng.chance(0.5) ? "calm" : "forceful";
      return node;
    }
    default: return compare("source.sourceId", eqne, Literal::of(rng.pick(source_pool())));
  }
}

inline stereograph::query::NodePtr random_node(Rng& rng, int depth) {
  using namespace stereograph::query;
  if (depth <= 1 || rng.chance(0.35)) return random_leaf(rng);
  switch (rng.range(0, 2)) {
    case 0: return make_and(random_node(rng, depth - 1), random_node(rng, depth - 1));
    case 1: return make_or(random_node(rng, depth - 1), random_node(rng, depth - 1));
    default: return make_not(random_node(rng, depth - 1));
  }
}

inline stereograph::query::QueryAst random_ast(Rng& rng, int max_depth) {
  stereograph::query::QueryAst ast;
  if (!rng.chance(0.1)) ast.predicate = random_node(rng, max_depth);
  if (rng.chance(0.35)) {
    static const std::vector<std::string> orderable = {
        "id",
        "target.axis",
        "target.identity",
        "target.key",
        "target.marginalized",
        "attribute.term",
        "attribute.offensiveness",
        "attribute.warmth",
        "association.impact",
        "perceiver.socialGroup",
        "perceiver.region",
        "source.sourceId",
    };
    ast.order_by = rng.pick(orderable);
  }
  if (rng.chance(0.3)) ast.limit = static_cast<std::size_t>(rng.range(1, 40));
  return ast;
}

}  // namespace testsupport

#endif  // STEREOGRAPH_TESTS_SUPPORT_RANDOM_GEN_HPP
