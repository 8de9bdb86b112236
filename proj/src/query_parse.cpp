#include <algorithm>
#include <cctype>

#include "query_fields.hpp"
#include "stereograph/errors.hpp"
#include "stereograph/query.hpp"

namespace stereograph::query {

namespace {

struct FieldTableEntry {
  std::string_view path;
  FieldInfo info;
};

constexpr FieldTableEntry kFields[] = {
    {"id", {FieldId::Id, FieldClass::StringExact, "id"}},
    {"target.axis", {FieldId::TargetAxis, FieldClass::MultiString, "target.axis"}},
    {"target.identity", {FieldId::TargetIdentity, FieldClass::MultiString, "target.identity"}},
    {"target.key", {FieldId::TargetKey, FieldClass::StringExact, "target.key"}},
    {"target.marginalized",
     {FieldId::TargetMarginalized, FieldClass::TriBool, "target.marginalized"}},
    {"target.demographic",
     {FieldId::TargetDemographic, FieldClass::TriBool, "target.demographic"}},
    {"target.intersectional",
     {FieldId::TargetIntersectional, FieldClass::DerivedBool, "target.intersectional"}},
    {"attribute.term", {FieldId::AttributeTerm, FieldClass::StringExact, "attribute.term"}},
    {"attribute.warmth", {FieldId::Warmth, FieldClass::OrdinalField, "attribute.warmth"}},
    {"attribute.valence.warmth", {FieldId::Warmth, FieldClass::OrdinalField, "attribute.warmth"}},
    {"attribute.competence",
     {FieldId::Competence, FieldClass::OrdinalField, "attribute.competence"}},
    {"attribute.valence.competence",
     {FieldId::Competence, FieldClass::OrdinalField, "attribute.competence"}},
    {"attribute.offensiveness",
     {FieldId::Offensiveness, FieldClass::OrdinalField, "attribute.offensiveness"}},
    {"attribute.valence.offensiveness",
     {FieldId::Offensiveness, FieldClass::OrdinalField, "attribute.offensiveness"}},
    {"attribute.morality", {FieldId::Morality, FieldClass::OrdinalField, "attribute.morality"}},
    {"attribute.valence.morality",
     {FieldId::Morality, FieldClass::OrdinalField, "attribute.morality"}},
    {"attribute.modality", {FieldId::Modality, FieldClass::MultiString, "attribute.modality"}},
    {"attribute.modalities", {FieldId::Modality, FieldClass::MultiString, "attribute.modality"}},
    {"association.statisticalBasis",
     {FieldId::StatisticalBasis, FieldClass::StringExact, "association.statisticalBasis"}},
    {"association.impact", {FieldId::Impact, FieldClass::OrdinalField, "association.impact"}},
    {"perceiver.socialGroup",
     {FieldId::SocialGroup, FieldClass::StringExact, "perceiver.socialGroup"}},
    {"perceiver.region", {FieldId::Region, FieldClass::RegionPath, "perceiver.region"}},
    {"context.reference", {FieldId::Reference, FieldClass::StringExact, "context.reference"}},
    {"context.provenanceCategory",
     {FieldId::Provenance, FieldClass::StringExact, "context.provenanceCategory"}},
    {"context.time", {FieldId::Time, FieldClass::TimeField, "context.time"}},
    {"source.sourceId", {FieldId::SourceId, FieldClass::StringExact, "source.sourceId"}},
};

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

struct Token {
  enum class Type { Ident, String, Int, Symbol, End };
  Type type = Type::End;
  std::string text;        // ident spelling / decoded string / symbol
  long long number = 0;    // for Int
  std::size_t offset = 0;  // 1-based byte offset of the first character
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    current_ = Token{};
    current_.offset = pos_ + 1;
    if (pos_ >= text_.size()) {
      current_.type = Token::Type::End;
      return;
    }
    char c = text_[pos_];
    if (c == '"') {
      lex_string();
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && pos_ + 1 < text_.size() &&
         std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
      lex_int();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      lex_ident();
      return;
    }
    switch (c) {
      case '=': current_.type = Token::Type::Symbol; current_.text = "="; ++pos_; return;
      case '!':
      case '>':
      case '<': {
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
          current_.type = Token::Type::Symbol;
          current_.text = std::string(1, c) + "=";
          pos_ += 2;
          return;
        }
        throw QuerySyntaxError(pos_ + 1, "comparison operator");
      }
      case '(': case ')': case '[': case ']': case ',':
        current_.type = Token::Type::Symbol;
        current_.text = std::string(1, c);
        ++pos_;
        return;
      default:
        throw QuerySyntaxError(pos_ + 1, "token");
    }
  }

  void lex_string() {
    std::size_t start = pos_;
    ++pos_;  // opening quote
    std::string value;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '"') {
        ++pos_;
        current_.type = Token::Type::String;
        current_.text = std::move(value);
        current_.offset = start + 1;
        return;
      }
      if (c == '\\') {
        if (pos_ + 1 >= text_.size()) break;
        char next = text_[pos_ + 1];
        if (next == '"' || next == '\\') {
          value += next;
          pos_ += 2;
          continue;
        }
        throw QuerySyntaxError(pos_ + 2, "escape character \" or \\");
      }
      value += c;
      ++pos_;
    }
    throw QuerySyntaxError(text_.size() + 1, "closing quote");
  }

  void lex_int() {
    std::size_t start = pos_;
    if (text_[pos_] == '-') ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    current_.type = Token::Type::Int;
    current_.text = std::string(text_.substr(start, pos_ - start));
    current_.number = std::stoll(current_.text);
    current_.offset = start + 1;
  }

  void lex_ident() {
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.') {
        ++pos_;
        continue;
      }
      break;
    }
    current_.type = Token::Type::Ident;
    current_.text = std::string(text_.substr(start, pos_ - start));
    current_.offset = start + 1;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Token current_;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) {}

  QueryAst parse_query() {
    expect_keyword("FIND");
    expect_keyword("assertions");
    QueryAst ast;
    if (accept_keyword("WHERE")) ast.predicate = parse_or();
    if (accept_keyword("ORDER")) {
      expect_keyword("BY");
      Token path = expect(Token::Type::Ident, "path");
      auto info = resolve_field(path.text);
      if (!info) throw UnknownFieldError(path.text);
      if (info->cls == FieldClass::TimeField) {
        throw TypeMismatchError(std::string(info->canonical_path), "ORDER BY");
      }
      ast.order_by = std::string(info->canonical_path);
    }
    if (accept_keyword("LIMIT")) {
      Token n = expect(Token::Type::Int, "positive integer");
      if (n.number <= 0) throw QuerySyntaxError(n.offset, "positive integer");
      ast.limit = static_cast<std::size_t>(n.number);
    }
    if (lexer_.peek().type != Token::Type::End) {
      throw QuerySyntaxError(lexer_.peek().offset, "end of query");
    }
    return ast;
  }

 private:
  NodePtr parse_or() {
    NodePtr node = parse_and();
    while (accept_keyword("OR")) node = make_or(node, parse_and());
    return node;
  }

  NodePtr parse_and() {
    NodePtr node = parse_unary();
    while (accept_keyword("AND")) node = make_and(node, parse_unary());
    return node;
  }

  NodePtr parse_unary() {
    if (accept_keyword("NOT")) return make_not(parse_operand());
    return parse_operand();
  }

  NodePtr parse_operand() {
    if (accept_symbol("(")) {
      NodePtr inner = parse_or();
      expect_symbol(")");
      return inner;
    }
    return parse_comparison();
  }

  NodePtr parse_comparison() {
    const Token& head = lexer_.peek();
    if (head.type != Token::Type::Ident) throw QuerySyntaxError(head.offset, "field path");
    Token path = lexer_.take();
    auto info = resolve_field(path.text);
    if (!info) throw UnknownFieldError(path.text);

    const Token& next = lexer_.peek();
    if (next.type == Token::Type::Symbol &&
        (next.text == "=" || next.text == "!=" || next.text == ">=" || next.text == "<=")) {
      Token op_token = lexer_.take();
      CompareOp op = op_token.text == "=" ? CompareOp::Eq
                     : op_token.text == "!=" ? CompareOp::Ne
                     : op_token.text == ">=" ? CompareOp::Ge
                                             : CompareOp::Le;
      Literal literal = parse_literal();
      return make_compare(*info, op, std::move(literal), op_token.text);
    }
    if (next.type == Token::Type::Ident && iequals(next.text, "IN")) {
      lexer_.take();
      Token cat = lexer_.peek();
      if (cat.type != Token::Type::Ident || !iequals(cat.text, "category")) {
        throw QuerySyntaxError(cat.offset, "category(");
      }
      lexer_.take();
      expect_symbol("(");
      Token name = expect(Token::Type::String, "category name string");
      expect_symbol(")");
      if (info->id != FieldId::AttributeTerm) {
        throw TypeMismatchError(std::string(info->canonical_path), "IN category(...)");
      }
      auto node = std::make_shared<Node>();
      node->kind = Node::Kind::InCategory;
      node->path = std::string(info->canonical_path);
      node->category = name.text;
      return node;
    }
    if (next.type == Token::Type::Ident && iequals(next.text, "OVERLAPS")) {
      lexer_.take();
      expect_symbol("[");
      std::optional<int> start, end;
      if (lexer_.peek().type == Token::Type::Int) {
        start = static_cast<int>(lexer_.take().number);
      }
      expect_symbol(",");
      if (lexer_.peek().type == Token::Type::Int) {
        end = static_cast<int>(lexer_.take().number);
      }
      expect_symbol("]");
      if (info->cls != FieldClass::TimeField) {
        throw TypeMismatchError(std::string(info->canonical_path), "OVERLAPS");
      }
      auto node = std::make_shared<Node>();
      node->kind = Node::Kind::Overlaps;
      node->path = std::string(info->canonical_path);
      node->interval_start = start;
      node->interval_end = end;
      return node;
    }
    if (next.type == Token::Type::Ident && iequals(next.text, "WITHIN")) {
      lexer_.take();
      Token region = expect(Token::Type::String, "region path string");
      if (info->cls != FieldClass::RegionPath) {
        throw TypeMismatchError(std::string(info->canonical_path), "WITHIN");
      }
      auto node = std::make_shared<Node>();
      node->kind = Node::Kind::Within;
      node->path = std::string(info->canonical_path);
      node->region = region.text;
      return node;
    }
    throw QuerySyntaxError(next.offset, "comparison operator");
  }

  Literal parse_literal() {
    const Token& t = lexer_.peek();
    switch (t.type) {
      case Token::Type::String: return Literal::of(lexer_.take().text);
      case Token::Type::Int: return Literal::of(lexer_.take().number);
      case Token::Type::Ident: {
        if (iequals(t.text, "true")) { lexer_.take(); return Literal::of(true); }
        if (iequals(t.text, "false")) { lexer_.take(); return Literal::of(false); }
        if (iequals(t.text, "low")) { lexer_.take(); return Literal::of(Ordinal::Low); }
        if (iequals(t.text, "medium")) { lexer_.take(); return Literal::of(Ordinal::Medium); }
        if (iequals(t.text, "high")) { lexer_.take(); return Literal::of(Ordinal::High); }
        throw QuerySyntaxError(t.offset, "literal");
      }
      default: throw QuerySyntaxError(t.offset, "literal");
    }
  }

  NodePtr make_compare(const FieldInfo& info, CompareOp op, Literal literal,
                       const std::string& op_text) {
    const std::string path(info.canonical_path);
    auto require = [&](bool ok) {
      if (!ok) throw TypeMismatchError(path, op_text);
    };
    switch (info.cls) {
      case FieldClass::StringExact:
      case FieldClass::MultiString:
      case FieldClass::RegionPath:
        require(op == CompareOp::Eq || op == CompareOp::Ne);
        require(literal.kind == Literal::Kind::String);
        break;
      case FieldClass::TriBool:
        require(op == CompareOp::Eq || op == CompareOp::Ne);
        require(literal.kind == Literal::Kind::Bool);
        break;
      case FieldClass::DerivedBool: {
        require(op == CompareOp::Eq || op == CompareOp::Ne);
        require(literal.kind == Literal::Kind::Bool);
        // Normalize to the derived-flag leaf: X = true and X != false mean
        // the flag holds; the other two spellings mean its negation.
        auto is_true = std::make_shared<Node>();
        is_true->kind = Node::Kind::IsTrue;
        is_true->path = path;
        bool affirmative = (op == CompareOp::Eq) == literal.boolean;
        return affirmative ? NodePtr(is_true) : make_not(is_true);
      }
      case FieldClass::OrdinalField:
        require(literal.kind == Literal::Kind::OrdinalValue);
        break;
      case FieldClass::TimeField:
        throw TypeMismatchError(path, op_text);
    }
    auto node = std::make_shared<Node>();
    node->kind = Node::Kind::Compare;
    node->path = path;
    node->op = op;
    node->literal = std::move(literal);
    return node;
  }

  // ---- token helpers ----

  bool accept_keyword(std::string_view keyword) {
    const Token& t = lexer_.peek();
    if (t.type == Token::Type::Ident && iequals(t.text, keyword)) {
      lexer_.take();
      return true;
    }
    return false;
  }

  void expect_keyword(std::string_view keyword) {
    if (!accept_keyword(keyword)) {
      throw QuerySyntaxError(lexer_.peek().offset, std::string(keyword));
    }
  }

  bool accept_symbol(std::string_view symbol) {
    const Token& t = lexer_.peek();
    if (t.type == Token::Type::Symbol && t.text == symbol) {
      lexer_.take();
      return true;
    }
    return false;
  }

  void expect_symbol(std::string_view symbol) {
    if (!accept_symbol(symbol)) {
      throw QuerySyntaxError(lexer_.peek().offset, std::string(symbol));
    }
  }

  Token expect(Token::Type type, std::string_view what) {
    if (lexer_.peek().type != type) throw QuerySyntaxError(lexer_.peek().offset, std::string(what));
    return lexer_.take();
  }

  Lexer lexer_;
};

std::string quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string print_literal(const Literal& literal) {
  switch (literal.kind) {
    case Literal::Kind::String: return quote(literal.text);
    case Literal::Kind::Int: return std::to_string(literal.number);
    case Literal::Kind::Bool: return literal.boolean ? "true" : "false";
    case Literal::Kind::OrdinalValue: return std::string(to_string(literal.ordinal));
  }
  return "";
}

std::string print_node(const NodePtr& node) {
  switch (node->kind) {
    case Node::Kind::And:
      return "(" + print_node(node->lhs) + " AND " + print_node(node->rhs) + ")";
    case Node::Kind::Or:
      return "(" + print_node(node->lhs) + " OR " + print_node(node->rhs) + ")";
    case Node::Kind::Not: {
      const Node& child = *node->lhs;
      bool leaf = child.kind != Node::Kind::And && child.kind != Node::Kind::Or &&
                  child.kind != Node::Kind::Not;
      std::string inner = print_node(node->lhs);
      return leaf ? "NOT " + inner : "NOT (" + inner + ")";
    }
    case Node::Kind::Compare:
      return node->path + " " + std::string(to_string(node->op)) + " " +
             print_literal(node->literal);
    case Node::Kind::InCategory:
      return node->path + " IN category(" + quote(node->category) + ")";
    case Node::Kind::Overlaps: {
      std::string out = node->path + " OVERLAPS [";
      if (node->interval_start) out += std::to_string(*node->interval_start);
      out += ", ";
      if (node->interval_end) out += std::to_string(*node->interval_end);
      out += "]";
      return out;
    }
    case Node::Kind::Within:
      return node->path + " WITHIN " + quote(node->region);
    case Node::Kind::IsTrue:
      return node->path + " = true";
  }
  return "";
}

void dump_node(const NodePtr& node, std::string& out, int depth) {
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  switch (node->kind) {
    case Node::Kind::And:
    case Node::Kind::Or:
      out += node->kind == Node::Kind::And ? "(and\n" : "(or\n";
      dump_node(node->lhs, out, depth + 1);
      dump_node(node->rhs, out, depth + 1);
      out.append(static_cast<std::size_t>(depth) * 2, ' ');
      out += ")\n";
      return;
    case Node::Kind::Not:
      out += "(not\n";
      dump_node(node->lhs, out, depth + 1);
      out.append(static_cast<std::size_t>(depth) * 2, ' ');
      out += ")\n";
      return;
    case Node::Kind::Compare:
      out += "(compare " + node->path + " " + std::string(to_string(node->op)) + " " +
             print_literal(node->literal) + ")\n";
      return;
    case Node::Kind::InCategory:
      out += "(in-category " + node->path + " " + quote(node->category) + ")\n";
      return;
    case Node::Kind::Overlaps:
      out += "(overlaps " + node->path + " [" +
             (node->interval_start ? std::to_string(*node->interval_start) : "") + ", " +
             (node->interval_end ? std::to_string(*node->interval_end) : "") + "])\n";
      return;
    case Node::Kind::Within:
      out += "(within " + node->path + " " + quote(node->region) + ")\n";
      return;
    case Node::Kind::IsTrue:
      out += "(is-true " + node->path + ")\n";
      return;
  }
}

}  // namespace

std::string_view to_string(CompareOp op) {
  switch (op) {
    case CompareOp::Eq: return "=";
    case CompareOp::Ne: return "!=";
    case CompareOp::Ge: return ">=";
    case CompareOp::Le: return "<=";
  }
  return "=";
}

std::optional<FieldInfo> resolve_field(std::string_view path) {
  for (const auto& entry : kFields) {
    if (entry.path == path) return entry.info;
  }
  return std::nullopt;
}

const std::vector<std::string>& published_paths() {
  static const std::vector<std::string> paths = [] {
    std::vector<std::string> out;
    for (const auto& entry : kFields) {
      if (entry.path == entry.info.canonical_path) out.emplace_back(entry.path);
    }
    return out;
  }();
  return paths;
}

NodePtr make_and(NodePtr lhs, NodePtr rhs) {
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::And;
  node->lhs = std::move(lhs);
  node->rhs = std::move(rhs);
  return node;
}

NodePtr make_or(NodePtr lhs, NodePtr rhs) {
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::Or;
  node->lhs = std::move(lhs);
  node->rhs = std::move(rhs);
  return node;
}

NodePtr make_not(NodePtr operand) {
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::Not;
  node->lhs = std::move(operand);
  return node;
}

bool node_equal(const NodePtr& a, const NodePtr& b) {
  if (!a || !b) return !a && !b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Node::Kind::And:
    case Node::Kind::Or:
      return node_equal(a->lhs, b->lhs) && node_equal(a->rhs, b->rhs);
    case Node::Kind::Not:
      return node_equal(a->lhs, b->lhs);
    case Node::Kind::Compare:
      return a->path == b->path && a->op == b->op && a->literal == b->literal;
    case Node::Kind::InCategory:
      return a->path == b->path && a->category == b->category;
    case Node::Kind::Overlaps:
      return a->path == b->path && a->interval_start == b->interval_start &&
             a->interval_end == b->interval_end;
    case Node::Kind::Within:
      return a->path == b->path && a->region == b->region;
    case Node::Kind::IsTrue:
      return a->path == b->path;
  }
  return false;
}

bool ast_equal(const QueryAst& a, const QueryAst& b) {
  return node_equal(a.predicate, b.predicate) && a.order_by == b.order_by && a.limit == b.limit;
}

QueryAst parse(std::string_view text) {
  return Parser(text).parse_query();
}

std::string print(const QueryAst& ast) {
  std::string out = "FIND assertions";
  if (ast.predicate) out += " WHERE " + print_node(ast.predicate);
  if (ast.order_by) out += " ORDER BY " + *ast.order_by;
  if (ast.limit) out += " LIMIT " + std::to_string(*ast.limit);
  return out;
}

std::string dump(const QueryAst& ast) {
  std::string out = "(query\n";
  if (ast.predicate) {
    dump_node(ast.predicate, out, 1);
  } else {
    out += "  (all)\n";
  }
  if (ast.order_by) out += "  (order-by " + *ast.order_by + ")\n";
  if (ast.limit) out += "  (limit " + std::to_string(*ast.limit) + ")\n";
  out += ")\n";
  return out;
}

void CategoryLexicon::define(std::string name, std::set<std::string> terms) {
  if (terms.empty()) throw InvalidRangeError("category " + name, "term set is empty");
  auto [it, inserted] = categories_.emplace(std::move(name), std::move(terms));
  if (!inserted) throw InvalidRangeError("category " + it->first, "defined twice");
}

const std::set<std::string>* CategoryLexicon::find(std::string_view name) const {
  auto it = categories_.find(name);
  return it == categories_.end() ? nullptr : &it->second;
}

CategoryLexicon CategoryLexicon::from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw Error("category lexicon must be a JSON object");
  CategoryLexicon lexicon;
  for (const auto& [name, terms] : doc.items()) {
    if (!terms.is_array()) throw Error("category \"" + name + "\" must map to an array");
    std::set<std::string> set;
    for (const auto& t : terms) {
      if (!t.is_string()) throw Error("category \"" + name + "\" has a non-string term");
      set.insert(t.get<std::string>());
    }
    lexicon.define(name, std::move(set));
  }
  return lexicon;
}

}  // namespace stereograph::query
