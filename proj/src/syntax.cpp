#include "falc/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "falc/error.hpp"

namespace falc {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

bool is_plain_ident(const std::string& s) {
  if (s.empty() || !ident_start(s[0])) return false;
  return std::all_of(s.begin(), s.end(), ident_char);
}

std::string quote_name(const std::string& s) {
  if (is_plain_ident(s)) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

// ---------------------------------------------------------------------------
// Concept

Concept Concept::primitive(std::string name) {
  return Concept(std::make_shared<const Node>(Node{ConceptKind::Primitive, std::move(name), {}, {}}));
}

Concept Concept::conj(Concept lhs, Concept rhs) {
  return Concept(std::make_shared<const Node>(
      Node{ConceptKind::And, {}, std::make_shared<const Concept>(std::move(lhs)),
           std::make_shared<const Concept>(std::move(rhs))}));
}

Concept Concept::disj(Concept lhs, Concept rhs) {
  return Concept(std::make_shared<const Node>(
      Node{ConceptKind::Or, {}, std::make_shared<const Concept>(std::move(lhs)),
           std::make_shared<const Concept>(std::move(rhs))}));
}

Concept Concept::box(std::string role, Concept body) {
  return Concept(std::make_shared<const Node>(
      Node{ConceptKind::Box, std::move(role), std::make_shared<const Concept>(std::move(body)), {}}));
}

Concept Concept::dia(std::string role, Concept body) {
  return Concept(std::make_shared<const Node>(
      Node{ConceptKind::Dia, std::move(role), std::make_shared<const Concept>(std::move(body)), {}}));
}

std::size_t Concept::node_count() const {
  switch (kind()) {
    case ConceptKind::Primitive: return 1;
    case ConceptKind::Box:
    case ConceptKind::Dia: return 1 + body().node_count();
    default: return 1 + lhs().node_count() + rhs().node_count();
  }
}

int Concept::modal_depth() const {
  switch (kind()) {
    case ConceptKind::Primitive: return 0;
    case ConceptKind::Box:
    case ConceptKind::Dia: return 1 + body().modal_depth();
    default: return std::max(lhs().modal_depth(), rhs().modal_depth());
  }
}

std::string Concept::str() const {
  auto operand = [](const Concept& c) {
    return c.is_binary() ? "(" + c.str() + ")" : c.str();
  };
  switch (kind()) {
    case ConceptKind::Primitive: return quote_name(name());
    case ConceptKind::And: return operand(lhs()) + " & " + operand(rhs());
    case ConceptKind::Or: return operand(lhs()) + " | " + operand(rhs());
    case ConceptKind::Box: return "[" + quote_name(name()) + "]" + operand(body());
    case ConceptKind::Dia: return "<" + quote_name(name()) + ">" + operand(body());
  }
  return {};
}

bool operator==(const Concept& a, const Concept& b) {
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Concept& a, const Concept& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (auto c = a.name() <=> b.name(); c != 0) return c;
  switch (a.kind()) {
    case ConceptKind::Primitive: return std::strong_ordering::equal;
    case ConceptKind::Box:
    case ConceptKind::Dia: return a.body() <=> b.body();
    default:
      if (auto c = a.lhs() <=> b.lhs(); c != 0) return c;
      return a.rhs() <=> b.rhs();
  }
}

// ---------------------------------------------------------------------------
// Terms and signatures

ABoxTerm ABoxTerm::member(std::string object, Concept c) {
  ABoxTerm t;
  t.kind = TermKind::Member;
  t.object = std::move(object);
  t.body = std::move(c);
  return t;
}

ABoxTerm ABoxTerm::describes(std::string feature, Concept c) {
  ABoxTerm t;
  t.kind = TermKind::Describes;
  t.feature = std::move(feature);
  t.body = std::move(c);
  return t;
}

ABoxTerm ABoxTerm::inc(std::string object, std::string feature) {
  ABoxTerm t;
  t.kind = TermKind::Inc;
  t.object = std::move(object);
  t.feature = std::move(feature);
  return t;
}

ABoxTerm ABoxTerm::box_rel(std::string role, std::string object, std::string feature) {
  ABoxTerm t;
  t.kind = TermKind::BoxRel;
  t.role = std::move(role);
  t.object = std::move(object);
  t.feature = std::move(feature);
  return t;
}

ABoxTerm ABoxTerm::dia_rel(std::string role, std::string feature, std::string object) {
  ABoxTerm t;
  t.kind = TermKind::DiaRel;
  t.role = std::move(role);
  t.object = std::move(object);
  t.feature = std::move(feature);
  return t;
}

std::string ABoxTerm::str() const {
  switch (kind) {
    case TermKind::Member: return quote_name(object) + " : " + body->str();
    case TermKind::Describes: return quote_name(feature) + " :: " + body->str();
    case TermKind::Inc: return "I(" + quote_name(object) + ", " + quote_name(feature) + ")";
    case TermKind::BoxRel: return quote_name(role) + "(" + quote_name(object) + ", " + quote_name(feature) + ")";
    case TermKind::DiaRel: return quote_name(role) + "(" + quote_name(feature) + ", " + quote_name(object) + ")";
  }
  return {};
}

namespace {

bool contains(const std::vector<std::string>& v, const std::string& n) {
  return std::find(v.begin(), v.end(), n) != v.end();
}

}  // namespace

bool Signature::is_object(const std::string& n) const { return contains(objects, n); }
bool Signature::is_feature(const std::string& n) const { return contains(features, n); }
bool Signature::is_box_role(const std::string& n) const { return contains(box_roles, n); }
bool Signature::is_dia_role(const std::string& n) const { return contains(dia_roles, n); }
bool Signature::is_concept(const std::string& n) const { return contains(concepts, n); }

bool structurally_equal(const KnowledgeBase& a, const KnowledgeBase& b) {
  const bool algebras = (a.algebra && b.algebra) ? *a.algebra == *b.algebra : a.algebra == b.algebra;
  return algebras && a.signature == b.signature && a.abox == b.abox && a.tbox == b.tbox &&
         a.model == b.model;
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok { Ident, Number, String, Symbol, Newline, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

[[noreturn]] void fail(ErrorKind kind, int line, int col, const std::string& msg) {
  throw Error(kind, "line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + msg);
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    i += n;
    col += static_cast<int>(n);
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      out.push_back({Tok::Newline, "\n", line, col});
      ++i;
      ++line;
      col = 1;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const int start_col = col;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      out.push_back({Tok::Ident, text.substr(i, j - i), line, start_col});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j + 1 < text.size() && (text[j] == '/' || text[j] == '.') &&
          std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
        ++j;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      }
      // Lattice element names such as "0a" lex as one token.
      while (j < text.size() && ident_char(text[j])) ++j;
      out.push_back({Tok::Number, text.substr(i, j - i), line, start_col});
      advance(j - i);
      continue;
    }
    if (c == '"') {
      std::size_t j = i + 1;
      std::string s;
      while (j < text.size() && text[j] != '"' && text[j] != '\n') {
        if (text[j] == '\\' && j + 1 < text.size()) ++j;
        s += text[j++];
      }
      if (j >= text.size() || text[j] != '"') fail(ErrorKind::Parse, line, start_col, "unterminated string");
      out.push_back({Tok::String, s, line, start_col});
      advance(j + 1 - i);
      continue;
    }
    static const char* const symbols[] = {"!<=", "::", "<=", "==", ":", "<", ">", "=", "&", "|",
                                          "[",   "]",  "(",  ")",  ",", "{", "}", ";"};
    bool matched = false;
    for (const char* sym : symbols) {
      const std::string_view s(sym);
      if (text.compare(i, s.size(), s) == 0) {
        out.push_back({Tok::Symbol, std::string(s), line, start_col});
        advance(s.size());
        matched = true;
        break;
      }
    }
    if (!matched) fail(ErrorKind::Parse, line, start_col, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

const std::set<std::string>& keywords() {
  static const std::set<std::string> k = {"algebra", "obj",   "feat",  "box",   "dia",
                                          "concept", "tbox",  "abox",  "model", "not",
                                          "I",       "chain", "lattice"};
  return k;
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  Parser(std::vector<Token> toks, const ParseOptions& options)
      : toks_(std::move(toks)), options_(options) {}

  KnowledgeBase parse_file() {
    while (true) {
      skip_newlines();
      if (peek().kind == Tok::End) break;
      const Token& kw = peek();
      if (kw.kind != Tok::Ident) fail(ErrorKind::Parse, kw.line, kw.col, "expected a statement keyword");
      if (kw.text == "algebra") {
        parse_algebra();
      } else if (kw.text == "obj" || kw.text == "feat" || kw.text == "box" || kw.text == "dia" ||
                 kw.text == "concept") {
        parse_declaration();
      } else if (kw.text == "tbox") {
        parse_tbox();
      } else if (kw.text == "abox") {
        parse_abox();
      } else if (kw.text == "model") {
        parse_model();
      } else {
        fail(ErrorKind::Parse, kw.line, kw.col, "unknown statement '" + kw.text + "'");
      }
      end_of_statement();
    }
    if (!kb_.algebra) fail(ErrorKind::Parse, peek().line, peek().col, "missing 'algebra' header");
    return std::move(kb_);
  }

  Concept parse_concept_only() {
    Concept c = parse_or();
    skip_newlines();
    if (peek().kind != Tok::End) unexpected("end of concept");
    return c;
  }

  void set_signature(const Signature& sig) { kb_.signature = sig; }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool at_symbol(const char* s) const { return peek().kind == Tok::Symbol && peek().text == s; }
  bool accept_symbol(const char* s) {
    if (!at_symbol(s)) return false;
    next();
    return true;
  }
  [[noreturn]] void unexpected(const std::string& what) const {
    const Token& t = peek();
    const std::string got = t.kind == Tok::End ? "end of input"
                            : t.kind == Tok::Newline ? "end of line"
                                                     : "'" + t.text + "'";
    fail(ErrorKind::Parse, t.line, t.col, "expected " + what + ", got " + got);
  }
  void expect_symbol(const char* s) {
    if (!accept_symbol(s)) unexpected(std::string("'") + s + "'");
  }
  const Token& expect_ident(const std::string& what) {
    if (peek().kind != Tok::Ident) unexpected(what);
    return next();
  }
  const Token& expect_name(const std::string& what) {
    if (peek().kind != Tok::Ident && peek().kind != Tok::String) unexpected(what);
    return next();
  }
  void skip_newlines() {
    while (peek().kind == Tok::Newline) next();
  }
  void end_of_statement() {
    if (peek().kind != Tok::Newline && peek().kind != Tok::End) unexpected("end of line");
  }

  const Algebra& algebra(const Token& at) const {
    if (!kb_.algebra) fail(ErrorKind::Parse, at.line, at.col, "'algebra' header must come first");
    return *kb_.algebra;
  }

  Elem parse_bound() {
    const Token& t = peek();
    if (t.kind != Tok::Number && t.kind != Tok::Ident) unexpected("an algebra element");
    const Algebra& alg = algebra(t);
    next();
    auto e = alg.parse(t.text);
    if (!e) {
      fail(ErrorKind::BoundNotInAlgebra, t.line, t.col,
           "'" + t.text + "' is not an element of the declared algebra");
    }
    return *e;
  }

  void parse_algebra() {
    const Token& kw = next();
    if (kb_.algebra) fail(ErrorKind::Parse, kw.line, kw.col, "duplicate 'algebra' header");
    const Token& kind = expect_ident("'chain' or 'lattice'");
    if (kind.text == "chain") {
      const Token& n = peek();
      if (n.kind != Tok::Number) unexpected("chain length");
      next();
      int size = 0;
      try {
        size = std::stoi(n.text);
      } catch (...) {
        fail(ErrorKind::Parse, n.line, n.col, "bad chain length '" + n.text + "'");
      }
      try {
        kb_.algebra = std::make_shared<const Algebra>(Algebra::make_chain(size));
      } catch (const Error& e) {
        fail(e.kind(), n.line, n.col, e.what());
      }
    } else if (kind.text == "lattice") {
      expect_symbol("{");
      std::vector<std::string> elems;
      std::vector<std::pair<std::string, std::string>> edges;
      while (true) {
        skip_newlines();
        if (accept_symbol("}")) break;
        if (accept_symbol(";")) continue;
        const Token& item = expect_ident("'elem', 'edge' or '}'");
        if (item.text == "elem") {
          while (peek().kind == Tok::Ident || peek().kind == Tok::Number) elems.push_back(next().text);
        } else if (item.text == "edge") {
          auto elem_token = [&]() -> std::string {
            if (peek().kind != Tok::Ident && peek().kind != Tok::Number) unexpected("element name");
            return next().text;
          };
          std::string lo = elem_token();
          expect_symbol("<");
          std::string hi = elem_token();
          edges.emplace_back(std::move(lo), std::move(hi));
        } else {
          fail(ErrorKind::Parse, item.line, item.col, "expected 'elem' or 'edge'");
        }
      }
      try {
        kb_.algebra = std::make_shared<const Algebra>(Algebra::make_lattice(elems, edges));
      } catch (const Error& e) {
        fail(e.kind(), kind.line, kind.col, e.what());
      }
    } else {
      fail(ErrorKind::Parse, kind.line, kind.col, "expected 'chain' or 'lattice'");
    }
  }

  void check_fresh(const Token& t, std::vector<std::string>* own) {
    if (t.text == kTopObject || t.text == kBottomFeature) {
      fail(ErrorKind::ReservedName, t.line, t.col, "'" + t.text + "' is reserved");
    }
    if (keywords().count(t.text)) {
      fail(ErrorKind::ReservedName, t.line, t.col, "'" + t.text + "' is a keyword");
    }
    const Signature& s = kb_.signature;
    const std::vector<std::string>* all[] = {&s.objects, &s.features, &s.box_roles, &s.dia_roles,
                                             &s.concepts};
    for (const auto* v : all) {
      if (v != own && contains(*v, t.text)) {
        fail(ErrorKind::Sort, t.line, t.col, "'" + t.text + "' is already declared with another sort");
      }
    }
  }

  void declare(const Token& t, std::vector<std::string>& into) {
    check_fresh(t, &into);
    if (!contains(into, t.text)) into.push_back(t.text);
  }

  void parse_declaration() {
    const Token& kw = next();
    Signature& s = kb_.signature;
    std::vector<std::string>& into = kw.text == "obj"    ? s.objects
                                     : kw.text == "feat" ? s.features
                                     : kw.text == "box"  ? s.box_roles
                                     : kw.text == "dia"  ? s.dia_roles
                                                         : s.concepts;
    if (peek().kind != Tok::Ident && peek().kind != Tok::String) unexpected("a name");
    while (peek().kind == Tok::Ident || peek().kind == Tok::String) declare(next(), into);
  }

  // Concepts -------------------------------------------------------------

  Concept parse_or() {
    Concept c = parse_and();
    while (accept_symbol("|")) c = Concept::disj(std::move(c), parse_and());
    return c;
  }

  Concept parse_and() {
    Concept c = parse_prefix();
    while (accept_symbol("&")) c = Concept::conj(std::move(c), parse_prefix());
    return c;
  }

  Concept parse_prefix() {
    if (accept_symbol("[")) {
      const Token& role = expect_name("a box role");
      resolve_role(role, true);
      expect_symbol("]");
      return Concept::box(role.text, parse_prefix());
    }
    if (accept_symbol("<")) {
      const Token& role = expect_name("a diamond role");
      resolve_role(role, false);
      expect_symbol(">");
      return Concept::dia(role.text, parse_prefix());
    }
    if (accept_symbol("(")) {
      Concept c = parse_or();
      expect_symbol(")");
      return c;
    }
    const Token& name = expect_name("a concept");
    Signature& s = kb_.signature;
    if (!s.is_concept(name.text)) {
      if (!options_.infer_declarations) {
        fail(ErrorKind::Undeclared, name.line, name.col, "undeclared concept '" + name.text + "'");
      }
      declare(name, s.concepts);
    }
    return Concept::primitive(name.text);
  }

  void resolve_role(const Token& role, bool box) {
    Signature& s = kb_.signature;
    const bool ok = box ? s.is_box_role(role.text) : s.is_dia_role(role.text);
    if (ok) return;
    if ((box && s.is_dia_role(role.text)) || (!box && s.is_box_role(role.text))) {
      fail(ErrorKind::Sort, role.line, role.col,
           "'" + role.text + "' is a " + (box ? "diamond" : "box") + " role");
    }
    if (!options_.infer_declarations) {
      fail(ErrorKind::Undeclared, role.line, role.col, "undeclared role '" + role.text + "'");
    }
    declare(role, box ? s.box_roles : s.dia_roles);
  }

  // Individuals ------------------------------------------------------------

  enum class Sort { Object, Feature };

  void resolve_individual(const Token& t, Sort sort) {
    Signature& s = kb_.signature;
    const bool want_obj = sort == Sort::Object;
    if (want_obj ? s.is_object(t.text) : s.is_feature(t.text)) return;
    if (want_obj ? s.is_feature(t.text) : s.is_object(t.text)) {
      fail(ErrorKind::Sort, t.line, t.col,
           "'" + t.text + "' is " + (want_obj ? "a feature" : "an object") + " but " +
               (want_obj ? "an object" : "a feature") + " is required here");
    }
    if (!options_.infer_declarations) {
      fail(ErrorKind::Undeclared, t.line, t.col, "undeclared individual '" + t.text + "'");
    }
    declare(t, want_obj ? s.objects : s.features);
  }

  ABoxTerm parse_term() {
    const Token& head = expect_name("an ABox term");
    if (accept_symbol("(")) {
      const Token& first = expect_name("an individual");
      expect_symbol(",");
      const Token& second = expect_name("an individual");
      expect_symbol(")");
      Signature& s = kb_.signature;
      if (head.kind == Tok::Ident && head.text == "I") {
        resolve_individual(first, Sort::Object);
        resolve_individual(second, Sort::Feature);
        return ABoxTerm::inc(first.text, second.text);
      }
      bool box = s.is_box_role(head.text);
      bool dia = s.is_dia_role(head.text);
      if (!box && !dia) {
        if (!options_.infer_declarations) {
          fail(ErrorKind::Undeclared, head.line, head.col, "undeclared role '" + head.text + "'");
        }
        if (s.is_object(first.text) || s.is_feature(second.text)) {
          box = true;
        } else if (s.is_feature(first.text) || s.is_object(second.text)) {
          dia = true;
        } else {
          fail(ErrorKind::Undeclared, head.line, head.col,
               "cannot infer the sort of role '" + head.text + "'");
        }
        declare(head, box ? s.box_roles : s.dia_roles);
      }
      if (box) {
        resolve_individual(first, Sort::Object);
        resolve_individual(second, Sort::Feature);
        return ABoxTerm::box_rel(head.text, first.text, second.text);
      }
      resolve_individual(first, Sort::Feature);
      resolve_individual(second, Sort::Object);
      return ABoxTerm::dia_rel(head.text, first.text, second.text);
    }
    if (accept_symbol("::")) {
      resolve_individual(head, Sort::Feature);
      return ABoxTerm::describes(head.text, parse_or());
    }
    if (accept_symbol(":")) {
      resolve_individual(head, Sort::Object);
      return ABoxTerm::member(head.text, parse_or());
    }
    unexpected("':', '::' or '('");
  }

  // Statements -------------------------------------------------------------

  void parse_abox() {
    const Token& kw = next();
    const Algebra& alg = algebra(kw);
    bool negated = false;
    if (peek().kind == Tok::Ident && peek().text == "not") {
      next();
      negated = true;
    }
    Assertion a;
    const Token& lead = peek();
    const bool bound_first = peek(1).kind == Tok::Symbol && (peek(1).text == "<=" || peek(1).text == "!<=");
    if (bound_first) {
      a.bound = parse_bound();
      if (accept_symbol("<=")) {
        a.polarity = negated ? Polarity::Negative : Polarity::Positive;
      } else {
        next();
        if (negated) fail(ErrorKind::Parse, lead.line, lead.col, "'not' combined with '!<='");
        a.polarity = Polarity::Negative;
      }
      a.term = parse_term();
    } else {
      a.term = parse_term();
      const Token& lt = peek();
      expect_symbol("<");
      if (negated) fail(ErrorKind::Parse, lead.line, lead.col, "'not' combined with '<'");
      if (!alg.is_chain()) {
        fail(ErrorKind::NonLinearSugar, lt.line, lt.col,
             "'t < a' is only available on linearly ordered algebras");
      }
      a.bound = parse_bound();
      a.polarity = Polarity::Negative;
    }
    if (std::find(kb_.abox.begin(), kb_.abox.end(), a) == kb_.abox.end()) kb_.abox.push_back(std::move(a));
  }

  void parse_tbox() {
    next();
    Concept left = parse_or();
    if (accept_symbol("==")) {
      kb_.tbox.push_back({std::move(left), parse_or()});
      return;
    }
    if (accept_symbol("<=")) {
      Concept right = parse_or();
      std::string fresh;
      for (int k = 1;; ++k) {
        fresh = "_sub" + std::to_string(k);
        if (!kb_.signature.is_concept(fresh)) break;
      }
      kb_.signature.concepts.push_back(fresh);
      kb_.tbox.push_back({std::move(left), Concept::conj(std::move(right), Concept::primitive(fresh))});
      return;
    }
    unexpected("'==' or '<='");
  }

  void parse_model() {
    const Token& kw = next();
    if (kb_.model) fail(ErrorKind::Parse, kw.line, kw.col, "duplicate 'model' block");
    const Algebra& alg = algebra(kw);
    (void)alg;
    expect_symbol("{");
    ModelBlock block;
    while (true) {
      skip_newlines();
      if (accept_symbol("}")) break;
      const Token& head = expect_ident("a model statement");
      if (head.text == "objects" || head.text == "features") {
        auto& into = head.text == "objects" ? block.objects : block.features;
        while (peek().kind == Tok::Ident || peek().kind == Tok::String) into.push_back(next().text);
      } else if (head.text == "extent") {
        ModelBlock::Extent e;
        e.line = head.line;
        e.name = expect_name("a concept name").text;
        expect_symbol(":");
        while (peek().kind == Tok::Number || peek().kind == Tok::Ident) e.values.push_back(parse_bound());
        block.extents.push_back(std::move(e));
      } else if (head.text == "classify") {
        ModelBlock::Classify c;
        c.line = head.line;
        c.name = expect_name("a concept name").text;
        const Token& by = expect_ident("'by'");
        if (by.text != "by") fail(ErrorKind::Parse, by.line, by.col, "expected 'by'");
        c.object = expect_name("an object").text;
        c.feature = expect_name("a feature").text;
        block.classified.push_back(std::move(c));
      } else if (head.text == "map") {
        ModelBlock::Binding b;
        b.line = head.line;
        b.individual = expect_name("an individual").text;
        expect_symbol("=");
        b.element = expect_name("a model element").text;
        block.bindings.push_back(std::move(b));
      } else {
        ModelBlock::Row r;
        r.line = head.line;
        r.relation = head.text;
        r.owner = expect_name("a row owner").text;
        expect_symbol(":");
        while (peek().kind == Tok::Number || peek().kind == Tok::Ident) r.values.push_back(parse_bound());
        block.rows.push_back(std::move(r));
      }
      if (peek().kind != Tok::Newline && !at_symbol("}") && !accept_symbol(";")) unexpected("end of line");
    }
    kb_.model = std::move(block);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  ParseOptions options_;
  KnowledgeBase kb_;
};

}  // namespace

KnowledgeBase parse_kb(const std::string& text, const ParseOptions& options) {
  Parser parser(lex(text), options);
  return parser.parse_file();
}

KnowledgeBase load_kb(const std::string& path, const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_kb(buf.str(), options);
}

Concept parse_concept(const std::string& text, const Signature& signature) {
  Parser parser(lex(text), ParseOptions{});
  parser.set_signature(signature);
  return parser.parse_concept_only();
}

// ---------------------------------------------------------------------------
// Printer

std::string print_assertion(const Algebra& algebra, const Assertion& a) {
  std::string out = a.polarity == Polarity::Negative ? "not " : "";
  return out + algebra.name(a.bound) + " <= " + a.term.str();
}

std::string print_model_block(const Algebra& algebra, const ModelBlock& block) {
  std::ostringstream out;
  out << "model {\n";
  auto names = [&](const char* head, const std::vector<std::string>& v) {
    if (v.empty()) return;
    out << "  " << head;
    for (const auto& n : v) out << ' ' << quote_name(n);
    out << '\n';
  };
  names("objects", block.objects);
  names("features", block.features);
  for (const auto& r : block.rows) {
    out << "  " << r.relation << ' ' << quote_name(r.owner) << " :";
    for (Elem e : r.values) out << ' ' << algebra.name(e);
    out << '\n';
  }
  for (const auto& e : block.extents) {
    out << "  extent " << e.name << " :";
    for (Elem v : e.values) out << ' ' << algebra.name(v);
    out << '\n';
  }
  for (const auto& c : block.classified) {
    out << "  classify " << quote_name(c.name) << " by " << quote_name(c.object) << ' '
        << quote_name(c.feature) << '\n';
  }
  for (const auto& b : block.bindings) {
    out << "  map " << quote_name(b.individual) << " = " << quote_name(b.element) << '\n';
  }
  out << "}\n";
  return out.str();
}

std::string print_kb(const KnowledgeBase& kb) {
  std::ostringstream out;
  out << kb.algebra->describe() << '\n';
  auto decl = [&](const char* head, const std::vector<std::string>& v) {
    if (v.empty()) return;
    out << head;
    for (const auto& n : v) out << ' ' << quote_name(n);
    out << '\n';
  };
  decl("obj", kb.signature.objects);
  decl("feat", kb.signature.features);
  decl("box", kb.signature.box_roles);
  decl("dia", kb.signature.dia_roles);
  decl("concept", kb.signature.concepts);
  for (const auto& ax : kb.tbox) out << "tbox " << ax.left.str() << " == " << ax.right.str() << '\n';
  for (const auto& a : kb.abox) out << "abox " << print_assertion(*kb.algebra, a) << '\n';
  if (kb.model) out << print_model_block(*kb.algebra, *kb.model);
  return out.str();
}

// ---------------------------------------------------------------------------
// Subformulas

namespace {

void collect(const Concept& c, std::set<Concept>& seen, std::vector<Concept>& out) {
  if (seen.count(c)) return;
  switch (c.kind()) {
    case ConceptKind::Primitive: break;
    case ConceptKind::Box:
    case ConceptKind::Dia: collect(c.body(), seen, out); break;
    default:
      collect(c.lhs(), seen, out);
      collect(c.rhs(), seen, out);
  }
  seen.insert(c);
  out.push_back(c);
}

}  // namespace

std::vector<Concept> subconcepts(const std::vector<Assertion>& abox) {
  std::set<Concept> seen;
  std::vector<Concept> out;
  for (const auto& a : abox) {
    if (a.term.body) collect(*a.term.body, seen, out);
  }
  return out;
}

std::vector<Concept> subconcepts(const KnowledgeBase& kb) { return subconcepts(kb.abox); }

}  // namespace falc
