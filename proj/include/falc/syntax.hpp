#pragma once

// Abstract and concrete syntax of LE-FALC knowledge bases.
//
// File format (one statement per line, `#` starts a comment):
//
//   algebra chain 3
//   obj P1 P2
//   feat y1 y3
//   box RB
//   dia RD
//   concept C1 C3 C5
//   tbox C5 == C1 & C3
//   tbox C1 <= C3                  # C1 == C3 & <fresh>
//   abox 1/2 <= P1 : [RB]C1
//   abox not 1/2 <= RB(P1, y3)     # also: 1/2 !<= RB(P1, y3)
//   abox RB(P1, y3) < 1/2          # chains only
//   abox 1 <= y1 :: C5
//   model { ... }                  # optional interpretation block
//
// Concepts: `A & B`, `A | B`, `[R]C`, `<R>C`, parentheses. `|` binds
// weakest, prefixes bind tightest.

#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "falc/heyting.hpp"

namespace falc {

enum class ConceptKind : std::uint8_t { Primitive, And, Or, Box, Dia };

class Concept {
 public:
  static Concept primitive(std::string name);
  static Concept conj(Concept lhs, Concept rhs);
  static Concept disj(Concept lhs, Concept rhs);
  static Concept box(std::string role, Concept body);
  static Concept dia(std::string role, Concept body);

  ConceptKind kind() const { return node_->kind; }
  // Primitive name, or role name for modal concepts.
  const std::string& name() const { return node_->name; }
  // Left operand of a binary connective, or body of a modality.
  const Concept& lhs() const { return *node_->lhs; }
  const Concept& rhs() const { return *node_->rhs; }
  const Concept& body() const { return *node_->lhs; }

  bool is_binary() const { return kind() == ConceptKind::And || kind() == ConceptKind::Or; }
  bool is_modal() const { return kind() == ConceptKind::Box || kind() == ConceptKind::Dia; }

  std::size_t node_count() const;
  // Number of nested modalities.
  int modal_depth() const;

  std::string str() const;

  friend bool operator==(const Concept& a, const Concept& b);
  friend std::strong_ordering operator<=>(const Concept& a, const Concept& b);

 private:
  struct Node {
    ConceptKind kind;
    std::string name;
    std::shared_ptr<const Concept> lhs;
    std::shared_ptr<const Concept> rhs;
  };
  explicit Concept(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

enum class TermKind : std::uint8_t { Member, Describes, Inc, BoxRel, DiaRel };

// a:C, x::C, I(a,x), R(a,x) for box roles, R(x,a) for diamond roles.
struct ABoxTerm {
  TermKind kind = TermKind::Inc;
  std::string object;
  std::string feature;
  std::string role;  // BoxRel / DiaRel only
  std::optional<Concept> body;  // Member / Describes only

  static ABoxTerm member(std::string object, Concept c);
  static ABoxTerm describes(std::string feature, Concept c);
  static ABoxTerm inc(std::string object, std::string feature);
  static ABoxTerm box_rel(std::string role, std::string object, std::string feature);
  static ABoxTerm dia_rel(std::string role, std::string feature, std::string object);

  std::string str() const;

  friend bool operator==(const ABoxTerm&, const ABoxTerm&) = default;
};

enum class Polarity : std::uint8_t { Positive, Negative };

// alpha <= t (positive) or alpha !<= t (negative).
struct Assertion {
  Polarity polarity = Polarity::Positive;
  Elem bound;
  ABoxTerm term;

  friend bool operator==(const Assertion&, const Assertion&) = default;
};

struct TBoxAxiom {
  Concept left;
  Concept right;

  friend bool operator==(const TBoxAxiom&, const TBoxAxiom&) = default;
};

struct Signature {
  std::vector<std::string> objects;
  std::vector<std::string> features;
  std::vector<std::string> box_roles;
  std::vector<std::string> dia_roles;
  std::vector<std::string> concepts;

  bool is_object(const std::string& n) const;
  bool is_feature(const std::string& n) const;
  bool is_box_role(const std::string& n) const;
  bool is_dia_role(const std::string& n) const;
  bool is_concept(const std::string& n) const;

  friend bool operator==(const Signature&, const Signature&) = default;
};

// Raw contents of a `model { ... }` block. Validation happens when it is
// turned into an interpretation.
//
//   model {
//     objects a1 a2
//     features x1 x2 x3
//     I a1 : 1 0 1            # row in feature order
//     RB a2 : 1 1 1           # box role: rows are objects
//     RD x1 : 1 1             # diamond role: rows are features
//     extent C1 : 1 1/2       # primitive by extent (intent = up-closure)
//     classify C3 by a2 x2    # primitive ({1/x2} down, {1/a2} up)
//     map P1 = a1             # named individual -> model element
//   }
//
// Names may be double-quoted to carry arbitrary characters.
struct ModelBlock {
  // `line` is diagnostic only and ignored by equality.
  struct Row {
    std::string relation;
    std::string owner;
    std::vector<Elem> values;
    int line = 0;

    friend bool operator==(const Row& a, const Row& b) {
      return a.relation == b.relation && a.owner == b.owner && a.values == b.values;
    }
  };
  struct Extent {
    std::string name;
    std::vector<Elem> values;
    int line = 0;

    friend bool operator==(const Extent& a, const Extent& b) {
      return a.name == b.name && a.values == b.values;
    }
  };
  struct Classify {
    std::string name;
    std::string object;
    std::string feature;
    int line = 0;

    friend bool operator==(const Classify& a, const Classify& b) {
      return a.name == b.name && a.object == b.object && a.feature == b.feature;
    }
  };
  struct Binding {
    std::string individual;
    std::string element;
    int line = 0;

    friend bool operator==(const Binding& a, const Binding& b) {
      return a.individual == b.individual && a.element == b.element;
    }
  };

  std::vector<std::string> objects;
  std::vector<std::string> features;
  std::vector<Row> rows;
  std::vector<Extent> extents;
  std::vector<Classify> classified;
  std::vector<Binding> bindings;

  friend bool operator==(const ModelBlock&, const ModelBlock&) = default;
};

struct KnowledgeBase {
  std::shared_ptr<const Algebra> algebra;
  Signature signature;
  std::vector<Assertion> abox;
  std::vector<TBoxAxiom> tbox;
  std::optional<ModelBlock> model;
};

bool structurally_equal(const KnowledgeBase& a, const KnowledgeBase& b);

struct ParseOptions {
  // Permit undeclared individuals, concepts and roles; their sort is taken
  // from the first position they are used in.
  bool infer_declarations = false;
};

KnowledgeBase parse_kb(const std::string& text, const ParseOptions& options = {});
KnowledgeBase load_kb(const std::string& path, const ParseOptions& options = {});

std::string print_kb(const KnowledgeBase& kb);
std::string print_assertion(const Algebra& algebra, const Assertion& assertion);
std::string print_model_block(const Algebra& algebra, const ModelBlock& block);

// Parses a single concept against a signature (used by tests and tools).
Concept parse_concept(const std::string& text, const Signature& signature);

// Subformulas of every concept in the ABox, children before parents, in
// order of first appearance, structurally deduplicated.
std::vector<Concept> subconcepts(const std::vector<Assertion>& abox);
std::vector<Concept> subconcepts(const KnowledgeBase& kb);

// Reserved identifiers for the extra elements added by model extraction.
inline constexpr const char* kTopObject = "a_top";
inline constexpr const char* kBottomFeature = "x_bot";

}  // namespace falc
