#pragma once

// H-valued formal contexts, their concept lattices and modal operators, and
// satisfaction of LE-FALC assertions in an interpretation.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "falc/heyting.hpp"
#include "falc/syntax.hpp"

namespace falc {

// Degrees indexed by position in the owning domain.
using FuzzySet = std::vector<Elem>;

// Dense rows x cols matrix of degrees.
struct Relation {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Elem> cells;

  Relation() = default;
  Relation(std::size_t r, std::size_t c, Elem fill) : rows(r), cols(c), cells(r * c, fill) {}

  Elem at(std::size_t r, std::size_t c) const { return cells[r * cols + c]; }
  Elem& at(std::size_t r, std::size_t c) { return cells[r * cols + c]; }

  friend bool operator==(const Relation&, const Relation&) = default;
};

enum class Side : std::uint8_t { Object, Feature };

class Context {
 public:
  Context(std::shared_ptr<const Algebra> algebra, std::vector<std::string> objects,
          std::vector<std::string> features);

  const Algebra& algebra() const { return *algebra_; }
  const std::shared_ptr<const Algebra>& algebra_ptr() const { return algebra_; }
  const std::vector<std::string>& objects() const { return objects_; }
  const std::vector<std::string>& features() const { return features_; }

  std::optional<std::size_t> object_index(const std::string& name) const;
  std::optional<std::size_t> feature_index(const std::string& name) const;

  // objects x features
  Relation incidence;
  // objects x features, by role name
  std::map<std::string, Relation> box;
  // features x objects, by role name
  std::map<std::string, Relation> dia;

  // Adds an all-bottom relation of the right shape.
  Relation& add_box(const std::string& role);
  Relation& add_dia(const std::string& role);

  const Relation& box_relation(const std::string& role) const;
  const Relation& dia_relation(const std::string& role) const;

 private:
  std::shared_ptr<const Algebra> algebra_;
  std::vector<std::string> objects_;
  std::vector<std::string> features_;
};

// R1[f](w) = meet_u (f(u) -> R(u, w));  f ranges over rows.
FuzzySet r1(const Algebra& alg, const Relation& rel, const FuzzySet& f);
// R0[g](u) = meet_w (g(w) -> R(u, w));  g ranges over columns.
FuzzySet r0(const Algebra& alg, const Relation& rel, const FuzzySet& g);

FuzzySet up(const Context& ctx, const FuzzySet& extent);
FuzzySet down(const Context& ctx, const FuzzySet& intent);

bool is_stable(const Context& ctx, const FuzzySet& s, Side side);

// Pointwise order, meet and join.
bool subset(const Algebra& alg, const FuzzySet& f, const FuzzySet& g);
FuzzySet pointwise_meet(const Algebra& alg, const FuzzySet& f, const FuzzySet& g);
FuzzySet pointwise_join(const Algebra& alg, const FuzzySet& f, const FuzzySet& g);
// {alpha/i} over a domain of size n.
FuzzySet singleton(const Algebra& alg, std::size_t n, std::size_t i, Elem alpha);
FuzzySet constant_set(std::size_t n, Elem value);

struct FuzzyConcept {
  FuzzySet extent;
  FuzzySet intent;

  friend bool operator==(const FuzzyConcept&, const FuzzyConcept&) = default;
};

FuzzyConcept concept_of_extent(const Context& ctx, const FuzzySet& extent);
FuzzyConcept concept_of_intent(const Context& ctx, const FuzzySet& intent);

FuzzyConcept concept_meet(const Context& ctx, const FuzzyConcept& a, const FuzzyConcept& b);
FuzzyConcept concept_join(const Context& ctx, const FuzzyConcept& a, const FuzzyConcept& b);
bool concept_leq(const Context& ctx, const FuzzyConcept& a, const FuzzyConcept& b);

// [R](c) = (R0[intent], R0[intent] up)
FuzzyConcept box_op(const Context& ctx, const std::string& role, const FuzzyConcept& c);
// <R>(c) = (R0[extent] down, R0[extent])
FuzzyConcept dia_op(const Context& ctx, const std::string& role, const FuzzyConcept& c);

struct ConceptLattice {
  // Descending lexicographic order of extents (by element index).
  std::vector<FuzzyConcept> concepts;
  // Cover pairs (lower, upper) as indices into `concepts`.
  std::vector<std::pair<std::size_t, std::size_t>> hasse;

  std::optional<std::size_t> find(const FuzzyConcept& c) const;
};

inline constexpr std::size_t kDefaultConceptCap = 10000;

ConceptLattice enumerate_concepts(const Context& ctx, std::size_t cap = kDefaultConceptCap);

std::string lattice_text(const Context& ctx, const ConceptLattice& lattice);
std::string lattice_dot(const Context& ctx, const ConceptLattice& lattice);

struct CompatibilityReport {
  bool ok = true;
  std::string relation;
  std::string family;  // e.g. "R0[{a/x}]"
  Elem alpha;
  std::string individual;
  FuzzySet offending;

  std::string describe(const Context& ctx) const;
};

CompatibilityReport check_compatibility(const Context& ctx);

struct Interpretation {
  Context context;
  std::map<std::string, FuzzyConcept> primitives;
  std::map<std::string, std::size_t> object_map;
  std::map<std::string, std::size_t> feature_map;

  const Algebra& algebra() const { return context.algebra(); }
  std::size_t object(const std::string& name) const;
  std::size_t feature(const std::string& name) const;
};

FuzzyConcept eval_concept(const Interpretation& interp, const Concept& c);
Elem valuation(const Interpretation& interp, const ABoxTerm& term);
bool check_assertion(const Interpretation& interp, const Assertion& assertion);

struct KbReport {
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

KbReport check_kb(const Interpretation& interp, const std::vector<Assertion>& abox,
                  const std::vector<TBoxAxiom>& tbox);

// Degrees of a in [[phi]] and of x in ([phi]), computed clause by clause from
// the satisfaction relations rather than through eval_concept.
Elem membership_degree(const Interpretation& interp, std::size_t object, const Concept& phi);
Elem description_degree(const Interpretation& interp, std::size_t feature, const Concept& phi);

// Builds an interpretation from a KB's `model` block. Throws InvalidModel or
// UnknownRelation on malformed blocks.
Interpretation interpretation_from_block(const KnowledgeBase& kb);
// Inverse direction; primitives are written as extents.
ModelBlock block_from_interpretation(const Interpretation& interp);

// Matrix layout: one table per relation, rows x columns.
std::string relation_table(const Algebra& alg, const std::string& title,
                           const std::vector<std::string>& rows,
                           const std::vector<std::string>& cols, const Relation& rel);

std::string format_set(const Algebra& alg, const FuzzySet& s);

}  // namespace falc
