#pragma once

// Saturation engine for LE-FALC ABox consistency.
//
// Positive facts are kept as one lower bound per term (the join of every
// bound derived for it); negative facts as a set of bounds per term. Fresh
// constants are hash-consed functions of (kind, role, base), with the
// classifier identifications dia_R(a_C) = a_{<R>C} and box_R(x_C) = x_{[R]C}
// applied at registration.

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "falc/fca.hpp"
#include "falc/heyting.hpp"
#include "falc/syntax.hpp"

namespace falc {

using ConstId = std::uint32_t;
using ConceptId = std::uint32_t;
using TermId = std::uint32_t;
using RoleId = std::uint32_t;

inline constexpr std::uint32_t kNone = 0xffffffffu;

enum class ConstKind : std::uint8_t { Named, Classifier, BlackDia, Dia, BoxTag, BlackBox };

// `base` is tagged `kind` along `role`.
struct Origin {
  ConstKind kind;
  RoleId role;
  ConstId base;

  friend bool operator==(const Origin&, const Origin&) = default;
};

struct ConstantInfo {
  ConstKind kind = ConstKind::Named;
  Side sort = Side::Object;
  RoleId role = kNone;
  ConstId base = kNone;
  ConceptId concept_id = kNone;  // classifiers only
  std::string name;
  std::vector<Origin> origins;
};

struct TermKey {
  TermKind kind;
  ConstId object = kNone;
  ConstId feature = kNone;
  RoleId role = kNone;
  ConceptId concept_id = kNone;

  friend bool operator==(const TermKey&, const TermKey&) = default;
};

struct TermKeyHash {
  std::size_t operator()(const TermKey& k) const noexcept {
    std::size_t h = static_cast<std::size_t>(k.kind);
    for (std::uint32_t v : {k.object, k.feature, k.role, k.concept_id}) {
      h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

struct Fact {
  TermId term;
  Elem bound;
  Polarity polarity = Polarity::Positive;

  friend bool operator==(const Fact&, const Fact&) = default;
};

struct TraceRow {
  std::string rule;
  std::vector<Fact> premises;
  std::vector<Fact> added;
};

struct Clash {
  TermId term;
  Elem positive;  // bottom when no positive bound was stored
  Elem negative;
};

struct TableauOptions {
  bool stop_at_first_clash = true;
  bool record_trace = false;
  // Pop the worklist at random positions instead of FIFO.
  std::optional<std::uint64_t> shuffle_seed;
  // 0 means the default 64 * (input facts + occurrence-set size)^2.
  std::size_t fact_cap = 0;
  // Rule names to skip; used for mutation testing.
  std::set<std::string> disabled_rules;
};

struct TableauStats {
  std::size_t positive_facts = 0;
  std::size_t negative_facts = 0;
  std::size_t constants = 0;
  std::size_t steps = 0;
  std::map<std::string, std::size_t> rule_histogram;
};

// Names of all expansion rules, in a fixed order.
const std::vector<std::string>& rule_names();
// Short hash identifying the rule set; printed by --version.
std::string rule_set_revision();

class Tableau {
 public:
  // Throws TBoxNotEmpty if the knowledge base still has TBox axioms.
  explicit Tableau(const KnowledgeBase& kb, TableauOptions options = {});

  // Runs to a fixpoint or to the first clash. Returns true if no clash was
  // found. Throws InternalLimit when the fact cap is exceeded.
  bool saturate();

  bool consistent() const { return clashes_.empty(); }
  const std::vector<Clash>& clashes() const { return clashes_; }

  const Algebra& algebra() const { return *algebra_; }
  const std::shared_ptr<const Algebra>& algebra_ptr() const { return algebra_; }
  const KnowledgeBase& kb() const { return kb_; }

  const std::vector<ConceptId>& occurrence() const { return occurrence_; }
  bool in_occurrence(ConceptId c) const { return in_occ_.at(c); }
  const Concept& concept_of(ConceptId c) const { return concepts_.at(c); }
  std::optional<ConceptId> find_concept(const Concept& c) const;

  const std::vector<ConstantInfo>& constants() const { return consts_; }
  std::optional<ConstId> classifier(ConceptId c, Side side) const;
  std::optional<ConstId> named(const std::string& name) const;

  const std::vector<std::string>& roles() const { return roles_; }

  std::size_t term_count() const { return terms_.size(); }
  const TermKey& term(TermId t) const { return terms_.at(t); }
  std::optional<TermId> find_term(const TermKey& k) const;
  std::optional<Elem> positive(TermId t) const { return pos_.at(t); }
  const std::vector<Elem>& negative(TermId t) const { return neg_.at(t); }
  // Stored positive bound, bottom if none.
  Elem bound_or_bot(const TermKey& k) const;

  const std::vector<TraceRow>& trace() const { return trace_; }
  TableauStats stats() const;

  std::string term_str(TermId t) const;
  std::string fact_str(const Fact& f) const;
  std::string trace_row_str(const TraceRow& row) const;

  // term text -> bound name, for every stored positive fact.
  std::map<std::string, std::string> positive_map() const;

 private:
  struct ConceptNode {
    ConceptKind kind;
    RoleId role = kNone;
    ConceptId lhs = kNone;
    ConceptId rhs = kNone;
  };

  struct Step {
    const char* rule;
    std::vector<Fact> premises;
    std::vector<Fact> added;
  };

  RoleId role_id(const std::string& name);
  ConceptId intern(const Concept& c);
  ConstId make_named(const std::string& name, Side side);
  ConstId make_classifier(ConceptId c, Side side);
  ConstId make_tag(ConstKind kind, RoleId role, ConstId base);
  void add_origin(ConstId c, Origin o);

  TermId intern_term(const TermKey& k);
  TermKey convert(const ABoxTerm& t);

  bool enabled(const char* rule) const;
  void add_pos(Step& step, const TermKey& k, Elem bound);
  void add_neg(Step& step, const TermKey& k, Elem bound);
  void commit(Step& step);
  void requeue(TermId t);
  void fire(TermId t);
  void check_cap();
  Fact premise(TermId t) const { return Fact{t, *pos_[t], Polarity::Positive}; }

  std::shared_ptr<const Algebra> algebra_;
  KnowledgeBase kb_;
  TableauOptions options_;

  std::vector<std::string> roles_;
  std::map<std::string, RoleId> role_ids_;

  std::vector<Concept> concepts_;
  std::map<Concept, ConceptId> concept_ids_;
  std::vector<ConceptNode> nodes_;
  std::vector<std::vector<ConceptId>> box_parents_;
  std::vector<std::vector<ConceptId>> dia_parents_;
  std::vector<std::vector<ConceptId>> and_parents_occ_;
  std::vector<std::vector<ConceptId>> or_parents_occ_;
  std::vector<bool> in_occ_;
  std::vector<ConceptId> occurrence_;

  std::vector<ConstantInfo> consts_;
  std::map<std::string, ConstId> named_;
  std::map<std::pair<ConceptId, Side>, ConstId> classifiers_;
  std::map<std::tuple<ConstKind, RoleId, ConstId>, ConstId> tags_;

  std::vector<TermKey> terms_;
  std::unordered_map<TermKey, TermId, TermKeyHash> term_ids_;
  std::vector<std::optional<Elem>> pos_;
  std::vector<std::vector<Elem>> neg_;
  std::vector<std::vector<TermId>> members_by_concept_;
  std::vector<std::vector<TermId>> descs_by_concept_;
  std::vector<std::vector<TermId>> inc_by_constant_;

  std::deque<TermId> worklist_;
  std::vector<char> queued_;
  std::mt19937_64 rng_;

  std::vector<TraceRow> trace_;
  std::map<std::string, std::size_t> histogram_;
  std::vector<Clash> clashes_;
  std::size_t positive_count_ = 0;
  std::size_t negative_count_ = 0;
  std::size_t steps_ = 0;
  std::size_t cap_ = 0;
  bool halted_ = false;
};

}  // namespace falc
