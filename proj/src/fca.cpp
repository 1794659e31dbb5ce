#include "falc/fca.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "falc/error.hpp"

namespace falc {

Context::Context(std::shared_ptr<const Algebra> algebra, std::vector<std::string> objects,
                 std::vector<std::string> features)
    : incidence(objects.size(), features.size(), algebra->bot()),
      algebra_(std::move(algebra)),
      objects_(std::move(objects)),
      features_(std::move(features)) {}

std::optional<std::size_t> Context::object_index(const std::string& name) const {
  auto it = std::find(objects_.begin(), objects_.end(), name);
  if (it == objects_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - objects_.begin());
}

std::optional<std::size_t> Context::feature_index(const std::string& name) const {
  auto it = std::find(features_.begin(), features_.end(), name);
  if (it == features_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - features_.begin());
}

Relation& Context::add_box(const std::string& role) {
  return box.try_emplace(role, objects_.size(), features_.size(), algebra_->bot()).first->second;
}

Relation& Context::add_dia(const std::string& role) {
  return dia.try_emplace(role, features_.size(), objects_.size(), algebra_->bot()).first->second;
}

const Relation& Context::box_relation(const std::string& role) const {
  auto it = box.find(role);
  if (it == box.end()) throw Error(ErrorKind::UnknownRelation, "no box relation '" + role + "'");
  return it->second;
}

const Relation& Context::dia_relation(const std::string& role) const {
  auto it = dia.find(role);
  if (it == dia.end()) throw Error(ErrorKind::UnknownRelation, "no diamond relation '" + role + "'");
  return it->second;
}

FuzzySet r1(const Algebra& alg, const Relation& rel, const FuzzySet& f) {
  if (f.size() != rel.rows) {
    throw Error(ErrorKind::SortMismatch, "set over " + std::to_string(f.size()) +
                                             " elements applied to a relation with " +
                                             std::to_string(rel.rows) + " rows");
  }
  FuzzySet out(rel.cols, alg.top());
  for (std::size_t w = 0; w < rel.cols; ++w) {
    Elem acc = alg.top();
    for (std::size_t u = 0; u < rel.rows; ++u) acc = alg.meet(acc, alg.implies(f[u], rel.at(u, w)));
    out[w] = acc;
  }
  return out;
}

FuzzySet r0(const Algebra& alg, const Relation& rel, const FuzzySet& g) {
  if (g.size() != rel.cols) {
    throw Error(ErrorKind::SortMismatch, "set over " + std::to_string(g.size()) +
                                             " elements applied to a relation with " +
                                             std::to_string(rel.cols) + " columns");
  }
  FuzzySet out(rel.rows, alg.top());
  for (std::size_t u = 0; u < rel.rows; ++u) {
    Elem acc = alg.top();
    for (std::size_t w = 0; w < rel.cols; ++w) acc = alg.meet(acc, alg.implies(g[w], rel.at(u, w)));
    out[u] = acc;
  }
  return out;
}

FuzzySet up(const Context& ctx, const FuzzySet& extent) {
  return r1(ctx.algebra(), ctx.incidence, extent);
}

FuzzySet down(const Context& ctx, const FuzzySet& intent) {
  return r0(ctx.algebra(), ctx.incidence, intent);
}

bool is_stable(const Context& ctx, const FuzzySet& s, Side side) {
  return side == Side::Object ? down(ctx, up(ctx, s)) == s : up(ctx, down(ctx, s)) == s;
}

bool subset(const Algebra& alg, const FuzzySet& f, const FuzzySet& g) {
  if (f.size() != g.size()) throw Error(ErrorKind::SortMismatch, "comparing sets of different sizes");
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!alg.leq(f[i], g[i])) return false;
  }
  return true;
}

FuzzySet pointwise_meet(const Algebra& alg, const FuzzySet& f, const FuzzySet& g) {
  if (f.size() != g.size()) throw Error(ErrorKind::SortMismatch, "meet of sets of different sizes");
  FuzzySet out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = alg.meet(f[i], g[i]);
  return out;
}

FuzzySet pointwise_join(const Algebra& alg, const FuzzySet& f, const FuzzySet& g) {
  if (f.size() != g.size()) throw Error(ErrorKind::SortMismatch, "join of sets of different sizes");
  FuzzySet out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = alg.join(f[i], g[i]);
  return out;
}

FuzzySet singleton(const Algebra& alg, std::size_t n, std::size_t i, Elem alpha) {
  FuzzySet out(n, alg.bot());
  out.at(i) = alpha;
  return out;
}

FuzzySet constant_set(std::size_t n, Elem value) { return FuzzySet(n, value); }

FuzzyConcept concept_of_extent(const Context& ctx, const FuzzySet& extent) {
  FuzzySet intent = up(ctx, extent);
  FuzzySet closed = down(ctx, intent);
  return {std::move(closed), std::move(intent)};
}

FuzzyConcept concept_of_intent(const Context& ctx, const FuzzySet& intent) {
  FuzzySet extent = down(ctx, intent);
  FuzzySet closed = up(ctx, extent);
  return {std::move(extent), std::move(closed)};
}

FuzzyConcept concept_meet(const Context& ctx, const FuzzyConcept& a, const FuzzyConcept& b) {
  FuzzySet e = pointwise_meet(ctx.algebra(), a.extent, b.extent);
  FuzzySet i = up(ctx, e);
  return {std::move(e), std::move(i)};
}

FuzzyConcept concept_join(const Context& ctx, const FuzzyConcept& a, const FuzzyConcept& b) {
  FuzzySet i = pointwise_meet(ctx.algebra(), a.intent, b.intent);
  FuzzySet e = down(ctx, i);
  return {std::move(e), std::move(i)};
}

bool concept_leq(const Context& ctx, const FuzzyConcept& a, const FuzzyConcept& b) {
  return subset(ctx.algebra(), a.extent, b.extent);
}

FuzzyConcept box_op(const Context& ctx, const std::string& role, const FuzzyConcept& c) {
  FuzzySet e = r0(ctx.algebra(), ctx.box_relation(role), c.intent);
  FuzzySet i = up(ctx, e);
  return {std::move(e), std::move(i)};
}

FuzzyConcept dia_op(const Context& ctx, const std::string& role, const FuzzyConcept& c) {
  FuzzySet i = r0(ctx.algebra(), ctx.dia_relation(role), c.extent);
  FuzzySet e = down(ctx, i);
  return {std::move(e), std::move(i)};
}

std::optional<std::size_t> ConceptLattice::find(const FuzzyConcept& c) const {
  auto it = std::find(concepts.begin(), concepts.end(), c);
  if (it == concepts.end()) return std::nullopt;
  return static_cast<std::size_t>(it - concepts.begin());
}

namespace {

struct DescendingIds {
  bool operator()(const FuzzySet& a, const FuzzySet& b) const {
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end(),
                                        [](Elem x, Elem y) { return x.id < y.id; });
  }
};

}  // namespace

ConceptLattice enumerate_concepts(const Context& ctx, std::size_t cap) {
  const Algebra& alg = ctx.algebra();
  const std::size_t nx = ctx.features().size();
  // Every stable extent is a meet of the extents {alpha/x} down.
  std::vector<FuzzySet> seeds;
  for (std::size_t x = 0; x < nx; ++x) {
    for (Elem alpha : alg.elements()) seeds.push_back(down(ctx, singleton(alg, nx, x, alpha)));
  }
  std::set<FuzzySet, DescendingIds> extents;
  extents.insert(down(ctx, constant_set(nx, alg.bot())));
  for (const auto& seed : seeds) {
    std::vector<FuzzySet> fresh;
    for (const auto& e : extents) {
      FuzzySet m = pointwise_meet(alg, e, seed);
      if (!extents.count(m)) fresh.push_back(std::move(m));
    }
    for (auto& m : fresh) {
      extents.insert(std::move(m));
      if (extents.size() > cap) {
        throw Error(ErrorKind::CapExceeded,
                    "concept enumeration exceeded the cap of " + std::to_string(cap));
      }
    }
  }
  ConceptLattice out;
  for (const auto& e : extents) out.concepts.push_back({e, up(ctx, e)});
  const std::size_t n = out.concepts.size();
  for (std::size_t lo = 0; lo < n; ++lo) {
    for (std::size_t hi = 0; hi < n; ++hi) {
      if (lo == hi || !concept_leq(ctx, out.concepts[lo], out.concepts[hi])) continue;
      bool cover = true;
      for (std::size_t mid = 0; mid < n && cover; ++mid) {
        if (mid == lo || mid == hi) continue;
        if (concept_leq(ctx, out.concepts[lo], out.concepts[mid]) &&
            concept_leq(ctx, out.concepts[mid], out.concepts[hi])) {
          cover = false;
        }
      }
      if (cover) out.hasse.emplace_back(lo, hi);
    }
  }
  return out;
}

std::string format_set(const Algebra& alg, const FuzzySet& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ", ";
    out += alg.name(s[i]);
  }
  return out + ")";
}

std::string lattice_text(const Context& ctx, const ConceptLattice& lattice) {
  const Algebra& alg = ctx.algebra();
  std::ostringstream out;
  out << "objects";
  for (const auto& a : ctx.objects()) out << ' ' << a;
  out << "\nfeatures";
  for (const auto& x : ctx.features()) out << ' ' << x;
  out << "\nconcepts " << lattice.concepts.size() << '\n';
  for (std::size_t i = 0; i < lattice.concepts.size(); ++i) {
    const auto& c = lattice.concepts[i];
    out << "c" << i + 1 << " extent " << format_set(alg, c.extent) << " intent "
        << format_set(alg, c.intent) << '\n';
  }
  out << "hasse\n";
  for (auto [lo, hi] : lattice.hasse) out << "c" << lo + 1 << " < c" << hi + 1 << '\n';
  auto table = [&](const char* head, const std::string& role, bool box) {
    out << head << ' ' << role << '\n';
    for (std::size_t i = 0; i < lattice.concepts.size(); ++i) {
      const FuzzyConcept img = box ? box_op(ctx, role, lattice.concepts[i])
                                   : dia_op(ctx, role, lattice.concepts[i]);
      auto j = lattice.find(img);
      out << "c" << i + 1 << " -> ";
      if (j) {
        out << "c" << *j + 1;
      } else {
        out << "unstable extent " << format_set(alg, img.extent);
      }
      out << '\n';
    }
  };
  for (const auto& [role, rel] : ctx.box) table("box", role, true);
  for (const auto& [role, rel] : ctx.dia) table("dia", role, false);
  return out.str();
}

std::string lattice_dot(const Context& ctx, const ConceptLattice& lattice) {
  const Algebra& alg = ctx.algebra();
  std::ostringstream out;
  out << "digraph lattice {\n  rankdir=BT;\n";
  for (std::size_t i = 0; i < lattice.concepts.size(); ++i) {
    const auto& c = lattice.concepts[i];
    out << "  c" << i + 1 << " [label=\"c" << i + 1 << "\\n" << format_set(alg, c.extent) << "\\n"
        << format_set(alg, c.intent) << "\"];\n";
  }
  for (auto [lo, hi] : lattice.hasse) out << "  c" << lo + 1 << " -> c" << hi + 1 << ";\n";
  out << "}\n";
  return out.str();
}

std::string CompatibilityReport::describe(const Context& ctx) const {
  if (ok) return "compatible";
  return "relation " + relation + ": " + family + " with alpha=" + ctx.algebra().name(alpha) +
         " at " + individual + " is not stable: " + format_set(ctx.algebra(), offending);
}

CompatibilityReport check_compatibility(const Context& ctx) {
  const Algebra& alg = ctx.algebra();
  const std::size_t na = ctx.objects().size();
  const std::size_t nx = ctx.features().size();
  CompatibilityReport report;
  auto fail = [&](const std::string& rel, const char* family, Elem alpha, const std::string& who,
                  FuzzySet s) {
    report.ok = false;
    report.relation = rel;
    report.family = family;
    report.alpha = alpha;
    report.individual = who;
    report.offending = std::move(s);
  };
  for (const auto& [role, rel] : ctx.box) {
    for (Elem alpha : alg.elements()) {
      for (std::size_t x = 0; x < nx; ++x) {
        FuzzySet s = r0(alg, rel, singleton(alg, nx, x, alpha));
        if (!is_stable(ctx, s, Side::Object)) {
          fail(role, "R0[{a/x}]", alpha, ctx.features()[x], std::move(s));
          return report;
        }
      }
      for (std::size_t a = 0; a < na; ++a) {
        FuzzySet s = r1(alg, rel, singleton(alg, na, a, alpha));
        if (!is_stable(ctx, s, Side::Feature)) {
          fail(role, "R1[{a/a}]", alpha, ctx.objects()[a], std::move(s));
          return report;
        }
      }
    }
  }
  for (const auto& [role, rel] : ctx.dia) {
    for (Elem alpha : alg.elements()) {
      for (std::size_t a = 0; a < na; ++a) {
        FuzzySet s = r0(alg, rel, singleton(alg, na, a, alpha));
        if (!is_stable(ctx, s, Side::Feature)) {
          fail(role, "R0[{a/a}]", alpha, ctx.objects()[a], std::move(s));
          return report;
        }
      }
      for (std::size_t x = 0; x < nx; ++x) {
        FuzzySet s = r1(alg, rel, singleton(alg, nx, x, alpha));
        if (!is_stable(ctx, s, Side::Object)) {
          fail(role, "R1[{a/x}]", alpha, ctx.features()[x], std::move(s));
          return report;
        }
      }
    }
  }
  return report;
}

std::size_t Interpretation::object(const std::string& name) const {
  auto it = object_map.find(name);
  if (it == object_map.end()) throw Error(ErrorKind::Undeclared, "object '" + name + "' is not bound");
  return it->second;
}

std::size_t Interpretation::feature(const std::string& name) const {
  auto it = feature_map.find(name);
  if (it == feature_map.end()) {
    throw Error(ErrorKind::Undeclared, "feature '" + name + "' is not bound");
  }
  return it->second;
}

FuzzyConcept eval_concept(const Interpretation& interp, const Concept& c) {
  const Context& ctx = interp.context;
  switch (c.kind()) {
    case ConceptKind::Primitive: {
      auto it = interp.primitives.find(c.name());
      if (it == interp.primitives.end()) {
        throw Error(ErrorKind::UnboundPrimitive, "primitive concept '" + c.name() + "' is unbound");
      }
      return it->second;
    }
    case ConceptKind::And:
      return concept_meet(ctx, eval_concept(interp, c.lhs()), eval_concept(interp, c.rhs()));
    case ConceptKind::Or:
      return concept_join(ctx, eval_concept(interp, c.lhs()), eval_concept(interp, c.rhs()));
    case ConceptKind::Box: return box_op(ctx, c.name(), eval_concept(interp, c.body()));
    case ConceptKind::Dia: return dia_op(ctx, c.name(), eval_concept(interp, c.body()));
  }
  throw Error(ErrorKind::UnboundPrimitive, "bad concept");
}

Elem valuation(const Interpretation& interp, const ABoxTerm& t) {
  const Context& ctx = interp.context;
  switch (t.kind) {
    case TermKind::Member: return eval_concept(interp, *t.body).extent.at(interp.object(t.object));
    case TermKind::Describes:
      return eval_concept(interp, *t.body).intent.at(interp.feature(t.feature));
    case TermKind::Inc: return ctx.incidence.at(interp.object(t.object), interp.feature(t.feature));
    case TermKind::BoxRel:
      return ctx.box_relation(t.role).at(interp.object(t.object), interp.feature(t.feature));
    case TermKind::DiaRel:
      return ctx.dia_relation(t.role).at(interp.feature(t.feature), interp.object(t.object));
  }
  return interp.algebra().bot();
}

bool check_assertion(const Interpretation& interp, const Assertion& a) {
  const bool holds = interp.algebra().leq(a.bound, valuation(interp, a.term));
  return a.polarity == Polarity::Positive ? holds : !holds;
}

KbReport check_kb(const Interpretation& interp, const std::vector<Assertion>& abox,
                  const std::vector<TBoxAxiom>& tbox) {
  KbReport report;
  const Algebra& alg = interp.algebra();
  for (const auto& [name, c] : interp.primitives) {
    if (up(interp.context, c.extent) != c.intent || down(interp.context, c.intent) != c.extent) {
      report.failures.push_back("primitive " + name + " is not a stable pair: extent " +
                                format_set(alg, c.extent) + ", intent " + format_set(alg, c.intent));
    }
  }
  for (const auto& a : abox) {
    if (!check_assertion(interp, a)) {
      report.failures.push_back("assertion fails: " + print_assertion(alg, a) + " (value " +
                                alg.name(valuation(interp, a.term)) + ")");
    }
  }
  for (const auto& ax : tbox) {
    const FuzzyConcept l = eval_concept(interp, ax.left);
    const FuzzyConcept r = eval_concept(interp, ax.right);
    if (l != r) {
      report.failures.push_back("axiom fails: " + ax.left.str() + " == " + ax.right.str() +
                                " (extents " + format_set(alg, l.extent) + " vs " +
                                format_set(alg, r.extent) + ")");
    }
  }
  return report;
}

// Satisfaction clauses. Each degree is expanded from the defining meets of
// implications over the relation tables.

Elem membership_degree(const Interpretation& interp, std::size_t a, const Concept& phi) {
  const Context& ctx = interp.context;
  const Algebra& alg = ctx.algebra();
  const std::size_t na = ctx.objects().size();
  const std::size_t nx = ctx.features().size();
  switch (phi.kind()) {
    case ConceptKind::Primitive: {
      auto it = interp.primitives.find(phi.name());
      if (it == interp.primitives.end()) {
        throw Error(ErrorKind::UnboundPrimitive, "primitive concept '" + phi.name() + "' is unbound");
      }
      return it->second.extent.at(a);
    }
    case ConceptKind::And:
      return alg.meet(membership_degree(interp, a, phi.lhs()), membership_degree(interp, a, phi.rhs()));
    case ConceptKind::Or: {
      Elem acc = alg.top();
      for (std::size_t x = 0; x < nx; ++x) {
        const Elem both = alg.meet(description_degree(interp, x, phi.lhs()),
                                   description_degree(interp, x, phi.rhs()));
        acc = alg.meet(acc, alg.implies(both, ctx.incidence.at(a, x)));
      }
      return acc;
    }
    case ConceptKind::Box: {
      const Relation& r = ctx.box_relation(phi.name());
      Elem acc = alg.top();
      for (std::size_t x = 0; x < nx; ++x) {
        acc = alg.meet(acc, alg.implies(description_degree(interp, x, phi.body()), r.at(a, x)));
      }
      return acc;
    }
    case ConceptKind::Dia: {
      const Relation& r = ctx.dia_relation(phi.name());
      std::vector<Elem> body(na);
      for (std::size_t b = 0; b < na; ++b) body[b] = membership_degree(interp, b, phi.body());
      Elem acc = alg.top();
      for (std::size_t x = 0; x < nx; ++x) {
        Elem dx = alg.top();
        for (std::size_t b = 0; b < na; ++b) dx = alg.meet(dx, alg.implies(body[b], r.at(x, b)));
        acc = alg.meet(acc, alg.implies(dx, ctx.incidence.at(a, x)));
      }
      return acc;
    }
  }
  return alg.bot();
}

Elem description_degree(const Interpretation& interp, std::size_t x, const Concept& phi) {
  const Context& ctx = interp.context;
  const Algebra& alg = ctx.algebra();
  const std::size_t na = ctx.objects().size();
  const std::size_t nx = ctx.features().size();
  switch (phi.kind()) {
    case ConceptKind::Primitive: {
      auto it = interp.primitives.find(phi.name());
      if (it == interp.primitives.end()) {
        throw Error(ErrorKind::UnboundPrimitive, "primitive concept '" + phi.name() + "' is unbound");
      }
      return it->second.intent.at(x);
    }
    case ConceptKind::Or:
      return alg.meet(description_degree(interp, x, phi.lhs()),
                      description_degree(interp, x, phi.rhs()));
    case ConceptKind::And: {
      Elem acc = alg.top();
      for (std::size_t a = 0; a < na; ++a) {
        const Elem both = alg.meet(membership_degree(interp, a, phi.lhs()),
                                   membership_degree(interp, a, phi.rhs()));
        acc = alg.meet(acc, alg.implies(both, ctx.incidence.at(a, x)));
      }
      return acc;
    }
    case ConceptKind::Dia: {
      const Relation& r = ctx.dia_relation(phi.name());
      Elem acc = alg.top();
      for (std::size_t a = 0; a < na; ++a) {
        acc = alg.meet(acc, alg.implies(membership_degree(interp, a, phi.body()), r.at(x, a)));
      }
      return acc;
    }
    case ConceptKind::Box: {
      const Relation& r = ctx.box_relation(phi.name());
      std::vector<Elem> body(nx);
      for (std::size_t y = 0; y < nx; ++y) body[y] = description_degree(interp, y, phi.body());
      Elem acc = alg.top();
      for (std::size_t a = 0; a < na; ++a) {
        Elem ma = alg.top();
        for (std::size_t y = 0; y < nx; ++y) ma = alg.meet(ma, alg.implies(body[y], r.at(a, y)));
        acc = alg.meet(acc, alg.implies(ma, ctx.incidence.at(a, x)));
      }
      return acc;
    }
  }
  return alg.bot();
}

// ---------------------------------------------------------------------------
// Model blocks

Interpretation interpretation_from_block(const KnowledgeBase& kb) {
  if (!kb.model) throw Error(ErrorKind::InvalidModel, "the knowledge base has no model block");
  const ModelBlock& block = *kb.model;
  const Algebra& alg = *kb.algebra;
  auto where = [](int line) { return "line " + std::to_string(line) + ": "; };
  auto check_unique = [](const std::vector<std::string>& names, const char* what) {
    std::set<std::string> seen;
    for (const auto& n : names) {
      if (!seen.insert(n).second) {
        throw Error(ErrorKind::InvalidModel, std::string("duplicate ") + what + " '" + n + "'");
      }
    }
  };
  check_unique(block.objects, "object");
  check_unique(block.features, "feature");
  for (const auto& n : block.objects) {
    if (std::find(block.features.begin(), block.features.end(), n) != block.features.end()) {
      throw Error(ErrorKind::InvalidModel, "'" + n + "' is both an object and a feature");
    }
  }
  Interpretation interp{Context(kb.algebra, block.objects, block.features), {}, {}, {}};
  Context& ctx = interp.context;
  for (const auto& r : kb.signature.box_roles) ctx.add_box(r);
  for (const auto& r : kb.signature.dia_roles) ctx.add_dia(r);

  for (const auto& row : block.rows) {
    const bool is_dia = kb.signature.is_dia_role(row.relation);
    Relation* rel = nullptr;
    if (row.relation == "I") {
      rel = &ctx.incidence;
    } else if (kb.signature.is_box_role(row.relation)) {
      rel = &ctx.box.at(row.relation);
    } else if (is_dia) {
      rel = &ctx.dia.at(row.relation);
    } else {
      throw Error(ErrorKind::UnknownRelation, where(row.line) + "unknown relation '" + row.relation + "'");
    }
    auto owner = is_dia ? ctx.feature_index(row.owner) : ctx.object_index(row.owner);
    if (!owner) {
      throw Error(ErrorKind::InvalidModel, where(row.line) + "'" + row.owner + "' is not " +
                                               (is_dia ? "a model feature" : "a model object"));
    }
    if (row.values.size() != rel->cols) {
      throw Error(ErrorKind::InvalidModel, where(row.line) + "expected " + std::to_string(rel->cols) +
                                               " values, got " + std::to_string(row.values.size()));
    }
    for (std::size_t c = 0; c < rel->cols; ++c) rel->at(*owner, c) = row.values[c];
  }

  for (const auto& e : block.extents) {
    if (!kb.signature.is_concept(e.name)) {
      throw Error(ErrorKind::Undeclared, where(e.line) + "undeclared concept '" + e.name + "'");
    }
    if (e.values.size() != ctx.objects().size()) {
      throw Error(ErrorKind::InvalidModel, where(e.line) + "extent has the wrong length");
    }
    if (!is_stable(ctx, e.values, Side::Object)) {
      throw Error(ErrorKind::InvalidModel, where(e.line) + "extent of " + e.name + " is not Galois-stable");
    }
    interp.primitives[e.name] = {e.values, up(ctx, e.values)};
  }
  for (const auto& c : block.classified) {
    if (!kb.signature.is_concept(c.name)) {
      throw Error(ErrorKind::Undeclared, where(c.line) + "undeclared concept '" + c.name + "'");
    }
    auto a = ctx.object_index(c.object);
    auto x = ctx.feature_index(c.feature);
    if (!a || !x) throw Error(ErrorKind::InvalidModel, where(c.line) + "unknown classifying individual");
    // Stored as given; check_kb reports the pair if it is not a concept.
    interp.primitives[c.name] = {
        down(ctx, singleton(alg, ctx.features().size(), *x, alg.top())),
        up(ctx, singleton(alg, ctx.objects().size(), *a, alg.top()))};
  }
  for (const auto& name : kb.signature.concepts) {
    if (!interp.primitives.count(name)) {
      interp.primitives[name] = concept_of_intent(ctx, constant_set(ctx.features().size(), alg.top()));
    }
  }

  for (const auto& b : block.bindings) {
    if (kb.signature.is_object(b.individual)) {
      auto a = ctx.object_index(b.element);
      if (!a) throw Error(ErrorKind::InvalidModel, where(b.line) + "'" + b.element + "' is not a model object");
      interp.object_map[b.individual] = *a;
    } else if (kb.signature.is_feature(b.individual)) {
      auto x = ctx.feature_index(b.element);
      if (!x) throw Error(ErrorKind::InvalidModel, where(b.line) + "'" + b.element + "' is not a model feature");
      interp.feature_map[b.individual] = *x;
    } else {
      throw Error(ErrorKind::Undeclared, where(b.line) + "undeclared individual '" + b.individual + "'");
    }
  }
  // Individuals named like model elements bind implicitly.
  for (const auto& o : kb.signature.objects) {
    if (auto a = ctx.object_index(o); a && !interp.object_map.count(o)) interp.object_map[o] = *a;
  }
  for (const auto& f : kb.signature.features) {
    if (auto x = ctx.feature_index(f); x && !interp.feature_map.count(f)) interp.feature_map[f] = *x;
  }
  return interp;
}

ModelBlock block_from_interpretation(const Interpretation& interp) {
  const Context& ctx = interp.context;
  ModelBlock block;
  block.objects = ctx.objects();
  block.features = ctx.features();
  auto rows = [&](const std::string& name, const Relation& rel, const std::vector<std::string>& owners) {
    for (std::size_t r = 0; r < rel.rows; ++r) {
      ModelBlock::Row row;
      row.relation = name;
      row.owner = owners[r];
      row.values.assign(rel.cells.begin() + static_cast<std::ptrdiff_t>(r * rel.cols),
                        rel.cells.begin() + static_cast<std::ptrdiff_t>((r + 1) * rel.cols));
      block.rows.push_back(std::move(row));
    }
  };
  rows("I", ctx.incidence, ctx.objects());
  for (const auto& [role, rel] : ctx.box) rows(role, rel, ctx.objects());
  for (const auto& [role, rel] : ctx.dia) rows(role, rel, ctx.features());
  for (const auto& [name, c] : interp.primitives) {
    ModelBlock::Extent e;
    e.name = name;
    e.values = c.extent;
    block.extents.push_back(std::move(e));
  }
  for (const auto& [ind, a] : interp.object_map) {
    block.bindings.push_back({ind, ctx.objects()[a], 0});
  }
  for (const auto& [ind, x] : interp.feature_map) {
    block.bindings.push_back({ind, ctx.features()[x], 0});
  }
  return block;
}

std::string relation_table(const Algebra& alg, const std::string& title,
                           const std::vector<std::string>& rows,
                           const std::vector<std::string>& cols, const Relation& rel) {
  std::vector<std::size_t> width(cols.size() + 1, title.size());
  for (const auto& r : rows) width[0] = std::max(width[0], r.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    width[c + 1] = cols[c].size();
    for (std::size_t r = 0; r < rows.size(); ++r) {
      width[c + 1] = std::max(width[c + 1], alg.name(rel.at(r, c)).size());
    }
  }
  std::ostringstream out;
  auto cell = [&](const std::string& s, std::size_t w) {
    out << s << std::string(w - s.size(), ' ');
  };
  cell(title, width[0]);
  for (std::size_t c = 0; c < cols.size(); ++c) {
    out << "  ";
    cell(cols[c], width[c + 1]);
  }
  out << '\n';
  for (std::size_t r = 0; r < rows.size(); ++r) {
    cell(rows[r], width[0]);
    for (std::size_t c = 0; c < cols.size(); ++c) {
      out << "  ";
      cell(alg.name(rel.at(r, c)), width[c + 1]);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace falc
