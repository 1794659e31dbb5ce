#include "falc/modelgen.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "falc/error.hpp"
#include "falc/unravel.hpp"

namespace falc {

Interpretation extract_model(const Tableau& completion, const KnowledgeBase& original) {
  if (!completion.consistent()) {
    throw Error(ErrorKind::InconsistentCompletion, "cannot extract a model from a completion with a clash");
  }
  const Algebra& alg = completion.algebra();
  const auto& consts = completion.constants();

  std::vector<std::string> objects;
  std::vector<std::string> features;
  std::vector<std::size_t> slot(consts.size());
  for (std::size_t c = 0; c < consts.size(); ++c) {
    auto& into = consts[c].sort == Side::Object ? objects : features;
    slot[c] = into.size();
    into.push_back(consts[c].name);
  }
  const std::size_t top_object = objects.size();
  objects.push_back(kTopObject);
  const std::size_t bottom_feature = features.size();
  features.push_back(kBottomFeature);

  Interpretation model{Context(completion.algebra_ptr(), objects, features), {}, {}, {}};
  Context& ctx = model.context;
  for (const auto& r : original.signature.box_roles) ctx.add_box(r);
  for (const auto& r : original.signature.dia_roles) ctx.add_dia(r);
  const auto& roles = completion.roles();

  for (TermId t = 0; t < completion.term_count(); ++t) {
    auto bound = completion.positive(t);
    if (!bound) continue;
    const TermKey& k = completion.term(t);
    switch (k.kind) {
      case TermKind::Inc: ctx.incidence.at(slot[k.object], slot[k.feature]) = *bound; break;
      case TermKind::BoxRel: ctx.add_box(roles[k.role]).at(slot[k.object], slot[k.feature]) = *bound; break;
      case TermKind::DiaRel: ctx.add_dia(roles[k.role]).at(slot[k.feature], slot[k.object]) = *bound; break;
      default: break;
    }
  }

  const std::size_t na = objects.size();
  const std::size_t nx = features.size();
  for (const auto& name : original.signature.concepts) {
    auto id = completion.find_concept(Concept::primitive(name));
    if (id && completion.in_occurrence(*id)) {
      const std::size_t a = slot[*completion.classifier(*id, Side::Object)];
      const std::size_t x = slot[*completion.classifier(*id, Side::Feature)];
      model.primitives[name] = {down(ctx, singleton(alg, nx, x, alg.top())),
                                up(ctx, singleton(alg, na, a, alg.top()))};
    } else {
      model.primitives[name] = concept_of_intent(ctx, constant_set(nx, alg.top()));
    }
  }
  apply_definitions(model, original.tbox);

  for (const auto& o : original.signature.objects) {
    auto c = completion.named(o);
    model.object_map[o] = c ? slot[*c] : top_object;
  }
  for (const auto& f : original.signature.features) {
    auto c = completion.named(f);
    model.feature_map[f] = c ? slot[*c] : bottom_feature;
  }
  return model;
}

std::string SoundnessReport::describe() const {
  std::ostringstream out;
  auto section = [&](const char* title, const std::vector<std::string>& items) {
    out << title << ": " << (items.empty() ? "pass" : "FAIL") << '\n';
    for (const auto& i : items) out << "  " << i << '\n';
  };
  section("(i) satisfaction", satisfaction);
  section("(ii) compatibility", compatibility);
  section("(iii) atomic stability", stability);
  section("(iv) classifying", classifying);
  return out.str();
}

SoundnessReport verify_soundness(const Interpretation& model, const KnowledgeBase& original,
                                 const Tableau& completion) {
  SoundnessReport report;
  const Context& ctx = model.context;
  const Algebra& alg = ctx.algebra();

  report.satisfaction = check_kb(model, original.abox, original.tbox).failures;

  const CompatibilityReport comp = check_compatibility(ctx);
  if (!comp.ok) report.compatibility.push_back(comp.describe(ctx));

  const std::size_t na = ctx.objects().size();
  const std::size_t nx = ctx.features().size();
  for (ConceptId id : completion.occurrence()) {
    const Concept& c = completion.concept_of(id);
    if (c.kind() != ConceptKind::Primitive) continue;
    const std::size_t a = *ctx.object_index(completion.constants()[*completion.classifier(id, Side::Object)].name);
    const std::size_t x = *ctx.feature_index(completion.constants()[*completion.classifier(id, Side::Feature)].name);
    const FuzzySet ext = down(ctx, singleton(alg, nx, x, alg.top()));
    const FuzzySet inte = up(ctx, singleton(alg, na, a, alg.top()));
    if (up(ctx, ext) != inte) {
      report.stability.push_back(c.name() + ": {1/x}↓↑ = " + format_set(alg, up(ctx, ext)) +
                                 " but {1/a}↑ = " + format_set(alg, inte));
    }
    if (down(ctx, inte) != ext) {
      report.stability.push_back(c.name() + ": {1/a}↑↓ = " + format_set(alg, down(ctx, inte)) +
                                 " but {1/x}↓ = " + format_set(alg, ext));
    }
  }

  const auto& consts = completion.constants();
  for (ConceptId id : completion.occurrence()) {
    const Concept& c = completion.concept_of(id);
    FuzzyConcept value;
    try {
      value = eval_concept(model, c);
    } catch (const Error& e) {
      report.classifying.push_back(c.str() + ": " + e.what());
      continue;
    }
    const ConstId ac = *completion.classifier(id, Side::Object);
    const ConstId xc = *completion.classifier(id, Side::Feature);
    for (ConstId k = 0; k < consts.size(); ++k) {
      if (consts[k].sort == Side::Object) {
        const std::size_t b = *ctx.object_index(consts[k].name);
        const Elem expected = completion.bound_or_bot(TermKey{TermKind::Inc, k, xc, kNone, kNone});
        if (value.extent[b] != expected) {
          report.classifying.push_back("extent of " + c.str() + " at " + consts[k].name + " is " +
                                       alg.name(value.extent[b]) + ", completion bound " +
                                       alg.name(expected));
        }
      } else {
        const std::size_t y = *ctx.feature_index(consts[k].name);
        const Elem expected = completion.bound_or_bot(TermKey{TermKind::Inc, ac, k, kNone, kNone});
        if (value.intent[y] != expected) {
          report.classifying.push_back("intent of " + c.str() + " at " + consts[k].name + " is " +
                                       alg.name(value.intent[y]) + ", completion bound " +
                                       alg.name(expected));
        }
      }
    }
  }
  return report;
}

std::size_t model_size(const Interpretation& model) {
  const Context& ctx = model.context;
  const Elem bot = ctx.algebra().bot();
  auto entries = [&](const Relation& rel) {
    return static_cast<std::size_t>(std::count_if(rel.cells.begin(), rel.cells.end(),
                                                   [&](Elem e) { return e != bot; }));
  };
  std::size_t n = ctx.objects().size() + ctx.features().size() + entries(ctx.incidence);
  for (const auto& [r, rel] : ctx.box) n += entries(rel);
  for (const auto& [r, rel] : ctx.dia) n += entries(rel);
  return n;
}

void apply_definitions(Interpretation& interp, const std::vector<TBoxAxiom>& tbox,
                       const std::set<std::string>& keep) {
  if (tbox.empty()) return;
  for (const auto& name : check_acyclic(tbox).order) {
    if (keep.count(name)) continue;
    for (const auto& ax : tbox) {
      if (ax.left.name() == name) interp.primitives[name] = eval_concept(interp, ax.right);
    }
  }
}

}  // namespace falc
