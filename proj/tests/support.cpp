#include "support.hpp"

#include <algorithm>
#include <functional>

#ifndef FALC_DATA_DIR
#define FALC_DATA_DIR "data"
#endif

namespace falc::testing {

namespace {

template <typename T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

std::vector<std::string> names(const std::string& prefix, int n) {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

Signature signature_for(const RandomKbSpec& spec) {
  Signature sig;
  sig.objects = names("a", spec.objects);
  sig.features = names("x", spec.features);
  sig.concepts = names("D", spec.primitives);
  sig.box_roles = names("R", spec.box_roles);
  sig.dia_roles = names("S", spec.dia_roles);
  return sig;
}

Concept random_concept_in(std::mt19937_64& rng, const Signature& sig, int depth, int size) {
  std::uniform_int_distribution<int> coin(0, 9);
  if (size <= 1 || coin(rng) < 4) return Concept::primitive(pick(rng, sig.concepts));
  std::vector<int> kinds = {0, 1};
  if (depth > 0 && !sig.box_roles.empty()) kinds.push_back(2);
  if (depth > 0 && !sig.dia_roles.empty()) kinds.push_back(3);
  switch (pick(rng, kinds)) {
    case 0:
      return Concept::conj(random_concept_in(rng, sig, depth, size / 2),
                           random_concept_in(rng, sig, depth, size / 2));
    case 1:
      return Concept::disj(random_concept_in(rng, sig, depth, size / 2),
                           random_concept_in(rng, sig, depth, size / 2));
    case 2:
      return Concept::box(pick(rng, sig.box_roles), random_concept_in(rng, sig, depth - 1, size - 1));
    default:
      return Concept::dia(pick(rng, sig.dia_roles), random_concept_in(rng, sig, depth - 1, size - 1));
  }
}

}  // namespace

Concept random_concept(std::mt19937_64& rng, const RandomKbSpec& spec, int depth) {
  return random_concept_in(rng, signature_for(spec), depth, 6);
}

KnowledgeBase random_kb(std::mt19937_64& rng, const RandomKbSpec& spec) {
  KnowledgeBase kb;
  kb.algebra = spec.algebra;
  kb.signature = signature_for(spec);
  const Signature& sig = kb.signature;
  std::vector<Elem> bounds;
  for (Elem e : spec.algebra->elements()) {
    if (e != spec.algebra->bot()) bounds.push_back(e);
  }
  std::uniform_int_distribution<int> kind(0, 9);
  std::bernoulli_distribution negative(spec.negative_rate);
  // An ABox is a set; duplicates are redrawn.
  for (int tries = 0; static_cast<int>(kb.abox.size()) < spec.assertions && tries < 100 * spec.assertions;
       ++tries) {
    Assertion a;
    a.polarity = negative(rng) ? Polarity::Negative : Polarity::Positive;
    a.bound = pick(rng, bounds);
    const int k = kind(rng);
    if (k < 4) {
      a.term = ABoxTerm::member(pick(rng, sig.objects), random_concept_in(rng, sig, spec.max_depth, 6));
    } else if (k < 7) {
      a.term = ABoxTerm::describes(pick(rng, sig.features), random_concept_in(rng, sig, spec.max_depth, 6));
    } else if (k == 7) {
      a.term = ABoxTerm::inc(pick(rng, sig.objects), pick(rng, sig.features));
    } else if (k == 8 && !sig.box_roles.empty()) {
      a.term = ABoxTerm::box_rel(pick(rng, sig.box_roles), pick(rng, sig.objects), pick(rng, sig.features));
    } else if (!sig.dia_roles.empty()) {
      a.term = ABoxTerm::dia_rel(pick(rng, sig.dia_roles), pick(rng, sig.features), pick(rng, sig.objects));
    } else {
      a.term = ABoxTerm::inc(pick(rng, sig.objects), pick(rng, sig.features));
    }
    if (std::find(kb.abox.begin(), kb.abox.end(), a) == kb.abox.end()) kb.abox.push_back(std::move(a));
  }
  return kb;
}

std::vector<KnowledgeBase> tiny_family(int max_assertions) {
  auto alg = std::make_shared<const Algebra>(Algebra::make_chain(2));
  Signature sig;
  sig.objects = {"a1", "a2"};
  sig.features = {"x1", "x2"};
  sig.concepts = {"D1", "D2"};
  sig.box_roles = {"R"};
  const Concept d1 = Concept::primitive("D1");
  const Concept d2 = Concept::primitive("D2");
  const std::vector<Concept> pool = {d1, d2, Concept::conj(d1, d2), Concept::disj(d1, d2),
                                     Concept::box("R", d1), Concept::box("R", d2)};
  std::vector<ABoxTerm> terms;
  for (const auto& o : sig.objects) {
    for (const auto& c : pool) terms.push_back(ABoxTerm::member(o, c));
  }
  for (const auto& f : sig.features) {
    for (const auto& c : pool) terms.push_back(ABoxTerm::describes(f, c));
  }
  for (const auto& o : sig.objects) {
    for (const auto& f : sig.features) {
      terms.push_back(ABoxTerm::inc(o, f));
      terms.push_back(ABoxTerm::box_rel("R", o, f));
    }
  }
  std::vector<Assertion> atoms;
  for (const auto& t : terms) {
    atoms.push_back({Polarity::Positive, alg->top(), t});
    atoms.push_back({Polarity::Negative, alg->top(), t});
  }
  std::vector<KnowledgeBase> out;
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (!chosen.empty()) {
      KnowledgeBase kb;
      kb.algebra = alg;
      kb.signature = sig;
      for (std::size_t i : chosen) kb.abox.push_back(atoms[i]);
      out.push_back(std::move(kb));
    }
    if (static_cast<int>(chosen.size()) == max_assertions) return;
    for (std::size_t i = start; i < atoms.size(); ++i) {
      chosen.push_back(i);
      rec(i + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  return out;
}

RandomContext random_context(std::mt19937_64& rng, std::shared_ptr<const Algebra> alg,
                             std::size_t objects, std::size_t features, int compatible_tries) {
  std::vector<std::string> objs;
  std::vector<std::string> feats;
  for (std::size_t i = 1; i <= objects; ++i) objs.push_back("a" + std::to_string(i));
  for (std::size_t i = 1; i <= features; ++i) feats.push_back("x" + std::to_string(i));
  RandomContext rc{Context(alg, objs, feats)};
  Context& ctx = rc.context;
  const std::vector<Elem> elems = alg->elements();
  for (auto& cell : ctx.incidence.cells) cell = pick(rng, elems);

  // Candidate columns: sets v over objects with every alpha -> v stable.
  std::vector<FuzzySet> columns;
  FuzzySet v(objects, alg->bot());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == objects) {
      for (Elem alpha : elems) {
        FuzzySet s(objects);
        for (std::size_t a = 0; a < objects; ++a) s[a] = alg->implies(alpha, v[a]);
        if (!is_stable(ctx, s, Side::Object)) return;
      }
      columns.push_back(v);
      return;
    }
    for (Elem e : elems) {
      v[i] = e;
      rec(i + 1);
    }
  };
  rec(0);

  Relation& box = ctx.add_box("R");
  Relation& dia = ctx.add_dia("S");
  for (std::size_t a = 0; a < objects; ++a) {
    for (std::size_t x = 0; x < features; ++x) {
      box.at(a, x) = ctx.incidence.at(a, x);
      dia.at(x, a) = ctx.incidence.at(a, x);
    }
  }
  const Relation box_fallback = box;
  const Relation dia_fallback = dia;
  auto sample = [&](bool is_box) {
    for (int t = 0; t < compatible_tries; ++t) {
      Relation m(objects, features, alg->bot());
      for (std::size_t x = 0; x < features; ++x) {
        const FuzzySet& col = pick(rng, columns);
        for (std::size_t a = 0; a < objects; ++a) m.at(a, x) = col[a];
      }
      if (is_box) {
        box = m;
      } else {
        for (std::size_t a = 0; a < objects; ++a) {
          for (std::size_t x = 0; x < features; ++x) dia.at(x, a) = m.at(a, x);
        }
      }
      if (check_compatibility(ctx).ok) return true;
    }
    if (is_box) {
      box = box_fallback;
    } else {
      dia = dia_fallback;
    }
    return false;
  };
  rc.sampled_box = sample(true);
  rc.sampled_dia = sample(false);
  return rc;
}

std::string data_path(const std::string& name) { return std::string(FALC_DATA_DIR) + "/" + name; }

}  // namespace falc::testing
