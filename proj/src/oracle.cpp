#include "falc/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "falc/error.hpp"
#include "falc/modelgen.hpp"
#include "falc/tableau.hpp"
#include "falc/unravel.hpp"

namespace falc {

namespace {

using Val = std::uint16_t;
using Vec = std::vector<Val>;

// Fuzzy sets over a domain of size n are coded in base |H|, first element
// least significant.
struct Codec {
  std::size_t h;
  std::size_t n;
  std::size_t count;

  Codec(std::size_t h_, std::size_t n_) : h(h_), n(n_), count(1) {
    for (std::size_t i = 0; i < n; ++i) count *= h;
  }
  std::size_t encode(const Vec& v) const {
    std::size_t code = 0;
    for (std::size_t i = n; i-- > 0;) code = code * h + v[i];
    return code;
  }
  Vec decode(std::size_t code) const {
    Vec v(n);
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = static_cast<Val>(code % h);
      code /= h;
    }
    return v;
  }
};

// One node of the ABox's subconcept DAG.
struct Node {
  ConceptKind kind;
  int lhs = -1;
  int rhs = -1;
  int role = -1;      // index into box or dia role list
  int primitive = -1; // index into primitive list
  int ready = -1;     // largest primitive index it depends on
};

struct Problem {
  const Algebra* alg = nullptr;
  std::vector<Node> nodes;
  std::vector<std::string> primitives;
  std::vector<std::string> box_roles;
  std::vector<std::string> dia_roles;
  std::vector<std::string> objects;   // named objects occurring in the ABox
  std::vector<std::string> features;

  struct Check {
    Polarity polarity;
    Val bound;
    TermKind kind;
    int object = -1;
    int feature = -1;
    int role = -1;
    int node = -1;
    int ready = -1;
  };
  std::vector<Check> relational;
  std::vector<Check> conceptual;
};

int index_of(std::vector<std::string>& v, const std::string& s) {
  auto it = std::find(v.begin(), v.end(), s);
  if (it != v.end()) return static_cast<int>(it - v.begin());
  v.push_back(s);
  return static_cast<int>(v.size() - 1);
}

Problem build_problem(const KnowledgeBase& kb) {
  Problem p;
  p.alg = kb.algebra.get();
  std::map<Concept, int> ids;
  std::function<int(const Concept&)> add = [&](const Concept& c) -> int {
    if (auto it = ids.find(c); it != ids.end()) return it->second;
    Node n{c.kind()};
    switch (c.kind()) {
      case ConceptKind::Primitive:
        n.primitive = index_of(p.primitives, c.name());
        n.ready = n.primitive;
        break;
      case ConceptKind::Box:
      case ConceptKind::Dia:
        n.lhs = add(c.body());
        n.role = index_of(c.kind() == ConceptKind::Box ? p.box_roles : p.dia_roles, c.name());
        n.ready = p.nodes[static_cast<std::size_t>(n.lhs)].ready;
        break;
      default:
        n.lhs = add(c.lhs());
        n.rhs = add(c.rhs());
        n.ready = std::max(p.nodes[static_cast<std::size_t>(n.lhs)].ready,
                           p.nodes[static_cast<std::size_t>(n.rhs)].ready);
    }
    p.nodes.push_back(n);
    const int id = static_cast<int>(p.nodes.size() - 1);
    ids.emplace(c, id);
    return id;
  };
  for (const auto& a : kb.abox) {
    Problem::Check chk{a.polarity, a.bound.id, a.term.kind};
    switch (a.term.kind) {
      case TermKind::Member:
        chk.object = index_of(p.objects, a.term.object);
        chk.node = add(*a.term.body);
        break;
      case TermKind::Describes:
        chk.feature = index_of(p.features, a.term.feature);
        chk.node = add(*a.term.body);
        break;
      case TermKind::Inc:
        chk.object = index_of(p.objects, a.term.object);
        chk.feature = index_of(p.features, a.term.feature);
        break;
      case TermKind::BoxRel:
        chk.object = index_of(p.objects, a.term.object);
        chk.feature = index_of(p.features, a.term.feature);
        chk.role = index_of(p.box_roles, a.term.role);
        break;
      case TermKind::DiaRel:
        chk.object = index_of(p.objects, a.term.object);
        chk.feature = index_of(p.features, a.term.feature);
        chk.role = index_of(p.dia_roles, a.term.role);
        break;
    }
    if (chk.node >= 0) {
      chk.ready = p.nodes[static_cast<std::size_t>(chk.node)].ready;
      p.conceptual.push_back(chk);
    } else {
      p.relational.push_back(chk);
    }
  }
  std::stable_sort(p.conceptual.begin(), p.conceptual.end(),
                   [](const auto& a, const auto& b) { return a.ready < b.ready; });
  return p;
}

// Restricted-growth strings of length k over [0, n).
std::vector<std::vector<int>> growth_maps(std::size_t k, std::size_t n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int max_used) {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= max_used + 1 && v < static_cast<int>(n); ++v) {
      cur.push_back(v);
      rec(std::max(max_used, v));
      cur.pop_back();
    }
  };
  rec(-1);
  return out;
}

class Search {
 public:
  Search(const Problem& p, std::size_t na, std::size_t nx, std::uint64_t& visited, std::uint64_t budget)
      : p_(p),
        alg_(*p.alg),
        na_(na),
        nx_(nx),
        ca_(alg_.size(), na),
        cx_(alg_.size(), nx),
        visited_(visited),
        budget_(budget) {}

  // On success fills the result fields below.
  bool run() {
    if (p_.objects.size() > 0 && na_ == 0) return false;
    const auto obj_maps = growth_maps(p_.objects.size(), na_);
    const auto feat_maps = growth_maps(p_.features.size(), nx_);
    const Codec cells(alg_.size(), na_ * nx_);
    // Descending lexicographic, so the all-top incidence comes first.
    for (std::size_t code = cells.count; code-- > 0;) {
      incidence_ = cells.decode(code);  // index a * nx + x
      build_lattice();
      obj_maps_ = &obj_maps;
      feat_maps_ = &feat_maps;
      // Skip incidences that no individual map can reconcile with the
      // assertions on I alone.
      bool any = false;
      for (const auto& om : obj_maps) {
        for (const auto& fm : feat_maps) {
          omap_ = om;
          fmap_ = fm;
          if (relational_ok(-1)) any = true;
        }
      }
      if (!any) {
        ++visited_;
        continue;
      }
      build_candidates();
      if (assign_roles(0)) return true;
    }
    return false;
  }

  std::vector<Val> incidence_;
  std::vector<Vec> box_;  // per box role, index a * nx + x
  std::vector<Vec> dia_;  // per dia role, index x * na + a
  std::vector<int> omap_;
  std::vector<int> fmap_;
  std::vector<int> prim_;  // concept index per primitive
  std::vector<Vec> extents_;
  std::vector<Vec> intents_;

 private:
  Val I(std::size_t a, std::size_t x) const { return incidence_[a * nx_ + x]; }
  Elem e(Val v) const { return Elem{v}; }
  Val imp(Val a, Val b) const { return alg_.implies(e(a), e(b)).id; }
  Val mt(Val a, Val b) const { return alg_.meet(e(a), e(b)).id; }

  Vec up_of(const Vec& f) const {
    Vec u(nx_, alg_.top().id);
    for (std::size_t x = 0; x < nx_; ++x) {
      for (std::size_t a = 0; a < na_; ++a) u[x] = mt(u[x], imp(f[a], I(a, x)));
    }
    return u;
  }
  Vec down_of(const Vec& u) const {
    Vec f(na_, alg_.top().id);
    for (std::size_t a = 0; a < na_; ++a) {
      for (std::size_t x = 0; x < nx_; ++x) f[a] = mt(f[a], imp(u[x], I(a, x)));
    }
    return f;
  }

  void build_lattice() {
    extents_.clear();
    intents_.clear();
    concept_of_extent_.assign(ca_.count, -1);
    stable_intent_.assign(cx_.count, 0);
    for (std::size_t code = 0; code < ca_.count; ++code) {
      const Vec f = ca_.decode(code);
      const Vec u = up_of(f);
      if (down_of(u) == f) {
        concept_of_extent_[code] = static_cast<int>(extents_.size());
        extents_.push_back(f);
        intents_.push_back(u);
        stable_intent_[cx_.encode(u)] = 1;
      }
    }
    const std::size_t n = extents_.size();
    meet_.assign(n * n, -1);
    join_.assign(n * n, -1);
  }

  int meet(int i, int j) {
    int& m = meet_[static_cast<std::size_t>(i) * extents_.size() + static_cast<std::size_t>(j)];
    if (m < 0) {
      Vec f(na_);
      for (std::size_t a = 0; a < na_; ++a) f[a] = mt(extents_[i][a], extents_[j][a]);
      m = concept_of_extent_[ca_.encode(f)];
    }
    return m;
  }
  int join(int i, int j) {
    int& m = join_[static_cast<std::size_t>(i) * extents_.size() + static_cast<std::size_t>(j)];
    if (m < 0) {
      Vec u(nx_);
      for (std::size_t x = 0; x < nx_; ++x) u[x] = mt(intents_[i][x], intents_[j][x]);
      m = concept_of_extent_[ca_.encode(down_of(u))];
    }
    return m;
  }
  int box(int role, int i) {
    const Vec& r = box_[static_cast<std::size_t>(role)];
    Vec f(na_, alg_.top().id);
    for (std::size_t a = 0; a < na_; ++a) {
      for (std::size_t x = 0; x < nx_; ++x) f[a] = mt(f[a], imp(intents_[i][x], r[a * nx_ + x]));
    }
    return concept_of_extent_[ca_.encode(f)];
  }
  int dia(int role, int i) {
    const Vec& r = dia_[static_cast<std::size_t>(role)];
    Vec u(nx_, alg_.top().id);
    for (std::size_t x = 0; x < nx_; ++x) {
      for (std::size_t a = 0; a < na_; ++a) u[x] = mt(u[x], imp(extents_[i][a], r[x * na_ + a]));
    }
    return concept_of_extent_[ca_.encode(down_of(u))];
  }

  // Matrices M[a][x] whose columns and rows generate stable sets under every
  // alpha; shared by box relations (as is) and diamond relations (transposed).
  void build_candidates() {
    std::vector<Vec> cols;
    for (std::size_t code = 0; code < ca_.count; ++code) {
      const Vec v = ca_.decode(code);
      bool ok = true;
      for (Elem alpha : alg_.elements()) {
        Vec s(na_);
        for (std::size_t a = 0; a < na_; ++a) s[a] = imp(alpha.id, v[a]);
        if (concept_of_extent_[ca_.encode(s)] < 0) {
          ok = false;
          break;
        }
      }
      if (ok) cols.push_back(v);
    }
    auto row_ok = [&](const Vec& m, std::size_t a) {
      for (Elem alpha : alg_.elements()) {
        Vec s(nx_);
        for (std::size_t x = 0; x < nx_; ++x) s[x] = imp(alpha.id, m[a * nx_ + x]);
        if (!stable_intent_[cx_.encode(s)]) return false;
      }
      return true;
    };
    candidates_.clear();
    std::vector<std::size_t> pick(nx_, 0);
    if (cols.empty()) return;
    while (true) {
      Vec m(na_ * nx_);
      for (std::size_t x = 0; x < nx_; ++x) {
        for (std::size_t a = 0; a < na_; ++a) m[a * nx_ + x] = cols[pick[x]][a];
      }
      bool ok = true;
      for (std::size_t a = 0; a < na_ && ok; ++a) ok = row_ok(m, a);
      if (ok) candidates_.push_back(std::move(m));
      std::size_t k = 0;
      while (k < nx_ && ++pick[k] == cols.size()) pick[k++] = 0;
      if (k == nx_) break;
    }
  }

  Vec transpose(const Vec& m) const {
    Vec t(na_ * nx_);
    for (std::size_t a = 0; a < na_; ++a) {
      for (std::size_t x = 0; x < nx_; ++x) t[x * na_ + a] = m[a * nx_ + x];
    }
    return t;
  }

  // Checks relational assertions; `upto` limits which roles are assigned:
  // -1 means none, otherwise roles with flat index < upto.
  bool relational_ok(int upto) const {
    const int nbox = static_cast<int>(p_.box_roles.size());
    for (const auto& c : p_.relational) {
      const std::size_t a = static_cast<std::size_t>(omap_[static_cast<std::size_t>(c.object)]);
      const std::size_t x = static_cast<std::size_t>(fmap_[static_cast<std::size_t>(c.feature)]);
      Val v;
      if (c.kind == TermKind::Inc) {
        v = I(a, x);
      } else if (c.kind == TermKind::BoxRel) {
        if (c.role >= upto) continue;
        v = box_[static_cast<std::size_t>(c.role)][a * nx_ + x];
      } else {
        if (nbox + c.role >= upto) continue;
        v = dia_[static_cast<std::size_t>(c.role)][x * na_ + a];
      }
      const bool holds = alg_.leq(Elem{c.bound}, Elem{v});
      if (holds != (c.polarity == Polarity::Positive)) return false;
    }
    return true;
  }

  bool assign_roles(std::size_t k) {
    const std::size_t nbox = p_.box_roles.size();
    const std::size_t total = nbox + p_.dia_roles.size();
    if (k == 0) {
      box_.assign(nbox, Vec{});
      dia_.assign(p_.dia_roles.size(), Vec{});
    }
    if (k == total) {
      for (const auto& om : *obj_maps_) {
        for (const auto& fm : *feat_maps_) {
          if (++visited_ > budget_) {
            throw Error(ErrorKind::BudgetExceeded,
                        "oracle budget of " + std::to_string(budget_) + " candidates exhausted");
          }
          omap_ = om;
          fmap_ = fm;
          if (!relational_ok(static_cast<int>(total))) continue;
          prim_.assign(p_.primitives.size(), -1);
          node_val_.assign(p_.nodes.size(), -1);
          if (assign_primitives(0)) return true;
        }
      }
      return false;
    }
    for (const auto& m : candidates_) {
      if (k < nbox) {
        box_[k] = m;
      } else {
        dia_[k - nbox] = transpose(m);
      }
      if (assign_roles(k + 1)) return true;
    }
    return false;
  }

  bool conceptual_ok(int level) {
    // Evaluate every node that becomes ready at this level.
    for (std::size_t n = 0; n < p_.nodes.size(); ++n) {
      const Node& node = p_.nodes[n];
      if (node.ready != level) continue;
      int v = -1;
      switch (node.kind) {
        case ConceptKind::Primitive: v = prim_[static_cast<std::size_t>(node.primitive)]; break;
        case ConceptKind::And: v = meet(node_val_[node.lhs], node_val_[node.rhs]); break;
        case ConceptKind::Or: v = join(node_val_[node.lhs], node_val_[node.rhs]); break;
        case ConceptKind::Box: v = box(node.role, node_val_[node.lhs]); break;
        case ConceptKind::Dia: v = dia(node.role, node_val_[node.lhs]); break;
      }
      node_val_[n] = v;
    }
    for (const auto& c : p_.conceptual) {
      if (c.ready != level) continue;
      const int concept_index = node_val_[static_cast<std::size_t>(c.node)];
      Val v;
      if (c.kind == TermKind::Member) {
        v = extents_[concept_index][static_cast<std::size_t>(omap_[static_cast<std::size_t>(c.object)])];
      } else {
        v = intents_[concept_index][static_cast<std::size_t>(fmap_[static_cast<std::size_t>(c.feature)])];
      }
      const bool holds = alg_.leq(Elem{c.bound}, Elem{v});
      if (holds != (c.polarity == Polarity::Positive)) return false;
    }
    return true;
  }

  bool assign_primitives(std::size_t k) {
    if (k == p_.primitives.size()) return true;
    for (std::size_t c = 0; c < extents_.size(); ++c) {
      prim_[k] = static_cast<int>(c);
      if (conceptual_ok(static_cast<int>(k)) && assign_primitives(k + 1)) return true;
    }
    return false;
  }

  const Problem& p_;
  const Algebra& alg_;
  std::size_t na_;
  std::size_t nx_;
  Codec ca_;
  Codec cx_;
  std::uint64_t& visited_;
  std::uint64_t budget_;
  std::vector<int> concept_of_extent_;
  std::vector<char> stable_intent_;
  std::vector<int> meet_;
  std::vector<int> join_;
  std::vector<Vec> candidates_;
  std::vector<int> node_val_;
  const std::vector<std::vector<int>>* obj_maps_ = nullptr;
  const std::vector<std::vector<int>>* feat_maps_ = nullptr;
};

Interpretation to_interpretation(const KnowledgeBase& kb, const Problem& p, const Search& s,
                                 std::size_t na, std::size_t nx) {
  std::vector<std::string> objects;
  std::vector<std::string> features;
  for (std::size_t a = 0; a < na; ++a) objects.push_back("o" + std::to_string(a + 1));
  for (std::size_t x = 0; x < nx; ++x) features.push_back("f" + std::to_string(x + 1));
  Interpretation interp{Context(kb.algebra, objects, features), {}, {}, {}};
  Context& ctx = interp.context;
  for (std::size_t a = 0; a < na; ++a) {
    for (std::size_t x = 0; x < nx; ++x) ctx.incidence.at(a, x) = Elem{s.incidence_[a * nx + x]};
  }
  for (const auto& role : kb.signature.box_roles) {
    Relation& r = ctx.add_box(role);
    auto it = std::find(p.box_roles.begin(), p.box_roles.end(), role);
    for (std::size_t a = 0; a < na; ++a) {
      for (std::size_t x = 0; x < nx; ++x) {
        r.at(a, x) = it == p.box_roles.end()
                         ? ctx.incidence.at(a, x)
                         : Elem{s.box_[static_cast<std::size_t>(it - p.box_roles.begin())][a * nx + x]};
      }
    }
  }
  for (const auto& role : kb.signature.dia_roles) {
    Relation& r = ctx.add_dia(role);
    auto it = std::find(p.dia_roles.begin(), p.dia_roles.end(), role);
    for (std::size_t x = 0; x < nx; ++x) {
      for (std::size_t a = 0; a < na; ++a) {
        r.at(x, a) = it == p.dia_roles.end()
                         ? ctx.incidence.at(a, x)
                         : Elem{s.dia_[static_cast<std::size_t>(it - p.dia_roles.begin())][x * na + a]};
      }
    }
  }
  for (std::size_t i = 0; i < p.primitives.size(); ++i) {
    const auto c = static_cast<std::size_t>(s.prim_[i]);
    auto& fc = interp.primitives[p.primitives[i]];
    for (Val v : s.extents_[c]) fc.extent.push_back(Elem{v});
    for (Val v : s.intents_[c]) fc.intent.push_back(Elem{v});
  }
  const Algebra& alg = *kb.algebra;
  for (const auto& name : kb.signature.concepts) {
    if (!interp.primitives.count(name)) {
      interp.primitives[name] = concept_of_intent(ctx, constant_set(nx, alg.top()));
    }
  }
  for (std::size_t i = 0; i < p.objects.size(); ++i) {
    interp.object_map[p.objects[i]] = static_cast<std::size_t>(s.omap_[i]);
  }
  for (std::size_t i = 0; i < p.features.size(); ++i) {
    interp.feature_map[p.features[i]] = static_cast<std::size_t>(s.fmap_[i]);
  }
  for (const auto& o : kb.signature.objects) interp.object_map.try_emplace(o, 0);
  for (const auto& f : kb.signature.features) interp.feature_map.try_emplace(f, 0);
  return interp;
}

}  // namespace

OracleResult find_model(const KnowledgeBase& kb, const OracleBounds& bounds) {
  const KnowledgeBase flat = expand(kb);
  const Problem p = build_problem(flat);
  OracleResult result;
  for (std::size_t na = 1; na <= bounds.max_objects; ++na) {
    for (std::size_t nx = 1; nx <= bounds.max_features; ++nx) {
      Search s(p, na, nx, result.visited, bounds.budget);
      if (!s.run()) continue;
      Interpretation interp = to_interpretation(kb, p, s, na, nx);
      apply_definitions(interp, kb.tbox);
      result.status = OracleStatus::Found;
      result.model = std::move(interp);
      return result;
    }
  }
  return result;
}

CrossCheck cross_check(const KnowledgeBase& kb, const OracleBounds& bounds) {
  return cross_check(kb, bounds, TableauOptions{});
}

CrossCheck cross_check(const KnowledgeBase& kb, const OracleBounds& bounds,
                       const TableauOptions& options) {
  CrossCheck out;
  const KnowledgeBase flat = expand(kb);
  Tableau tab(flat, options);
  if (tab.saturate()) {
    out.verdict = Verdict::Consistent;
    const Interpretation model = extract_model(tab, kb);
    const SoundnessReport report = verify_soundness(model, kb, tab);
    out.agree = report.ok();
    if (!out.agree) out.detail = "extracted model fails verification:\n" + report.describe();
    return out;
  }
  out.verdict = Verdict::Inconsistent;
  const OracleResult found = find_model(kb, bounds);
  if (found.status == OracleStatus::Found) {
    out.agree = false;
    out.detail = "tableau reports a clash but the oracle found a model";
  }
  return out;
}

}  // namespace falc
