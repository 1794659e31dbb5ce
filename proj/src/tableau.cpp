#include "falc/tableau.hpp"

#include <algorithm>
#include <cstdio>

#include "falc/error.hpp"

namespace falc {

const std::vector<std::string>& rule_names() {
  static const std::vector<std::string> names = {
      "input",  "create", "I",        "and_A",    "or_X",    "box",     "dia",
      "box_y",  "bbox_y", "dia_b",    "bdia_b",   "and_A_inv", "or_X_inv", "adj_box",
      "adj_dia", "neg_a", "neg_x",    "append_x", "append_a"};
  return names;
}

std::string rule_set_revision() {
  // FNV-1a over the rule list plus the readings fixed in this engine.
  std::string text;
  for (const auto& r : rule_names()) text += r + ";";
  text += "bdia_b:alpha<=R(b,y);occ:frozen;identify:dia_a,box_x;pos:join";
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Tableau::Tableau(const KnowledgeBase& kb, TableauOptions options)
    : algebra_(kb.algebra), kb_(kb), options_(std::move(options)) {
  if (!kb.tbox.empty()) {
    throw Error(ErrorKind::TBoxNotEmpty, "the TBox must be unraveled before saturation");
  }
  kb_.model.reset();
  if (options_.shuffle_seed) rng_.seed(*options_.shuffle_seed);

  for (const auto& c : subconcepts(kb.abox)) {
    const ConceptId id = intern(c);
    if (!in_occ_[id]) {
      in_occ_[id] = true;
      occurrence_.push_back(id);
    }
  }
  // Parent links restricted to the occurrence set feed the inverse rules.
  for (ConceptId id : occurrence_) {
    const ConceptNode& n = nodes_[id];
    if (n.kind == ConceptKind::And || n.kind == ConceptKind::Or) {
      auto& index = n.kind == ConceptKind::And ? and_parents_occ_ : or_parents_occ_;
      index[n.lhs].push_back(id);
      if (n.rhs != n.lhs) index[n.rhs].push_back(id);
    }
  }

  std::size_t input_facts = kb.abox.size();
  cap_ = options_.fact_cap;
  if (cap_ == 0) {
    const std::size_t base = input_facts + occurrence_.size();
    cap_ = std::max<std::size_t>(64 * base * base, 1024);
  }

  for (ConceptId id : occurrence_) {
    make_classifier(id, Side::Object);
    make_classifier(id, Side::Feature);
  }

  for (ConceptId id : occurrence_) {
    Step step{"create", {}, {}};
    add_pos(step, TermKey{TermKind::Member, *classifier(id, Side::Object), kNone, kNone, id},
            algebra_->top());
    add_pos(step, TermKey{TermKind::Describes, kNone, *classifier(id, Side::Feature), kNone, id},
            algebra_->top());
    commit(step);
  }

  for (const auto& a : kb.abox) {
    const TermKey k = convert(a.term);
    Step step{"input", {}, {}};
    if (a.polarity == Polarity::Positive) {
      add_pos(step, k, a.bound);
      commit(step);
      continue;
    }
    add_neg(step, k, a.bound);
    commit(step);
    const Fact neg{*find_term(k), a.bound, Polarity::Negative};
    if (k.kind == TermKind::Member && enabled("neg_a")) {
      Step s{"neg_a", {neg}, {}};
      add_neg(s, TermKey{TermKind::Inc, k.object, *classifier(k.concept_id, Side::Feature), kNone, kNone},
              a.bound);
      commit(s);
    } else if (k.kind == TermKind::Describes && enabled("neg_x")) {
      Step s{"neg_x", {neg}, {}};
      add_neg(s, TermKey{TermKind::Inc, *classifier(k.concept_id, Side::Object), k.feature, kNone, kNone},
              a.bound);
      commit(s);
    }
  }
}

RoleId Tableau::role_id(const std::string& name) {
  auto [it, fresh] = role_ids_.emplace(name, static_cast<RoleId>(roles_.size()));
  if (fresh) roles_.push_back(name);
  return it->second;
}

ConceptId Tableau::intern(const Concept& c) {
  if (auto it = concept_ids_.find(c); it != concept_ids_.end()) return it->second;
  ConceptNode node{c.kind(), kNone, kNone, kNone};
  switch (c.kind()) {
    case ConceptKind::Primitive: break;
    case ConceptKind::Box:
    case ConceptKind::Dia:
      node.role = role_id(c.name());
      node.lhs = intern(c.body());
      break;
    default:
      node.lhs = intern(c.lhs());
      node.rhs = intern(c.rhs());
  }
  const auto id = static_cast<ConceptId>(concepts_.size());
  concepts_.push_back(c);
  concept_ids_.emplace(c, id);
  nodes_.push_back(node);
  box_parents_.emplace_back();
  dia_parents_.emplace_back();
  and_parents_occ_.emplace_back();
  or_parents_occ_.emplace_back();
  in_occ_.push_back(false);
  members_by_concept_.emplace_back();
  descs_by_concept_.emplace_back();
  if (node.kind == ConceptKind::Box) box_parents_[node.lhs].push_back(id);
  if (node.kind == ConceptKind::Dia) dia_parents_[node.lhs].push_back(id);
  return id;
}

std::optional<ConceptId> Tableau::find_concept(const Concept& c) const {
  auto it = concept_ids_.find(c);
  if (it == concept_ids_.end()) return std::nullopt;
  return it->second;
}

std::optional<ConstId> Tableau::classifier(ConceptId c, Side side) const {
  auto it = classifiers_.find({c, side});
  if (it == classifiers_.end()) return std::nullopt;
  return it->second;
}

std::optional<ConstId> Tableau::named(const std::string& name) const {
  auto it = named_.find(name);
  if (it == named_.end()) return std::nullopt;
  return it->second;
}

ConstId Tableau::make_named(const std::string& name, Side side) {
  if (auto it = named_.find(name); it != named_.end()) return it->second;
  const auto id = static_cast<ConstId>(consts_.size());
  ConstantInfo info;
  info.kind = ConstKind::Named;
  info.sort = side;
  info.name = name;
  consts_.push_back(std::move(info));
  inc_by_constant_.emplace_back();
  named_.emplace(name, id);
  return id;
}

ConstId Tableau::make_classifier(ConceptId c, Side side) {
  if (auto it = classifiers_.find({c, side}); it != classifiers_.end()) return it->second;
  const auto id = static_cast<ConstId>(consts_.size());
  ConstantInfo info;
  info.kind = ConstKind::Classifier;
  info.sort = side;
  info.concept_id = c;
  info.name = std::string(side == Side::Object ? "a_{" : "x_{") + concepts_[c].str() + "}";
  consts_.push_back(std::move(info));
  inc_by_constant_.emplace_back();
  classifiers_.emplace(std::pair{c, side}, id);

  // dia_R(a_C) = a_{<R>C} and box_R(x_C) = x_{[R]C}, in both directions.
  const ConceptKind modal = side == Side::Object ? ConceptKind::Dia : ConceptKind::Box;
  const ConstKind tag = side == Side::Object ? ConstKind::Dia : ConstKind::BoxTag;
  if (nodes_[c].kind == modal) {
    if (auto base = classifier(nodes_[c].lhs, side)) {
      tags_[{tag, nodes_[c].role, *base}] = id;
      add_origin(id, Origin{tag, nodes_[c].role, *base});
    }
  }
  const auto& parents = side == Side::Object ? dia_parents_[c] : box_parents_[c];
  for (ConceptId p : std::vector<ConceptId>(parents)) {
    if (auto above = classifier(p, side)) {
      tags_[{tag, nodes_[p].role, id}] = *above;
      add_origin(*above, Origin{tag, nodes_[p].role, id});
    }
  }
  return id;
}

ConstId Tableau::make_tag(ConstKind kind, RoleId role, ConstId base) {
  if (auto it = tags_.find({kind, role, base}); it != tags_.end()) return it->second;
  const ConstantInfo& b = consts_[base];
  if (b.kind == ConstKind::Classifier &&
      ((kind == ConstKind::Dia && b.sort == Side::Object) ||
       (kind == ConstKind::BoxTag && b.sort == Side::Feature))) {
    const Concept& body = concepts_[b.concept_id];
    const Concept wrapped = kind == ConstKind::Dia ? Concept::dia(roles_[role], body)
                                                   : Concept::box(roles_[role], body);
    const ConceptId c = intern(wrapped);
    // make_classifier links the tag to its base.
    return make_classifier(c, b.sort);
  }
  const auto id = static_cast<ConstId>(consts_.size());
  ConstantInfo info;
  info.kind = kind;
  info.sort = (kind == ConstKind::BlackDia || kind == ConstKind::Dia) ? Side::Object : Side::Feature;
  info.role = role;
  info.base = base;
  const char* prefix = kind == ConstKind::BlackDia ? "bdia_"
                       : kind == ConstKind::Dia    ? "dia_"
                       : kind == ConstKind::BoxTag ? "box_"
                                                   : "bbox_";
  info.name = prefix + roles_[role] + "(" + consts_[base].name + ")";
  consts_.push_back(std::move(info));
  inc_by_constant_.emplace_back();
  tags_[{kind, role, base}] = id;
  add_origin(id, Origin{kind, role, base});
  return id;
}

void Tableau::add_origin(ConstId c, Origin o) {
  auto& origins = consts_[c].origins;
  if (std::find(origins.begin(), origins.end(), o) != origins.end()) return;
  origins.push_back(o);
  // Incidence facts already on `c` may now feed a compatibility rule.
  for (TermId t : inc_by_constant_[c]) requeue(t);
}

TermId Tableau::intern_term(const TermKey& k) {
  if (auto it = term_ids_.find(k); it != term_ids_.end()) return it->second;
  const auto id = static_cast<TermId>(terms_.size());
  terms_.push_back(k);
  term_ids_.emplace(k, id);
  pos_.emplace_back();
  neg_.emplace_back();
  queued_.push_back(0);
  switch (k.kind) {
    case TermKind::Member: members_by_concept_[k.concept_id].push_back(id); break;
    case TermKind::Describes: descs_by_concept_[k.concept_id].push_back(id); break;
    case TermKind::Inc:
      inc_by_constant_[k.object].push_back(id);
      if (k.feature != k.object) inc_by_constant_[k.feature].push_back(id);
      break;
    default: break;
  }
  return id;
}

std::optional<TermId> Tableau::find_term(const TermKey& k) const {
  auto it = term_ids_.find(k);
  if (it == term_ids_.end()) return std::nullopt;
  return it->second;
}

Elem Tableau::bound_or_bot(const TermKey& k) const {
  auto t = find_term(k);
  if (!t || !pos_[*t]) return algebra_->bot();
  return *pos_[*t];
}

TermKey Tableau::convert(const ABoxTerm& t) {
  auto object = [&](const std::string& n) { return make_named(n, Side::Object); };
  auto feature = [&](const std::string& n) { return make_named(n, Side::Feature); };
  switch (t.kind) {
    case TermKind::Member:
      return TermKey{TermKind::Member, object(t.object), kNone, kNone, intern(*t.body)};
    case TermKind::Describes:
      return TermKey{TermKind::Describes, kNone, feature(t.feature), kNone, intern(*t.body)};
    case TermKind::Inc: return TermKey{TermKind::Inc, object(t.object), feature(t.feature), kNone, kNone};
    case TermKind::BoxRel:
      return TermKey{TermKind::BoxRel, object(t.object), feature(t.feature), role_id(t.role), kNone};
    case TermKind::DiaRel:
      return TermKey{TermKind::DiaRel, object(t.object), feature(t.feature), role_id(t.role), kNone};
  }
  return {};
}

bool Tableau::enabled(const char* rule) const {
  return options_.disabled_rules.empty() || !options_.disabled_rules.count(rule);
}

void Tableau::requeue(TermId t) {
  if (queued_[t] || !pos_[t]) return;
  queued_[t] = 1;
  worklist_.push_back(t);
}

void Tableau::add_pos(Step& step, const TermKey& k, Elem bound) {
  const Algebra& alg = *algebra_;
  if (bound == alg.bot()) return;  // vacuous
  const TermId t = intern_term(k);
  const Elem old = pos_[t] ? *pos_[t] : alg.bot();
  const Elem now = alg.join(old, bound);
  if (pos_[t] && now == old) return;
  if (!pos_[t]) ++positive_count_;
  pos_[t] = now;
  step.added.push_back(Fact{t, bound, Polarity::Positive});
  requeue(t);
  check_cap();
  for (Elem n : neg_[t]) {
    if (alg.leq(n, now)) {
      clashes_.push_back(Clash{t, now, n});
      if (options_.stop_at_first_clash) halted_ = true;
    }
  }
}

void Tableau::add_neg(Step& step, const TermKey& k, Elem bound) {
  const TermId t = intern_term(k);
  auto& negs = neg_[t];
  if (std::find(negs.begin(), negs.end(), bound) != negs.end()) return;
  negs.push_back(bound);
  ++negative_count_;
  step.added.push_back(Fact{t, bound, Polarity::Negative});
  const Elem p = pos_[t] ? *pos_[t] : algebra_->bot();
  if (algebra_->leq(bound, p)) {
    clashes_.push_back(Clash{t, p, bound});
    if (options_.stop_at_first_clash) halted_ = true;
  }
}

void Tableau::commit(Step& step) {
  if (step.added.empty()) return;
  ++steps_;
  if (std::string_view(step.rule) != "input") ++histogram_[step.rule];
  if (options_.record_trace) {
    trace_.push_back(TraceRow{step.rule, std::move(step.premises), std::move(step.added)});
  }
}

void Tableau::check_cap() {
  if (positive_count_ + negative_count_ > cap_) {
    throw Error(ErrorKind::InternalLimit,
                "fact cap of " + std::to_string(cap_) + " exceeded during saturation");
  }
}

bool Tableau::saturate() {
  while (!halted_ && !worklist_.empty()) {
    TermId t;
    if (options_.shuffle_seed && worklist_.size() > 1) {
      std::uniform_int_distribution<std::size_t> pick(0, worklist_.size() - 1);
      const std::size_t i = pick(rng_);
      t = worklist_[i];
      worklist_[i] = worklist_.back();
      worklist_.pop_back();
    } else {
      t = worklist_.front();
      worklist_.pop_front();
    }
    queued_[t] = 0;
    fire(t);
  }
  return consistent();
}

void Tableau::fire(TermId t) {
  const Algebra& alg = *algebra_;
  const TermKey k = terms_[t];
  const Elem beta = *pos_[t];
  auto run = [&](const char* rule, std::vector<Fact> premises, auto&& body) {
    if (halted_ || !enabled(rule)) return;
    Step step{rule, std::move(premises), {}};
    body(step);
    commit(step);
  };

  switch (k.kind) {
    case TermKind::Member: {
      const ConstId b = k.object;
      const ConceptId c = k.concept_id;
      const ConceptNode node = nodes_[c];
      for (std::size_t i = 0; i < descs_by_concept_[c].size(); ++i) {
        const TermId d = descs_by_concept_[c][i];
        if (!pos_[d]) continue;
        run("I", {premise(t), premise(d)}, [&](Step& s) {
          add_pos(s, TermKey{TermKind::Inc, b, terms_[d].feature, kNone, kNone}, alg.meet(beta, *pos_[d]));
        });
      }
      if (node.kind == ConceptKind::And) {
        run("and_A", {premise(t)}, [&](Step& s) {
          add_pos(s, TermKey{TermKind::Member, b, kNone, kNone, node.lhs}, beta);
          add_pos(s, TermKey{TermKind::Member, b, kNone, kNone, node.rhs}, beta);
        });
      }
      if (node.kind == ConceptKind::Box) {
        for (std::size_t i = 0; i < descs_by_concept_[node.lhs].size(); ++i) {
          const TermId d = descs_by_concept_[node.lhs][i];
          if (!pos_[d]) continue;
          run("box", {premise(t), premise(d)}, [&](Step& s) {
            add_pos(s, TermKey{TermKind::BoxRel, b, terms_[d].feature, node.role, kNone},
                    alg.meet(beta, *pos_[d]));
          });
        }
      }
      for (std::size_t p = 0; p < dia_parents_[c].size(); ++p) {
        const ConceptId parent = dia_parents_[c][p];
        for (std::size_t i = 0; i < descs_by_concept_[parent].size(); ++i) {
          const TermId d = descs_by_concept_[parent][i];
          if (!pos_[d]) continue;
          run("dia", {premise(d), premise(t)}, [&](Step& s) {
            add_pos(s, TermKey{TermKind::DiaRel, b, terms_[d].feature, nodes_[parent].role, kNone},
                    alg.meet(*pos_[d], beta));
          });
        }
      }
      for (std::size_t p = 0; p < and_parents_occ_[c].size(); ++p) {
        const ConceptId parent = and_parents_occ_[c][p];
        const ConceptId other = nodes_[parent].lhs == c ? nodes_[parent].rhs : nodes_[parent].lhs;
        auto o = find_term(TermKey{TermKind::Member, b, kNone, kNone, other});
        if (!o || !pos_[*o]) continue;
        const TermId ot = *o;
        const bool left = nodes_[parent].lhs == c;
        run("and_A_inv", left ? std::vector<Fact>{premise(t), premise(ot)}
                              : std::vector<Fact>{premise(ot), premise(t)},
            [&](Step& s) {
              add_pos(s, TermKey{TermKind::Member, b, kNone, kNone, parent}, alg.meet(beta, *pos_[ot]));
            });
      }
      break;
    }
    case TermKind::Describes: {
      const ConstId y = k.feature;
      const ConceptId c = k.concept_id;
      const ConceptNode node = nodes_[c];
      for (std::size_t i = 0; i < members_by_concept_[c].size(); ++i) {
        const TermId m = members_by_concept_[c][i];
        if (!pos_[m]) continue;
        run("I", {premise(m), premise(t)}, [&](Step& s) {
          add_pos(s, TermKey{TermKind::Inc, terms_[m].object, y, kNone, kNone}, alg.meet(*pos_[m], beta));
        });
      }
      if (node.kind == ConceptKind::Or) {
        run("or_X", {premise(t)}, [&](Step& s) {
          add_pos(s, TermKey{TermKind::Describes, kNone, y, kNone, node.lhs}, beta);
          add_pos(s, TermKey{TermKind::Describes, kNone, y, kNone, node.rhs}, beta);
        });
      }
      if (node.kind == ConceptKind::Dia) {
        for (std::size_t i = 0; i < members_by_concept_[node.lhs].size(); ++i) {
          const TermId m = members_by_concept_[node.lhs][i];
          if (!pos_[m]) continue;
          run("dia", {premise(t), premise(m)}, [&](Step& s) {
            add_pos(s, TermKey{TermKind::DiaRel, terms_[m].object, y, node.role, kNone},
                    alg.meet(beta, *pos_[m]));
          });
        }
      }
      for (std::size_t p = 0; p < box_parents_[c].size(); ++p) {
        const ConceptId parent = box_parents_[c][p];
        for (std::size_t i = 0; i < members_by_concept_[parent].size(); ++i) {
          const TermId m = members_by_concept_[parent][i];
          if (!pos_[m]) continue;
          run("box", {premise(m), premise(t)}, [&](Step& s) {
            add_pos(s, TermKey{TermKind::BoxRel, terms_[m].object, y, nodes_[parent].role, kNone},
                    alg.meet(*pos_[m], beta));
          });
        }
      }
      for (std::size_t p = 0; p < or_parents_occ_[c].size(); ++p) {
        const ConceptId parent = or_parents_occ_[c][p];
        const ConceptId other = nodes_[parent].lhs == c ? nodes_[parent].rhs : nodes_[parent].lhs;
        auto o = find_term(TermKey{TermKind::Describes, kNone, y, kNone, other});
        if (!o || !pos_[*o]) continue;
        const TermId ot = *o;
        const bool left = nodes_[parent].lhs == c;
        run("or_X_inv", left ? std::vector<Fact>{premise(t), premise(ot)}
                             : std::vector<Fact>{premise(ot), premise(t)},
            [&](Step& s) {
              add_pos(s, TermKey{TermKind::Describes, kNone, y, kNone, parent}, alg.meet(beta, *pos_[ot]));
            });
      }
      break;
    }
    case TermKind::Inc: {
      const ConstId b = k.object;
      const ConstId y = k.feature;
      const std::vector<Origin> feature_origins = consts_[y].origins;
      const std::vector<Origin> object_origins = consts_[b].origins;
      for (const Origin& o : feature_origins) {
        if (o.kind == ConstKind::BoxTag) {
          run("box_y", {premise(t)}, [&](Step& s) {
            add_pos(s, TermKey{TermKind::BoxRel, b, o.base, o.role, kNone}, beta);
          });
        } else if (o.kind == ConstKind::BlackBox) {
          run("bbox_y", {premise(t)}, [&](Step& s) {
            add_pos(s, TermKey{TermKind::DiaRel, b, o.base, o.role, kNone}, beta);
          });
        }
      }
      for (const Origin& o : object_origins) {
        if (o.kind == ConstKind::Dia) {
          run("dia_b", {premise(t)}, [&](Step& s) {
            add_pos(s, TermKey{TermKind::DiaRel, o.base, y, o.role, kNone}, beta);
          });
        } else if (o.kind == ConstKind::BlackDia) {
          run("bdia_b", {premise(t)}, [&](Step& s) {
            add_pos(s, TermKey{TermKind::BoxRel, o.base, y, o.role, kNone}, beta);
          });
        }
      }
      if (consts_[y].kind == ConstKind::Classifier) {
        const ConceptId c = consts_[y].concept_id;
        run("append_x", {premise(t)}, [&](Step& s) {
          add_pos(s, TermKey{TermKind::Member, b, kNone, kNone, c}, beta);
        });
      }
      if (consts_[b].kind == ConstKind::Classifier) {
        const ConceptId c = consts_[b].concept_id;
        run("append_a", {premise(t)}, [&](Step& s) {
          add_pos(s, TermKey{TermKind::Describes, kNone, y, kNone, c}, beta);
        });
      }
      break;
    }
    case TermKind::BoxRel: {
      if (halted_ || !enabled("adj_box")) break;
      const ConstId bd = make_tag(ConstKind::BlackDia, k.role, k.object);
      const ConstId by = make_tag(ConstKind::BoxTag, k.role, k.feature);
      run("adj_box", {premise(t)}, [&](Step& s) {
        add_pos(s, TermKey{TermKind::Inc, bd, k.feature, kNone, kNone}, beta);
        add_pos(s, TermKey{TermKind::Inc, k.object, by, kNone, kNone}, beta);
      });
      break;
    }
    case TermKind::DiaRel: {
      if (halted_ || !enabled("adj_dia")) break;
      const ConstId db = make_tag(ConstKind::Dia, k.role, k.object);
      const ConstId bb = make_tag(ConstKind::BlackBox, k.role, k.feature);
      run("adj_dia", {premise(t)}, [&](Step& s) {
        add_pos(s, TermKey{TermKind::Inc, db, k.feature, kNone, kNone}, beta);
        add_pos(s, TermKey{TermKind::Inc, k.object, bb, kNone, kNone}, beta);
      });
      break;
    }
  }
}

TableauStats Tableau::stats() const {
  TableauStats s;
  s.positive_facts = positive_count_;
  s.negative_facts = negative_count_;
  s.constants = consts_.size();
  s.steps = steps_;
  s.rule_histogram = histogram_;
  return s;
}

std::string Tableau::term_str(TermId t) const {
  const TermKey& k = terms_.at(t);
  auto name = [&](ConstId c) { return consts_[c].name; };
  switch (k.kind) {
    case TermKind::Member: return name(k.object) + " : " + concepts_[k.concept_id].str();
    case TermKind::Describes: return name(k.feature) + " :: " + concepts_[k.concept_id].str();
    case TermKind::Inc: return "I(" + name(k.object) + ", " + name(k.feature) + ")";
    case TermKind::BoxRel: return roles_[k.role] + "(" + name(k.object) + ", " + name(k.feature) + ")";
    case TermKind::DiaRel: return roles_[k.role] + "(" + name(k.feature) + ", " + name(k.object) + ")";
  }
  return {};
}

std::string Tableau::fact_str(const Fact& f) const {
  return std::string(f.polarity == Polarity::Negative ? "not " : "") + algebra_->name(f.bound) +
         " <= " + term_str(f.term);
}

std::string Tableau::trace_row_str(const TraceRow& row) const {
  std::string out = row.rule;
  if (row.rule == "bdia_b") out += " [conclusion read as alpha <= R(b,y)]";
  out += " |";
  for (std::size_t i = 0; i < row.premises.size(); ++i) {
    out += (i ? "; " : " ") + fact_str(row.premises[i]);
  }
  out += " =>";
  for (std::size_t i = 0; i < row.added.size(); ++i) out += (i ? "; " : " ") + fact_str(row.added[i]);
  return out;
}

std::map<std::string, std::string> Tableau::positive_map() const {
  std::map<std::string, std::string> out;
  for (TermId t = 0; t < terms_.size(); ++t) {
    if (pos_[t]) out.emplace(term_str(t), algebra_->name(*pos_[t]));
  }
  return out;
}

}  // namespace falc
