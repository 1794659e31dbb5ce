#include "falc/unravel.hpp"

#include <algorithm>
#include <set>

#include "falc/error.hpp"

namespace falc {

namespace {

void primitives_in(const Concept& c, std::vector<std::string>& out) {
  switch (c.kind()) {
    case ConceptKind::Primitive:
      if (std::find(out.begin(), out.end(), c.name()) == out.end()) out.push_back(c.name());
      return;
    case ConceptKind::Box:
    case ConceptKind::Dia: primitives_in(c.body(), out); return;
    default:
      primitives_in(c.lhs(), out);
      primitives_in(c.rhs(), out);
  }
}

}  // namespace

DependencyReport check_acyclic(const std::vector<TBoxAxiom>& tbox) {
  std::vector<std::string> defined;
  std::map<std::string, const TBoxAxiom*> by_name;
  for (const auto& ax : tbox) {
    if (ax.left.kind() != ConceptKind::Primitive) {
      throw Error(ErrorKind::NotDefinitional,
                  "left side of '" + ax.left.str() + " == " + ax.right.str() + "' is not a concept name");
    }
    if (!by_name.emplace(ax.left.name(), &ax).second) {
      throw Error(ErrorKind::DuplicateDefinition, "'" + ax.left.name() + "' is defined twice");
    }
    defined.push_back(ax.left.name());
  }

  DependencyReport report;
  for (const auto& name : defined) {
    std::vector<std::string> prims;
    primitives_in(by_name.at(name)->right, prims);
    auto& uses = report.uses[name];
    for (auto& p : prims) {
      if (by_name.count(p)) uses.push_back(p);
    }
  }

  // Cycle search by DFS so the path can be reported.
  std::map<std::string, int> state;  // 0 new, 1 on stack, 2 done
  std::vector<std::string> stack;
  auto visit = [&](auto&& self, const std::string& n) -> void {
    state[n] = 1;
    stack.push_back(n);
    for (const auto& m : report.uses.at(n)) {
      if (state[m] == 1) {
        auto from = std::find(stack.begin(), stack.end(), m);
        std::string path;
        for (auto it = from; it != stack.end(); ++it) path += *it + " -> ";
        throw Error(ErrorKind::Cycle, "cyclic definitions: " + path + m);
      }
      if (state[m] == 0) self(self, m);
    }
    stack.pop_back();
    state[n] = 2;
  };
  for (const auto& n : defined) {
    if (state[n] == 0) visit(visit, n);
  }

  // Kahn's algorithm, ties broken by declaration order.
  std::map<std::string, std::size_t> pending;
  for (const auto& n : defined) pending[n] = report.uses.at(n).size();
  std::set<std::string> emitted;
  while (report.order.size() < defined.size()) {
    for (const auto& n : defined) {
      if (emitted.count(n) || pending[n] != 0) continue;
      report.order.push_back(n);
      emitted.insert(n);
      for (const auto& m : defined) {
        const auto& u = report.uses.at(m);
        pending[m] -= static_cast<std::size_t>(std::count(u.begin(), u.end(), n));
      }
      break;
    }
  }
  return report;
}

Concept substitute(const Concept& c, const std::map<std::string, Concept>& definitions,
                   std::size_t* substitutions) {
  switch (c.kind()) {
    case ConceptKind::Primitive: {
      auto it = definitions.find(c.name());
      if (it == definitions.end()) return c;
      if (substitutions) ++*substitutions;
      return it->second;
    }
    case ConceptKind::And:
      return Concept::conj(substitute(c.lhs(), definitions, substitutions),
                           substitute(c.rhs(), definitions, substitutions));
    case ConceptKind::Or:
      return Concept::disj(substitute(c.lhs(), definitions, substitutions),
                           substitute(c.rhs(), definitions, substitutions));
    case ConceptKind::Box: return Concept::box(c.name(), substitute(c.body(), definitions, substitutions));
    case ConceptKind::Dia: return Concept::dia(c.name(), substitute(c.body(), definitions, substitutions));
  }
  return c;
}

KnowledgeBase expand(const KnowledgeBase& kb, ExpansionStats* stats) {
  const DependencyReport deps = check_acyclic(kb.tbox);
  std::map<std::string, Concept> full;
  for (const auto& name : deps.order) {
    for (const auto& ax : kb.tbox) {
      if (ax.left.name() == name) full.emplace(name, substitute(ax.right, full));
    }
  }
  KnowledgeBase out = kb;
  out.tbox.clear();
  ExpansionStats local;
  out.abox.clear();
  for (const auto& a : kb.abox) {
    Assertion b = a;
    if (b.term.body) {
      local.nodes_before += b.term.body->node_count();
      b.term.body = substitute(*b.term.body, full, &local.substitutions);
      local.nodes_after += b.term.body->node_count();
    }
    if (std::find(out.abox.begin(), out.abox.end(), b) == out.abox.end()) out.abox.push_back(std::move(b));
  }
  if (stats) *stats = local;
  return out;
}

}  // namespace falc
