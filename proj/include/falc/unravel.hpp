#pragma once

// Elimination of acyclic definitional TBoxes by substitution.

#include <map>
#include <string>
#include <vector>

#include "falc/syntax.hpp"

namespace falc {

struct DependencyReport {
  // Defined names, each after every defined name its definition uses.
  std::vector<std::string> order;
  // Defined name -> defined names occurring in its definition.
  std::map<std::string, std::vector<std::string>> uses;
};

// Throws NotDefinitional, DuplicateDefinition or Cycle (with the cycle path).
DependencyReport check_acyclic(const std::vector<TBoxAxiom>& tbox);

struct ExpansionStats {
  std::size_t nodes_before = 0;
  std::size_t nodes_after = 0;
  std::size_t substitutions = 0;
};

// Replaces every defined name in the ABox by its full expansion and clears
// the TBox. No simplification is performed.
KnowledgeBase expand(const KnowledgeBase& kb, ExpansionStats* stats = nullptr);

// Substitutes `definitions` into a single concept.
Concept substitute(const Concept& c, const std::map<std::string, Concept>& definitions,
                   std::size_t* substitutions = nullptr);

}  // namespace falc
