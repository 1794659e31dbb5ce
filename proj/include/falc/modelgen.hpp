#pragma once

// Model extraction from a clash-free completion, and its verification.

#include <set>
#include <string>
#include <vector>

#include "falc/fca.hpp"
#include "falc/tableau.hpp"

namespace falc {

// Builds the interpretation whose objects and features are the constants of
// the completion plus a_top and x_bot. `original` supplies the signature and
// the TBox whose defined names are interpreted by their expansions. Throws
// InconsistentCompletion if the tableau has a clash.
Interpretation extract_model(const Tableau& completion, const KnowledgeBase& original);

struct SoundnessReport {
  std::vector<std::string> satisfaction;   // (i)
  std::vector<std::string> compatibility;  // (ii)
  std::vector<std::string> stability;      // (iii)
  std::vector<std::string> classifying;    // (iv)

  bool ok() const {
    return satisfaction.empty() && compatibility.empty() && stability.empty() && classifying.empty();
  }
  std::string describe() const;
};

SoundnessReport verify_soundness(const Interpretation& model, const KnowledgeBase& original,
                                 const Tableau& completion);

// Sets each TBox-defined name, except those in `keep`, to the value of its
// definition, in dependency order.
void apply_definitions(Interpretation& interp, const std::vector<TBoxAxiom>& tbox,
                       const std::set<std::string>& keep = {});

// |A| + |X| + number of non-bottom relation entries.
std::size_t model_size(const Interpretation& model);

}  // namespace falc
