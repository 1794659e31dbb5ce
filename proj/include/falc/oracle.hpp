#pragma once

// Exhaustive model search over small interpretations.
//
// The search has its own implementation of the Galois maps, concept
// lattice and satisfaction; it shares only the algebra tables with the rest
// of the library.

#include <cstdint>
#include <optional>
#include <string>

#include "falc/fca.hpp"
#include "falc/syntax.hpp"
#include "falc/tableau.hpp"

namespace falc {

struct OracleBounds {
  std::size_t max_objects = 3;
  std::size_t max_features = 3;
  // Upper limit on visited (context, individual map) pairs.
  std::uint64_t budget = 200'000'000;
};

enum class OracleStatus { Found, NoneWithinBounds };

struct OracleResult {
  OracleStatus status = OracleStatus::NoneWithinBounds;
  std::optional<Interpretation> model;
  std::uint64_t visited = 0;
};

// Enumerates domain sizes 1..max (objects before features), incidence
// matrices in descending lexicographic order, then box and diamond
// relations, then individual maps and primitive concepts. Returns the first model of the
// knowledge base, TBox included. Throws BudgetExceeded.
OracleResult find_model(const KnowledgeBase& kb, const OracleBounds& bounds = {});

enum class Verdict { Consistent, Inconsistent };

struct CrossCheck {
  Verdict verdict = Verdict::Consistent;
  bool agree = true;
  std::string detail;
};

// Runs the tableau on the unraveled KB and checks its verdict: Consistent by
// verifying the extracted model, Inconsistent by oracle search.
CrossCheck cross_check(const KnowledgeBase& kb, const OracleBounds& bounds);
CrossCheck cross_check(const KnowledgeBase& kb, const OracleBounds& bounds,
                       const TableauOptions& options);

}  // namespace falc
