#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace falc {

enum class ErrorKind {
  InvalidAlgebra,
  NotALattice,
  NotDistributive,
  CyclicEdges,
  ForeignElement,
  SortMismatch,
  CapExceeded,
  UnknownRelation,
  UnboundPrimitive,
  InvalidModel,
  Parse,
  Sort,
  Undeclared,
  BoundNotInAlgebra,
  NonLinearSugar,
  ReservedName,
  NotDefinitional,
  Cycle,
  DuplicateDefinition,
  TBoxNotEmpty,
  InternalLimit,
  InconsistentCompletion,
  BudgetExceeded,
  Io,
};

// Machine-readable category, e.g. "not-distributive".
std::string_view category(ErrorKind kind);

// Errors that stem from resource caps rather than bad input.
bool is_limit(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace falc
