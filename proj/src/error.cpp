#include "falc/error.hpp"

namespace falc {

std::string_view category(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidAlgebra: return "invalid-algebra";
    case ErrorKind::NotALattice: return "not-a-lattice";
    case ErrorKind::NotDistributive: return "not-distributive";
    case ErrorKind::CyclicEdges: return "cyclic-edges";
    case ErrorKind::ForeignElement: return "foreign-element";
    case ErrorKind::SortMismatch: return "sort-mismatch";
    case ErrorKind::CapExceeded: return "cap-exceeded";
    case ErrorKind::UnknownRelation: return "unknown-relation";
    case ErrorKind::UnboundPrimitive: return "unbound-primitive";
    case ErrorKind::InvalidModel: return "invalid-model";
    case ErrorKind::Parse: return "parse-error";
    case ErrorKind::Sort: return "sort-error";
    case ErrorKind::Undeclared: return "undeclared-name";
    case ErrorKind::BoundNotInAlgebra: return "bound-not-in-algebra";
    case ErrorKind::NonLinearSugar: return "non-linear-sugar";
    case ErrorKind::ReservedName: return "reserved-name";
    case ErrorKind::NotDefinitional: return "not-definitional";
    case ErrorKind::Cycle: return "cycle";
    case ErrorKind::DuplicateDefinition: return "duplicate-definition";
    case ErrorKind::TBoxNotEmpty: return "tbox-not-empty";
    case ErrorKind::InternalLimit: return "internal-limit";
    case ErrorKind::InconsistentCompletion: return "inconsistent-completion";
    case ErrorKind::BudgetExceeded: return "budget-exceeded";
    case ErrorKind::Io: return "io-error";
  }
  return "unknown";
}

bool is_limit(ErrorKind kind) {
  return kind == ErrorKind::InternalLimit || kind == ErrorKind::CapExceeded ||
         kind == ErrorKind::BudgetExceeded;
}

}  // namespace falc
