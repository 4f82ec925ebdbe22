#include "qpverify/errors.hpp"

namespace qpv {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::domain: return "domain";
    case ErrorCode::overflow: return "overflow";
    case ErrorCode::syntax: return "syntax";
    case ErrorCode::unknown_function: return "unknown-function";
    case ErrorCode::undeclared_symbol: return "undeclared-symbol";
    case ErrorCode::family_mismatch: return "family-mismatch";
    case ErrorCode::non_period_shift: return "non-period-shift";
    case ErrorCode::multiplier_mismatch: return "multiplier-mismatch";
    case ErrorCode::irreducible_monomial: return "irreducible-monomial";
    case ErrorCode::probe_degeneracy: return "probe-degeneracy";
    case ErrorCode::pole: return "pole";
    case ErrorCode::degenerate: return "degenerate";
    case ErrorCode::boundary_zero: return "boundary-zero";
    case ErrorCode::budget_exceeded: return "budget-exceeded";
    case ErrorCode::no_admissible_base: return "no-admissible-base";
    case ErrorCode::inconsistent_winding: return "inconsistent-winding";
    case ErrorCode::usage: return "usage";
  }
  return "unknown";
}

}  // namespace qpv
