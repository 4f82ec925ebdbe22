#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qpv {

enum class ErrorCode {
  domain,
  overflow,
  syntax,
  unknown_function,
  undeclared_symbol,
  family_mismatch,
  non_period_shift,
  multiplier_mismatch,
  irreducible_monomial,
  probe_degeneracy,
  pole,
  degenerate,
  boundary_zero,
  budget_exceeded,
  no_admissible_base,
  inconsistent_winding,
  usage,
};

const char* to_string(ErrorCode code) noexcept;

/// Base exception for every failure raised by the library. The code lets the
/// CLI map failures onto exit statuses without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& what)
      : Error(ErrorCode::syntax,
              what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace qpv
