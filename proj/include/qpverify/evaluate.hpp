#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>

#include "qpverify/expr.hpp"
#include "qpverify/lattice.hpp"

namespace qpv {

using Bindings = std::map<std::string, cplx>;

/// Numeric setting for evaluating expressions: a lattice (which also fixes
/// tau = w3/w1) or a bare tau for theta-only expressions.
class EvalContext {
 public:
  static EvalContext from_lattice(const Lattice& lat);
  static EvalContext from_tau(cplx tau, const ThetaOptions& opts = {});

  const TauNome& nome() const { return nome_; }
  const Nullwerte& nullwerte() const { return nullwerte_; }
  const ThetaOptions& theta_options() const { return opts_; }
  /// nullptr for a tau-only context.
  const Lattice* lattice() const { return lattice_ ? &*lattice_ : nullptr; }
  const Lattice& require_lattice(const char* what) const;

  /// e_k - e_l under the lattice's probe points.
  cplx ediff(int k, int l) const;

  /// Numeric values of the reserved atoms eta1, eta3, w1, w3, tau.
  Bindings atoms() const;

  /// Value of a linear form: reserved symbols from the context, the rest
  /// from `b`.
  cplx value(const LinearForm& f, const Bindings& b) const;

 private:
  EvalContext(TauNome tn, Nullwerte nw, ThetaOptions opts) : nome_(tn), nullwerte_(nw), opts_(opts) {}

  TauNome nome_;
  Nullwerte nullwerte_;
  ThetaOptions opts_;
  std::optional<Lattice> lattice_;
  std::array<cplx, 3> e_{};
};

struct EvalResult {
  cplx value;
  double scale;  // max over terms of |term value|
};

/// One factor as mantissa * exp(log_factor).
SplitValue eval_factor_split(const Factor& f, const Bindings& b, const EvalContext& ctx);
cplx eval_term(const Term& t, const Bindings& b, const EvalContext& ctx);
EvalResult eval_expr(const Expr& e, const Bindings& b, const EvalContext& ctx);

}  // namespace qpv
