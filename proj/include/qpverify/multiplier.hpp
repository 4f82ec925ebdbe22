#pragma once

// Exact quasi-periodicity multipliers of expressions under lattice shifts.
//
// A multiplier is coeff * exp(alpha*v + beta) for the distinguished
// variable v, with alpha and beta polynomials over eta1, eta3, w1, w3, pi,
// tau and the expression's parameters. eta2 and w2 are always expanded and
// the Legendre relation eta1*w3 = eta3*w1 + i*pi/2 is applied, so equal
// multipliers compare equal structurally.

#include <string>
#include <string_view>
#include <vector>

#include "qpverify/evaluate.hpp"
#include "qpverify/expr.hpp"

namespace qpv {

struct Multiplier {
  GaussRational coeff{1};
  Poly alpha;
  Poly beta;

  /// Legendre reduction plus folding of i*pi multiples from beta into coeff.
  void normalize();

  Multiplier& operator*=(const Multiplier& o);
  friend Multiplier operator*(Multiplier a, const Multiplier& b) { return a *= b; }
  friend bool operator==(const Multiplier&, const Multiplier&) = default;

  /// coeff * exp(alpha*v + beta) with atoms taken from `atoms` (see
  /// EvalContext::atoms) and parameter values.
  cplx value(cplx v, const Bindings& atoms) const;
};

/// Builds the normalized multiplier coeff*exp(exponent), splitting the
/// exponent into its part linear in `variable` and the rest.
Multiplier make_multiplier(GaussRational coeff, const Poly& exponent, const std::string& variable);

std::string to_string(const Multiplier& m, const std::string& variable);

/// Period generator such as "2w1", "4w3", "pi" or "pitau".
LinearForm parse_generator(std::string_view text);

/// Sign of Im(l2/l1) computed exactly from the w1/w3 or pi/pitau
/// coordinates. Raises domain when the generators are of different kinds.
int orientation(const LinearForm& l1, const LinearForm& l2);

/// f_kind(u + d) = coeff * exp(exponent) * f_{kind'}(u).
struct FactorShift {
  GaussRational coeff{1};
  Poly exponent;
  FactorKind kind;
};

/// For sigma kinds d must be a lattice period 2n*w1 + 2m*w3; for theta
/// kinds d may be any half-integer combination of pi and pitau, in which
/// case the kind may change. Anything else raises non_period_shift.
FactorShift shift_factor(FactorKind kind, const LinearForm& u, const LinearForm& d);

/// t(v + generator) = multiplier * image(v), where image has the same
/// coefficient and arguments as t but possibly other theta kinds.
struct TermShift {
  Multiplier multiplier;
  Term image;
};

TermShift term_multiplier(const Term& t, const std::string& variable, const LinearForm& generator);

/// Common multiplier of the expression in its distinguished variable. Terms
/// may be permuted by the shift; each image must match a distinct term and
/// every matched pair must yield the same multiplier, otherwise
/// multiplier_mismatch is raised.
Multiplier expr_multiplier(const Expr& e, const LinearForm& generator);

/// (alpha1*l2 - alpha2*l1) / (2*pi*i) as an exact rational.
Rational predicted_zero_count(const Multiplier& m1, const Multiplier& m2, const LinearForm& l1,
                              const LinearForm& l2);

/// Product of factors with an exact exponential prefactor.
struct SymTerm {
  GaussRational coeff{1};
  Poly exponent;
  std::vector<Factor> factors;
};

/// Substitutes the variable, then applies parity, period and half-period
/// reduction, zero factors and sigma_l(h)^2 = (e_k - e_l) sigma(h)^2 for
/// h congruent to w_k, and merges equal products. The result is empty
/// exactly when the cancellation was exhibited.
std::vector<SymTerm> symbolic_reduce(const Expr& e, const LinearForm& value);

/// True when symbolic_reduce proves the substituted expression vanishes.
/// False means "not shown", not "nonzero".
bool check_zero_symbolic(const Expr& e, const LinearForm& value);

std::string to_string(const SymTerm& t);

}  // namespace qpv
