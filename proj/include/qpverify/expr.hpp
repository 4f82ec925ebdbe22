#pragma once

// Expression language for sums of products of sigma/theta factors.
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := item ('*' item)*
//   item   := coeff | factor ['^' n]
//   factor := func '(' arg ')' | 'theta1p0' | 'theta2_0' | 'theta3_0'
//           | 'theta4_0' | 'ediff' '(' k ',' l ')'
//   coeff  := "2", "1/2", "3i/4", "i", "(1/2-3i/4)"
//   arg    := rational combination of symbols, 'w1', 'w2', 'w3', 'pi',
//             'pitau' and parenthesised sub-combinations, e.g.
//             "z+a", "(a+b+c+d)/2", "b+pi/2+pitau/2", "2*w1"
//
// w2 is expanded to -w1-w3 on input. The coefficient of the distinguished
// variable in an argument must satisfy |eps| <= 1; larger values would
// dilate the period lattice and are rejected.

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "qpverify/exact.hpp"

namespace qpv {

/// Rational linear combination of symbols. Reserved symbols: w1, w3, pi,
/// pitau. Zero coefficients are never stored.
class LinearForm {
 public:
  LinearForm() = default;
  static LinearForm symbol(const std::string& name, Rational c = Rational(1));

  const std::map<std::string, Rational>& coeffs() const { return coeffs_; }
  Rational coeff(const std::string& name) const;
  void set(const std::string& name, Rational c);
  bool is_zero() const { return coeffs_.empty(); }
  bool mentions(const std::string& name) const { return coeffs_.count(name) != 0; }

  LinearForm& operator+=(const LinearForm& o);
  LinearForm& operator-=(const LinearForm& o);
  LinearForm& operator*=(Rational c);
  friend LinearForm operator+(LinearForm a, const LinearForm& b) { return a += b; }
  friend LinearForm operator-(LinearForm a, const LinearForm& b) { return a -= b; }
  friend LinearForm operator*(LinearForm a, Rational c) { return a *= c; }
  LinearForm operator-() const { return *this * Rational(-1); }
  friend bool operator==(const LinearForm&, const LinearForm&) = default;

  /// Replaces `name` by `value`.
  LinearForm substituted(const std::string& name, const LinearForm& value) const;
  /// The form without the `name` component.
  LinearForm without(const std::string& name) const;

  /// Same form as a polynomial; pitau becomes the monomial pi*tau.
  Poly to_poly() const;

  /// Printed with `first` leading when present, e.g. "z-a/2+w1".
  std::string to_string(const std::string& first = {}) const;

 private:
  std::map<std::string, Rational> coeffs_;
};

int compare(const LinearForm& a, const LinearForm& b);

enum class FactorKind {
  sigma,
  sigma1,
  sigma2,
  sigma3,
  theta1,
  theta2,
  theta3,
  theta4,
  theta1p0,  // theta1'(0)
  theta2_0,
  theta3_0,
  theta4_0,
  ediff,     // e_k - e_l
};

bool is_sigma(FactorKind k);
bool is_theta(FactorKind k);
bool is_constant(FactorKind k);
/// +1 for even functions, -1 for odd ones (sigma, theta1).
int parity(FactorKind k);
/// 0 for sigma, j for sigma_j, j for theta_j.
int function_index(FactorKind k);
FactorKind sigma_factor(int j);
FactorKind theta_factor(int j);
FactorKind theta_null_factor(int j);  // 1 gives theta1p0
std::string_view name(FactorKind k);

struct Factor {
  FactorKind kind = FactorKind::sigma;
  LinearForm arg;  // unused for constants
  int k = 0;       // ediff indices
  int l = 0;

  static Factor function(FactorKind kind, LinearForm arg);
  static Factor constant(FactorKind kind);
  static Factor ediff(int k, int l);

  friend bool operator==(const Factor&, const Factor&) = default;
};

int compare(const Factor& a, const Factor& b);
inline bool operator<(const Factor& a, const Factor& b) { return compare(a, b) < 0; }

struct Term {
  GaussRational coeff{1};
  std::vector<Factor> factors;

  friend bool operator==(const Term&, const Term&) = default;
};

enum class Family { none, sigma, theta };
std::string_view name(Family f);

struct Expr {
  std::vector<Term> terms;
  std::string variable = "z";
  std::vector<std::string> parameters;  // sorted

  /// sigma if any sigma function appears, theta if any theta function does;
  /// both at once raises family_mismatch.
  Family family() const;
  bool is_zero() const { return terms.empty(); }

  friend bool operator==(const Expr&, const Expr&) = default;
};

struct ParseOptions {
  std::string variable = "z";
  /// When set, every other symbol must be listed here.
  std::optional<std::vector<std::string>> parameters;
};

Expr parse(std::string_view text, const ParseOptions& opts = {});

/// A bare argument such as "b+pi/2+pitau/2" or "2*w1". When `allowed` is
/// given, symbols outside it raise undeclared_symbol.
LinearForm parse_linear(std::string_view text, const std::set<std::string>* allowed = nullptr);

std::string to_string(const Factor& f, const std::string& variable = {});
std::string to_string(const Term& t, const std::string& variable = {});
std::string to_string(const Expr& e);

/// Replaces the distinguished variable by `value` in every argument.
Expr substitute(const Expr& e, const LinearForm& value);

/// Sign-canonical form: each argument has a positive coefficient on its
/// smallest symbol (parity hoisted into the coefficient), odd factors at 0
/// kill their term, sigma_j(0) is dropped, theta_j(0) becomes the nullwert,
/// ediff(k,l) is ordered, factors are sorted and equal products merged.
Expr parity_normalize(const Expr& e);

/// Same result as parity_normalize applied to a single factor: returns the
/// sign picked up (0 when the factor vanishes identically) and rewrites `f`.
/// `drop` is set when the factor equals 1.
int canonicalize_factor(Factor& f, bool& drop);

}  // namespace qpv
