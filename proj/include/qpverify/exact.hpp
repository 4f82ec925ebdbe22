#pragma once

// Exact coefficient arithmetic used by the symbolic side of the library:
// rationals, Gaussian rationals and sparse polynomials over named atoms.
//
// Atoms are plain strings. The reserved ones are
//   eta1, eta3   quasi-period constants (eta2 is always expanded)
//   w1, w3       half-periods (w2 is always expanded)
//   pi, tau      so that pi*tau is the theta quasi-period
// and any other identifier is a free parameter.

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

namespace qpv {

using Rational = boost::rational<std::int64_t>;

/// Largest integer not exceeding r.
std::int64_t floor(const Rational& r);
/// r - m*floor(r/m), always in [0, m) for m > 0.
Rational mod(const Rational& r, const Rational& m);
std::string to_string(const Rational& r);
double to_double(const Rational& r);

struct GaussRational {
  Rational re{0};
  Rational im{0};

  GaussRational() = default;
  GaussRational(Rational r) : re(r) {}  // NOLINT(implicit)
  GaussRational(std::int64_t r) : re(r) {}  // NOLINT(implicit)
  GaussRational(Rational r, Rational i) : re(r), im(i) {}

  static GaussRational i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return re == Rational(0) && im == Rational(0); }
  GaussRational conj() const { return {re, -im}; }
  Rational norm() const { return re * re + im * im; }
  std::complex<double> to_complex() const {
    return {to_double(re), to_double(im)};
  }

  GaussRational operator-() const { return {-re, -im}; }
  GaussRational& operator+=(const GaussRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussRational& operator-=(const GaussRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussRational& operator*=(const GaussRational& o) {
    const Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = r;
    return *this;
  }
  GaussRational& operator/=(const GaussRational& o);

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator<(const GaussRational& a, const GaussRational& b) {
    return a.re < b.re || (a.re == b.re && a.im < b.im);
  }
};

/// DSL spelling: "2", "-1/2", "3i/4", "i", "(1/2+3i/4)".
std::string to_string(const GaussRational& g);

/// Sorted multiset of atoms; the empty monomial is the constant 1.
using Monomial = std::vector<std::string>;

Monomial monomial_product(const Monomial& a, const Monomial& b);

class Poly {
 public:
  Poly() = default;
  Poly(GaussRational constant);  // NOLINT(implicit)

  static Poly atom(std::string_view name);
  static Poly term(GaussRational coeff, Monomial m);
  /// eta_j with eta2 expanded as -eta1-eta3.
  static Poly eta(int j);
  /// w_j with w2 expanded as -w1-w3.
  static Poly omega(int j);

  const std::map<Monomial, GaussRational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  GaussRational coeff(const Monomial& m) const;
  void set(const Monomial& m, const GaussRational& c);

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const GaussRational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const GaussRational& c) { return a *= c; }
  friend Poly operator*(const GaussRational& c, Poly a) { return a *= c; }
  Poly operator-() const { return *this * GaussRational(-1); }
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  /// Splits off the part that is linear in `atom`: returns the coefficient
  /// polynomial and leaves the remainder in `rest`.
  Poly extract_linear(const std::string& atom, Poly& rest) const;
  bool mentions(const std::string& atom) const;

  /// Rewrites eta1*w3 -> eta3*w1 + (i/2)*pi until no monomial contains the
  /// pair; the result is a normal form modulo the Legendre relation.
  Poly legendre_normalized() const;

  std::complex<double> evaluate(const std::map<std::string, std::complex<double>>& values) const;

  std::string to_string() const;

 private:
  std::map<Monomial, GaussRational> terms_;
};

/// Moves quarter turns i*pi*k/2 of the lone `pi` monomial of `exponent` into
/// `coeff`, so that e^exponent*coeff is unchanged and the remaining i*pi
/// coefficient lies in [0, 1/2). Two factors with equal value modulo 2*pi*i
/// end up with identical (coeff, exponent) pairs.
void normalize_phase(GaussRational& coeff, Poly& exponent);

}  // namespace qpv
