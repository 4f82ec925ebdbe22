#include "qpverify/exact.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>

#include "qpverify/errors.hpp"

namespace qpv {

std::int64_t floor(const Rational& r) {
  const std::int64_t n = r.numerator();
  const std::int64_t d = r.denominator();  // always positive
  std::int64_t q = n / d;
  if (n % d != 0 && n < 0) --q;
  return q;
}

Rational mod(const Rational& r, const Rational& m) {
  const Rational q = r / m;
  return r - m * Rational(floor(q));
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

GaussRational& GaussRational::operator/=(const GaussRational& o) {
  const Rational n = o.norm();
  if (n == Rational(0)) throw Error(ErrorCode::domain, "division by zero Gaussian rational");
  *this *= o.conj();
  re /= n;
  im /= n;
  return *this;
}

namespace {

std::string imag_part(const Rational& im) {
  // "i", "-i", "3i", "3i/4", "-i/2"
  std::string s;
  if (im < Rational(0)) s += "-";
  const Rational a = im < Rational(0) ? -im : im;
  if (a.numerator() != 1) s += std::to_string(a.numerator());
  s += "i";
  if (a.denominator() != 1) s += "/" + std::to_string(a.denominator());
  return s;
}

}  // namespace

std::string to_string(const GaussRational& g) {
  if (g.im == Rational(0)) return to_string(g.re);
  if (g.re == Rational(0)) return imag_part(g.im);
  std::string im = imag_part(g.im);
  if (im.front() != '-') im = "+" + im;
  return "(" + to_string(g.re) + im + ")";
}

Monomial monomial_product(const Monomial& a, const Monomial& b) {
  Monomial m;
  m.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(m));
  return m;
}

Poly::Poly(GaussRational constant) {
  if (!constant.is_zero()) terms_[{}] = constant;
}

Poly Poly::atom(std::string_view name) {
  return term(GaussRational(1), Monomial{std::string(name)});
}

Poly Poly::term(GaussRational coeff, Monomial m) {
  Poly p;
  std::sort(m.begin(), m.end());
  p.set(m, coeff);
  return p;
}

Poly Poly::eta(int j) {
  switch (j) {
    case 1: return atom("eta1");
    case 3: return atom("eta3");
    case 2: return -(atom("eta1") + atom("eta3"));
    default: throw Error(ErrorCode::domain, "eta index must be 1, 2 or 3");
  }
}

Poly Poly::omega(int j) {
  switch (j) {
    case 1: return atom("w1");
    case 3: return atom("w3");
    case 2: return -(atom("w1") + atom("w3"));
    default: throw Error(ErrorCode::domain, "half-period index must be 1, 2 or 3");
  }
}

GaussRational Poly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? GaussRational() : it->second;
}

void Poly::set(const Monomial& m, const GaussRational& c) {
  if (c.is_zero()) {
    terms_.erase(m);
  } else {
    terms_[m] = c;
  }
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) set(m, coeff(m) + c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) set(m, coeff(m) - c);
  return *this;
}

Poly& Poly::operator*=(const GaussRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      const Monomial m = monomial_product(ma, mb);
      r.set(m, r.coeff(m) + ca * cb);
    }
  }
  return r;
}

Poly Poly::extract_linear(const std::string& atom, Poly& rest) const {
  Poly linear;
  rest = Poly();
  for (const auto& [m, c] : terms_) {
    const auto n = std::count(m.begin(), m.end(), atom);
    if (n == 0) {
      rest.set(m, c);
    } else if (n == 1) {
      Monomial reduced = m;
      reduced.erase(std::find(reduced.begin(), reduced.end(), atom));
      linear.set(reduced, c);
    } else {
      throw Error(ErrorCode::irreducible_monomial,
                  "exponent is not affine in '" + atom + "'");
    }
  }
  return linear;
}

bool Poly::mentions(const std::string& atom) const {
  for (const auto& [m, c] : terms_) {
    if (std::find(m.begin(), m.end(), atom) != m.end()) return true;
  }
  return false;
}

Poly Poly::legendre_normalized() const {
  Poly current = *this;
  for (;;) {
    Poly next;
    bool changed = false;
    for (const auto& [m, c] : current.terms_) {
      auto e = std::find(m.begin(), m.end(), "eta1");
      auto w = std::find(m.begin(), m.end(), "w3");
      if (e == m.end() || w == m.end()) {
        next += Poly::term(c, m);
        continue;
      }
      changed = true;
      Monomial rest = m;
      rest.erase(std::find(rest.begin(), rest.end(), "eta1"));
      rest.erase(std::find(rest.begin(), rest.end(), "w3"));
      // eta1*w3 = eta3*w1 + i*pi/2
      Monomial swapped = rest;
      swapped.push_back("eta3");
      swapped.push_back("w1");
      Monomial with_pi = rest;
      with_pi.push_back("pi");
      next += Poly::term(c, swapped);
      next += Poly::term(c * GaussRational(Rational(0), Rational(1, 2)), with_pi);
    }
    current = std::move(next);
    if (!changed) return current;
  }
}

std::complex<double> Poly::evaluate(
    const std::map<std::string, std::complex<double>>& values) const {
  std::complex<double> total = 0.0;
  for (const auto& [m, c] : terms_) {
    std::complex<double> v = c.to_complex();
    for (const auto& a : m) {
      if (a == "pi") {
        v *= std::numbers::pi;
        continue;
      }
      auto it = values.find(a);
      if (it == values.end()) {
        throw Error(ErrorCode::undeclared_symbol, "no numeric value bound for '" + a + "'");
      }
      v *= it->second;
    }
    total += v;
  }
  return total;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string cs = qpv::to_string(c);
    const bool negative = cs.front() == '-';
    if (negative) cs.erase(0, 1);
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    const bool unit = cs == "1";
    if (!unit || m.empty()) os << cs;
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (k > 0 || !unit) os << "*";
      os << m[k];
    }
  }
  return os.str();
}

void normalize_phase(GaussRational& coeff, Poly& exponent) {
  const Monomial pi{"pi"};
  const GaussRational c = exponent.coeff(pi);
  if (c.is_zero() || c.re != Rational(0)) return;
  const Rational half(1, 2);
  const Rational r = mod(c.im, Rational(2));
  const std::int64_t quarter_turns = floor(r / half);
  const Rational rest = r - half * Rational(quarter_turns);
  static const GaussRational units[4] = {
      GaussRational(1), GaussRational::i(), GaussRational(-1), -GaussRational::i()};
  coeff *= units[quarter_turns % 4];
  exponent.set(pi, GaussRational(Rational(0), rest));
}

}  // namespace qpv
