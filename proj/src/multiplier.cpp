#include "qpverify/multiplier.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "qpverify/errors.hpp"
#include "qpverify/theta.hpp"

namespace qpv {

namespace {

const GaussRational kI = GaussRational::i();

Poly i_pi_tau() { return Poly::term(kI, {"pi", "tau"}); }

bool is_integer(const Rational& r) { return r.denominator() == 1; }

bool only_mentions(const LinearForm& f, std::initializer_list<const char*> allowed) {
  for (const auto& [s, c] : f.coeffs()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return s == a; })) {
      return false;
    }
  }
  return true;
}

FactorShift shift_sigma(FactorKind kind, const LinearForm& u, const LinearForm& d) {
  const Rational a = d.coeff("w1");
  const Rational b = d.coeff("w3");
  if (!only_mentions(d, {"w1", "w3"}) || !is_integer(a / Rational(2)) ||
      !is_integer(b / Rational(2))) {
    throw Error(ErrorCode::non_period_shift,
                "shift " + d.to_string() + " of " + std::string(name(kind)) +
                    " is not a lattice period 2n*w1+2m*w3");
  }
  const std::int64_t n = (a / Rational(2)).numerator();
  const std::int64_t m = (b / Rational(2)).numerator();
  // sigma(u + 2W) = (-1)^(n+m+nm) exp(2H(u + W)) sigma(u), H = n*eta1 + m*eta3
  const Poly h = Poly::eta(1) * GaussRational(n) + Poly::eta(3) * GaussRational(m);
  const Poly w = Poly::omega(1) * GaussRational(n) + Poly::omega(3) * GaussRational(m);
  FactorShift r;
  r.kind = kind;
  r.coeff = GaussRational(((n + m + n * m) % 2 == 0) ? 1 : -1);
  r.exponent = GaussRational(2) * h * (u.to_poly() + w);
  const int j = function_index(kind);
  if (j > 0) {
    // sigma_j(u) = exp(-eta_j u) sigma(u + w_j) / sigma(w_j)
    r.exponent += GaussRational(2) * h * Poly::omega(j) - GaussRational(2) * Poly::eta(j) * w;
  }
  return r;
}

FactorShift shift_theta(FactorKind kind, const LinearForm& u, const LinearForm& d) {
  const Rational a = d.coeff("pi");
  const Rational b = d.coeff("pitau");
  if (!only_mentions(d, {"pi", "pitau"}) || !is_integer(a * Rational(2)) ||
      !is_integer(b * Rational(2))) {
    throw Error(ErrorCode::non_period_shift,
                "shift " + d.to_string() + " of " + std::string(name(kind)) +
                    " is not a half-integer combination of pi and pitau");
  }
  const std::int64_t na = floor(a);
  const std::int64_t nb = floor(b);
  const bool half_a = a != Rational(na);
  const bool half_b = b != Rational(nb);

  // theta_k(u + P + H) = m_H(u + P) theta_k'(u + P), P = na*pi + nb*pitau
  FactorShift r;
  ThetaKind k = theta_kind(function_index(kind));
  const Poly x = u.to_poly() + Poly::atom("pi") * GaussRational(na) +
                 Poly::term(GaussRational(nb), {"pi", "tau"});
  if (half_a || half_b) {
    const HalfPeriod hp = half_a && half_b ? HalfPeriod::both : half_a ? HalfPeriod::pi : HalfPeriod::pitau;
    const HalfPeriodRewrite rw = half_period_rewrite(k, hp);
    k = rw.kind;
    r.coeff = rw.multiplier.coeff;
    r.exponent = Poly(GaussRational(rw.multiplier.constant)) +
                 i_pi_tau() * GaussRational(rw.multiplier.pitau) +
                 x * (kI * GaussRational(rw.multiplier.iz));
  }
  // theta_k'(u + P) = s_pi^na s_tau^nb exp(-i pi tau nb^2 - 2i nb u) theta_k'(u)
  int sign = 1;
  if (na % 2 != 0) sign *= pi_shift_sign(k);
  if (nb % 2 != 0) sign *= pitau_shift_sign(k);
  r.coeff *= GaussRational(sign);
  r.exponent += i_pi_tau() * GaussRational(-nb * nb) + u.to_poly() * (kI * GaussRational(-2 * nb));
  r.kind = theta_factor(index(k));
  return r;
}

std::string factor_key(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end());
  Term t;
  t.factors = std::move(factors);
  return to_string(t);
}

}  // namespace

// ---------------------------------------------------------------- Multiplier

void Multiplier::normalize() {
  alpha = alpha.legendre_normalized();
  beta = beta.legendre_normalized();
  normalize_phase(coeff, beta);
}

Multiplier& Multiplier::operator*=(const Multiplier& o) {
  coeff *= o.coeff;
  alpha += o.alpha;
  beta += o.beta;
  normalize();
  return *this;
}

cplx Multiplier::value(cplx v, const Bindings& atoms) const {
  return coeff.to_complex() * std::exp(alpha.evaluate(atoms) * v + beta.evaluate(atoms));
}

Multiplier make_multiplier(GaussRational coeff, const Poly& exponent, const std::string& variable) {
  Multiplier m;
  m.coeff = coeff;
  m.alpha = exponent.legendre_normalized().extract_linear(variable, m.beta);
  m.normalize();
  return m;
}

std::string to_string(const Multiplier& m, const std::string& variable) {
  const Poly e = m.alpha * Poly::atom(variable) + m.beta;
  if (e.is_zero()) return to_string(m.coeff);
  const std::string ex = "exp(" + e.to_string() + ")";
  if (m.coeff == GaussRational(1)) return ex;
  if (m.coeff == GaussRational(-1)) return "-" + ex;
  return to_string(m.coeff) + "*" + ex;
}

LinearForm parse_generator(std::string_view text) {
  const std::set<std::string> none;
  const LinearForm g = parse_linear(text, &none);
  if (g.is_zero()) throw Error(ErrorCode::domain, "generator must be nonzero");
  return g;
}

int orientation(const LinearForm& l1, const LinearForm& l2) {
  const char* x = nullptr;
  const char* y = nullptr;
  if (only_mentions(l1, {"w1", "w3"}) && only_mentions(l2, {"w1", "w3"})) {
    x = "w1";
    y = "w3";
  } else if (only_mentions(l1, {"pi", "pitau"}) && only_mentions(l2, {"pi", "pitau"})) {
    x = "pi";
    y = "pitau";
  } else {
    throw Error(ErrorCode::domain, "generators " + l1.to_string() + ", " + l2.to_string() +
                                       " must both be combinations of w1, w3 or of pi, pitau");
  }
  // Im(w3/w1) > 0 and Im(tau) > 0, so the sign is that of the 2x2 determinant.
  const Rational det = l1.coeff(x) * l2.coeff(y) - l1.coeff(y) * l2.coeff(x);
  return det > Rational(0) ? 1 : det < Rational(0) ? -1 : 0;
}

FactorShift shift_factor(FactorKind kind, const LinearForm& u, const LinearForm& d) {
  if (is_constant(kind) || d.is_zero()) return {GaussRational(1), Poly(), kind};
  return is_sigma(kind) ? shift_sigma(kind, u, d) : shift_theta(kind, u, d);
}

TermShift term_multiplier(const Term& t, const std::string& variable, const LinearForm& generator) {
  TermShift r;
  r.image = t;
  GaussRational coeff(1);
  Poly exponent;
  for (auto& f : r.image.factors) {
    if (is_constant(f.kind)) continue;
    const Rational eps = f.arg.coeff(variable);
    if (eps == Rational(0)) continue;
    const FactorShift s = shift_factor(f.kind, f.arg, generator * eps);
    coeff *= s.coeff;
    exponent += s.exponent;
    f.kind = s.kind;
  }
  r.multiplier = make_multiplier(coeff, exponent, variable);
  return r;
}

Multiplier expr_multiplier(const Expr& e, const LinearForm& generator) {
  e.family();
  if (e.terms.empty()) return {};
  std::vector<std::string> keys;
  for (const auto& t : e.terms) keys.push_back(factor_key(t.factors));

  std::vector<bool> used(e.terms.size(), false);
  std::optional<Multiplier> common;
  std::string common_from;
  for (std::size_t i = 0; i < e.terms.size(); ++i) {
    const TermShift s = term_multiplier(e.terms[i], e.variable, generator);
    const std::string image_key = factor_key(s.image.factors);
    std::optional<std::size_t> match;
    Multiplier found;
    for (std::size_t j = 0; j < e.terms.size(); ++j) {
      if (used[j] || keys[j] != image_key) continue;
      Multiplier m = s.multiplier;
      m.coeff *= e.terms[i].coeff / e.terms[j].coeff;
      m.normalize();
      if (!match || (common && m == *common && !(found == *common))) {
        match = j;
        found = m;
      }
    }
    if (!match) {
      throw Error(ErrorCode::multiplier_mismatch,
                  "term " + std::to_string(i + 1) + " maps to " + to_string(s.image, e.variable) +
                      ", which is not a term of the expression");
    }
    used[*match] = true;
    const std::string label = "term " + std::to_string(i + 1) + " -> term " + std::to_string(*match + 1);
    if (!common) {
      common = found;
      common_from = label;
    } else if (!(found == *common)) {
      throw Error(ErrorCode::multiplier_mismatch,
                  "under " + generator.to_string() + ": " + common_from + " gives " +
                      to_string(*common, e.variable) + " but " + label + " gives " +
                      to_string(found, e.variable));
    }
  }
  return *common;
}

Rational predicted_zero_count(const Multiplier& m1, const Multiplier& m2, const LinearForm& l1,
                              const LinearForm& l2) {
  const Poly p = (m1.alpha * l2.to_poly() - m2.alpha * l1.to_poly()).legendre_normalized();
  if (p.is_zero()) return Rational(0);
  const auto& terms = p.terms();
  const bool pure_pi = terms.size() == 1 && terms.begin()->first == Monomial{"pi"} &&
                       terms.begin()->second.re == Rational(0);
  if (!pure_pi) {
    throw Error(ErrorCode::irreducible_monomial,
                "alpha1*l2 - alpha2*l1 = " + p.to_string() + " is not a rational multiple of 2*pi*i");
  }
  // c*i*pi / (2*pi*i) = c/2
  return terms.begin()->second.im / Rational(2);
}

// ------------------------------------------------------- Symbolic zero check

namespace {

// Half-period class of a bare w1/w3 combination with coefficients in {0,1}:
// 0 for the origin, j for w_j (w1+w3 is congruent to w2). -1 otherwise.
int half_period_class(const LinearForm& f) {
  if (!only_mentions(f, {"w1", "w3"})) return -1;
  const Rational a = f.coeff("w1");
  const Rational b = f.coeff("w3");
  const auto bit = [](const Rational& r) { return r == Rational(0) ? 0 : r == Rational(1) ? 1 : -1; };
  const int x = bit(a);
  const int y = bit(b);
  if (x < 0 || y < 0) return -1;
  static const int table[2][2] = {{0, 3}, {1, 2}};
  return table[x][y];
}

LinearForm half_period_form(int k) {
  switch (k) {
    case 1: return LinearForm::symbol("w1");
    case 2: return LinearForm::symbol("w1") + LinearForm::symbol("w3");
    default: return LinearForm::symbol("w3");
  }
}

// Reduces one factor into `t`; returns false when the factor vanishes.
bool reduce_factor(Factor f, SymTerm& t) {
  bool drop = false;
  const int sign = canonicalize_factor(f, drop);
  if (sign == 0) return false;
  if (sign < 0) t.coeff = -t.coeff;
  if (drop) return true;
  if (is_constant(f.kind)) {
    t.factors.push_back(f);
    return true;
  }

  LinearForm base = f.arg;
  LinearForm d;
  if (is_sigma(f.kind)) {
    for (const char* s : {"w1", "w3"}) {
      const Rational c = f.arg.coeff(s);
      const Rational r = mod(c, Rational(2));
      base.set(s, r);
      d.set(s, c - r);
    }
  } else {
    for (const char* s : {"pi", "pitau"}) {
      const Rational c = f.arg.coeff(s);
      Rational r = mod(c, Rational(1));
      if (r == Rational(1, 2)) r = Rational(0);
      base.set(s, r);
      d.set(s, c - r);
    }
  }
  const FactorShift shift = shift_factor(f.kind, base, d);
  t.coeff *= shift.coeff;
  t.exponent += shift.exponent;
  f.kind = shift.kind;
  f.arg = base;

  if (is_sigma(f.kind)) {
    const int cls = half_period_class(base);
    const int j = function_index(f.kind);
    if (cls == j) return false;  // sigma(0) = sigma_j(w_j) = 0
    if (cls == 0) return true;   // sigma_j(0) = 1
  } else if (base.is_zero()) {
    if (f.kind == FactorKind::theta1) return false;
    f = Factor::constant(theta_null_factor(function_index(f.kind)));
  }
  t.factors.push_back(std::move(f));
  return true;
}

// sigma_l(h)^2 = (e_k - e_l) sigma(h)^2 whenever h is congruent to w_k.
void apply_ediff_rule(SymTerm& t) {
  for (int l = 1; l <= 3; ++l) {
    for (int k = 1; k <= 3; ++k) {
      if (k == l) continue;
      const Factor target = Factor::function(sigma_factor(l), half_period_form(k));
      for (;;) {
        const auto n = std::count(t.factors.begin(), t.factors.end(), target);
        if (n < 2) break;
        for (int rep = 0; rep < 2; ++rep) {
          t.factors.erase(std::find(t.factors.begin(), t.factors.end(), target));
          t.factors.push_back(Factor::function(FactorKind::sigma, half_period_form(k)));
        }
        Factor e = Factor::ediff(k, l);
        bool drop = false;
        if (canonicalize_factor(e, drop) < 0) t.coeff = -t.coeff;
        t.factors.push_back(e);
      }
    }
  }
}

}  // namespace

std::vector<SymTerm> symbolic_reduce(const Expr& e, const LinearForm& value) {
  const Expr s = substitute(e, value);
  std::vector<SymTerm> out;
  std::map<std::string, std::size_t> index;
  for (const auto& term : s.terms) {
    SymTerm t;
    t.coeff = term.coeff;
    bool zero = false;
    for (const auto& f : term.factors) {
      if (!reduce_factor(f, t)) {
        zero = true;
        break;
      }
    }
    if (zero) continue;
    apply_ediff_rule(t);
    std::sort(t.factors.begin(), t.factors.end());
    t.exponent = t.exponent.legendre_normalized();
    normalize_phase(t.coeff, t.exponent);
    const std::string key = factor_key(t.factors) + " | " + t.exponent.to_string();
    if (auto it = index.find(key); it != index.end()) {
      out[it->second].coeff += t.coeff;
    } else {
      index.emplace(key, out.size());
      out.push_back(std::move(t));
    }
  }
  std::erase_if(out, [](const SymTerm& t) { return t.coeff.is_zero(); });
  return out;
}

bool check_zero_symbolic(const Expr& e, const LinearForm& value) {
  return symbolic_reduce(e, value).empty();
}

std::string to_string(const SymTerm& t) {
  Term plain;
  plain.coeff = t.coeff;
  plain.factors = t.factors;
  std::string s = to_string(plain);
  if (!t.exponent.is_zero()) s += "*exp(" + t.exponent.to_string() + ")";
  return s;
}

}  // namespace qpv
