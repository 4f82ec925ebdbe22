#include "qpverify/expr.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <utility>

#include "qpverify/errors.hpp"

namespace qpv {

// ---------------------------------------------------------------- LinearForm

LinearForm LinearForm::symbol(const std::string& name, Rational c) {
  LinearForm f;
  f.set(name, c);
  return f;
}

Rational LinearForm::coeff(const std::string& name) const {
  auto it = coeffs_.find(name);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

void LinearForm::set(const std::string& name, Rational c) {
  if (c == Rational(0)) {
    coeffs_.erase(name);
  } else {
    coeffs_[name] = c;
  }
}

LinearForm& LinearForm::operator+=(const LinearForm& o) {
  for (const auto& [s, c] : o.coeffs_) set(s, coeff(s) + c);
  return *this;
}

LinearForm& LinearForm::operator-=(const LinearForm& o) {
  for (const auto& [s, c] : o.coeffs_) set(s, coeff(s) - c);
  return *this;
}

LinearForm& LinearForm::operator*=(Rational c) {
  if (c == Rational(0)) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [s, v] : coeffs_) v *= c;
  return *this;
}

LinearForm LinearForm::substituted(const std::string& name, const LinearForm& value) const {
  const Rational c = coeff(name);
  LinearForm r = without(name);
  if (c != Rational(0)) r += value * c;
  return r;
}

LinearForm LinearForm::without(const std::string& name) const {
  LinearForm r = *this;
  r.coeffs_.erase(name);
  return r;
}

Poly LinearForm::to_poly() const {
  Poly p;
  for (const auto& [s, c] : coeffs_) {
    if (s == "pitau") {
      p += Poly::term(GaussRational(c), {"pi", "tau"});
    } else {
      p += Poly::term(GaussRational(c), {s});
    }
  }
  return p;
}

namespace {

bool is_reserved_symbol(const std::string& s) {
  return s == "w1" || s == "w3" || s == "pi" || s == "pitau";
}

int reserved_rank(const std::string& s) {
  if (s == "w1") return 1;
  if (s == "w3") return 2;
  if (s == "pi") return 3;
  if (s == "pitau") return 4;
  return 0;
}

std::string scaled_symbol(const std::string& s, Rational c) {
  std::string out = c < Rational(0) ? "-" : "";
  const Rational a = c < Rational(0) ? -c : c;
  if (a.numerator() != 1) out += std::to_string(a.numerator()) + "*";
  out += s;
  if (a.denominator() != 1) out += "/" + std::to_string(a.denominator());
  return out;
}

}  // namespace

std::string LinearForm::to_string(const std::string& first) const {
  if (coeffs_.empty()) return "0";
  std::vector<std::pair<std::string, Rational>> items(coeffs_.begin(), coeffs_.end());
  std::stable_sort(items.begin(), items.end(), [&](const auto& x, const auto& y) {
    const int rx = x.first == first ? -1 : reserved_rank(x.first);
    const int ry = y.first == first ? -1 : reserved_rank(y.first);
    return rx < ry;
  });
  std::string out;
  for (const auto& [s, c] : items) {
    std::string piece = scaled_symbol(s, c);
    if (!out.empty() && piece.front() != '-') out += "+";
    out += piece;
  }
  return out;
}

int compare(const LinearForm& a, const LinearForm& b) {
  auto ia = a.coeffs().begin();
  auto ib = b.coeffs().begin();
  for (; ia != a.coeffs().end() && ib != b.coeffs().end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first < ib->first ? -1 : 1;
    if (ia->second != ib->second) return ia->second < ib->second ? -1 : 1;
  }
  if (ia != a.coeffs().end()) return 1;
  if (ib != b.coeffs().end()) return -1;
  return 0;
}

// ------------------------------------------------------------------- Factors

bool is_sigma(FactorKind k) { return k <= FactorKind::sigma3; }
bool is_theta(FactorKind k) { return k >= FactorKind::theta1 && k <= FactorKind::theta4; }
bool is_constant(FactorKind k) { return k >= FactorKind::theta1p0; }

int parity(FactorKind k) {
  return (k == FactorKind::sigma || k == FactorKind::theta1) ? -1 : 1;
}

int function_index(FactorKind k) {
  if (is_sigma(k)) return static_cast<int>(k);
  if (is_theta(k)) return static_cast<int>(k) - static_cast<int>(FactorKind::theta1) + 1;
  if (k == FactorKind::ediff) return 0;
  return static_cast<int>(k) - static_cast<int>(FactorKind::theta1p0) + 1;
}

FactorKind sigma_factor(int j) {
  if (j < 0 || j > 3) throw Error(ErrorCode::domain, "sigma index must be 0..3");
  return static_cast<FactorKind>(j);
}

FactorKind theta_factor(int j) {
  if (j < 1 || j > 4) throw Error(ErrorCode::domain, "theta index must be 1..4");
  return static_cast<FactorKind>(static_cast<int>(FactorKind::theta1) + j - 1);
}

FactorKind theta_null_factor(int j) {
  if (j < 1 || j > 4) throw Error(ErrorCode::domain, "theta index must be 1..4");
  return static_cast<FactorKind>(static_cast<int>(FactorKind::theta1p0) + j - 1);
}

std::string_view name(FactorKind k) {
  switch (k) {
    case FactorKind::sigma: return "sigma";
    case FactorKind::sigma1: return "sigma1";
    case FactorKind::sigma2: return "sigma2";
    case FactorKind::sigma3: return "sigma3";
    case FactorKind::theta1: return "theta1";
    case FactorKind::theta2: return "theta2";
    case FactorKind::theta3: return "theta3";
    case FactorKind::theta4: return "theta4";
    case FactorKind::theta1p0: return "theta1p0";
    case FactorKind::theta2_0: return "theta2_0";
    case FactorKind::theta3_0: return "theta3_0";
    case FactorKind::theta4_0: return "theta4_0";
    case FactorKind::ediff: return "ediff";
  }
  return "?";
}

std::string_view name(Family f) {
  switch (f) {
    case Family::none: return "none";
    case Family::sigma: return "sigma";
    case Family::theta: return "theta";
  }
  return "?";
}

Factor Factor::function(FactorKind kind, LinearForm arg) {
  Factor f;
  f.kind = kind;
  f.arg = std::move(arg);
  return f;
}

Factor Factor::constant(FactorKind kind) {
  Factor f;
  f.kind = kind;
  return f;
}

Factor Factor::ediff(int k, int l) {
  Factor f;
  f.kind = FactorKind::ediff;
  f.k = k;
  f.l = l;
  return f;
}

int compare(const Factor& a, const Factor& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  if (a.k != b.k) return a.k < b.k ? -1 : 1;
  if (a.l != b.l) return a.l < b.l ? -1 : 1;
  return compare(a.arg, b.arg);
}

Family Expr::family() const {
  bool sigma = false;
  bool theta = false;
  for (const auto& t : terms) {
    for (const auto& f : t.factors) {
      sigma = sigma || is_sigma(f.kind);
      theta = theta || is_theta(f.kind);
    }
  }
  if (sigma && theta) {
    throw Error(ErrorCode::family_mismatch, "expression mixes sigma and theta factors");
  }
  return sigma ? Family::sigma : theta ? Family::theta : Family::none;
}

// -------------------------------------------------------------------- Parser

namespace {

const std::map<std::string, FactorKind, std::less<>>& function_names() {
  static const std::map<std::string, FactorKind, std::less<>> m = {
      {"sigma", FactorKind::sigma},   {"sigma1", FactorKind::sigma1},
      {"sigma2", FactorKind::sigma2}, {"sigma3", FactorKind::sigma3},
      {"theta1", FactorKind::theta1}, {"theta2", FactorKind::theta2},
      {"theta3", FactorKind::theta3}, {"theta4", FactorKind::theta4},
  };
  return m;
}

const std::map<std::string, FactorKind, std::less<>>& constant_names() {
  static const std::map<std::string, FactorKind, std::less<>> m = {
      {"theta1p0", FactorKind::theta1p0},
      {"theta2_0", FactorKind::theta2_0},
      {"theta3_0", FactorKind::theta3_0},
      {"theta4_0", FactorKind::theta4_0},
  };
  return m;
}

bool is_forbidden_symbol(std::string_view s) {
  return s == "i" || s == "tau" || s == "eta1" || s == "eta2" || s == "eta3" || s == "ediff" ||
         function_names().count(s) != 0 || constant_names().count(s) != 0;
}

class Parser {
 public:
  Parser(std::string_view text, const std::set<std::string>* allowed, std::string variable)
      : text_(text), allowed_(allowed), variable_(std::move(variable)) {}

  Expr expr() {
    Expr e;
    e.variable = variable_;
    skip();
    bool negate = false;
    if (peek() == '+' || peek() == '-') {
      negate = get() == '-';
    }
    for (;;) {
      Term t = term();
      if (negate) t.coeff = -t.coeff;
      if (!t.coeff.is_zero()) e.terms.push_back(std::move(t));
      skip();
      if (peek() == '+' || peek() == '-') {
        negate = get() == '-';
        continue;
      }
      break;
    }
    expect_end();
    return e;
  }

  LinearForm linear_only() {
    LinearForm f = linear();
    expect_end();
    return f;
  }

  const std::set<std::string>& symbols() const { return symbols_; }

 private:
  // ---- character level
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  char get() {
    const char c = peek();
    if (c != '\0') ++pos_;
    return c;
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  void expect_end() {
    if (peek() != '\0') fail(std::string("unexpected '") + text_[pos_] + "'");
  }
  [[noreturn]] void fail(const std::string& what) { throw SyntaxError(pos_, what); }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  std::string identifier() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::int64_t integer() {
    skip();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a number");
    std::int64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const int d = text_[pos_] - '0';
      if (v > (std::numeric_limits<std::int64_t>::max() - d) / 10) fail("number too large");
      v = v * 10 + d;
      ++pos_;
    }
    return v;
  }

  // Optional "/n" suffix; returns the divisor (1 when absent).
  std::int64_t divisor() {
    if (peek() != '/') return 1;
    ++pos_;
    const std::int64_t d = integer();
    if (d == 0) fail("division by zero");
    return d;
  }

  // Right after a number: is the next character a lone 'i'?
  bool imaginary_suffix() {
    if (pos_ < text_.size() && text_[pos_] == 'i' &&
        (pos_ + 1 >= text_.size() || !ident_char(text_[pos_ + 1]))) {
      ++pos_;
      return true;
    }
    return false;
  }

  // ---- coefficients
  // number ['i'] ['/' number] | 'i' ['/' number]
  GaussRational gauss_part() {
    skip();
    Rational mag(1);
    bool imag = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      mag = Rational(integer());
      imag = imaginary_suffix();
    } else if (peek() == 'i' && (pos_ + 1 >= text_.size() || !ident_char(text_[pos_ + 1]))) {
      ++pos_;
      imag = true;
    } else {
      fail("expected a coefficient");
    }
    mag /= Rational(divisor());
    return imag ? GaussRational(Rational(0), mag) : GaussRational(mag);
  }

  GaussRational parenthesised_coeff() {
    expect('(');
    GaussRational total;
    bool first = true;
    for (;;) {
      bool negative = false;
      if (peek() == '+' || peek() == '-') {
        negative = get() == '-';
      } else if (!first) {
        break;
      }
      GaussRational g = gauss_part();
      total += negative ? -g : g;
      first = false;
    }
    expect(')');
    return total;
  }

  // ---- products
  Term term() {
    Term t;
    for (;;) {
      item(t);
      if (peek() != '*') break;
      ++pos_;
    }
    return t;
  }

  void item(Term& t) {
    const char c = peek();
    if (c == '(') {
      t.coeff *= parenthesised_coeff();
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      t.coeff *= gauss_part();
      return;
    }
    if (!ident_start(c)) fail("expected a factor or coefficient");
    const std::size_t start = pos_;
    const std::string id = identifier();
    if (id == "i") {
      pos_ = start;
      t.coeff *= gauss_part();
      return;
    }
    Factor f;
    if (auto it = function_names().find(id); it != function_names().end()) {
      expect('(');
      const std::size_t arg_pos = pos_;
      LinearForm arg = linear();
      expect(')');
      const Rational eps = arg.coeff(variable_);
      if (eps > Rational(1) || eps < Rational(-1)) {
        throw SyntaxError(arg_pos, "argument dilation by " + to_string(eps) + " of '" + variable_ +
                                       "' is not supported (|eps| must be <= 1)");
      }
      f = Factor::function(it->second, std::move(arg));
    } else if (auto ct = constant_names().find(id); ct != constant_names().end()) {
      f = Factor::constant(ct->second);
    } else if (id == "ediff") {
      expect('(');
      const std::int64_t k = integer();
      expect(',');
      const std::int64_t l = integer();
      expect(')');
      if (k < 1 || k > 3 || l < 1 || l > 3) fail("ediff indices must be 1, 2 or 3");
      f = Factor::ediff(static_cast<int>(k), static_cast<int>(l));
    } else {
      throw Error(ErrorCode::unknown_function,
                  "unknown function or constant '" + id + "' at position " + std::to_string(start));
    }
    std::int64_t power = 1;
    if (peek() == '^') {
      ++pos_;
      power = integer();
      if (power < 1 || power > 64) fail("exponent must be between 1 and 64");
    }
    for (std::int64_t p = 0; p < power; ++p) t.factors.push_back(f);
  }

  // ---- linear forms
  LinearForm linear() {
    LinearForm total;
    bool negative = false;
    if (peek() == '+' || peek() == '-') negative = get() == '-';
    for (;;) {
      LinearForm t = linear_term();
      if (negative) t = -t;
      total += t;
      if (peek() == '+' || peek() == '-') {
        negative = get() == '-';
        continue;
      }
      return total;
    }
  }

  LinearForm linear_term() {
    Rational scale(1);
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      const std::size_t num_pos = pos_;
      scale = Rational(integer());
      scale /= Rational(divisor());
      const char next = peek();
      if (next == '*') {
        ++pos_;
      } else if (!ident_start(next) && next != '(') {
        if (scale != Rational(0)) {
          throw SyntaxError(num_pos, "numeric constants are not allowed in arguments");
        }
        return {};
      }
    }
    LinearForm p = linear_primary();
    p *= scale / Rational(divisor());
    return p;
  }

  LinearForm linear_primary() {
    if (peek() == '(') {
      ++pos_;
      LinearForm inner = linear();
      expect(')');
      return inner;
    }
    if (!ident_start(peek())) fail("expected a symbol");
    const std::size_t start = pos_;
    const std::string id = identifier();
    if (id == "w2") return LinearForm::symbol("w1", Rational(-1)) - LinearForm::symbol("w3");
    if (is_forbidden_symbol(id)) throw SyntaxError(start, "'" + id + "' cannot be used as a symbol");
    if (!is_reserved_symbol(id) && id != variable_) {
      if (allowed_ != nullptr && allowed_->count(id) == 0) {
        throw Error(ErrorCode::undeclared_symbol,
                    "undeclared symbol '" + id + "' at position " + std::to_string(start));
      }
      symbols_.insert(id);
    }
    return LinearForm::symbol(id);
  }

  std::string_view text_;
  const std::set<std::string>* allowed_;
  std::string variable_;
  std::size_t pos_ = 0;
  std::set<std::string> symbols_;
};

}  // namespace

Expr parse(std::string_view text, const ParseOptions& opts) {
  if (opts.variable.empty() || is_forbidden_symbol(opts.variable) ||
      is_reserved_symbol(opts.variable) || opts.variable == "w2") {
    throw Error(ErrorCode::usage, "invalid variable name '" + opts.variable + "'");
  }
  std::set<std::string> allowed;
  if (opts.parameters) allowed.insert(opts.parameters->begin(), opts.parameters->end());
  Parser p(text, opts.parameters ? &allowed : nullptr, opts.variable);
  Expr e = p.expr();
  const std::set<std::string>& used = opts.parameters ? allowed : p.symbols();
  e.parameters.assign(used.begin(), used.end());
  return e;
}

LinearForm parse_linear(std::string_view text, const std::set<std::string>* allowed) {
  Parser p(text, allowed, std::string{});
  return p.linear_only();
}

// ------------------------------------------------------------------- Printer

std::string to_string(const Factor& f, const std::string& variable) {
  if (f.kind == FactorKind::ediff) {
    return "ediff(" + std::to_string(f.k) + "," + std::to_string(f.l) + ")";
  }
  if (is_constant(f.kind)) return std::string(name(f.kind));
  return std::string(name(f.kind)) + "(" + f.arg.to_string(variable) + ")";
}

std::string to_string(const Term& t, const std::string& variable) {
  std::string body;
  for (std::size_t i = 0; i < t.factors.size();) {
    std::size_t j = i + 1;
    while (j < t.factors.size() && t.factors[j] == t.factors[i]) ++j;
    if (!body.empty()) body += "*";
    body += to_string(t.factors[i], variable);
    if (j - i > 1) body += "^" + std::to_string(j - i);
    i = j;
  }
  const std::string c = to_string(t.coeff);
  if (body.empty()) return c;
  if (t.coeff == GaussRational(1)) return body;
  if (t.coeff == GaussRational(-1)) return "-" + body;
  return c + "*" + body;
}

std::string to_string(const Expr& e) {
  if (e.terms.empty()) return "0";
  std::string out;
  for (const auto& t : e.terms) {
    std::string s = to_string(t, e.variable);
    if (out.empty()) {
      out = s;
    } else if (s.front() == '-') {
      out += " - " + s.substr(1);
    } else {
      out += " + " + s;
    }
  }
  return out;
}

// ------------------------------------------------------------ Normalization

Expr substitute(const Expr& e, const LinearForm& value) {
  Expr r = e;
  std::set<std::string> params(e.parameters.begin(), e.parameters.end());
  for (const auto& [s, c] : value.coeffs()) {
    if (!is_reserved_symbol(s) && s != e.variable) params.insert(s);
  }
  r.parameters.assign(params.begin(), params.end());
  for (auto& t : r.terms) {
    for (auto& f : t.factors) {
      if (!is_constant(f.kind)) f.arg = f.arg.substituted(e.variable, value);
    }
  }
  return r;
}

int canonicalize_factor(Factor& f, bool& drop) {
  drop = false;
  if (f.kind == FactorKind::ediff) {
    if (f.k == f.l) return 0;
    if (f.k > f.l) {
      std::swap(f.k, f.l);
      return -1;
    }
    return 1;
  }
  if (is_constant(f.kind)) return 1;
  if (f.arg.is_zero()) {
    if (parity(f.kind) < 0) return 0;
    if (is_sigma(f.kind)) {
      drop = true;
      return 1;
    }
    f = Factor::constant(theta_null_factor(function_index(f.kind)));
    return 1;
  }
  if (f.arg.coeffs().begin()->second < Rational(0)) {
    f.arg = -f.arg;
    return parity(f.kind);
  }
  return 1;
}

Expr parity_normalize(const Expr& e) {
  Expr r;
  r.variable = e.variable;
  r.parameters = e.parameters;
  std::map<std::string, std::size_t> index;
  for (const auto& t : e.terms) {
    Term n;
    n.coeff = t.coeff;
    bool zero = false;
    for (Factor f : t.factors) {
      bool drop = false;
      const int sign = canonicalize_factor(f, drop);
      if (sign == 0) {
        zero = true;
        break;
      }
      if (sign < 0) n.coeff = -n.coeff;
      if (!drop) n.factors.push_back(std::move(f));
    }
    if (zero) continue;
    std::sort(n.factors.begin(), n.factors.end());
    Term key = n;
    key.coeff = GaussRational(1);
    const std::string k = to_string(key, e.variable);
    if (auto it = index.find(k); it != index.end()) {
      r.terms[it->second].coeff += n.coeff;
    } else {
      index.emplace(k, r.terms.size());
      r.terms.push_back(std::move(n));
    }
  }
  std::erase_if(r.terms, [](const Term& t) { return t.coeff.is_zero(); });
  return r;
}

}  // namespace qpv
