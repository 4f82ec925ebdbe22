#include "qpverify/evaluate.hpp"

#include <cmath>
#include <numbers>

#include "qpverify/errors.hpp"
#include "qpverify/sigma.hpp"

namespace qpv {

EvalContext EvalContext::from_lattice(const Lattice& lat) {
  EvalContext ctx(lat.nome(), lat.nullwerte(), lat.theta_options());
  ctx.lattice_ = lat;
  ctx.e_ = e_values(lat);
  return ctx;
}

EvalContext EvalContext::from_tau(cplx tau, const ThetaOptions& opts) {
  const TauNome tn = TauNome::from_tau(tau);
  return EvalContext(tn, theta_nullwerte(tn, opts), opts);
}

const Lattice& EvalContext::require_lattice(const char* what) const {
  if (!lattice_) {
    throw Error(ErrorCode::domain, std::string(what) + " needs a lattice context (omega1, omega3)");
  }
  return *lattice_;
}

cplx EvalContext::ediff(int k, int l) const {
  require_lattice("ediff");
  return e_[k - 1] - e_[l - 1];
}

Bindings EvalContext::atoms() const {
  Bindings b{{"tau", nome_.tau()}};
  if (lattice_) {
    b["eta1"] = lattice_->eta1();
    b["eta3"] = lattice_->eta3();
    b["w1"] = lattice_->omega1();
    b["w3"] = lattice_->omega3();
  }
  return b;
}

cplx EvalContext::value(const LinearForm& f, const Bindings& b) const {
  cplx total = 0.0;
  for (const auto& [s, c] : f.coeffs()) {
    cplx v;
    if (s == "pi") {
      v = std::numbers::pi;
    } else if (s == "pitau") {
      v = std::numbers::pi * nome_.tau();
    } else if (s == "w1") {
      v = require_lattice("w1").omega1();
    } else if (s == "w3") {
      v = require_lattice("w3").omega3();
    } else {
      auto it = b.find(s);
      if (it == b.end()) {
        throw Error(ErrorCode::undeclared_symbol, "no value bound for '" + s + "'");
      }
      v = it->second;
    }
    total += to_double(c) * v;
  }
  return total;
}

SplitValue eval_factor_split(const Factor& f, const Bindings& b, const EvalContext& ctx) {
  const Nullwerte& nw = ctx.nullwerte();
  switch (f.kind) {
    case FactorKind::theta1p0: return {nw.theta1_prime, 0.0};
    case FactorKind::theta2_0: return {nw.theta2, 0.0};
    case FactorKind::theta3_0: return {nw.theta3, 0.0};
    case FactorKind::theta4_0: return {nw.theta4, 0.0};
    case FactorKind::ediff: return {ctx.ediff(f.k, f.l), 0.0};
    default: break;
  }
  const cplx z = ctx.value(f.arg, b);
  if (is_sigma(f.kind)) {
    return sigma_eval_split(sigma_kind(function_index(f.kind)), z,
                            ctx.require_lattice("sigma factors"));
  }
  return theta_eval_split(theta_kind(function_index(f.kind)), z, ctx.nome(), ctx.theta_options());
}

cplx eval_term(const Term& t, const Bindings& b, const EvalContext& ctx) {
  SplitValue acc{t.coeff.to_complex(), 0.0};
  for (std::size_t i = 0; i < t.factors.size(); ++i) {
    try {
      const SplitValue v = eval_factor_split(t.factors[i], b, ctx);
      acc.mantissa *= v.mantissa;
      acc.log_factor += v.log_factor;
    } catch (const Error& e) {
      throw Error(e.code(), "factor " + std::to_string(i + 1) + " (" + to_string(t.factors[i]) +
                                "): " + e.what());
    }
  }
  return finish(acc);
}

EvalResult eval_expr(const Expr& e, const Bindings& b, const EvalContext& ctx) {
  EvalResult r{0.0, 0.0};
  for (std::size_t i = 0; i < e.terms.size(); ++i) {
    cplx v;
    try {
      v = eval_term(e.terms[i], b, ctx);
    } catch (const Error& err) {
      throw Error(err.code(), "term " + std::to_string(i + 1) + ", " + err.what());
    }
    r.value += v;
    r.scale = std::max(r.scale, std::abs(v));
  }
  return r;
}

}  // namespace qpv
