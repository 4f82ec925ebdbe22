#include "qpverify/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "qpverify/errors.hpp"

namespace qpv {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFalsifyFactor = 1e3;
constexpr double kCongruenceGap = 1e-3;
constexpr int kMaxRejections = 10000;
constexpr int kExtraTerms = 8;

double relative(const Sample& s) {
  if (s.scale > 0.0) return std::abs(s.value) / s.scale;
  return s.value == cplx(0.0) ? 0.0 : std::numeric_limits<double>::infinity();
}

/// Seeded draws u*l1 + v*l2 with (u, v) uniform in (0.05, 0.95)^2. Tuples
/// with two entries congruent modulo the period lattice (p1, p2) within
/// kCongruenceGap in lattice coordinates are redrawn and counted.
class Sampler {
 public:
  Sampler(std::uint64_t seed, cplx l1, cplx l2, cplx p1, cplx p2)
      : rng_(seed), l1_(l1), l2_(l2), p1_(p1), p2_(p2) {}

  std::vector<cplx> draw(std::size_t n) {
    std::vector<cplx> out(n);
    for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
      for (auto& z : out) {
        const double u = 0.05 + 0.9 * unit();
        const double v = 0.05 + 0.9 * unit();
        z = u * l1_ + v * l2_;
      }
      if (!degenerate(out)) return out;
      ++rejected_;
    }
    throw Error(ErrorCode::degenerate, "could not draw non-congruent parameters");
  }

  int rejected() const { return rejected_; }

 private:
  double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

  bool degenerate(const std::vector<cplx>& zs) const {
    const double det = (std::conj(p1_) * p2_).imag();
    for (std::size_t i = 0; i < zs.size(); ++i) {
      for (std::size_t j = i + 1; j < zs.size(); ++j) {
        const cplx d = zs[i] - zs[j];
        double x = (std::conj(d) * p2_).imag() / det;
        double y = -(std::conj(d) * p1_).imag() / det;
        x -= std::round(x);
        y -= std::round(y);
        if (std::max(std::abs(x), std::abs(y)) < kCongruenceGap) return true;
      }
    }
    return false;
  }

  std::mt19937_64 rng_;
  cplx l1_, l2_, p1_, p2_;
  int rejected_ = 0;
};

std::pair<cplx, cplx> period_lattice(Family f, const Lattice& lat) {
  if (f == Family::theta) return {kPi, kPi * lat.tau()};
  return {2.0 * lat.omega1(), 2.0 * lat.omega3()};
}

VerificationReport skeleton(const std::string& name, const Lattice& lat) {
  VerificationReport r;
  r.identity = name;
  r.omega1 = lat.omega1();
  r.omega3 = lat.omega3();
  r.tau = lat.tau();
  r.q = lat.nome().q();
  return r;
}

Lattice with_extra_terms(const Lattice& lat) {
  ThetaOptions opts = lat.theta_options();
  opts.extra_terms += kExtraTerms;
  return Lattice::make(lat.omega1(), lat.omega3(), opts);
}

std::string format_rel(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

}  // namespace

std::string_view name(Verdict v) {
  switch (v) {
    case Verdict::verified: return "verified";
    case Verdict::falsified: return "falsified";
    default: return "inconclusive";
  }
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::verified: return 0;
    case Verdict::falsified: return 1;
    default: return 2;
  }
}

double default_tolerance(Family f) { return f == Family::sigma ? 1e-9 : 1e-10; }

VerificationReport verify(const IdentitySpec& spec, const Lattice& lat, const VerifyParams& params) {
  if (params.samples < 1) throw Error(ErrorCode::usage, "samples must be positive");
  const Expr& expr = spec.expr;
  const Family family = expr.family();
  if (orientation(spec.gen1, spec.gen2) <= 0) {
    throw Error(ErrorCode::domain, "generators must satisfy Im(gen2/gen1) > 0");
  }
  const EvalContext ctx = EvalContext::from_lattice(lat);
  VerificationReport rep = skeleton(spec.name, lat);
  rep.tolerance = params.tol.value_or(default_tolerance(family));
  const double tol = rep.tolerance;

  // Layers 1 and 2: exact multipliers and the predicted zero count.
  std::optional<Multiplier> mult[2];
  bool mismatch = false;
  bool unusable = false;
  const LinearForm* gens[2] = {&spec.gen1, &spec.gen2};
  for (int g = 0; g < 2; ++g) {
    MultiplierEvidence ev;
    ev.generator = gens[g]->to_string();
    try {
      mult[g] = expr_multiplier(expr, *gens[g]);
      ev.matched = true;
      ev.coeff = to_string(mult[g]->coeff);
      ev.alpha = mult[g]->alpha.to_string();
      ev.beta = mult[g]->beta.to_string();
    } catch (const Error& e) {
      if (e.code() == ErrorCode::multiplier_mismatch) {
        mismatch = true;
        rep.notes.push_back("multiplier mismatch under " + ev.generator);
      } else if (e.code() == ErrorCode::non_period_shift) {
        unusable = true;
        rep.notes.push_back("generator " + ev.generator + " is not a period of every factor");
      } else {
        throw;
      }
      ev.error = e.what();
    }
    rep.multipliers.push_back(std::move(ev));
  }
  if (mult[0] && mult[1]) {
    try {
      rep.predicted_N = predicted_zero_count(*mult[0], *mult[1], spec.gen1, spec.gen2);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::irreducible_monomial) throw;
      rep.notes.push_back(e.what());
    }
  }
  const bool integral_N = rep.predicted_N && rep.predicted_N->denominator() == 1;
  if (rep.predicted_N && !integral_N) rep.notes.push_back("predicted zero count is not an integer");

  const cplx l1 = ctx.value(spec.gen1, {});
  const cplx l2 = ctx.value(spec.gen2, {});
  const auto [p1, p2] = period_lattice(family, lat);
  std::vector<std::string> symbols{expr.variable};
  symbols.insert(symbols.end(), expr.parameters.begin(), expr.parameters.end());

  // Layer 3: candidate zeros. The reference scale is the larger of the
  // substituted expression's own scale and the expression's scale at a
  // generic value of the variable.
  const Expr generic = expr;
  Sampler zero_sampler(params.seed ^ 0x9e3779b97f4a7c15ULL, l1, l2, p1, p2);
  for (const LinearForm& cand : spec.candidates) {
    ZeroEvidence ev;
    ev.candidate = cand.to_string();
    try {
      ev.symbolic = check_zero_symbolic(expr, cand);
    } catch (const Error&) {
      ev.symbolic = false;
    }
    std::vector<Bindings> draws;
    for (int s = 0; s < params.samples; ++s) {
      const std::vector<cplx> zs = zero_sampler.draw(symbols.size());
      Bindings b;
      for (std::size_t k = 0; k < symbols.size(); ++k) b[symbols[k]] = zs[k];
      draws.push_back(std::move(b));
    }
    const std::vector<Sample> values = sample_all(
        draws.size(),
        [&](std::size_t i) {
          Bindings b = draws[i];
          const EvalResult ref = eval_expr(generic, b, ctx);
          b[expr.variable] = ctx.value(cand, b);
          const EvalResult at = eval_expr(expr, b, ctx);
          return Sample{at.value, std::max(at.scale, ref.scale)};
        },
        params.execution);
    for (const Sample& s : values) ev.residual = std::max(ev.residual, relative(s));
    ev.verified = ev.symbolic || ev.residual < tol;
    rep.zeros.push_back(std::move(ev));
  }
  if (spec.candidates.empty() && !spec.zero_note.empty()) rep.notes.push_back(spec.zero_note);

  // Layer 4: residuals of the whole expression.
  Sampler sampler(params.seed, l1, l2, p1, p2);
  std::vector<Bindings> draws;
  for (int s = 0; s < params.samples; ++s) {
    const std::vector<cplx> zs = sampler.draw(symbols.size());
    Bindings b;
    for (std::size_t k = 0; k < symbols.size(); ++k) b[symbols[k]] = zs[k];
    draws.push_back(std::move(b));
  }
  const std::vector<Sample> values = sample_all(
      draws.size(),
      [&](std::size_t i) {
        const EvalResult r = eval_expr(expr, draws[i], ctx);
        return Sample{r.value, r.scale};
      },
      params.execution);
  std::size_t worst = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double r = relative(values[i]);
    if (r > rep.residuals.max_rel) {
      rep.residuals.max_rel = r;
      worst = i;
    }
  }
  rep.residuals.samples = params.samples;
  rep.residuals.seed = params.seed;
  rep.residuals.rejected = sampler.rejected();

  bool residual_falsifies = false;
  if (rep.residuals.max_rel > kFalsifyFactor * tol) {
    const EvalContext finer = EvalContext::from_lattice(with_extra_terms(lat));
    const EvalResult again = eval_expr(expr, draws[worst], finer);
    const double r = relative(Sample{again.value, again.scale});
    residual_falsifies = r > kFalsifyFactor * tol;
    rep.notes.push_back("worst residual " + format_rel(r) + " with a longer series" +
                        (residual_falsifies ? "" : ": not reproduced"));
  }

  const int verified_zeros = static_cast<int>(
      std::count_if(rep.zeros.begin(), rep.zeros.end(), [](const ZeroEvidence& z) { return z.verified; }));
  rep.zero_excess = integral_N && Rational(verified_zeros) > *rep.predicted_N;

  if (mismatch) {
    rep.verdict = Verdict::falsified;
  } else if (lat.nome().low_accuracy()) {
    rep.verdict = Verdict::inconclusive;
    rep.notes.push_back("Im(tau) below 0.3: results are best-effort");
  } else if (residual_falsifies) {
    rep.verdict = Verdict::falsified;
  } else if (!unusable && integral_N && rep.residuals.max_rel < tol) {
    rep.verdict = Verdict::verified;
  } else {
    rep.verdict = Verdict::inconclusive;
  }
  return rep;
}

VerificationReport verify(const RelationSet& set, const Lattice& lat, const VerifyParams& params) {
  if (params.samples < 1) throw Error(ErrorCode::usage, "samples must be positive");
  VerificationReport rep = skeleton(set.name, lat);
  rep.tolerance = std::max(params.tol.value_or(default_tolerance(set.family)), set.min_tolerance);
  const double tol = rep.tolerance;
  const auto [p1, p2] = period_lattice(set.family, lat);
  const int n = set.sampled ? params.samples : 1;

  Sampler sampler(params.seed, p1, p2, p1, p2);
  std::vector<cplx> points;
  for (int s = 0; s < n; ++s) points.push_back(sampler.draw(1)[0] - 0.5 * (p1 + p2));

  const auto residuals = [&](const Lattice& l, const std::vector<cplx>& zs, std::size_t rel_index) {
    const Relation& rel = set.relations[rel_index];
    const Sides sides = rel.bind(l);
    return sample_all(
        zs.size(),
        [&](std::size_t i) {
          const auto [lhs, rhs] = sides(zs[i]);
          return Sample{lhs - static_cast<double>(rel.sign) * rhs, std::max(std::abs(lhs), std::abs(rhs))};
        },
        params.execution);
  };

  bool falsifies = false;
  for (std::size_t k = 0; k < set.relations.size(); ++k) {
    const std::vector<Sample> values = residuals(lat, points, k);
    double worst_rel = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double r = relative(values[i]);
      if (r > worst_rel) {
        worst_rel = r;
        worst = i;
      }
    }
    rep.residuals.max_rel = std::max(rep.residuals.max_rel, worst_rel);
    if (worst_rel >= tol) {
      rep.notes.push_back(set.relations[k].name + ": residual " + format_rel(worst_rel));
    }
    if (worst_rel > kFalsifyFactor * tol) {
      const double again = relative(residuals(with_extra_terms(lat), {points[worst]}, k)[0]);
      falsifies = falsifies || again > kFalsifyFactor * tol;
    }
  }
  rep.residuals.samples = n;
  rep.residuals.seed = params.seed;
  rep.residuals.rejected = sampler.rejected();

  if (lat.nome().low_accuracy()) {
    rep.verdict = Verdict::inconclusive;
    rep.notes.push_back("Im(tau) below 0.3: results are best-effort");
  } else if (falsifies) {
    rep.verdict = Verdict::falsified;
  } else if (rep.residuals.max_rel < tol) {
    rep.verdict = Verdict::verified;
  } else {
    rep.verdict = Verdict::inconclusive;
  }
  return rep;
}

VerificationReport verify(const CatalogEntry& entry, const Lattice& lat, const VerifyParams& params) {
  return entry.kind == CatalogEntry::Kind::identity ? verify(entry.identity, lat, params)
                                                    : verify(entry.relations, lat, params);
}

int SuiteReport::exit_code() const {
  bool inconclusive = !failures.empty();
  for (const auto& r : reports) {
    if (r.verdict == Verdict::falsified) return 1;
    inconclusive = inconclusive || r.verdict == Verdict::inconclusive;
  }
  return inconclusive ? 2 : 0;
}

SuiteReport run_suite(const std::vector<CatalogEntry>& catalog, const std::vector<Lattice>& contexts,
                      const VerifyParams& params) {
  SuiteReport s;
  s.contexts = contexts;
  for (std::size_t c = 0; c < contexts.size(); ++c) {
    for (const auto& entry : catalog) {
      try {
        s.reports.push_back(verify(entry, contexts[c], params));
      } catch (const Error& e) {
        s.failures.push_back({entry.name(), c, e.what()});
      }
    }
  }
  return s;
}

nlohmann::ordered_json to_json(cplx z) { return nlohmann::ordered_json::array({z.real(), z.imag()}); }

nlohmann::ordered_json to_json(const VerificationReport& r) {
  using json = nlohmann::ordered_json;
  json j;
  j["identity"] = r.identity;
  j["context"] = {{"omega1", to_json(r.omega1)},
                  {"omega3", to_json(r.omega3)},
                  {"tau", to_json(r.tau)},
                  {"q", to_json(r.q)}};
  json mults = json::array();
  for (const auto& m : r.multipliers) {
    json e{{"generator", m.generator},
           {"coeff", m.coeff},
           {"alpha", m.alpha},
           {"beta", m.beta},
           {"matched", m.matched}};
    if (!m.error.empty()) e["error"] = m.error;
    mults.push_back(std::move(e));
  }
  j["multipliers"] = std::move(mults);
  if (r.predicted_N) {
    j["predicted_N"] = {{"num", r.predicted_N->numerator()}, {"den", r.predicted_N->denominator()}};
  } else {
    j["predicted_N"] = nullptr;
  }
  json zeros = json::array();
  for (const auto& z : r.zeros) {
    zeros.push_back({{"candidate", z.candidate},
                     {"symbolic", z.symbolic},
                     {"residual", z.residual},
                     {"verified", z.verified}});
  }
  j["zeros"] = std::move(zeros);
  j["residuals"] = {{"samples", r.residuals.samples},
                    {"seed", r.residuals.seed},
                    {"max_rel", r.residuals.max_rel},
                    {"rejected", r.residuals.rejected}};
  j["tolerance"] = r.tolerance;
  j["verdict"] = std::string(name(r.verdict));
  j["zero_excess"] = r.zero_excess;
  j["notes"] = r.notes;
  return j;
}

nlohmann::ordered_json to_json(const SuiteReport& s) {
  using json = nlohmann::ordered_json;
  json j;
  json ctxs = json::array();
  for (const auto& lat : s.contexts) {
    ctxs.push_back({{"omega1", to_json(lat.omega1())},
                    {"omega3", to_json(lat.omega3())},
                    {"tau", to_json(lat.tau())},
                    {"q", to_json(lat.nome().q())}});
  }
  j["contexts"] = std::move(ctxs);
  json reps = json::array();
  int counts[3] = {0, 0, 0};
  for (const auto& r : s.reports) {
    reps.push_back(to_json(r));
    ++counts[static_cast<int>(r.verdict)];
  }
  j["reports"] = std::move(reps);
  json fails = json::array();
  for (const auto& f : s.failures) {
    fails.push_back({{"identity", f.identity}, {"context", f.context}, {"error", f.error}});
  }
  j["failures"] = std::move(fails);
  j["summary"] = {{"verified", counts[0]},
                  {"falsified", counts[1]},
                  {"inconclusive", counts[2]},
                  {"failures", s.failures.size()},
                  {"exit_code", s.exit_code()}};
  return j;
}

}  // namespace qpv
