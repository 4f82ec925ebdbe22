// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "qpverify/contour.hpp"
#include "qpverify/errors.hpp"
#include "qpverify/kernels.hpp"
#include "qpverify/sigma.hpp"
#include "qpverify/verifier.hpp"

using namespace qpv;

namespace {

const cplx kI{0.0, 1.0};

struct Outcome {
  bool pass;
  std::string detail;
};

class Clock {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> c = builtin_catalog();
  return c;
}

const cplx kTaus[] = {kI, cplx(0.3, 0.8), cplx(-0.4, 1.1)};

Outcome theta_relations(const char* entry) {
  Clock clock;
  VerifyParams p;
  p.samples = 200;
  p.tol = 1e-10;
  double worst = 0.0;
  bool ok = true;
  for (cplx tau : kTaus) {
    const auto r = verify(find_builtin(catalog(), entry), lattice_from_tau(tau), p);
    ok = ok && r.verdict == Verdict::verified;
    worst = std::max(worst, r.residuals.max_rel);
  }
  const double t = clock.seconds();
  ok = ok && worst < 1e-10 && t < 5.0;
  return {ok, "max rel " + fmt("%.2e", worst) + ", " + fmt("%.2f", t) + " s"};
}

Outcome product_oracle() {
  Clock clock;
  std::mt19937_64 rng(3);
  const auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  double worst = 0.0;
  for (const Lattice& lat : default_contexts()) {
    for (int s = 0; s < 50; ++s) {
      const cplx z = (unit() - 0.5) * 2.0 * lat.omega1() + (unit() - 0.5) * 2.0 * lat.omega3();
      const cplx fast = sigma_eval(SigmaKind::sigma, z, lat);
      const cplx slow = sigma_product(z, lat, 60);
      worst = std::max(worst, relative_difference(fast, slow));
    }
  }
  const double t = clock.seconds();
  return {worst < 1e-5 && t < 60.0, "max rel " + fmt("%.2e", worst) + ", " + fmt("%.2f", t) + " s"};
}

Outcome legendre() {
  VerifyParams p;
  double worst = 0.0;
  bool ok = true;
  for (const Lattice& lat : default_contexts()) {
    const auto r = verify(find_builtin(catalog(), "legendre-relation"), lat, p);
    ok = ok && r.verdict == Verdict::verified;
    worst = std::max(worst, r.residuals.max_rel);
  }
  return {ok && worst < 1e-4, "max |eta1*w3-eta3*w1-i*pi/2| / (pi/2) = " + fmt("%.2e", worst)};
}

Outcome zero_counts() {
  const std::pair<const char*, int> expected[] = {
      {"weierstrass-3term", 2}, {"weierstrass-fundamental", 4}, {"sigma-mixed", 2},
      {"jacobi-add-theta3", 2}, {"jacobi-add-mixed", 2},       {"jacobi-fundamental", 1}};
  bool ok = true;
  std::string got;
  for (const auto& [name, n] : expected) {
    const IdentitySpec& s = find_builtin(catalog(), name).identity;
    const Rational N = predicted_zero_count(expr_multiplier(s.expr, s.gen1),
                                            expr_multiplier(s.expr, s.gen2), s.gen1, s.gen2);
    ok = ok && N == Rational(n);
    got += (got.empty() ? "" : ", ") + to_string(N);
  }
  return {ok, "N = " + got};
}

Evaluable evaluable(const Expr& e, const Bindings& params, const EvalContext& ctx) {
  return [e, params, &ctx](cplx z) {
    Bindings b = params;
    b[e.variable] = z;
    const EvalResult r = eval_expr(e, b, ctx);
    return Sample{r.value, r.scale};
  };
}

Outcome contour_vs_formula() {
  Clock clock;
  const Lattice lat = default_contexts()[1];
  const EvalContext ctx = EvalContext::from_lattice(lat);
  const cplx a = 0.3 * lat.omega1() + 0.2 * lat.omega3();
  struct Case {
    const char* text;
    const char* g1;
    const char* g2;
  };
  const Case cases[] = {{"sigma(z)", "2w1", "2w3"},  {"theta1(z)", "pi", "pitau"},
                        {"sigma1(z)", "2w1", "2w3"}, {"sigma2(z)", "2w1", "2w3"},
                        {"sigma3(z)", "2w1", "2w3"}, {"sigma(z+a)*sigma(z-a)", "2w1", "2w3"}};
  bool ok = true;
  std::string got;
  std::uint64_t seed = 1;
  for (const Case& c : cases) {
    const Expr e = parse(c.text);
    const LinearForm g1 = parse_generator(c.g1);
    const LinearForm g2 = parse_generator(c.g2);
    const Rational N = predicted_zero_count(expr_multiplier(e, g1), expr_multiplier(e, g2), g1, g2);
    const Evaluable f = evaluable(e, {{"a", a}}, ctx);
    const cplx l1 = ctx.value(g1, {});
    const cplx l2 = ctx.value(g2, {});
    const WindingCertificate w =
        winding_count(f, {choose_admissible_base(f, l1, l2, seed++), l1, l2});
    ok = ok && N.denominator() == 1 && Rational(w.winding) == N;
    got += (got.empty() ? "" : ", ") + std::to_string(w.winding) + "/" + to_string(N);
  }
  const double t = clock.seconds();
  return {ok && t < 10.0, "winding/predicted " + got + ", " + fmt("%.2f", t) + " s"};
}

double lattice_distance(cplx z, cplx target, cplx l1, cplx l2) {
  const cplx d = z - target;
  const double det = (std::conj(l1) * l2).imag();
  const double u = std::round((std::conj(d) * l2).imag() / det);
  const double v = std::round(-(std::conj(d) * l1).imag() / det);
  double best = 1e300;
  for (int i = -1; i <= 1; ++i) {
    for (int j = -1; j <= 1; ++j) best = std::min(best, std::abs(d - (u + i) * l1 - (v + j) * l2));
  }
  return best;
}

Outcome localization() {
  bool ok = true;
  double worst = 0.0;
  for (const Lattice& lat : default_contexts()) {
    const EvalContext ctx = EvalContext::from_lattice(lat);
    const cplx a = 0.3 * lat.omega1() + 0.2 * lat.omega3();
    const cplx l1 = 2.0 * lat.omega1();
    const cplx l2 = 2.0 * lat.omega3();
    const Evaluable f = evaluable(parse("sigma(z+a)*sigma(z-a)"), {{"a", a}}, ctx);
    const auto zeros = locate_zeros(f, {choose_admissible_base(f, l1, l2, 7), l1, l2}, 2, 1e-8);
    bool plus = false;
    bool minus = false;
    for (const auto& z : zeros) {
      const double dp = lattice_distance(z.zero, a, l1, l2);
      const double dm = lattice_distance(z.zero, -a, l1, l2);
      worst = std::max(worst, std::min(dp, dm));
      plus = plus || (dp < 1e-8 && z.multiplicity == 1);
      minus = minus || (dm < 1e-8 && z.multiplicity == 1);
    }
    ok = ok && zeros.size() == 2 && plus && minus;
  }
  return {ok, "max distance to +-a " + fmt("%.2e", worst)};
}

Outcome suite_residuals() {
  Clock clock;
  const SuiteReport s = run_suite(catalog(), default_contexts(), VerifyParams{});
  const double t = clock.seconds();
  bool ok = s.failures.empty();
  double worst = 0.0;
  for (const auto& r : s.reports) {
    ok = ok && r.verdict == Verdict::verified;
    // The Legendre entry compares against a truncated product; criterion 4 covers it.
    if (r.identity != "legendre-relation") worst = std::max(worst, r.residuals.max_rel);
  }
  ok = ok && worst < 1e-9 && t < 30.0;
  return {ok, std::to_string(s.reports.size()) + " reports, max rel " + fmt("%.2e", worst) + ", " +
                  fmt("%.2f", t) + " s"};
}

Outcome symbolic_zeros() {
  struct Case {
    const char* entry;
    std::vector<const char*> values;
  };
  const Case cases[] = {{"weierstrass-3term", {"a", "b", "c"}},
                        {"sigma-mixed", {"0", "w1", "w2"}},
                        {"sigma-mixed-13", {"0", "w1", "w3"}},
                        {"sigma-mixed-23", {"0", "w2", "w3"}},
                        {"jacobi-add-theta3", {"0", "pi/2+pitau/2", "b+pi/2+pitau/2"}},
                        {"jacobi-add-mixed", {"0", "-b", "pi/2"}}};
  bool ok = true;
  int shown = 0;
  VerifyParams p;
  p.samples = 50;
  for (const Case& c : cases) {
    const CatalogEntry& e = find_builtin(catalog(), c.entry);
    for (const char* v : c.values) {
      const bool s = check_zero_symbolic(e.identity.expr, parse_linear(v));
      ok = ok && s;
      shown += s;
    }
    for (const Lattice& lat : default_contexts()) ok = ok && verify(e, lat, p).zero_excess;
  }
  return {ok, std::to_string(shown) + " candidates shown symbolically, zero_excess set"};
}

Outcome mutation_sweep() {
  Clock clock;
  int total = 0;
  int falsified = 0;
  const Lattice ctx = default_contexts()[0];
  for (const auto& e : catalog()) {
    for (std::size_t k = 0; k < e.mutation_count(); ++k) {
      ++total;
      const auto r = verify(mutate(e, k), ctx, VerifyParams{});
      falsified += exit_code(r.verdict) == 1;
    }
  }
  return {falsified == total, std::to_string(falsified) + "/" + std::to_string(total) +
                                  " mutations falsified, " + fmt("%.2f", clock.seconds()) + " s"};
}

Outcome jacobi_derivative() {
  std::mt19937_64 rng(11);
  const auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  double worst = 0.0;
  for (int s = 0; s < 10; ++s) {
    const cplx tau(unit() - 0.5, 0.3 + 1.7 * unit());
    const Nullwerte nw = theta_nullwerte(TauNome::from_tau(tau));
    worst = std::max(worst, relative_difference(nw.theta1_prime, nw.theta2 * nw.theta3 * nw.theta4));
  }
  return {worst < 1e-12, "max rel " + fmt("%.2e", worst)};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"theta quasi-periodicity relations", [] { return theta_relations("lemma1-qp"); }},
      {"theta half-period transformations", [] { return theta_relations("lemma2-transforms"); }},
      {"sigma against the truncated product", product_oracle},
      {"Legendre relation from the product", legendre},
      {"exact predicted zero counts", zero_counts},
      {"winding count equals predicted count", contour_vs_formula},
      {"zero localization of sigma(z+a)sigma(z-a)", localization},
      {"identity residuals over the default contexts", suite_residuals},
      {"symbolic zero exhibition", symbolic_zeros},
      {"mutation sweep", mutation_sweep},
      {"theta1' = theta2*theta3*theta4", jacobi_derivative},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [title, run] : criteria) {
    ++index;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %2d  %s: %s\n", o.pass ? "PASS" : "FAIL", index, title, o.detail.c_str());
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
