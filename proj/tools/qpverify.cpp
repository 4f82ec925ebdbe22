#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qpverify/contour.hpp"
#include "qpverify/errors.hpp"
#include "qpverify/literal.hpp"
#include "qpverify/verifier.hpp"

using namespace qpv;

namespace {

constexpr int kUsageExit = 3;

struct ContextArgs {
  std::string tau;
  std::string omega1;
  std::string omega3;

  void add(CLI::App* app) {
    app->add_option("--tau", tau, "nome parameter tau (uses periods pi/2, pi*tau/2)");
    app->add_option("--omega1", omega1, "half-period w1");
    app->add_option("--omega3", omega3, "half-period w3");
  }

  Lattice lattice() const {
    if (!tau.empty()) {
      if (!omega1.empty() || !omega3.empty()) {
        throw Error(ErrorCode::usage, "give either --tau or --omega1/--omega3, not both");
      }
      return lattice_from_tau(parse_complex(tau));
    }
    if (omega1.empty() != omega3.empty()) {
      throw Error(ErrorCode::usage, "--omega1 and --omega3 go together");
    }
    if (omega1.empty()) return default_contexts().front();
    return Lattice::make(parse_complex(omega1), parse_complex(omega3));
  }
};

Bindings parse_bindings(const std::vector<std::string>& items) {
  Bindings b;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw Error(ErrorCode::usage, "binding must look like sym=value: '" + item + "'");
    }
    b[item.substr(0, eq)] = parse_complex(item.substr(eq + 1));
  }
  return b;
}

void require_bound(const Expr& e, const Bindings& b, bool with_variable) {
  std::vector<std::string> needed = e.parameters;
  if (with_variable) needed.push_back(e.variable);
  for (const auto& s : needed) {
    if (!b.count(s)) throw Error(ErrorCode::usage, "symbol '" + s + "' needs a --bind value");
  }
}

void write_json(const std::string& path, const nlohmann::ordered_json& j) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::usage, "cannot write " + path);
  out << j.dump(2) << '\n';
}

void print_report(const VerificationReport& r) {
  std::cout << r.identity << ": " << name(r.verdict) << '\n';
  for (const auto& m : r.multipliers) {
    std::cout << "  shift " << m.generator << ": ";
    if (m.matched) {
      std::cout << "coeff " << m.coeff << ", alpha " << m.alpha << ", beta " << m.beta << '\n';
    } else {
      std::cout << "no common multiplier (" << m.error << ")\n";
    }
  }
  if (r.predicted_N) std::cout << "  predicted zeros: " << to_string(*r.predicted_N) << '\n';
  for (const auto& z : r.zeros) {
    std::cout << "  zero at " << z.candidate << ": " << (z.verified ? "shown" : "not shown")
              << (z.symbolic ? " (symbolic)" : "") << ", residual " << z.residual << '\n';
  }
  if (!r.zeros.empty()) std::cout << "  zero excess: " << (r.zero_excess ? "yes" : "no") << '\n';
  std::cout << "  max relative residual " << r.residuals.max_rel << " over " << r.residuals.samples
            << " samples (seed " << r.residuals.seed << ", tolerance " << r.tolerance << ")\n";
  for (const auto& n : r.notes) std::cout << "  note: " << n << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evaluate sigma/theta expressions and verify quasi-periodic identities"};
  app.require_subcommand(1);

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate an expression");
  std::string eval_expr_text;
  std::string eval_var = "z";
  std::vector<std::string> eval_binds;
  ContextArgs eval_ctx;
  eval->add_option("--expr", eval_expr_text, "expression")->required();
  eval->add_option("--var", eval_var, "distinguished variable");
  eval->add_option("--bind", eval_binds, "sym=value");
  eval_ctx.add(eval);

  // verify
  auto* ver = app.add_subcommand("verify", "verify an identity");
  std::string builtin, ver_expr, ver_var = "z", gen1, gen2, json_path;
  std::vector<std::string> candidates;
  VerifyParams params;
  double tol = 0.0;
  ContextArgs ver_ctx;
  auto* builtin_opt = ver->add_option("--builtin", builtin, "catalog entry name");
  auto* expr_opt = ver->add_option("--expr", ver_expr, "expression that must vanish");
  builtin_opt->excludes(expr_opt);
  ver->add_option("--var", ver_var, "distinguished variable");
  ver->add_option("--gen1", gen1, "first period generator, e.g. 2w1 or pi");
  ver->add_option("--gen2", gen2, "second period generator, e.g. 2w3 or pitau");
  ver->add_option("--candidate", candidates, "candidate zero as a linear form");
  ver->add_option("--seed", params.seed, "sampling seed");
  ver->add_option("--samples", params.samples, "residual samples");
  auto* tol_opt = ver->add_option("--tol", tol, "relative residual tolerance");
  ver->add_option("--json", json_path, "write the report here");
  ver_ctx.add(ver);

  // zeros
  auto* zer = app.add_subcommand("zeros", "count and locate zeros in a period cell");
  std::string z_expr, z_var = "z", z_base = "auto", z_gen1, z_gen2;
  std::vector<std::string> z_binds;
  std::uint64_t z_seed = 1;
  double z_tol = 1e-8;
  ContextArgs z_ctx;
  zer->add_option("--expr", z_expr, "expression")->required();
  zer->add_option("--var", z_var, "variable");
  zer->add_option("--bind", z_binds, "parameter values sym=value");
  zer->add_option("--base", z_base, "cell base point or 'auto'");
  zer->add_option("--gen1", z_gen1, "first generator")->required();
  zer->add_option("--gen2", z_gen2, "second generator")->required();
  zer->add_option("--seed", z_seed, "seed for the automatic base");
  zer->add_option("--tol", z_tol, "cell diameter at which subdivision stops");
  z_ctx.add(zer);

  // suite
  auto* sui = app.add_subcommand("suite", "verify the whole catalog");
  std::string suite_json;
  std::vector<std::string> suite_ctx;
  VerifyParams suite_params;
  bool suite_default = true;
  sui->add_option("--json", suite_json, "write the aggregate report here");
  sui->add_option("--ctx", suite_ctx, "context as omega1,omega3 (repeatable)");
  sui->add_flag("!--no-default", suite_default, "with no --ctx, run no contexts at all");
  sui->add_option("--seed", suite_params.seed, "sampling seed");
  sui->add_option("--samples", suite_params.samples, "residual samples");

  auto* lst = app.add_subcommand("list", "list catalog entries");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageExit;
  }

  try {
    if (*eval) {
      const Expr e = parse(eval_expr_text, {eval_var, std::nullopt});
      const Bindings b = parse_bindings(eval_binds);
      require_bound(e, b, true);
      const EvalContext ctx = EvalContext::from_lattice(eval_ctx.lattice());
      const EvalResult r = eval_expr(e, b, ctx);
      std::cout << "value " << format_complex(r.value) << "\nscale " << r.scale << '\n';
      return 0;
    }
    if (*ver) {
      if (*tol_opt) params.tol = tol;
      const Lattice lat = ver_ctx.lattice();
      VerificationReport r;
      if (!builtin.empty()) {
        r = verify(find_builtin(builtin_catalog(), builtin), lat, params);
      } else {
        if (ver_expr.empty() || gen1.empty() || gen2.empty()) {
          throw Error(ErrorCode::usage, "give --builtin, or --expr with --gen1 and --gen2");
        }
        IdentitySpec s;
        s.name = "custom";
        s.expr = parse(ver_expr, {ver_var, std::nullopt});
        s.gen1 = parse_generator(gen1);
        s.gen2 = parse_generator(gen2);
        std::set<std::string> allowed(s.expr.parameters.begin(), s.expr.parameters.end());
        for (const auto& c : candidates) s.candidates.push_back(parse_linear(c, &allowed));
        r = verify(s, lat, params);
      }
      print_report(r);
      write_json(json_path, to_json(r));
      return exit_code(r.verdict);
    }
    if (*zer) {
      const Expr e = parse(z_expr, {z_var, std::nullopt});
      Bindings b = parse_bindings(z_binds);
      require_bound(e, b, false);
      const EvalContext ctx = EvalContext::from_lattice(z_ctx.lattice());
      const cplx l1 = ctx.value(parse_generator(z_gen1), {});
      const cplx l2 = ctx.value(parse_generator(z_gen2), {});
      const Evaluable f = [&](cplx z) {
        Bindings local = b;
        local[e.variable] = z;
        const EvalResult r = eval_expr(e, local, ctx);
        return Sample{r.value, r.scale};
      };
      const cplx base = z_base == "auto" ? choose_admissible_base(f, l1, l2, z_seed)
                                         : parse_complex(z_base);
      const Parallelogram p{base, l1, l2};
      const WindingCertificate c = winding_count(f, p);
      std::cout << "base " << format_complex(base) << "\nwinding " << c.winding
                << "\nmin |f| on boundary " << c.min_abs_on_boundary << "\nmax phase step "
                << c.max_phase_step << "\nsamples " << c.samples_used << '\n';
      for (const auto& z : locate_zeros(f, p, c.winding, z_tol)) {
        std::cout << "zero " << format_complex(z.zero) << " multiplicity " << z.multiplicity << '\n';
      }
      return 0;
    }
    if (*sui) {
      std::vector<Lattice> ctxs;
      for (const auto& item : suite_ctx) {
        const auto comma = item.find(',');
        if (comma == std::string::npos) throw Error(ErrorCode::usage, "--ctx takes omega1,omega3");
        ctxs.push_back(
            Lattice::make(parse_complex(item.substr(0, comma)), parse_complex(item.substr(comma + 1))));
      }
      if (ctxs.empty() && suite_default) ctxs = default_contexts();
      const SuiteReport s = run_suite(builtin_catalog(), ctxs, suite_params);
      for (const auto& r : s.reports) {
        std::cout << name(r.verdict) << "  " << r.identity << "  tau=" << format_complex(r.tau)
                  << "  max_rel=" << r.residuals.max_rel << '\n';
      }
      for (const auto& f : s.failures) {
        std::cout << "error  " << f.identity << "  context " << f.context << ": " << f.error << '\n';
      }
      write_json(suite_json, to_json(s));
      return s.exit_code();
    }
    if (*lst) {
      for (const auto& e : builtin_catalog()) {
        std::cout << e.name() << "  "
                  << (e.kind == CatalogEntry::Kind::identity ? e.identity.summary : e.relations.summary)
                  << '\n';
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return kUsageExit;
  }
  return kUsageExit;
}
