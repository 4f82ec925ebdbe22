#include <numbers>

#include "qpverify/errors.hpp"
#include "qpverify/kernels.hpp"
#include "qpverify/sigma.hpp"
#include "qpverify/verifier.hpp"

namespace qpv {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

IdentitySpec identity(std::string name, std::string summary, const char* text, const char* var,
                      const char* g1, const char* g2, std::vector<const char*> candidates,
                      std::string zero_note = {}) {
  IdentitySpec s;
  s.name = std::move(name);
  s.summary = std::move(summary);
  ParseOptions opts;
  opts.variable = var;
  s.expr = parse(text, opts);
  s.gen1 = parse_generator(g1);
  s.gen2 = parse_generator(g2);
  for (const char* c : candidates) s.candidates.push_back(parse_linear(c));
  s.zero_note = std::move(zero_note);
  return s;
}

CatalogEntry entry(IdentitySpec s) {
  CatalogEntry e;
  e.kind = CatalogEntry::Kind::identity;
  e.identity = std::move(s);
  return e;
}

CatalogEntry entry(RelationSet s) {
  CatalogEntry e;
  e.kind = CatalogEntry::Kind::relations;
  e.relations = std::move(s);
  return e;
}

std::string theta_name(int j) { return "theta" + std::to_string(j); }

/// theta_j(z + shift) on the raw series, so no reduction table is involved.
cplx raw(int j, cplx z, const Lattice& lat) {
  return theta_series(theta_kind(j), z, lat.nome(), lat.theta_options());
}

RelationSet quasi_periodicity() {
  RelationSet set;
  set.name = "lemma1-qp";
  set.summary = "theta_j(z+pi) and theta_j(z+pi*tau) against their multipliers, on the raw series";
  set.family = Family::theta;
  const int pi_sign[] = {-1, -1, 1, 1};
  const int tau_sign[] = {-1, 1, 1, -1};
  for (int j = 1; j <= 4; ++j) {
    const double s = pi_sign[j - 1];
    set.relations.push_back(
        {theta_name(j) + "(z+pi) = " + (s < 0 ? "-" : "") + theta_name(j) + "(z)",
         [j, s](const Lattice& lat) -> Sides {
           return [j, s, lat](cplx z) { return std::pair{raw(j, z + kPi, lat), s * raw(j, z, lat)}; };
         }});
  }
  for (int j = 1; j <= 4; ++j) {
    const double s = tau_sign[j - 1];
    set.relations.push_back(
        {theta_name(j) + "(z+pi*tau) = " + (s < 0 ? "-" : "") + "q^-1 e^(-2iz) " + theta_name(j) +
             "(z)",
         [j, s](const Lattice& lat) -> Sides {
           return [j, s, lat](cplx z) {
             const cplx tau = lat.tau();
             const cplx m = s * std::exp(-kI * kPi * tau - 2.0 * kI * z);
             return std::pair{raw(j, z + kPi * tau, lat), m * raw(j, z, lat)};
           };
         }});
  }
  return set;
}

struct HalfShiftRow {
  int lhs;
  int rhs;
  int half_pi;   // rhs argument is z + half_pi*pi/2 + half_tau*pi*tau/2
  int half_tau;
  cplx coeff;    // times q^(1/4) e^(iz) when with_q
  bool with_q;
  const char* text;
};

RelationSet half_period_transforms() {
  const HalfShiftRow rows[] = {
      {1, 2, 1, 0, -1.0, false, "theta1(z) = -theta2(z+pi/2)"},
      {1, 3, 1, 1, -kI, true, "theta1(z) = -i q^(1/4) e^(iz) theta3(z+pi/2+pi*tau/2)"},
      {1, 4, 0, 1, -kI, true, "theta1(z) = -i q^(1/4) e^(iz) theta4(z+pi*tau/2)"},
      {2, 3, 0, 1, 1.0, true, "theta2(z) = q^(1/4) e^(iz) theta3(z+pi*tau/2)"},
      {2, 4, 1, 1, 1.0, true, "theta2(z) = q^(1/4) e^(iz) theta4(z+pi/2+pi*tau/2)"},
      {2, 1, 1, 0, 1.0, false, "theta2(z) = theta1(z+pi/2)"},
      {3, 4, 1, 0, 1.0, false, "theta3(z) = theta4(z+pi/2)"},
      {3, 1, 1, 1, 1.0, true, "theta3(z) = q^(1/4) e^(iz) theta1(z+pi/2+pi*tau/2)"},
      {3, 2, 0, 1, 1.0, true, "theta3(z) = q^(1/4) e^(iz) theta2(z+pi*tau/2)"},
      {4, 1, 0, 1, -kI, true, "theta4(z) = -i q^(1/4) e^(iz) theta1(z+pi*tau/2)"},
      {4, 2, 1, 1, kI, true, "theta4(z) = i q^(1/4) e^(iz) theta2(z+pi/2+pi*tau/2)"},
      {4, 3, 1, 0, 1.0, false, "theta4(z) = theta3(z+pi/2)"},
  };
  RelationSet set;
  set.name = "lemma2-transforms";
  set.summary = "the twelve half-period transformation formulas, on the raw series";
  set.family = Family::theta;
  for (const HalfShiftRow& r : rows) {
    set.relations.push_back({r.text, [r](const Lattice& lat) -> Sides {
                               return [r, lat](cplx z) {
                                 const cplx tau = lat.tau();
                                 const cplx shift =
                                     0.5 * kPi * (static_cast<double>(r.half_pi) +
                                                  static_cast<double>(r.half_tau) * tau);
                                 cplx c = r.coeff;
                                 if (r.with_q) c *= std::exp(kI * kPi * tau / 4.0 + kI * z);
                                 return std::pair{raw(r.lhs, z, lat), c * raw(r.rhs, z + shift, lat)};
                               };
                             }});
  }
  return set;
}

RelationSet sigma_theta_transforms() {
  RelationSet set;
  set.name = "sigma-theta-transforms";
  set.summary =
      "sigma and sigma_j from the theta formulas against sigma built on the basis (w3, -w1)";
  set.family = Family::sigma;
  set.relations.push_back(
      {"sigma(z) = sigma(z) with periods (w3, -w1)", [](const Lattice& lat) -> Sides {
         const Lattice swapped = Lattice::make(lat.omega3(), -lat.omega1(), lat.theta_options());
         return [lat, swapped](cplx z) {
           return std::pair{sigma_eval(SigmaKind::sigma, z, lat),
                            sigma_eval(SigmaKind::sigma, z, swapped)};
         };
       }});
  for (int j = 1; j <= 3; ++j) {
    const std::string sj = "sigma" + std::to_string(j);
    const std::string wj = "w" + std::to_string(j);
    set.relations.push_back(
        {sj + "(z) = e^(-eta" + std::to_string(j) + " z) sigma(" + wj + "+z)/sigma(" + wj + ")",
         [j](const Lattice& lat) -> Sides {
           const Lattice swapped = Lattice::make(lat.omega3(), -lat.omega1(), lat.theta_options());
           const cplx w = lat.omega(j);
           const cplx eta = lat.eta(j);
           const cplx sw = sigma_eval(SigmaKind::sigma, w, swapped);
           return [lat, swapped, j, w, eta, sw](cplx z) {
             return std::pair{sigma_eval(sigma_kind(j), z, lat),
                              std::exp(-eta * z) * sigma_eval(SigmaKind::sigma, w + z, swapped) / sw};
           };
         }});
  }
  return set;
}

/// sigma'/sigma at w from the truncated product, by a central difference.
cplx product_eta(cplx w, const Lattice& lat) {
  constexpr int kCutoff = 60;
  const cplx h = 1e-4 * std::abs(lat.omega1());
  const cplx plus = sigma_product(w + h, lat, kCutoff);
  const cplx minus = sigma_product(w - h, lat, kCutoff);
  return std::log(plus / minus) / (2.0 * h);
}

RelationSet legendre() {
  RelationSet set;
  set.name = "legendre-relation";
  set.summary = "eta1*w3 - eta3*w1 = i*pi/2 with both etas from the truncated product (cutoff 60)";
  set.family = Family::sigma;
  set.sampled = false;
  // Product truncation at cutoff 60 limits agreement to about 1e-5.
  set.min_tolerance = 1e-4;
  set.relations.push_back({"eta1*w3 - eta3*w1 = i*pi/2", [](const Lattice& lat) -> Sides {
                             const cplx e1 = product_eta(lat.omega1(), lat);
                             const cplx e3 = product_eta(lat.omega3(), lat);
                             const cplx lhs = e1 * lat.omega3() - e3 * lat.omega1();
                             return [lhs](cplx) { return std::pair{lhs, kI * (kPi / 2)}; };
                           }});
  return set;
}

const char* kThreeTerm =
    "sigma(z+a)*sigma(z-a)*sigma(b+c)*sigma(b-c) + sigma(z+b)*sigma(z-b)*sigma(c+a)*sigma(c-a) + "
    "sigma(z+c)*sigma(z-c)*sigma(a+b)*sigma(a-b)";
const char* kFundamental =
    "sigma(a)*sigma(b)*sigma(c)*sigma(d) + "
    "sigma((a+b+c+d)/2)*sigma((a+b-c-d)/2)*sigma((a-b+c-d)/2)*sigma((-a+b+c-d)/2) + "
    "sigma((a+b+c-d)/2)*sigma((a+b-c+d)/2)*sigma((a-b+c+d)/2)*sigma((a-b-c-d)/2)";
const char* kAddTheta3 =
    "theta3(a+b)*theta3(a-b)*theta3_0^2 - theta3(a)^2*theta3(b)^2 - theta1(a)^2*theta1(b)^2";
const char* kAddMixed =
    "theta1(a+b)*theta2(a-b)*theta3_0*theta4_0 - theta1(a)*theta2(a)*theta3(b)*theta4(b) - "
    "theta1(b)*theta2(b)*theta3(a)*theta4(a)";
const char* kJacobi =
    "2*theta3(a)*theta3(b)*theta3(c)*theta3(d)"
    " + theta1((-a+b+c+d)/2)*theta1((a-b+c+d)/2)*theta1((a+b-c+d)/2)*theta1((a+b+c-d)/2)"
    " - theta2((-a+b+c+d)/2)*theta2((a-b+c+d)/2)*theta2((a+b-c+d)/2)*theta2((a+b+c-d)/2)"
    " - theta3((-a+b+c+d)/2)*theta3((a-b+c+d)/2)*theta3((a+b-c+d)/2)*theta3((a+b+c-d)/2)"
    " - theta4((-a+b+c+d)/2)*theta4((a-b+c+d)/2)*theta4((a+b-c+d)/2)*theta4((a+b+c-d)/2)";

IdentitySpec sigma_mixed(int k, int l, std::string name) {
  const std::string sk = std::to_string(k);
  const std::string sl = std::to_string(l);
  const std::string text = "sigma" + sk + "(z)^2 - sigma" + sl + "(z)^2 + ediff(" + sk + "," + sl +
                           ")*sigma(z)^2";
  const std::string wk = "w" + sk;
  const std::string wl = "w" + sl;
  return identity(std::move(name), "sigma_k^2 - sigma_l^2 + (e_k - e_l) sigma^2 = 0, k=" + sk +
                                       ", l=" + sl,
                  text.c_str(), "z", "2w1", "2w3", {"0", wk.c_str(), wl.c_str()});
}

}  // namespace

const std::string& CatalogEntry::name() const {
  return kind == Kind::identity ? identity.name : relations.name;
}

std::size_t CatalogEntry::mutation_count() const {
  return kind == Kind::identity ? identity.expr.terms.size() : relations.relations.size();
}

CatalogEntry mutate(const CatalogEntry& e, std::size_t index) {
  if (index >= e.mutation_count()) throw Error(ErrorCode::usage, "mutation index out of range");
  CatalogEntry m = e;
  if (m.kind == CatalogEntry::Kind::identity) {
    m.identity.expr.terms[index].coeff = -m.identity.expr.terms[index].coeff;
  } else {
    m.relations.relations[index].sign = -m.relations.relations[index].sign;
  }
  return m;
}

std::vector<CatalogEntry> builtin_catalog() {
  std::vector<CatalogEntry> c;
  c.push_back(entry(identity("weierstrass-3term", "three-term sigma identity in z", kThreeTerm, "z",
                             "2w1", "2w3", {"a", "b", "c"})));
  c.push_back(entry(identity(
      "weierstrass-fundamental", "fundamental sigma identity in a, periods doubled", kFundamental,
      "a", "4w1", "4w3", {},
      "no candidate zeros are listed: the zero investigation is not carried out explicitly, so "
      "the verdict rests on multipliers, the zero count and residuals")));
  c.push_back(entry(sigma_mixed(1, 2, "sigma-mixed")));
  c.push_back(entry(sigma_mixed(1, 3, "sigma-mixed-13")));
  c.push_back(entry(sigma_mixed(2, 3, "sigma-mixed-23")));
  c.push_back(entry(identity("jacobi-add-theta3", "addition theorem with multiplier theta3^2",
                             kAddTheta3, "a", "pi", "pitau", {"0", "pi/2+pitau/2", "b+pi/2+pitau/2"})));
  c.push_back(entry(identity("jacobi-add-mixed", "addition theorem with multiplier theta3*theta4",
                             kAddMixed, "a", "pi", "pitau", {"0", "-b", "pi/2"})));
  c.push_back(entry(identity(
      "jacobi-fundamental", "fundamental Jacobi identity 2[3] = -[1]* + [2]* + [3]* + [4]*",
      kJacobi, "a", "pi", "pitau", {},
      "no candidate zeros are listed: the zero investigation is not carried out explicitly, so "
      "the verdict rests on multipliers, the zero count and residuals")));
  c.push_back(entry(legendre()));
  c.push_back(entry(quasi_periodicity()));
  c.push_back(entry(half_period_transforms()));
  c.push_back(entry(sigma_theta_transforms()));
  return c;
}

const CatalogEntry& find_builtin(const std::vector<CatalogEntry>& catalog, std::string_view name) {
  for (const auto& e : catalog) {
    if (e.name() == name) return e;
  }
  throw Error(ErrorCode::usage, "no built-in identity named '" + std::string(name) + "'");
}

Lattice lattice_from_tau(cplx tau, const ThetaOptions& opts) {
  return Lattice::make(kPi / 2, kPi * tau / 2.0, opts);
}

std::vector<Lattice> default_contexts() {
  return {Lattice::make(kPi / 2, kI * (kPi / 2)), Lattice::make(1.0, cplx(0.3, 0.9)),
          Lattice::make(cplx(1.0, 0.2), cplx(-0.4, 1.1))};
}

}  // namespace qpv
