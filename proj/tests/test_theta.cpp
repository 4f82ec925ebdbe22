#include <array>
#include <cmath>

#include "doctest.h"
#include "qpverify/errors.hpp"
#include "qpverify/theta.hpp"
#include "test_support.hpp"

using namespace qpv;
using namespace qpv::testing;

namespace {

const std::array<cplx, 3> kTaus = {cplx(0, 1), cplx(0.3, 0.8), cplx(-0.4, 1.1)};
const std::array<ThetaKind, 4> kKinds = {ThetaKind::one, ThetaKind::two, ThetaKind::three,
                                         ThetaKind::four};

}  // namespace

TEST_CASE("theta3 nullwert at tau = i") {
  const auto tn = TauNome::from_tau(I);
  // 30-digit value from an independent series implementation.
  CHECK(std::abs(theta_eval(ThetaKind::three, 0.0, tn) - 1.0864348112133080) < 1e-15);
  CHECK(std::abs(theta_nullwerte(tn).theta3 - 1.0864348112133080) < 1e-15);
}

TEST_CASE("theta values against an independent implementation") {
  struct Case {
    cplx tau, z;
    std::array<cplx, 4> expected;
  };
  const Case cases[] = {
      {{0.3, 0.8},
       {0.4, -0.2},
       {cplx(0.46098239356576227, -0.10089234107010511), cplx(0.95013007008888342, 0.3157598329106788),
        cplx(1.0331506122293246, 0.12671536247842045), cplx(0.96694468597210642, -0.12683508763611083)}},
      {{-0.4, 1.1},
       {1.3, 0.9},
       {cplx(1.1759117939788698, -0.1451928307286219), cplx(0.05533749745090228, -0.89552989763315765),
        cplx(0.85697287278337378, 0.1303046868814144), cplx(1.142976657407006, -0.13025247225173917)}},
      {{0.0, 1.0},
       {2.5, 1.7},
       {cplx(1.4125019793875685, -1.9811429486533717), cplx(-2.0177828795014668, -1.5747975484928529),
        cplx(1.36508643083639, 1.2419990260437053), cplx(0.62965912742328392, -1.2385922603012749)}},
  };
  for (const auto& c : cases) {
    const auto tn = TauNome::from_tau(c.tau);
    for (int k = 1; k <= 4; ++k) {
      const cplx got = theta_eval(theta_kind(k), c.z, tn);
      CHECK(rel(got, c.expected[k - 1]) < 1e-13);
    }
  }
}

TEST_CASE("theta1 vanishes at the origin") {
  const auto tn = TauNome::from_tau({0.3, 0.8});
  CHECK(std::abs(theta_eval(ThetaKind::one, 0.0, tn)) < 1e-17);
}

TEST_CASE("theta1 changes sign under z -> z + pi") {
  const auto tn = TauNome::from_tau(I);
  const cplx a = theta_eval(ThetaKind::one, 0.3, tn);
  const cplx b = theta_eval(ThetaKind::one, 0.3 + pi, tn);
  CHECK(rel(b, -a) < 1e-14);
}

TEST_CASE("nullwerte") {
  SUBCASE("self-dual point tau = i has theta2 = theta4") {
    const auto nw = theta_nullwerte(TauNome::from_tau(I));
    CHECK(rel(nw.theta2, nw.theta4) < 1e-13);
  }
  SUBCASE("theta1' equals theta2 theta3 theta4") {
    Draws d(11);
    for (int n = 0; n < 10; ++n) {
      const cplx tau(d.uniform(-1.0, 1.0), d.uniform(0.3, 2.0));
      const auto nw = theta_nullwerte(TauNome::from_tau(tau));
      CHECK(rel(nw.theta1_prime, nw.theta2 * nw.theta3 * nw.theta4) < 1e-12);
    }
  }
}

TEST_CASE("reduce_argument") {
  const auto tn = TauNome::from_tau({0.3, 0.8});
  const cplx z(0.2, -0.1);

  SUBCASE("one pi*tau shift of theta1") {
    const auto r = reduce_argument(ThetaKind::one, z + pi * tn.tau(), tn);
    CHECK(std::abs(r.z0 - z) < 1e-15);
    CHECK(r.multiplier.coeff == GaussRational(-1));
    CHECK(r.multiplier.pitau == Rational(-1));
    CHECK(r.multiplier.iz == Rational(-2));
  }
  SUBCASE("theta3 is pi-periodic") {
    const auto r = reduce_argument(ThetaKind::three, z + pi, tn);
    CHECK(std::abs(r.z0 - z) < 1e-15);
    CHECK(r.multiplier == ExactMultiplier{});
  }
  SUBCASE("five pi shifts of theta4") {
    const auto r = reduce_argument(ThetaKind::four, z + 5.0 * pi, tn);
    CHECK(std::abs(r.z0 - z) < 1e-14);
    CHECK(r.pi_shifts == 5);
    CHECK(r.multiplier == ExactMultiplier{});
  }
  SUBCASE("reduced point lies in the cell") {
    Draws d(3);
    for (int n = 0; n < 100; ++n) {
      const cplx w(d.uniform(-20, 20), d.uniform(-6, 6));
      const auto r = reduce_argument(ThetaKind::two, w, tn);
      CHECK(std::abs(r.z0.real()) <= pi / 2 + 1e-12);
      CHECK(std::abs(r.z0.imag()) <= pi * tn.im_tau() / 2 + 1e-12);
    }
  }
  SUBCASE("round trip against the raw series") {
    Draws d(4);
    for (auto kind : kKinds) {
      for (int n = 0; n < 50; ++n) {
        const cplx w(d.uniform(-8, 8), d.uniform(-3, 3));
        const auto r = reduce_argument(kind, w, tn);
        const cplx via = r.multiplier.value(r.z0, tn) * theta_series(kind, r.z0, tn);
        CHECK(rel(via, theta_series(kind, w, tn)) < 1e-10);
      }
    }
  }
}

TEST_CASE("quasi-periodicity multipliers") {
  for (const cplx tau : kTaus) {
    const auto tn = TauNome::from_tau(tau);
    Draws d(100);
    for (auto kind : kKinds) {
      const double s_pi = pi_shift_sign(kind);
      const double s_tau = pitau_shift_sign(kind);
      for (int n = 0; n < 200; ++n) {
        const cplx z = d.in_cell(pi, pi * tau);
        const cplx base = theta_eval(kind, z, tn);
        const cplx by_pi = theta_series(kind, z + pi, tn);
        const cplx by_tau = theta_series(kind, z + pi * tau, tn);
        CHECK(rel(by_pi, s_pi * base) < 1e-10);
        CHECK(rel(by_tau, s_tau / tn.q() * std::exp(-2.0 * I * z) * base) < 1e-10);
      }
    }
  }
}

TEST_CASE("half-period rewrites") {
  SUBCASE("table entries") {
    const auto a = half_period_rewrite(ThetaKind::one, HalfPeriod::pi);
    CHECK(a.kind == ThetaKind::two);
    CHECK(a.multiplier == ExactMultiplier{});
    const auto b = half_period_rewrite(ThetaKind::three, HalfPeriod::pi);
    CHECK(b.kind == ThetaKind::four);
    CHECK(b.multiplier == ExactMultiplier{});
    const auto c = half_period_rewrite(ThetaKind::two, HalfPeriod::pitau);
    CHECK(c.kind == ThetaKind::three);
    CHECK(c.multiplier.coeff == GaussRational(1));
    CHECK(c.multiplier.pitau == Rational(-1, 4));
    CHECK(c.multiplier.iz == Rational(-1));
  }
  SUBCASE("every rewrite holds numerically") {
    for (const cplx tau : kTaus) {
      const auto tn = TauNome::from_tau(tau);
      const cplx shifts[] = {pi / 2, pi * tau / 2.0, pi / 2 + pi * tau / 2.0};
      const HalfPeriod which[] = {HalfPeriod::pi, HalfPeriod::pitau, HalfPeriod::both};
      Draws d(7);
      for (int s = 0; s < 3; ++s) {
        for (auto kind : kKinds) {
          const auto rw = half_period_rewrite(kind, which[s]);
          for (int n = 0; n < 50; ++n) {
            const cplx z = d.in_cell(pi, pi * tau);
            const cplx lhs = theta_series(kind, z + shifts[s], tn);
            const cplx rhs = rw.multiplier.value(z, tn) * theta_series(rw.kind, z, tn);
            CHECK(rel(lhs, rhs) < 1e-10);
          }
        }
      }
    }
  }
}

TEST_CASE("parity") {
  const auto tn = TauNome::from_tau({-0.4, 1.1});
  Draws d(9);
  for (int n = 0; n < 100; ++n) {
    const cplx z = d.in_cell(pi, pi * tn.tau());
    CHECK(rel(theta_eval(ThetaKind::one, -z, tn), -theta_eval(ThetaKind::one, z, tn)) < 1e-12);
    for (auto kind : {ThetaKind::two, ThetaKind::three, ThetaKind::four}) {
      CHECK(rel(theta_eval(kind, -z, tn), theta_eval(kind, z, tn)) < 1e-12);
    }
  }
}

TEST_CASE("truncation bound") {
  Draws d(12);
  for (const cplx tau : kTaus) {
    const auto tn = TauNome::from_tau(tau);
    for (auto kind : kKinds) {
      for (int n = 0; n < 20; ++n) {
        const cplx z = d.in_cell(pi, pi * tau);
        const cplx a = theta_eval(kind, z, tn);
        const cplx b = theta_eval(kind, z, tn, ThetaOptions{5});
        CHECK(rel(a, b) < 1e-14);
      }
    }
  }
}

TEST_CASE("domain and overflow errors") {
  CHECK_THROWS_AS(TauNome::from_tau({0.0, 0.01}), Error);
  CHECK_THROWS_AS(TauNome::from_tau({0.5, -1.0}), Error);
  CHECK_NOTHROW(TauNome::from_tau({0.0, 0.06}));
  CHECK(TauNome::from_tau({0.0, 0.1}).low_accuracy());

  const auto tn = TauNome::from_tau(I);
  try {
    theta_eval(ThetaKind::three, cplx(0.0, 400.0), tn);
    FAIL("expected overflow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::overflow);
  }
}

TEST_CASE("exact multipliers compose") {
  const auto tn = TauNome::from_tau({0.3, 0.8});
  const cplx z(0.1, 0.2);
  const auto a = reduce_argument(ThetaKind::one, z + pi * tn.tau(), tn).multiplier;
  const auto b = half_period_rewrite(ThetaKind::two, HalfPeriod::both).multiplier;
  ExactMultiplier c = a;
  c *= b;
  CHECK(rel(c.value(z, tn), a.value(z, tn) * b.value(z, tn)) < 1e-14);
}
