#include <cmath>

#include "doctest.h"
#include "qpverify/errors.hpp"
#include "qpverify/lattice.hpp"
#include "qpverify/sigma.hpp"
#include "test_support.hpp"

using namespace qpv;
using namespace qpv::testing;

TEST_CASE("square lattice basics") {
  const auto lat = Lattice::make(pi / 2, I * (pi / 2));
  CHECK(std::abs(lat.tau() - I) < 1e-15);
  CHECK(std::abs(lat.nome().q() - std::exp(-pi)) < 1e-16);
  CHECK(std::abs(lat.nome().q() - 0.0432139183) < 1e-10);
  CHECK(std::abs(lat.omega1() + lat.omega2() + lat.omega3()) == 0.0);
}

TEST_CASE("Legendre relation holds by construction") {
  for (const auto& lat : default_lattices()) {
    const cplx lhs = lat.eta1() * lat.omega3() - lat.eta3() * lat.omega1();
    CHECK(std::abs(lhs - I * (pi / 2)) <= 1e-10 * (std::abs(lat.eta1() * lat.omega3()) +
                                                   std::abs(lat.eta3() * lat.omega1())));
    CHECK(std::abs(lat.eta2() + lat.eta1() + lat.eta3()) <= 1e-15 * std::abs(lat.eta1()) + 1e-15);
  }
}

TEST_CASE("eta constants against the product definition") {
  SUBCASE("eta1 on the square lattice") {
    const auto lat = Lattice::make(pi / 2, I * (pi / 2));
    CHECK(std::abs(product_log_derivative(lat.omega1(), lat, 60) - lat.eta1()) < 1e-5);
  }
  SUBCASE("Legendre with both etas from the product") {
    for (const auto& lat : default_lattices()) {
      const cplx e1 = product_log_derivative(lat.omega1(), lat, 60);
      const cplx e3 = product_log_derivative(lat.omega3(), lat, 60);
      CHECK(std::abs(e1 * lat.omega3() - e3 * lat.omega1() - I * (pi / 2)) / (pi / 2) < 1e-5);
    }
  }
  SUBCASE("eta2 at w2") {
    // Truncation error decays like cutoff^-2; 60 is not enough for 1e-5 at w2
    // on every lattice.
    for (const auto& lat : default_lattices()) {
      CHECK(std::abs(product_log_derivative(lat.omega2(), lat, 150) - lat.eta2()) < 1e-5);
    }
  }
}

TEST_CASE("eta3 from the swapped basis") {
  // (w3, -w1) spans the same lattice; its eta1 is eta3 computed without Legendre.
  for (const auto& lat : default_lattices()) {
    const auto swapped = Lattice::make(lat.omega3(), -lat.omega1());
    CHECK(rel(swapped.eta1(), lat.eta3()) < 1e-12);
  }
}

TEST_CASE("homogeneity") {
  const cplx c(0.7, -0.4);
  for (const auto& lat : default_lattices()) {
    const auto scaled = Lattice::make(c * lat.omega1(), c * lat.omega3());
    for (int j = 1; j <= 3; ++j) CHECK(rel(scaled.eta(j), lat.eta(j) / c) < 1e-10);
  }
}

TEST_CASE("e_diff") {
  for (const auto& lat : default_lattices()) {
    for (int k = 1; k <= 3; ++k) {
      CHECK(e_diff(lat, k, k).value == cplx(0.0));
      for (int l = 1; l <= 3; ++l) {
        if (k == l) continue;
        const cplx a = e_diff(lat, k, l).value;
        const cplx b = e_diff_at(lat, k, l, kRetryProbe * lat.omega1()).value;
        CHECK(rel(a, b) < 1e-10);
        CHECK(rel(a, -e_diff(lat, l, k).value) < 1e-14);
      }
    }
    const cplx loop = e_diff(lat, 1, 3).value + e_diff(lat, 3, 2).value + e_diff(lat, 2, 1).value;
    CHECK(std::abs(loop) < 1e-12 * std::abs(e_diff(lat, 1, 3).value));
  }
  const auto lat = Lattice::make(1.0, cplx(0.3, 0.9));
  CHECK_THROWS_AS(e_diff(lat, 0, 2), Error);
}

TEST_CASE("Weierstrass p") {
  for (const auto& lat : default_lattices()) {
    const auto e = e_values(lat);
    CHECK(std::abs(e[0] + e[1] + e[2]) < 1e-12 * std::abs(e[0]));

    SUBCASE("half-period values") {
      for (int j = 1; j <= 3; ++j) CHECK(rel(wp_eval(lat, lat.omega(j), j), e[j - 1]) < 1e-12);
    }
    SUBCASE("independent of the auxiliary index") {
      const cplx z = 0.3 * lat.omega1() + 0.2 * lat.omega3();
      CHECK(rel(wp_eval(lat, z, 1), wp_eval(lat, z, 3)) < 1e-10);
      CHECK(rel(wp_eval(lat, z, 1), wp_eval(lat, z, 2)) < 1e-10);
    }
    SUBCASE("second difference of -log sigma") {
      const double h = 1e-4;
      for (const cplx z : {0.3 * lat.omega1() + 0.2 * lat.omega3(), lat.omega1(), lat.omega2(),
                           lat.omega3()}) {
        const cplx s = sigma_eval(SigmaKind::sigma, z, lat);
        const cplx up = std::log(sigma_eval(SigmaKind::sigma, z + h, lat) / s);
        const cplx down = std::log(sigma_eval(SigmaKind::sigma, z - h, lat) / s);
        const cplx fd = -(up + down) / (h * h);
        CHECK(std::abs(fd - wp_eval(lat, z)) < 1e-6 * std::max(1.0, std::abs(fd)));
      }
    }
    SUBCASE("even") {
      Draws d(5);
      for (int n = 0; n < 50; ++n) {
        const cplx z = d.in_cell(2.0 * lat.omega1(), 2.0 * lat.omega3(), 0.05, 0.95);
        CHECK(rel(wp_eval(lat, -z), wp_eval(lat, z)) < 1e-12);
      }
    }
    SUBCASE("pole") {
      CHECK_THROWS_AS(wp_eval(lat, 2.0 * lat.omega1()), Error);
    }
  }
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(Lattice::make(0.0, I), Error);
  CHECK_THROWS_AS(Lattice::make(I, 1.0), Error);          // wrong orientation
  CHECK_THROWS_AS(Lattice::make(1.0, cplx(0.0, 0.01)), Error);  // nome out of domain
}
