#include <doctest.h>

#include <algorithm>

#include "qpverify/contour.hpp"
#include "qpverify/errors.hpp"
#include "qpverify/theta.hpp"
#include "test_support.hpp"

using namespace qpv;
using namespace qpv::testing;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::usage;
}

Parallelogram cell_at(const Evaluable& f, cplx l1, cplx l2, std::uint64_t seed) {
  return {choose_admissible_base(f, l1, l2, seed), l1, l2};
}

/// Representative of z modulo the lattice spanned by l1, l2, nearest to `near`.
double lattice_distance(cplx z, cplx near, cplx l1, cplx l2) {
  double best = 1e300;
  const cplx d = z - near;
  const double det = (std::conj(l1) * l2).imag();
  const double u = (std::conj(d) * l2).imag() / det;
  const double v = -(std::conj(d) * l1).imag() / det;
  for (int i = -1; i <= 1; ++i) {
    for (int j = -1; j <= 1; ++j) {
      const double m = std::round(u) + i;
      const double n = std::round(v) + j;
      best = std::min(best, std::abs(d - m * l1 - n * l2));
    }
  }
  return best;
}

}  // namespace

TEST_CASE("windings of basic functions over a period cell") {
  for (const Lattice& lat : default_lattices()) {
    const cplx l1 = 2.0 * lat.omega1();
    const cplx l2 = 2.0 * lat.omega3();
    const Evaluable sigma = plain([&](cplx z) { return sigma_eval(SigmaKind::sigma, z, lat); });
    CHECK(winding_count(sigma, cell_at(sigma, l1, l2, 1), {}).winding == 1);
    for (int j = 1; j <= 3; ++j) {
      const Evaluable sj = plain([&, j](cplx z) { return sigma_eval(sigma_kind(j), z, lat); });
      CHECK(winding_count(sj, cell_at(sj, l1, l2, 2)).winding == 1);
    }
    const cplx a(0.17, 0.05);
    const Evaluable pair = plain([&](cplx z) {
      return sigma_eval(SigmaKind::sigma, z + a, lat) * sigma_eval(SigmaKind::sigma, z - a, lat);
    });
    const WindingCertificate c = winding_count(pair, cell_at(pair, l1, l2, 3));
    CHECK(c.winding == 2);
    CHECK(c.max_phase_step < pi / 2);
    CHECK(std::abs(c.raw_turns - 2.0) < 1e-6);
  }
  const TauNome tn = TauNome::from_tau(cplx(0.2, 1.1));
  const Evaluable t1 = plain([&](cplx z) { return theta_eval(ThetaKind::one, z, tn); });
  CHECK(winding_count(t1, cell_at(t1, pi, pi * tn.tau(), 4)).winding == 1);
}

TEST_CASE("winding is independent of the base point and deterministic") {
  const Lattice lat = Lattice::make(1.0, cplx(0.3, 0.9));
  const cplx l1 = 2.0 * lat.omega1();
  const cplx l2 = 2.0 * lat.omega3();
  const Evaluable f = plain([&](cplx z) {
    return sigma_eval(SigmaKind::sigma, z + 0.3, lat) * sigma_eval(SigmaKind::sigma2, z, lat);
  });
  for (std::uint64_t seed = 10; seed < 16; ++seed) {
    CHECK(winding_count(f, cell_at(f, l1, l2, seed)).winding == 2);
  }
  CHECK(choose_admissible_base(f, l1, l2, 99) == choose_admissible_base(f, l1, l2, 99));
  const auto a = winding_count(f, cell_at(f, l1, l2, 5));
  const auto b = winding_count(f, cell_at(f, l1, l2, 5));
  CHECK(a.raw_turns == b.raw_turns);
  CHECK(a.samples_used == b.samples_used);
}

TEST_CASE("a zero on the boundary is reported") {
  const Lattice lat = Lattice::make(pi / 2, I * (pi / 2));
  const Evaluable sigma = plain([&](cplx z) { return sigma_eval(SigmaKind::sigma, z, lat); });
  const Parallelogram p{cplx(-0.5, 0.0), 2.0 * lat.omega1(), 2.0 * lat.omega3()};
  CHECK(code_of([&] { winding_count(sigma, p); }) == ErrorCode::boundary_zero);
}

TEST_CASE("budget and identically vanishing functions") {
  const Lattice lat = Lattice::make(pi / 2, I * (pi / 2));
  const cplx l1 = 2.0 * lat.omega1();
  const cplx l2 = 2.0 * lat.omega3();
  const Evaluable many = plain([&](cplx z) {
    cplx v = 1.0;
    for (int k = 0; k < 6; ++k) v *= sigma_eval(SigmaKind::sigma, z + 0.1 * k, lat);
    return v;
  });
  WindingOptions tight;
  tight.init_samples = 4;
  tight.max_samples = 20;
  CHECK(code_of([&] { winding_count(many, cell_at(many, l1, l2, 1), tight); }) ==
        ErrorCode::budget_exceeded);

  const Evaluable cancel = [&](cplx z) {
    const cplx s = sigma_eval(SigmaKind::sigma, z, lat);
    return Sample{s * s - s * s, std::abs(s * s)};
  };
  CHECK(code_of([&] { choose_admissible_base(cancel, l1, l2, 1); }) ==
        ErrorCode::no_admissible_base);
}

TEST_CASE("locating the zeros of sigma(z+a)sigma(z-a)") {
  for (const Lattice& lat : default_lattices()) {
    const cplx l1 = 2.0 * lat.omega1();
    const cplx l2 = 2.0 * lat.omega3();
    const cplx a = 0.31 * lat.omega1() + 0.22 * lat.omega3();
    const Evaluable f = plain([&](cplx z) {
      return sigma_eval(SigmaKind::sigma, z + a, lat) * sigma_eval(SigmaKind::sigma, z - a, lat);
    });
    LocateStats stats;
    const auto zeros = locate_zeros(f, cell_at(f, l1, l2, 8), 2, 1e-3, &stats);
    CHECK(stats.subdivisions > 0);
    int total = 0;
    for (const auto& z : zeros) {
      total += z.multiplicity;
      const double d = std::min(lattice_distance(z.zero, a, l1, l2),
                                lattice_distance(z.zero, -a, l1, l2));
      CHECK(d < 1e-8);
    }
    CHECK(total == 2);
    CHECK(zeros.size() == 2);
  }
}

TEST_CASE("a double zero keeps its multiplicity") {
  const Lattice lat = Lattice::make(1.0, cplx(0.3, 0.9));
  const Evaluable f = plain([&](cplx z) {
    const cplx s = sigma_eval(SigmaKind::sigma3, z, lat);
    return s * s;
  });
  const cplx l1 = 2.0 * lat.omega1();
  const cplx l2 = 2.0 * lat.omega3();
  const auto zeros = locate_zeros(f, cell_at(f, l1, l2, 2), 2, 1e-4);
  REQUIRE(zeros.size() == 1);
  CHECK(zeros[0].multiplicity == 2);
  CHECK(lattice_distance(zeros[0].zero, lat.omega3(), l1, l2) < 1e-4);
}
