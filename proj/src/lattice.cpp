#include "qpverify/lattice.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qpverify/cell.hpp"
#include "qpverify/errors.hpp"
#include "qpverify/sigma.hpp"

namespace qpv {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDegeneracy = 1e-8;

void check_index(int j) {
  if (j < 1 || j > 3) throw Error(ErrorCode::domain, "half-period index must be 1, 2 or 3");
}

}  // namespace

Lattice Lattice::make(cplx omega1, cplx omega3, const ThetaOptions& opts) {
  if (omega1 == cplx(0.0) || omega3 == cplx(0.0)) {
    throw Error(ErrorCode::domain, "half-periods must be non-zero");
  }
  const cplx tau = omega3 / omega1;
  if (!(tau.imag() > 0.0)) {
    throw Error(ErrorCode::domain, "half-periods must satisfy Im(w3/w1) > 0");
  }
  const TauNome tn = TauNome::from_tau(tau);
  const Nullwerte nw = theta_nullwerte(tn, opts);
  const cplx d3 = theta1_derivative_at_zero(tn, 3, opts);
  const cplx eta1 = -(kPi * kPi / (12.0 * omega1)) * d3 / nw.theta1_prime;
  const cplx eta3 = (eta1 * omega3 - cplx(0.0, kPi / 2)) / omega1;
  return Lattice(omega1, omega3, tn, nw, eta1, eta3, opts);
}

cplx Lattice::omega(int j) const {
  check_index(j);
  return j == 1 ? omega1() : j == 2 ? omega2() : omega3();
}

cplx Lattice::eta(int j) const {
  check_index(j);
  return j == 1 ? eta1() : j == 2 ? eta2() : eta3();
}

EjDifference e_diff_at(const Lattice& lat, int k, int l, cplx z0) {
  check_index(k);
  check_index(l);
  if (k == l) return {k, l, 0.0};
  const cplx s = sigma_eval(SigmaKind::sigma, z0, lat);
  const cplx sk = sigma_eval(sigma_kind(k), z0, lat);
  const cplx sl = sigma_eval(sigma_kind(l), z0, lat);
  if (std::abs(s) < kDegeneracy * std::max(std::abs(sk), std::abs(sl))) {
    throw Error(ErrorCode::probe_degeneracy, "sigma nearly vanishes at the e_diff probe point");
  }
  const cplx rl = sl / s;
  const cplx rk = sk / s;
  return {k, l, rl * rl - rk * rk};
}

EjDifference e_diff(const Lattice& lat, int k, int l) {
  try {
    return e_diff_at(lat, k, l, kPrimaryProbe * lat.omega1());
  } catch (const Error& e) {
    if (e.code() != ErrorCode::probe_degeneracy) throw;
    return e_diff_at(lat, k, l, kRetryProbe * lat.omega1());
  }
}

std::array<cplx, 3> e_values(const Lattice& lat) {
  std::array<cplx, 3> e{};
  for (int j = 1; j <= 3; ++j) {
    cplx acc = 0.0;
    for (int m = 1; m <= 3; ++m) acc += e_diff(lat, j, m).value;
    e[j - 1] = acc / 3.0;
  }
  return e;
}

cplx wp_eval(const Lattice& lat, cplx z, int l) {
  check_index(l);
  const auto [u, v] = cell_coordinates(z, 2.0 * lat.omega1(), 2.0 * lat.omega3());
  if (std::hypot(u - std::round(u), v - std::round(v)) < 1e-12) {
    throw Error(ErrorCode::pole, "p(z) has a pole at lattice points");
  }
  const cplx s = sigma_eval(SigmaKind::sigma, z, lat);
  const cplx sl = sigma_eval(sigma_kind(l), z, lat);
  const cplx r = sl / s;
  return e_values(lat)[l - 1] + r * r;
}

}  // namespace qpv
