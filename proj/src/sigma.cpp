#include "qpverify/sigma.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "qpverify/errors.hpp"

namespace qpv {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDegeneracy = 1e-8;

}  // namespace

SigmaKind sigma_kind(int index) {
  if (index < 0 || index > 3) {
    throw Error(ErrorCode::domain, "sigma index must be 0..3, got " + std::to_string(index));
  }
  return static_cast<SigmaKind>(index);
}

double relative_difference(cplx a, cplx b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

cplx sigma_eval(SigmaKind kind, cplx z, const Lattice& lat) {
  return finish(sigma_eval_split(kind, z, lat));
}

SplitValue sigma_eval_split(SigmaKind kind, cplx z, const Lattice& lat) {
  const cplx w1 = lat.omega1();
  const cplx v = kPi * z / (2.0 * w1);
  const cplx gaussian = lat.eta1() * z * z / (2.0 * w1);
  const Nullwerte& nw = lat.nullwerte();

  ThetaKind theta = ThetaKind::one;
  cplx scale = 2.0 * w1 / (kPi * nw.theta1_prime);
  switch (kind) {
    case SigmaKind::sigma: break;
    case SigmaKind::sigma1: theta = ThetaKind::two; scale = 1.0 / nw.theta2; break;
    case SigmaKind::sigma2: theta = ThetaKind::three; scale = 1.0 / nw.theta3; break;
    case SigmaKind::sigma3: theta = ThetaKind::four; scale = 1.0 / nw.theta4; break;
  }
  SplitValue t = theta_eval_split(theta, v, lat.nome(), lat.theta_options());
  t.mantissa *= scale;
  t.log_factor += gaussian;
  return t;
}

cplx sigma_product_oracle(cplx z, const Lattice& lat, int cutoff) {
  if (cutoff < 10) throw Error(ErrorCode::domain, "product oracle needs shell_cutoff >= 10");
  const cplx p1 = 2.0 * lat.omega1();
  const cplx p3 = 2.0 * lat.omega3();
  cplx product = 1.0;
  for (int m = -cutoff; m <= cutoff; ++m) {
    cplx row = 1.0;
    for (int n = -cutoff; n <= cutoff; ++n) {
      if (n == 0 && m == 0) continue;
      const cplx w = static_cast<double>(n) * p1 + static_cast<double>(m) * p3;
      const cplx r = z / w;
      row *= std::exp(r + 0.5 * r * r) * (1.0 - r);
    }
    product *= row;
  }
  return z * product;
}

double sigma_aux_consistency(int j, cplx z, const Lattice& lat) {
  const cplx wj = lat.omega(j);
  const cplx ej = lat.eta(j);
  const cplx s_w = sigma_eval(SigmaKind::sigma, wj, lat);
  const cplx s_minus = sigma_eval(SigmaKind::sigma, wj - z, lat);
  const cplx s_plus = sigma_eval(SigmaKind::sigma, wj + z, lat);
  if (std::abs(s_minus) < kDegeneracy * std::abs(s_w) ||
      std::abs(s_plus) < kDegeneracy * std::abs(s_w)) {
    throw Error(ErrorCode::degenerate, "sigma(w_j +- z) nearly vanishes");
  }
  const cplx left = std::exp(ej * z) * s_minus / s_w;
  const cplx right = std::exp(-ej * z) * s_plus / s_w;
  const cplx direct = sigma_eval(sigma_kind(j), z, lat);
  return std::max({relative_difference(left, right), relative_difference(left, direct),
                   relative_difference(right, direct)});
}

}  // namespace qpv
