#pragma once

#include <array>
#include <complex>

#include "qpverify/theta.hpp"

namespace qpv {

/// Period lattice 2*w1*Z + 2*w3*Z together with its theta data and the
/// quasi-period constants eta_j = sigma'(w_j)/sigma(w_j).
///
/// eta1 comes from the theta series,
///   eta1 = -(pi^2 / (12 w1)) * theta1'''(0) / theta1'(0),
/// and eta3 is pinned by the Legendre relation eta1*w3 - eta3*w1 = i*pi/2,
/// so the relation holds to rounding by construction. Independent checks
/// against the product definition of sigma live in the tests.
class Lattice {
 public:
  static Lattice make(cplx omega1, cplx omega3, const ThetaOptions& opts = {});

  cplx omega1() const { return omega1_; }
  cplx omega3() const { return omega3_; }
  cplx omega2() const { return -omega1_ - omega3_; }
  cplx omega(int j) const;

  cplx tau() const { return nome_.tau(); }
  const TauNome& nome() const { return nome_; }
  const Nullwerte& nullwerte() const { return nullwerte_; }
  const ThetaOptions& theta_options() const { return opts_; }

  cplx eta1() const { return eta1_; }
  cplx eta3() const { return eta3_; }
  cplx eta2() const { return -eta1_ - eta3_; }
  cplx eta(int j) const;

 private:
  Lattice(cplx w1, cplx w3, TauNome tn, Nullwerte nw, cplx eta1, cplx eta3, ThetaOptions opts)
      : omega1_(w1), omega3_(w3), nome_(tn), nullwerte_(nw), eta1_(eta1), eta3_(eta3), opts_(opts) {}

  cplx omega1_;
  cplx omega3_;
  TauNome nome_;
  Nullwerte nullwerte_;
  cplx eta1_;
  cplx eta3_;
  ThetaOptions opts_;
};

struct EjDifference {
  int k;
  int l;
  cplx value;  // e_k - e_l
};

/// Probe points for e_diff, in units of w1.
inline constexpr std::complex<double> kPrimaryProbe{0.27, 0.31};
inline constexpr std::complex<double> kRetryProbe{0.41, 0.17};

/// e_k - e_l = (sigma_l(z0)/sigma(z0))^2 - (sigma_k(z0)/sigma(z0))^2 at a
/// fixed probe; falls back to the retry probe when sigma(z0) is too small.
EjDifference e_diff(const Lattice& lat, int k, int l);
/// Same difference at an explicit probe point z0.
EjDifference e_diff_at(const Lattice& lat, int k, int l, cplx z0);

/// e1, e2, e3 under the normalization e1 + e2 + e3 = 0.
std::array<cplx, 3> e_values(const Lattice& lat);

/// Weierstrass p via p(z) = e_l + (sigma_l(z)/sigma(z))^2.
cplx wp_eval(const Lattice& lat, cplx z, int l = 1);

}  // namespace qpv
