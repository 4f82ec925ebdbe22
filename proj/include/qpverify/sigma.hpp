#pragma once

#include <complex>

#include "qpverify/lattice.hpp"

namespace qpv {

enum class SigmaKind : int { sigma = 0, sigma1 = 1, sigma2 = 2, sigma3 = 3 };

inline int index(SigmaKind k) { return static_cast<int>(k); }
SigmaKind sigma_kind(int index);

/// sigma and the auxiliary sigma_j through theta:
///
///   sigma(z)   = 2w1/(pi theta1') exp(eta1 z^2 / 2w1) theta1(pi z / 2w1)
///   sigma_j(z) = exp(eta1 z^2 / 2w1) theta_k(pi z / 2w1) / theta_k(0)
///
/// with k = 2, 3, 4 for j = 1, 2, 3, so that sigma_j vanishes at w_j. The
/// Gaussian prefactor is merged with the theta reduction exponent and
/// exponentiated once.
cplx sigma_eval(SigmaKind kind, cplx z, const Lattice& lat);
/// Same value as mantissa * exp(log_factor), before the final exponentiation.
SplitValue sigma_eval_split(SigmaKind kind, cplx z, const Lattice& lat);

/// Partial Weierstrass product over |n|, |m| <= cutoff. Slow, O(1/cutoff^2)
/// accurate; only meant as an independent oracle. Row partial products are
/// formed first and multiplied in row order.
cplx sigma_product_oracle(cplx z, const Lattice& lat, int cutoff);

/// Largest pairwise relative difference between
///   exp(eta_j z) sigma(w_j - z) / sigma(w_j),
///   exp(-eta_j z) sigma(w_j + z) / sigma(w_j),
///   sigma_eval(sigma_j, z).
double sigma_aux_consistency(int j, cplx z, const Lattice& lat);

/// Relative difference |a-b| / max(|a|,|b|), zero when both vanish.
double relative_difference(cplx a, cplx b);

}  // namespace qpv
