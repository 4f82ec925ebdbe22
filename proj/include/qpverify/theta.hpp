#pragma once

// Jacobi theta functions with nome q = exp(i*pi*tau):
//
//   theta1(z) = -i sum (-1)^n q^((n+1/2)^2) e^((2n+1)iz)
//   theta2(z) =    sum        q^((n+1/2)^2) e^((2n+1)iz)
//   theta3(z) =    sum        q^(n^2)       e^(2niz)
//   theta4(z) =    sum (-1)^n q^(n^2)       e^(2niz)
//
// Evaluation first reduces z into the cell |Re z| <= pi/2,
// |Im z| <= pi*Im(tau)/2 using the exact quasi-periodicity multipliers, then
// sums the series on the reduced argument. No modular transformation of tau
// is attempted; nomes with Im(tau) < 0.05 are rejected.

#include <complex>
#include <cstdint>

#include "qpverify/exact.hpp"

namespace qpv {

using cplx = std::complex<double>;

enum class ThetaKind : int { one = 1, two = 2, three = 3, four = 4 };

inline int index(ThetaKind k) { return static_cast<int>(k); }
ThetaKind theta_kind(int index);

/// Smallest accepted Im(tau).
inline constexpr double kMinImTau = 0.05;
/// Below this Im(tau) results are best-effort and verdicts become inconclusive.
inline constexpr double kAccurateImTau = 0.3;

class TauNome {
 public:
  static TauNome from_tau(cplx tau);

  cplx tau() const { return tau_; }
  cplx q() const { return q_; }
  double im_tau() const { return tau_.imag(); }
  bool low_accuracy() const { return tau_.imag() < kAccurateImTau; }

 private:
  TauNome(cplx tau, cplx q) : tau_(tau), q_(q) {}
  cplx tau_;
  cplx q_;
};

/// coeff * exp(constant + pitau*(i*pi*tau) + iz*(i*z)), every coefficient exact.
struct ExactMultiplier {
  GaussRational coeff{1};
  Rational constant{0};
  Rational pitau{0};
  Rational iz{0};

  cplx exponent(cplx z, const TauNome& tn) const;
  cplx value(cplx z, const TauNome& tn) const;

  /// Composition of two multipliers referring to the same z.
  ExactMultiplier& operator*=(const ExactMultiplier& o);
  friend bool operator==(const ExactMultiplier&, const ExactMultiplier&) = default;
};

struct ThetaOptions {
  /// Terms summed beyond the adaptive cutoff, in each direction.
  int extra_terms = 0;
};

/// Plain series sum at z, without argument reduction.
cplx theta_series(ThetaKind kind, cplx z, const TauNome& tn, const ThetaOptions& opts = {});

struct ReducedArgument {
  cplx z0;
  std::int64_t pi_shifts = 0;     // j in z = z0 + j*pi + k*pi*tau
  std::int64_t pitau_shifts = 0;  // k
  ExactMultiplier multiplier;     // theta(z) = multiplier.value(z0) * theta(z0)
};

ReducedArgument reduce_argument(ThetaKind kind, cplx z, const TauNome& tn);

/// theta(z) = mantissa * exp(log_factor). Lets callers fold further
/// exponentials in before a single exponentiation.
struct SplitValue {
  cplx mantissa;
  cplx log_factor;
};

SplitValue theta_eval_split(ThetaKind kind, cplx z, const TauNome& tn,
                            const ThetaOptions& opts = {});

/// mantissa * exp(log_factor), raising ErrorCode::overflow when the result
/// is not representable.
cplx finish(const SplitValue& v);

cplx theta_eval(ThetaKind kind, cplx z, const TauNome& tn, const ThetaOptions& opts = {});

/// Odd-order derivative of theta1 at the origin by term-wise differentiation.
cplx theta1_derivative_at_zero(const TauNome& tn, int order, const ThetaOptions& opts = {});

struct Nullwerte {
  cplx theta2;
  cplx theta3;
  cplx theta4;
  cplx theta1_prime;
};

Nullwerte theta_nullwerte(const TauNome& tn, const ThetaOptions& opts = {});

enum class HalfPeriod { pi, pitau, both };  // pi/2, pi*tau/2, pi/2 + pi*tau/2

struct HalfPeriodRewrite {
  ThetaKind kind;
  ExactMultiplier multiplier;
};

/// theta_kind(z + shift) = multiplier.value(z) * theta_{result.kind}(z).
HalfPeriodRewrite half_period_rewrite(ThetaKind kind, HalfPeriod shift);

/// Sign picked up under z -> z + pi and under z -> z + pi*tau respectively.
int pi_shift_sign(ThetaKind kind);
int pitau_shift_sign(ThetaKind kind);

}  // namespace qpv
