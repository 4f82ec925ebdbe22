#include "qpverify/theta.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qpverify/errors.hpp"

namespace qpv {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRelativeCutoff = 1e-18;
// log(DBL_MAX), with a little headroom for the mantissa.
constexpr double kMaxLog = 709.0;

struct SeriesShape {
  double offset;   // 1/2 for theta1/theta2, 0 for theta3/theta4
  bool alternating;
  cplx prefactor;
};

SeriesShape shape(ThetaKind kind) {
  switch (kind) {
    case ThetaKind::one: return {0.5, true, cplx(0.0, -1.0)};
    case ThetaKind::two: return {0.5, false, 1.0};
    case ThetaKind::three: return {0.0, false, 1.0};
    case ThetaKind::four: return {0.0, true, 1.0};
  }
  return {0.0, false, 1.0};
}

// Sums sign(n) * exp(i*pi*tau*m^2 + 2*i*m*z) * weight(m) over m = n + offset,
// walking outwards from the dominant index until terms drop below the
// relative cutoff, then `extra` more terms on each side.
template <typename Weight>
cplx gaussian_sum(const SeriesShape& s, cplx z, const TauNome& tn, int extra, Weight weight) {
  const cplx ipt = cplx(0.0, kPi) * tn.tau();
  const double peak = -z.imag() / (kPi * tn.im_tau());
  const auto center = static_cast<std::int64_t>(std::llround(peak - s.offset));

  auto term = [&](std::int64_t n) {
    const double m = static_cast<double>(n) + s.offset;
    cplx t = std::exp(ipt * (m * m) + cplx(0.0, 2.0 * m) * z) * weight(m);
    if (s.alternating && (n & 1) != 0) t = -t;
    return t;
  };

  cplx sum = term(center);
  double largest = std::abs(sum);
  for (int dir : {+1, -1}) {
    int tail = -1;
    for (std::int64_t step = 1;; ++step) {
      const std::int64_t n = center + dir * step;
      const cplx t = term(n);
      sum += t;
      const double mag = std::abs(t);
      if (mag > largest) largest = mag;
      const double m = static_cast<double>(n) + s.offset;
      const bool receding = dir > 0 ? m > peak : m < peak;
      if (tail < 0 && receding && mag <= kRelativeCutoff * largest) tail = 0;
      if (tail >= 0 && tail++ >= extra) break;
      if (step > 100000) throw Error(ErrorCode::domain, "theta series failed to converge");
    }
  }
  return s.prefactor * sum;
}

}  // namespace

ThetaKind theta_kind(int index) {
  if (index < 1 || index > 4) {
    throw Error(ErrorCode::domain, "theta index must be 1..4, got " + std::to_string(index));
  }
  return static_cast<ThetaKind>(index);
}

TauNome TauNome::from_tau(cplx tau) {
  if (!(tau.imag() > 0.0) || !std::isfinite(tau.real()) || !std::isfinite(tau.imag())) {
    throw Error(ErrorCode::domain, "tau must lie in the upper half-plane");
  }
  if (tau.imag() < kMinImTau) {
    throw Error(ErrorCode::domain,
                "Im(tau) = " + std::to_string(tau.imag()) + " is below the supported bound 0.05");
  }
  return TauNome(tau, std::exp(cplx(0.0, kPi) * tau));
}

cplx ExactMultiplier::exponent(cplx z, const TauNome& tn) const {
  return to_double(constant) + to_double(pitau) * cplx(0.0, kPi) * tn.tau() +
         to_double(iz) * cplx(0.0, 1.0) * z;
}

cplx ExactMultiplier::value(cplx z, const TauNome& tn) const {
  return coeff.to_complex() * std::exp(exponent(z, tn));
}

ExactMultiplier& ExactMultiplier::operator*=(const ExactMultiplier& o) {
  coeff *= o.coeff;
  constant += o.constant;
  pitau += o.pitau;
  iz += o.iz;
  return *this;
}

int pi_shift_sign(ThetaKind kind) {
  return (kind == ThetaKind::one || kind == ThetaKind::two) ? -1 : 1;
}

int pitau_shift_sign(ThetaKind kind) {
  return (kind == ThetaKind::one || kind == ThetaKind::four) ? -1 : 1;
}

cplx theta_series(ThetaKind kind, cplx z, const TauNome& tn, const ThetaOptions& opts) {
  return gaussian_sum(shape(kind), z, tn, opts.extra_terms, [](double) { return 1.0; });
}

ReducedArgument reduce_argument(ThetaKind kind, cplx z, const TauNome& tn) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw Error(ErrorCode::domain, "theta argument is not finite");
  }
  const double kd = std::round(z.imag() / (kPi * tn.im_tau()));
  if (std::abs(kd) > 1e6) {
    throw Error(ErrorCode::overflow, "theta argument too far from the real axis");
  }
  const auto k = static_cast<std::int64_t>(kd);
  const cplx z1 = z - static_cast<double>(k) * kPi * tn.tau();
  const double jd = std::round(z1.real() / kPi);
  if (std::abs(jd) > 1e15) throw Error(ErrorCode::overflow, "theta argument too large");
  const auto j = static_cast<std::int64_t>(jd);

  ReducedArgument r;
  r.z0 = z1 - jd * kPi;
  r.pi_shifts = j;
  r.pitau_shifts = k;
  // theta(z0 + j*pi + k*pi*tau) = s_pi^j s_tau^k exp(-i*pi*tau*k^2 - 2ik*z0) theta(z0)
  int sign = 1;
  if ((j & 1) != 0) sign *= pi_shift_sign(kind);
  if ((k & 1) != 0) sign *= pitau_shift_sign(kind);
  r.multiplier.coeff = GaussRational(sign);
  r.multiplier.pitau = Rational(-k * k);
  r.multiplier.iz = Rational(-2 * k);
  return r;
}

SplitValue theta_eval_split(ThetaKind kind, cplx z, const TauNome& tn, const ThetaOptions& opts) {
  const ReducedArgument r = reduce_argument(kind, z, tn);
  const cplx base = theta_series(kind, r.z0, tn, opts);
  return {r.multiplier.coeff.to_complex() * base, r.multiplier.exponent(r.z0, tn)};
}

cplx finish(const SplitValue& v) {
  if (v.mantissa == cplx(0.0)) return 0.0;
  const double log_mag = v.log_factor.real() + std::log(std::abs(v.mantissa));
  if (log_mag > kMaxLog) {
    throw Error(ErrorCode::overflow, "value magnitude exp(" + std::to_string(log_mag) +
                                         ") exceeds the double range");
  }
  return v.mantissa * std::exp(v.log_factor);
}

cplx theta_eval(ThetaKind kind, cplx z, const TauNome& tn, const ThetaOptions& opts) {
  return finish(theta_eval_split(kind, z, tn, opts));
}

cplx theta1_derivative_at_zero(const TauNome& tn, int order, const ThetaOptions& opts) {
  if (order < 1 || order % 2 == 0) {
    throw Error(ErrorCode::domain, "only odd derivative orders of theta1 are supported");
  }
  // d^p/dz^p e^((2n+1)iz) = (i(2n+1))^p e^(...); theta1 carries a -i prefactor.
  const auto weight = [order](double m) { return std::pow(2.0 * m, order); };
  const cplx sum = gaussian_sum(shape(ThetaKind::one), 0.0, tn, opts.extra_terms, weight);
  cplx ip = 1.0;
  for (int p = 0; p < order; ++p) ip *= cplx(0.0, 1.0);
  return sum * ip;
}

Nullwerte theta_nullwerte(const TauNome& tn, const ThetaOptions& opts) {
  return {theta_series(ThetaKind::two, 0.0, tn, opts), theta_series(ThetaKind::three, 0.0, tn, opts),
          theta_series(ThetaKind::four, 0.0, tn, opts), theta1_derivative_at_zero(tn, 1, opts)};
}

HalfPeriodRewrite half_period_rewrite(ThetaKind kind, HalfPeriod shift) {
  const GaussRational one(1);
  const GaussRational i = GaussRational::i();
  // Shifts containing pi*tau/2 carry q^(-1/4) e^(-iz).
  ExactMultiplier quarter;
  quarter.pitau = Rational(-1, 4);
  quarter.iz = Rational(-1);
  auto with = [](ExactMultiplier m, GaussRational c) {
    m.coeff = c;
    return m;
  };
  switch (shift) {
    case HalfPeriod::pi:
      switch (kind) {
        case ThetaKind::one: return {ThetaKind::two, with({}, one)};
        case ThetaKind::two: return {ThetaKind::one, with({}, -one)};
        case ThetaKind::three: return {ThetaKind::four, with({}, one)};
        case ThetaKind::four: return {ThetaKind::three, with({}, one)};
      }
      break;
    case HalfPeriod::pitau:
      switch (kind) {
        case ThetaKind::one: return {ThetaKind::four, with(quarter, i)};
        case ThetaKind::two: return {ThetaKind::three, with(quarter, one)};
        case ThetaKind::three: return {ThetaKind::two, with(quarter, one)};
        case ThetaKind::four: return {ThetaKind::one, with(quarter, i)};
      }
      break;
    case HalfPeriod::both:
      switch (kind) {
        case ThetaKind::one: return {ThetaKind::three, with(quarter, one)};
        case ThetaKind::two: return {ThetaKind::four, with(quarter, -i)};
        case ThetaKind::three: return {ThetaKind::one, with(quarter, i)};
        case ThetaKind::four: return {ThetaKind::two, with(quarter, one)};
      }
      break;
  }
  throw Error(ErrorCode::domain, "invalid half-period rewrite request");
}

}  // namespace qpv
