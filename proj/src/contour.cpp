#include "qpverify/contour.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "qpverify/errors.hpp"

namespace qpv {

namespace {

constexpr double kPi = std::numbers::pi;
// Segments whose phase step reaches this are bisected; the certificate bound
// pi/2 then holds with margin.
constexpr double kBisectStep = kPi / 4;
constexpr int kScanPoints = 64;
constexpr int kBaseAttempts = 16;
constexpr double kAdmissibleRatio = 1e-6;

bool is_noise(const Sample& s, double noise_rel) {
  return std::abs(s.value) <= noise_rel * s.scale || !std::isfinite(std::abs(s.value));
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  return *mid;
}

struct Point {
  cplx z;
  cplx f;
};

std::vector<Sample> boundary_scan(const Evaluable& f, const Parallelogram& p, int per_edge) {
  std::vector<Sample> out;
  out.reserve(static_cast<std::size_t>(4 * per_edge));
  for (int e = 0; e < 4; ++e) {
    const cplx a = p.vertex(e);
    const cplx b = p.vertex((e + 1) % 4);
    for (int k = 0; k < per_edge; ++k) {
      out.push_back(f(a + (b - a) * (static_cast<double>(k) / per_edge)));
    }
  }
  return out;
}

}  // namespace

cplx Parallelogram::vertex(int k) const {
  switch (k & 3) {
    case 0: return base;
    case 1: return base + gen1;
    case 2: return base + gen1 + gen2;
    default: return base + gen2;
  }
}

double Parallelogram::diameter() const {
  return std::max(std::abs(gen1 + gen2), std::abs(gen1 - gen2));
}

Evaluable plain(std::function<cplx(cplx)> f) {
  return [f = std::move(f)](cplx z) {
    const cplx v = f(z);
    return Sample{v, std::abs(v)};
  };
}

WindingCertificate winding_count(const Evaluable& f, const Parallelogram& p,
                                  const WindingOptions& opts) {
  if (!((std::conj(p.gen1) * p.gen2).imag() > 0.0)) {
    throw Error(ErrorCode::domain, "parallelogram generators must satisfy Im(gen2/gen1) > 0");
  }
  const int n = std::max(opts.init_samples, 4);
  WindingCertificate cert;

  std::vector<Point> ring;
  ring.reserve(static_cast<std::size_t>(4 * n + 1));
  std::vector<double> mags;
  for (int e = 0; e < 4; ++e) {
    const cplx a = p.vertex(e);
    const cplx b = p.vertex(e + 1);
    for (int k = 0; k < n; ++k) {
      const cplx z = a + (b - a) * (static_cast<double>(k) / n);
      const Sample s = f(z);
      if (is_noise(s, opts.noise_rel)) {
        throw Error(ErrorCode::boundary_zero, "function vanishes on the boundary near " +
                                                  std::to_string(z.real()) + "+" +
                                                  std::to_string(z.imag()) + "i");
      }
      ring.push_back({z, s.value});
      mags.push_back(std::abs(s.value));
    }
  }
  ring.push_back(ring.front());
  cert.samples_used = static_cast<std::int64_t>(4 * n);
  const double threshold = opts.min_abs_rel * median(mags);
  cert.min_abs_on_boundary = *std::min_element(mags.begin(), mags.end());
  if (cert.min_abs_on_boundary <= threshold) {
    throw Error(ErrorCode::boundary_zero, "boundary |f| falls below the threshold");
  }
  const double min_step = 1e-15 * p.diameter();

  double total = 0.0;
  std::vector<std::pair<Point, Point>> stack;
  for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
    stack.clear();
    stack.emplace_back(ring[i], ring[i + 1]);
    while (!stack.empty()) {
      const auto [a, b] = stack.back();
      stack.pop_back();
      const double step = std::arg(b.f / a.f);
      if (std::abs(step) < kBisectStep) {
        total += step;
        cert.max_phase_step = std::max(cert.max_phase_step, std::abs(step));
        continue;
      }
      if (std::abs(b.z - a.z) < min_step) {
        throw Error(ErrorCode::boundary_zero, "phase jump on a vanishing boundary segment");
      }
      if (++cert.samples_used > opts.max_samples) {
        throw Error(ErrorCode::budget_exceeded,
                    "winding count needs more than " + std::to_string(opts.max_samples) + " samples");
      }
      const cplx zm = 0.5 * (a.z + b.z);
      const Sample s = f(zm);
      const double mag = std::abs(s.value);
      if (is_noise(s, opts.noise_rel) || mag <= threshold) {
        throw Error(ErrorCode::boundary_zero, "function nearly vanishes on the boundary");
      }
      cert.min_abs_on_boundary = std::min(cert.min_abs_on_boundary, mag);
      const Point m{zm, s.value};
      // pushed in reverse so the left half is processed first
      stack.emplace_back(m, b);
      stack.emplace_back(a, m);
    }
  }
  cert.raw_turns = total / (2.0 * kPi);
  cert.winding = static_cast<int>(std::lround(cert.raw_turns));
  if (std::abs(cert.raw_turns - cert.winding) >= 0.25) {
    throw Error(ErrorCode::inconsistent_winding, "argument change is not close to a whole turn");
  }
  return cert;
}

cplx choose_admissible_base(const Evaluable& f, cplx l1, cplx l2, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto draw = [&rng] {
    double u = 0.0;
    while (u == 0.0) u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return u;
  };
  const cplx origin = -0.5 * (l1 + l2);
  for (int attempt = 0; attempt < kBaseAttempts; ++attempt) {
    const double u = draw();
    const double v = draw();
    const Parallelogram p{origin + u * l1 + v * l2, l1, l2};
    const std::vector<Sample> scan = boundary_scan(f, p, kScanPoints / 4);
    bool noisy = false;
    std::vector<double> mags;
    for (const auto& s : scan) {
      noisy = noisy || is_noise(s, WindingOptions{}.noise_rel);
      mags.push_back(std::abs(s.value));
    }
    if (noisy) continue;
    const double lo = *std::min_element(mags.begin(), mags.end());
    if (lo > kAdmissibleRatio * median(mags)) return p.base;
  }
  throw Error(ErrorCode::no_admissible_base,
              "no admissible base after 16 draws; the function may vanish identically");
}

namespace {

struct Locator {
  const Evaluable& f;
  double tol;
  LocateStats stats;
  std::vector<LocatedZero> zeros;
  static constexpr std::int64_t kBudget = 1 << 24;

  WindingCertificate wind(const Parallelogram& p) {
    WindingOptions opts;
    opts.init_samples = 32;
    opts.max_samples = std::max<std::int64_t>(kBudget - stats.evaluations, 1);
    const WindingCertificate c = winding_count(f, p, opts);
    stats.evaluations += c.samples_used;
    return c;
  }

  cplx polish(cplx z0, double diameter) {
    cplx a = z0;
    cplx b = z0 + cplx(0.25, 0.15) * diameter;
    cplx fa = f(a).value;
    cplx fb = f(b).value;
    stats.evaluations += 2;
    for (int it = 0; it < 5; ++it) {
      const cplx denom = fb - fa;
      if (denom == cplx(0.0) || fb == cplx(0.0)) break;
      const cplx c = b - fb * (b - a) / denom;
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) break;
      a = b;
      fa = fb;
      b = c;
      fb = f(b).value;
      ++stats.evaluations;
    }
    return std::abs(b - z0) <= diameter ? b : z0;
  }

  void descend(const Parallelogram& p, int winding) {
    if (winding == 0) return;
    if (p.diameter() < tol) {
      zeros.push_back({polish(p.center(), p.diameter()), winding});
      return;
    }
    static const double kOffsets[] = {0.0, 0.01, -0.01, 0.02, -0.02, 0.03, -0.03};
    for (double off : kOffsets) {
      const double s = 0.5 + off;
      const cplx g1a = s * p.gen1;
      const cplx g1b = (1.0 - s) * p.gen1;
      const cplx g2a = s * p.gen2;
      const cplx g2b = (1.0 - s) * p.gen2;
      const Parallelogram kids[4] = {
          {p.base, g1a, g2a},
          {p.base + g1a, g1b, g2a},
          {p.base + g2a, g1a, g2b},
          {p.base + g1a + g2a, g1b, g2b},
      };
      int w[4];
      try {
        for (int k = 0; k < 4; ++k) w[k] = wind(kids[k]).winding;
      } catch (const Error& e) {
        if (e.code() == ErrorCode::boundary_zero) continue;
        throw;
      }
      ++stats.subdivisions;
      if (w[0] + w[1] + w[2] + w[3] != winding) {
        throw Error(ErrorCode::inconsistent_winding,
                    "sub-cell windings sum to " + std::to_string(w[0] + w[1] + w[2] + w[3]) +
                        " instead of " + std::to_string(winding));
      }
      for (int k = 0; k < 4; ++k) descend(kids[k], w[k]);
      return;
    }
    throw Error(ErrorCode::boundary_zero, "could not place split lines away from zeros");
  }
};

}  // namespace

std::vector<LocatedZero> locate_zeros(const Evaluable& f, const Parallelogram& p, int expected,
                                      double tol, LocateStats* stats) {
  if (!(tol > 0.0)) throw Error(ErrorCode::domain, "tolerance must be positive");
  Locator loc{f, tol, {}, {}};
  const WindingCertificate top = winding_count(f, p);
  loc.stats.evaluations += top.samples_used;
  if (top.winding != expected) {
    throw Error(ErrorCode::inconsistent_winding,
                "boundary winding " + std::to_string(top.winding) + " differs from the expected " +
                    std::to_string(expected));
  }
  loc.descend(p, top.winding);
  if (stats != nullptr) *stats = loc.stats;
  return loc.zeros;
}

}  // namespace qpv
