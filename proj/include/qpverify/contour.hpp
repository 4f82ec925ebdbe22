#pragma once

// Derivative-free argument principle: the number of zeros inside a
// parallelogram is the winding number of f along its boundary, obtained by
// following a continuous branch of arg f between adaptively placed samples.

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace qpv {

using cplx = std::complex<double>;

/// Vertices base, base+gen1, base+gen1+gen2, base+gen2 (counter-clockwise
/// when Im(gen2/gen1) > 0).
struct Parallelogram {
  cplx base;
  cplx gen1;
  cplx gen2;

  cplx vertex(int k) const;
  cplx center() const { return base + 0.5 * (gen1 + gen2); }
  double diameter() const;
};

/// A function value together with the magnitude of the quantities it was
/// computed from. Values at or below noise_rel*scale count as zero, which is
/// how an expression that cancels identically is told apart from one that
/// merely has small values.
struct Sample {
  cplx value;
  double scale;
};

using Evaluable = std::function<Sample(cplx)>;

/// Wraps a plain function; its scale is |f(z)|.
Evaluable plain(std::function<cplx(cplx)> f);

struct WindingOptions {
  int init_samples = 256;           // per edge
  std::int64_t max_samples = 1 << 20;
  double min_abs_rel = 1e-10;       // relative to the boundary median |f|
  double noise_rel = 1e-10;
};

struct WindingCertificate {
  int winding = 0;
  double min_abs_on_boundary = 0.0;
  double max_phase_step = 0.0;  // radians, always < pi/2
  std::int64_t samples_used = 0;
  double raw_turns = 0.0;       // total argument change / 2pi
};

/// Raises boundary_zero when |f| drops below the threshold on the boundary
/// and budget_exceeded when more than max_samples evaluations are needed.
WindingCertificate winding_count(const Evaluable& f, const Parallelogram& p,
                                  const WindingOptions& opts = {});

/// Base point w0 + u*l1 + v*l2 with w0 = -(l1+l2)/2 and (u, v) drawn from
/// `seed`, accepted once a 64-point boundary scan has min |f| above 1e-6 of
/// the median. Up to 16 draws; raises no_admissible_base afterwards.
cplx choose_admissible_base(const Evaluable& f, cplx l1, cplx l2, std::uint64_t seed);

struct LocatedZero {
  cplx zero;
  int multiplicity;
};

struct LocateStats {
  std::int64_t evaluations = 0;
  int subdivisions = 0;
};

/// Recursive four-way subdivision down to cells of diameter < tol, then
/// five secant steps on f. Multiplicities sum to `expected`; child windings
/// must add up to the parent's (inconsistent_winding otherwise).
std::vector<LocatedZero> locate_zeros(const Evaluable& f, const Parallelogram& p, int expected,
                                      double tol, LocateStats* stats = nullptr);

}  // namespace qpv
