#include "qpverify/kernels.hpp"

#include <exception>

#include "qpverify/errors.hpp"

namespace qpv {

namespace {

void rethrow_first(const std::vector<std::exception_ptr>& errors) {
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

std::vector<Sample> sample_all(std::size_t n, const std::function<Sample(std::size_t)>& fn,
                               Execution ex) {
  std::vector<Sample> out(n);
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
  const auto run = [&](std::ptrdiff_t i) {
    try {
      out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  };
  if (ex == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < count; ++i) run(i);
  } else {
    for (std::ptrdiff_t i = 0; i < count; ++i) run(i);
  }
  rethrow_first(errors);
  return out;
}

cplx sigma_product(cplx z, const Lattice& lat, int cutoff, Execution ex) {
  if (cutoff < 10) throw Error(ErrorCode::domain, "product oracle needs shell_cutoff >= 10");
  const cplx p1 = 2.0 * lat.omega1();
  const cplx p3 = 2.0 * lat.omega3();
  std::vector<cplx> rows(static_cast<std::size_t>(2 * cutoff + 1));
  const auto row = [&](int m) {
    cplx r = 1.0;
    for (int n = -cutoff; n <= cutoff; ++n) {
      if (n == 0 && m == 0) continue;
      const cplx w = static_cast<double>(n) * p1 + static_cast<double>(m) * p3;
      const cplx x = z / w;
      r *= std::exp(x + 0.5 * x * x) * (1.0 - x);
    }
    rows[static_cast<std::size_t>(m + cutoff)] = r;
  };
  if (ex == Execution::parallel) {
#pragma omp parallel for schedule(static)
    for (int m = -cutoff; m <= cutoff; ++m) row(m);
  } else {
    for (int m = -cutoff; m <= cutoff; ++m) row(m);
  }
  cplx product = 1.0;
  for (const cplx& r : rows) product *= r;
  return z * product;
}

}  // namespace qpv
