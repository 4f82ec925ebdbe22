#pragma once

#include <complex>
#include <utility>

namespace qpv {

/// Real coordinates (u, v) with z = u*g1 + v*g2. Requires Im(g2/g1) != 0.
inline std::pair<double, double> cell_coordinates(std::complex<double> z, std::complex<double> g1,
                                                  std::complex<double> g2) {
  const double det = (std::conj(g1) * g2).imag();
  const double u = (z * std::conj(g2)).imag() / -det;
  const double v = (std::conj(g1) * z).imag() / det;
  return {u, v};
}

}  // namespace qpv
