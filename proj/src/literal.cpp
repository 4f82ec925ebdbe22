#include "qpverify/literal.hpp"

#include <cstdio>
#include <regex>

#include "qpverify/errors.hpp"

namespace qpv {

std::complex<double> parse_complex(std::string_view text) {
  static const std::string real = R"([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)";
  static const std::string unsigned_real = R"((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)";
  static const std::regex full("^(" + real + ")([+-])(" + unsigned_real + ")?i$");
  static const std::regex imag("^([+-]?)(" + unsigned_real + ")?i$");
  static const std::regex bare("^" + real + "$");
  const std::string s(text);
  std::smatch m;
  if (std::regex_match(s, m, full)) {
    const double im = m[3].matched ? std::stod(m[3]) : 1.0;
    return {std::stod(m[1]), m[2] == "-" ? -im : im};
  }
  if (std::regex_match(s, m, imag)) {
    const double im = m[2].matched ? std::stod(m[2]) : 1.0;
    return {0.0, m[1] == "-" ? -im : im};
  }
  if (std::regex_match(s, bare)) return {std::stod(s), 0.0};
  throw Error(ErrorCode::usage, "not a complex literal: '" + s + "'");
}

std::string format_complex(std::complex<double> z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g%c%.17gi", z.real(), std::signbit(z.imag()) ? '-' : '+',
                std::abs(z.imag()));
  return buf;
}

}  // namespace qpv
