#pragma once

#include <complex>
#include <string>
#include <string_view>

namespace qpv {

/// "<re>[+-]<im>i", a bare real or a bare imaginary such as "-0.7i" or "i".
/// Raises usage on anything else.
std::complex<double> parse_complex(std::string_view text);

/// Round-trippable spelling in the same format.
std::string format_complex(std::complex<double> z);

}  // namespace qpv
