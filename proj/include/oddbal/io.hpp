#pragma once

// Text formatting shared by the CLI and the reports.

#include <charconv>
#include <complex>
#include <ios>
#include <string>
#include <system_error>

#include "oddbal/asymptotics.hpp"
#include "oddbal/rings.hpp"

namespace oddbal {

/// Shortest decimal string that round-trips to the same double.
inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  if (res.ec != std::errc()) return "nan";
  return std::string(buf, res.ptr);
}

/// `digits` significant digits; exponent form only when the magnitude calls for it.
inline std::string format_high(const HighReal& x, int digits) { return x.str(digits, std::ios_base::fmtflags(0)); }

inline std::string csv_complex(Complex z) { return format_double(z.real()) + ',' + format_double(z.imag()); }

}  // namespace oddbal
