#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>
#include <string>

namespace scdga {

// Exact arbitrary-precision scalars. cpp_rational keeps values in lowest
// terms with a positive denominator, which matches the canonical text form
// used throughout (num/den, or a bare integer when den == 1).
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

}  // namespace scdga
