#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace frobdens {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(long long num, long long den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

/// Always "num/den", including "1/1" and "0/1".
inline std::string to_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Accepts "a/b", "a" or a decimal such as "0.4".
Rational parse_rational(const std::string& text);

}  // namespace frobdens
