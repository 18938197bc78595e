#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace vfinv {

// Exact arbitrary-precision arithmetic.  All symbolic coefficients are
// rationals; doubles appear only in eval_numeric and sampling-based checks.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt rat_den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

// Exact value of a decimal literal: "12", "34" -> 1234/100.
inline Rational rational_from_decimal(const std::string& int_part, const std::string& frac_part) {
  // Strip leading zeros: cpp_int's string constructor reads them as octal.
  std::string digits = int_part + frac_part;
  std::size_t nz = digits.find_first_not_of('0');
  BigInt num = nz == std::string::npos ? BigInt(0) : BigInt(digits.substr(nz));
  BigInt den = 1;
  for (std::size_t i = 0; i < frac_part.size(); ++i) den *= 10;
  return Rational(num, den);
}

}  // namespace vfinv
