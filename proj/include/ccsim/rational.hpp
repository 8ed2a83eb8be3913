#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace ccsim {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// Accepts "a/b", integers and decimals. Decimals convert to the exact
// rational they denote, rounded to denominator <= 10^6 if needed.
Rational parse_rational(const std::string& s);

std::string rational_string(const Rational& r);  // "num/den" or "num"

// Fixed-point decimal with the given digit count (round half away from zero).
std::string decimal_string(const Rational& r, int digits);

}  // namespace ccsim
