#include "ccsim/rational.hpp"

#include <sstream>
#include <stdexcept>

namespace ccsim {

namespace {

// Best rational approximation with denominator <= limit (Stern-Brocot walk).
Rational limit_denominator(const Rational& r, const BigInt& limit) {
  if (den(r) <= limit) return r;
  BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  BigInt n = num(r), d = den(r);
  const bool neg = n < 0;
  if (neg) n = -n;
  while (true) {
    const BigInt a = n / d;
    const BigInt q2 = q0 + a * q1;
    if (q2 > limit) break;
    const BigInt p2 = p0 + a * p1;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    const BigInt rem = n - a * d;
    if (rem == 0) break;
    n = d; d = rem;
  }
  const BigInt k = (limit - q0) / q1;
  const Rational bound1(p0 + k * p1, q0 + k * q1);
  const Rational bound2(p1, q1);
  const Rational target = neg ? Rational(-num(r), den(r)) : r;
  const Rational best =
      abs(bound1 - target) <= abs(bound2 - target) ? bound1 : bound2;
  return neg ? -best : best;
}

}  // namespace

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    const BigInt n(s.substr(0, slash));
    const BigInt d(s.substr(slash + 1));
    if (d == 0) throw std::invalid_argument("zero denominator: " + s);
    return Rational(n, d);
  }
  const auto dot = s.find('.');
  if (dot == std::string::npos) return Rational(BigInt(s));
  const std::string ipart = s.substr(0, dot);
  const std::string fpart = s.substr(dot + 1);
  for (char c : fpart)
    if (!isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("bad rational literal: " + s);
  BigInt scale = 1;
  for (size_t i = 0; i < fpart.size(); ++i) scale *= 10;
  const bool neg = !ipart.empty() && ipart[0] == '-';
  BigInt whole = ipart.empty() || ipart == "-" ? BigInt(0) : BigInt(ipart);
  if (neg) whole = -whole;
  BigInt n = whole * scale + (fpart.empty() ? BigInt(0) : BigInt(fpart));
  if (neg) n = -n;
  return limit_denominator(Rational(n, scale), BigInt(1000000));
}

std::string rational_string(const Rational& r) {
  std::ostringstream out;
  out << num(r);
  if (den(r) != 1) out << "/" << den(r);
  return out.str();
}

std::string decimal_string(const Rational& r, int digits) {
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  BigInt n = num(r) * scale * 2 + (num(r) < 0 ? -den(r) : den(r));
  n /= 2 * den(r);
  const bool neg = n < 0;
  if (neg) n = -n;
  std::ostringstream raw;
  raw << n;
  std::string s = raw.str();
  if (s.size() <= static_cast<size_t>(digits)) s.insert(0, digits + 1 - s.size(), '0');
  s.insert(s.size() - digits, ".");
  return (neg ? "-" : "") + s;
}

}  // namespace ccsim
