#include "corrpoly/rational.hpp"

#include <cmath>

#include "corrpoly/errors.hpp"

namespace corrpoly {

namespace {

// Optional sign then digits; leading zeros stripped so boost does not read octal.
BigInt parse_integer(std::string s, const std::string& whole) {
  bool neg = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    neg = s[0] == '-';
    s.erase(0, 1);
  }
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw Error(Errc::Parse, "bad number '" + whole + "'");
  auto nz = s.find_first_not_of('0');
  s = nz == std::string::npos ? "0" : s.substr(nz);
  BigInt v(s);
  return neg ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string s(text);
  if (s.empty()) throw Error(Errc::Parse, "empty number");
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string frac = s.substr(dot + 1);
    std::string whole = s.substr(0, dot);
    if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos)
      throw Error(Errc::Parse, "bad number '" + s + "'");
    bool neg = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    BigInt num = parse_integer(whole + frac, s);
    if (neg && num > 0) num = -num;
    BigInt den = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
    return Rational(num, den);
  }
  if (auto slash = s.find('/'); slash != std::string::npos) {
    BigInt num = parse_integer(s.substr(0, slash), s);
    BigInt den = parse_integer(s.substr(slash + 1), s);
    if (den == 0) throw Error(Errc::Parse, "zero denominator in '" + s + "'");
    return Rational(num, den);
  }
  return Rational(parse_integer(s, s));
}

std::string to_string(const Rational& q) { return q.str(); }

Rational rationalize(double x, std::int64_t max_den) {
  if (!std::isfinite(x)) throw Error(Errc::Parse, "cannot rationalize a non-finite value");
  // Convergents of the continued fraction expansion.
  BigInt h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int iter = 0; iter < 64; ++iter) {
    double a = std::floor(r);
    BigInt ai(static_cast<long long>(a));
    BigInt h2 = ai * h1 + h0;
    BigInt k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    double frac = r - a;
    if (frac < 1e-300 || std::abs(static_cast<double>(h1) / static_cast<double>(k1) - x) == 0) break;
    r = 1.0 / frac;
  }
  return Rational(h1, k1);
}

}  // namespace corrpoly
