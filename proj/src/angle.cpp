#include "corrpoly/angle.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "corrpoly/errors.hpp"

namespace corrpoly {

Angle Angle::pi_times(Rational q) {
  Angle a;
  a.radians_ = static_cast<double>(q) * std::numbers::pi;
  a.pi_ = std::move(q);
  return a;
}

Angle Angle::from_radians(double r) {
  if (!std::isfinite(r)) throw Error(Errc::Parse, "angle must be finite");
  if (r == 0.0) return pi_times(0);
  Angle a;
  a.pi_.reset();
  a.radians_ = r;
  return a;
}

Angle Angle::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s += c;
  auto at = s.find("pi");
  if (at == std::string::npos) {
    Rational q = parse_rational(s);
    if (q == 0) return pi_times(0);
    return from_radians(static_cast<double>(q));
  }
  std::string coef = s.substr(0, at);
  std::string rest = s.substr(at + 2);
  if (!coef.empty() && coef.back() == '*') coef.pop_back();
  Rational q = 1;
  if (coef == "-")
    q = -1;
  else if (coef == "+" || coef.empty())
    q = 1;
  else
    q = parse_rational(coef);
  if (!rest.empty()) {
    if (rest[0] != '/') throw Error(Errc::Parse, "bad angle '" + std::string(text) + "'");
    Rational den = parse_rational(rest.substr(1));
    if (den == 0) throw Error(Errc::Parse, "zero denominator in angle");
    q /= den;
  }
  return pi_times(q);
}

namespace {

// sin(k pi / 6) for k = 0..11, when rational.
std::optional<Rational> sin_sixths(const Rational& turns_of_pi) {
  Rational sixths = turns_of_pi * 6;
  if (denominator(sixths) != 1) {
    return std::nullopt;
  }
  BigInt k = numerator(sixths) % 12;
  if (k < 0) k += 12;
  switch (static_cast<int>(k)) {
    case 0: case 6: return Rational(0);
    case 1: case 5: return Rational(1, 2);
    case 3: return Rational(1);
    case 7: case 11: return Rational(-1, 2);
    case 9: return Rational(-1);
    default: return std::nullopt;
  }
}

}  // namespace

std::optional<Rational> Angle::exact_sin() const {
  if (!pi_) return std::nullopt;
  return sin_sixths(*pi_);
}

std::optional<Rational> Angle::exact_cos() const {
  if (!pi_) return std::nullopt;
  return sin_sixths(*pi_ + Rational(1, 2));
}

double Angle::sin() const {
  if (auto e = exact_sin()) return static_cast<double>(*e);
  return std::sin(radians_);
}

double Angle::cos() const {
  if (auto e = exact_cos()) return static_cast<double>(*e);
  return std::cos(radians_);
}

Angle Angle::operator+(const Angle& o) const {
  if (pi_ && o.pi_) return pi_times(*pi_ + *o.pi_);
  return from_radians(radians_ + o.radians_);
}

Angle Angle::operator-(const Angle& o) const { return *this + (-o); }

Angle Angle::operator-() const {
  if (pi_) return pi_times(-*pi_);
  return from_radians(-radians_);
}

std::string Angle::str() const {
  if (!pi_) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", radians_);
    return buf;
  }
  const Rational& q = *pi_;
  if (q == 0) return "0";
  BigInt num = numerator(q), den = denominator(q);
  std::string out;
  if (num == -1)
    out = "-pi";
  else if (num == 1)
    out = "pi";
  else
    out = num.str() + "pi";
  if (den != 1) out += "/" + den.str();
  return out;
}

}  // namespace corrpoly
