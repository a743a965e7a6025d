#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "corrpoly/rational.hpp"

namespace corrpoly {

/// An angle that remembers when it is an exact rational multiple of pi, so
/// that sines and cosines at multiples of pi/6 and pi/2 stay exact.
class Angle {
 public:
  Angle() : pi_(Rational(0)), radians_(0.0) {}

  static Angle pi_times(Rational q);
  static Angle from_radians(double r);

  /// "0", "pi", "-pi/4", "2pi/3", "3*pi/4", "1/2*pi" (exact) or a plain
  /// decimal such as "1.45" (radians, inexact unless zero).
  static Angle parse(std::string_view text);

  double radians() const { return radians_; }
  const std::optional<Rational>& pi_multiple() const { return pi_; }

  std::optional<Rational> exact_sin() const;
  std::optional<Rational> exact_cos() const;
  double sin() const;
  double cos() const;

  Angle operator+(const Angle& o) const;
  Angle operator-(const Angle& o) const;
  Angle operator-() const;

  /// Inverse of parse for exact angles ("2pi/3"); "%.17g" radians otherwise.
  std::string str() const;

 private:
  std::optional<Rational> pi_;
  double radians_;
};

}  // namespace corrpoly
