#pragma once

#include <compare>
#include <ostream>
#include <string>
#include <variant>

#include "schmidt/algebraic.hpp"
#include "schmidt/rational.hpp"

namespace schmidt {

// An exact real number: a rational, or an element of a number field Q(theta)
// with a certified isolating enclosure for theta. Field elements that are
// constant polynomials are stored as rationals.
class Scalar {
 public:
  Scalar() : v_(Rational(0)) {}
  Scalar(long v) : v_(Rational(v)) {}  // NOLINT(google-explicit-constructor)
  Scalar(int v) : v_(Rational(v)) {}   // NOLINT(google-explicit-constructor)
  Scalar(Rational q) : v_(std::move(q)) {}  // NOLINT(google-explicit-constructor)
  Scalar(AlgebraicScalar a);                // NOLINT(google-explicit-constructor)

  static Scalar generator(const FieldPtr& field) { return Scalar(AlgebraicScalar::generator(field)); }
  static Scalar parse(const std::string& text) { return Scalar(parse_rational(text)); }

  bool is_rational() const { return std::holds_alternative<Rational>(v_); }
  const Rational& rational() const { return std::get<Rational>(v_); }
  const AlgebraicScalar& algebraic() const { return std::get<AlgebraicScalar>(v_); }
  FieldPtr field() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  Scalar& operator/=(const Scalar& b) { return *this = *this / b; }
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar inv() const;

  int sign() const;
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);
  friend bool operator==(const Scalar& a, const Scalar& b) { return (a - b).sign() == 0; }

  // A rational within 2^-bits of the value.
  Rational approx(unsigned bits) const;
  Integer floor() const;
  double to_double() const;
  std::string debug_string() const;

 private:
  std::variant<Rational, AlgebraicScalar> v_;
};

Scalar abs(const Scalar& a);
const Scalar& min(const Scalar& a, const Scalar& b);
const Scalar& max(const Scalar& a, const Scalar& b);
Scalar pow(const Scalar& a, long e);

enum class Ordering { LT, EQ, GT };
Ordering scalar_compare(const Scalar& a, const Scalar& b);

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.debug_string(); }

}  // namespace schmidt
