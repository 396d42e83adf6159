#pragma once

#include <utility>
#include <vector>

#include "schmidt/rational.hpp"

namespace schmidt {

// Dense univariate polynomial over Q, coefficients from low to high degree.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  static Polynomial constant(const Rational& c);
  static Polynomial x();

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int i) const;
  const Rational& leading() const { return c_.back(); }

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& s, const Polynomial& a);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  // Euclidean division; throws DivisionByZero when b is zero.
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
  Polynomial operator%(const Polynomial& b) const { return divmod(*this, b).second; }
  Polynomial operator/(const Polynomial& b) const { return divmod(*this, b).first; }

  Polynomial monic() const;
  Polynomial derivative() const;
  Rational eval(const Rational& x) const;
  int sign_at(const Rational& x) const;

  // Monic gcd (zero if both are zero).
  static Polynomial gcd(Polynomial a, Polynomial b);
  struct ExtGcd;
  static ExtGcd ext_gcd(const Polynomial& a, const Polynomial& b);

  std::vector<Polynomial> sturm_sequence() const;
  // Distinct real roots in the half-open interval (lo, hi].
  int count_roots(const Rational& lo, const Rational& hi) const;

 private:
  void trim();
  std::vector<Rational> c_;
};

struct Polynomial::ExtGcd {
  Polynomial g, s, t;  // s*a + t*b = g, g monic
};

}  // namespace schmidt
