#include "schmidt/scalar.hpp"

#include <cmath>

#include "schmidt/error.hpp"

namespace schmidt {

namespace {

FieldPtr common_field(const FieldPtr& a, const FieldPtr& b) {
  if (!a) return b;
  if (!b || a == b) return a;
  if (!a->same_as(*b)) throw FieldMismatch();
  return a;
}

std::vector<Rational> lift(const Scalar& s) {
  if (s.is_rational()) return s.rational() == 0 ? std::vector<Rational>{} : std::vector<Rational>{s.rational()};
  return s.algebraic().coeffs();
}

std::vector<Rational> add(std::vector<Rational> a, const std::vector<Rational>& b, bool negate_b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (negate_b)
      a[i] -= b[i];
    else
      a[i] += b[i];
  }
  return a;
}

Scalar make(const FieldPtr& f, std::vector<Rational> c) { return Scalar(AlgebraicScalar(f, std::move(c))); }

}  // namespace

Scalar::Scalar(AlgebraicScalar a) : v_(Rational(0)) {
  if (a.degree() <= 0)
    v_ = a.coeffs().empty() ? Rational(0) : a.coeffs()[0];
  else
    v_ = std::move(a);
}

FieldPtr Scalar::field() const { return is_rational() ? nullptr : algebraic().field(); }

Scalar Scalar::operator-() const {
  if (is_rational()) return Scalar(Rational(-rational()));
  auto c = algebraic().coeffs();
  for (auto& x : c) x = -x;
  return make(algebraic().field(), std::move(c));
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.is_rational() && b.is_rational()) return Scalar(Rational(a.rational() + b.rational()));
  FieldPtr f = common_field(a.field(), b.field());
  return make(f, add(lift(a), lift(b), false));
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  if (a.is_rational() && b.is_rational()) return Scalar(Rational(a.rational() - b.rational()));
  FieldPtr f = common_field(a.field(), b.field());
  return make(f, add(lift(a), lift(b), true));
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.is_rational() && b.is_rational()) return Scalar(Rational(a.rational() * b.rational()));
  FieldPtr f = common_field(a.field(), b.field());
  if (a.is_rational() || b.is_rational()) {
    const Rational& s = a.is_rational() ? a.rational() : b.rational();
    auto c = lift(a.is_rational() ? b : a);
    for (auto& x : c) x *= s;
    return make(f, std::move(c));
  }
  return make(f, f->multiply(lift(a), lift(b)));
}

Scalar Scalar::inv() const {
  if (is_rational()) {
    if (rational() == 0) throw DivisionByZero();
    return Scalar(Rational(1 / rational()));
  }
  const auto& f = algebraic().field();
  return make(f, f->inverse(algebraic().coeffs()));
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (b.is_rational()) {
    if (b.rational() == 0) throw DivisionByZero();
    if (a.is_rational()) return Scalar(Rational(a.rational() / b.rational()));
    auto c = a.algebraic().coeffs();
    for (auto& x : c) x /= b.rational();
    return make(a.algebraic().field(), std::move(c));
  }
  return a * b.inv();
}

int Scalar::sign() const {
  if (is_rational()) return sgn(rational());
  return algebraic().field()->sign(algebraic().coeffs());
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
  int s;
  if (a.is_rational() && b.is_rational())
    s = cmp(a.rational(), b.rational());
  else
    s = (a - b).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational Scalar::approx(unsigned bits) const {
  if (is_rational()) return rational();
  const auto& f = algebraic().field();
  Rational width = pow2(-static_cast<long>(bits));
  unsigned prec = bits + 16;
  for (unsigned r = 0; r <= f->max_refinements(); ++r, prec *= 2) {
    auto v = f->evaluate(algebraic().coeffs(), prec);
    if (v.second - v.first <= width) return (v.first + v.second) / 2;
  }
  throw RefinementBudgetExceeded("approximation did not converge");
}

Integer Scalar::floor() const {
  if (is_rational()) return schmidt::floor(rational());
  Integer f = schmidt::floor(approx(4));
  while (*this < Scalar(Rational(f))) f -= 1;
  while (*this >= Scalar(Rational(f + 1))) f += 1;
  return f;
}

double Scalar::to_double() const { return approx(80).get_d(); }

std::string Scalar::debug_string() const {
  if (is_rational()) return to_string(rational());
  std::string s = "[";
  for (std::size_t i = 0; i < algebraic().coeffs().size(); ++i) {
    if (i) s += ", ";
    s += to_string(algebraic().coeffs()[i]);
  }
  return s + "]~" + std::to_string(to_double());
}

Scalar abs(const Scalar& a) { return a.sign() < 0 ? -a : a; }
const Scalar& min(const Scalar& a, const Scalar& b) { return b < a ? b : a; }
const Scalar& max(const Scalar& a, const Scalar& b) { return a < b ? b : a; }

Scalar pow(const Scalar& a, long e) {
  if (e < 0) return pow(a.inv(), -e);
  Scalar r(1), base = a;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

Ordering scalar_compare(const Scalar& a, const Scalar& b) {
  auto c = a <=> b;
  if (c < 0) return Ordering::LT;
  if (c > 0) return Ordering::GT;
  return Ordering::EQ;
}

}  // namespace schmidt
