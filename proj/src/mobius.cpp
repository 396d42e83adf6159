#include "schmidt/mobius.hpp"

#include "schmidt/error.hpp"

namespace schmidt {

Mobius Mobius::normalized() const {
  if (c.sign() != 0 || d == Scalar(1)) return *this;
  if (d.sign() == 0) throw DivisionByZero();
  return {a / d, b / d, Scalar(0), Scalar(1)};
}

Scalar Mobius::apply(const Scalar& y) const {
  if (is_affine()) return a * y + b;
  return (a * y + b) / (c * y + d);
}

Mobius Mobius::compose(const Mobius& in) const {
  if (is_affine() && in.is_affine()) return {a * in.a, a * in.b + b, Scalar(0), Scalar(1)};
  return Mobius{a * in.a + b * in.c, a * in.b + b * in.d, c * in.a + d * in.c, c * in.b + d * in.d}.normalized();
}

Mobius Mobius::inverse() const {
  if (is_affine()) {
    Scalar s = a.inv();
    return {s, -b * s, Scalar(0), Scalar(1)};
  }
  return Mobius{d, -b, -c, a}.normalized();
}

Scalar Mobius::derivative_abs(const Scalar& y) const {
  Scalar det = abs(a * d - b * c);
  if (is_affine()) return det;
  Scalar den = c * y + d;
  return det / (den * den);
}

}  // namespace schmidt
