#pragma once

#include "schmidt/scalar.hpp"

namespace schmidt {

// y -> (a y + b) / (c y + d). Affine maps are kept with c = 0, d = 1.
struct Mobius {
  Scalar a{1}, b{0}, c{0}, d{1};

  static Mobius identity() { return {}; }
  static Mobius affine(const Scalar& scale, const Scalar& shift) { return {scale, shift, Scalar(0), Scalar(1)}; }

  bool is_affine() const { return c.sign() == 0; }
  Scalar apply(const Scalar& y) const;
  Mobius compose(const Mobius& inner) const;  // this o inner
  Mobius inverse() const;
  int orientation() const { return (a * d - b * c).sign(); }
  // |derivative| at y
  Scalar derivative_abs(const Scalar& y) const;

 private:
  Mobius normalized() const;
};

}  // namespace schmidt
