#include "schmidt/interval.hpp"

#include "schmidt/error.hpp"

namespace schmidt {

Interval intersect(const Interval& a, const Interval& b) { return {max(a.lo, b.lo), min(a.hi, b.hi)}; }

long neg_log2_floor(const Scalar& w) {
  Rational q = w.is_rational() ? w.rational() : w.approx(8);
  if (!w.is_rational()) {
    // approx may overshoot tiny values; tighten until it is meaningful
    unsigned bits = 64;
    while (q <= 0 || q < pow2(-static_cast<long>(bits) + 8)) {
      bits *= 2;
      q = w.approx(bits);
      if (bits > (1u << 20)) throw Error("width too small to place an interval");
    }
  }
  long e = static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2));
  // 2^(e-1) < 1/q < 2^(e+1)
  while (pow2(e) * q > 1) --e;
  while (pow2(e + 1) * q <= 1) ++e;
  return e;
}

Interval place_within(const Interval& region, const Scalar& len, const Scalar& preferred, bool open_lo,
                      bool open_hi) {
  Scalar half = len / Scalar(2);
  Scalar a = region.lo + half, b = region.hi - half;
  auto admissible = [&](const Scalar& c) {
    bool ok_lo = open_lo ? a < c : a <= c;
    bool ok_hi = open_hi ? c < b : c <= b;
    return ok_lo && ok_hi;
  };
  if (b < a || ((open_lo || open_hi) && b == a)) throw Error("no room to place interval");
  if (a == b) return {a - half, a + half};
  Scalar p = preferred < a ? a : (b < preferred ? b : preferred);
  long e = neg_log2_floor(b - a) + 2;
  for (long prec = e; prec < e + 64; ++prec) {
    Rational unit = pow2(-prec);
    Rational approx = p.is_rational() ? p.rational() : p.approx(static_cast<unsigned>(prec + 8));
    Integer k = floor(approx / unit + Rational(1, 2));
    for (int d : {0, -1, 1}) {
      Scalar c(Rational(Rational(k + d) * unit));
      if (admissible(c)) return {c - half, c + half};
    }
  }
  Scalar mid = (a + b) / Scalar(2);
  return {mid - half, mid + half};
}

}  // namespace schmidt
