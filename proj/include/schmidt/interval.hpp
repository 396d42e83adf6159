#pragma once

#include <string>

#include "schmidt/scalar.hpp"

namespace schmidt {

// Closed interval [lo, hi] with exact endpoints.
struct Interval {
  Scalar lo, hi;

  Scalar length() const { return hi - lo; }
  Scalar center() const { return (lo + hi) / Scalar(2); }
  bool contains(const Scalar& x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool contains_in_interior(const Scalar& x) const { return lo < x && x < hi; }
  bool meets(const Interval& o) const { return !(o.hi < lo || hi < o.lo); }
  friend bool operator==(const Interval& a, const Interval& b) { return a.lo == b.lo && a.hi == b.hi; }
};

Interval intersect(const Interval& a, const Interval& b);  // caller ensures they meet

// A subinterval of `region` of length `len` whose centre is a short dyadic
// rational as close as possible to `preferred` (clamped into the admissible
// range). With open_lo/open_hi the result must not touch that end of the
// region. Throws Error if no such subinterval exists.
Interval place_within(const Interval& region, const Scalar& len, const Scalar& preferred,
                      bool open_lo = false, bool open_hi = false);

// floor(log2(1/w)) for 0 < w, computed from a rational lower approximation.
long neg_log2_floor(const Scalar& w);

}  // namespace schmidt
