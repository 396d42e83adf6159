#pragma once

#include <string>

#include "schmidt/map_model.hpp"

namespace schmidt {

// The point whose itinerary is w repeated forever.
Scalar periodic_point(const MapModel& m, const Word& w);

// Target syntax:
//   "p/q", "0.25"              a rational
//   "alg:c0,c1,...@lo,hi"      the root of c0 + c1 x + ... in [lo, hi]
//   "digits:s1,s2,..."         the periodic point with that repeating itinerary
Scalar parse_target(const MapModel& m, const std::string& text);

}  // namespace schmidt
