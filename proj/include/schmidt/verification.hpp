#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "schmidt/game.hpp"
#include "schmidt/map_model.hpp"
#include "schmidt/strategies.hpp"

namespace schmidt {

// ---------------------------------------------------------------- codings

// Longest word whose cylinder closure contains I, computed below `frame`
// (so the result starts with frame.word) and stopping at generation `limit`.
Cylinder enclosing_cylinder(const MapModel& m, const Cylinder& frame, const Interval& I, std::size_t limit);

// ---------------------------------------------------------------- certificates

struct CannotCertify : Error {
  using Error::Error;
};

struct BlockStructure {
  long b0 = 0;
  int n = 0;
};

struct AvoidanceCertificate {
  std::string model;
  Word target_prefix;  // x_1..x_N
  std::size_t L = 0;   // certified coding length
  Word coding;         // y_1..y_L
  Scalar epsilon;      // min over windows of dist(x, C_{y_k..y_{k+N-1}})
  std::size_t blocks_checked = 0;
  std::size_t samples_checked = 0;
  std::size_t steps_checked = 0;
};

// Certifies that no window of the limit coding equals x's N-prefix and that
// every complete block avoids the length-n factors of x at positions
// b0..b0+2n-1 (0-based). Sampled points of the enclosure are then iterated
// exactly and must stay at least epsilon (1 - 2^-20) away from x.
AvoidanceCertificate certify_avoidance(const MapModel& m, const GameTranscript& t, const Scalar& x, int N,
                                       const BlockStructure& blocks);

struct Orbit {
  std::vector<Scalar> points;  // y, f(y), ...
  bool truncated = false;      // some iterate had no expansion
};
Orbit orbit(const MapModel& m, const Scalar& y, std::size_t steps);

// ---------------------------------------------------------------- dimension

struct DimensionEstimate {
  double estimate = 0;  // certified lower bound
  double upper = 0;     // oracle only: certified upper bound
  std::string method;
  bool empty = false;
  std::size_t count = 0;  // box counting: cylinders counted
  std::optional<Symbol> digit_bound;
};

// log(lambda)/log(b) for the b-ary sequences avoiding `forbidden`, lambda the
// spectral radius of the de Bruijn transfer matrix.
DimensionEstimate subshift_dimension_oracle(int b, const std::vector<Word>& forbidden, double rel_tol = 1e-10);

// log(#cylinders of generation `depth` avoiding `avoid`) / -log(max length).
// Countable alphabets use digits up to `digit_bound`.
DimensionEstimate box_count_lower_bound(const MapModel& m, const Word& avoid, int depth, Symbol digit_bound = 8,
                                        std::size_t node_budget = 20'000'000);

// ---------------------------------------------------------------- audit

struct AuditFailure {
  long round = 0;
  std::string check;
  std::string message;
};

struct AuditReport {
  bool ok() const { return failures.empty(); }
  std::vector<AuditFailure> failures;
  MasterPlan plan;
  long b0 = -1;
  int N = 0;
  int phases = 0;          // completed Phase 1 / Phase 2 cycles
  int K_observed = 0;      // max k_{i+1} - k_i
  bool gap_bound_ok = true;          // g(m) < (alpha beta)^e at every gap
  bool gap_bound_derived_ok = true;  // g(m) >= (alpha beta)^e at every gap
  std::size_t blocks_complete = 0;
  std::size_t sequence_turns = 0;
  std::size_t coding_length = 0;     // generation of the last trap cylinder
  std::optional<BlockStructure> blocks() const {
    if (b0 < 0) return std::nullopt;
    return BlockStructure{b0, plan.n};
  }
};

// Recomputes the master strategy's bookkeeping from the intervals alone and
// compares it with the annotations: nesting and ratios, k_i, the central
// cylinder, trap rounds, the gap relation, dangerous-word counts, block
// cleanliness and turn density.
AuditReport transcript_audit(const MapModel& m, const Scalar& x, const GameConfig& cfg, const GameTranscript& t);

// Rounds played by component i of an m-way interleaving, with the inner
// annotations unwrapped. Round indices keep their global values.
GameTranscript component_transcript(const GameTranscript& t, int i, int m);

}  // namespace schmidt
