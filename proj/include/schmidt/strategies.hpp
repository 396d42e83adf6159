#pragma once

#include <functional>
#include <map>
#include <memory>
#include <set>
#include <vector>

#include "schmidt/game.hpp"
#include "schmidt/map_model.hpp"

namespace schmidt {

// ---------------------------------------------------------------- sequence game

struct SequenceGamePlan {
  Rational c;
  int n = 0;
  int b0 = 0;
  int N = 0;
  std::set<Word> dangerous;
};

// Minimal n >= 1 with 2^(cn) > n+1, decided exactly as 2^(pn) > (n+1)^q.
int minimal_block_size(const Rational& c);
SequenceGamePlan plan_block_size(const Rational& c, int b0);
// Distinct length-n factors of `window` (the target coding at positions b0+1..b0+2n).
std::set<Word> dangerous_words(const Word& window, int n);

enum class Side { Left, Right };
// Keeps the side holding fewer dangerous words (Left on ties) and narrows
// plan.dangerous to it.
Side sequence_game_choose(SequenceGamePlan& plan, const std::set<Word>& left, const std::set<Word>& right);

// ---------------------------------------------------------------- placement helpers

// Subinterval of length alpha|B| as far as possible from `points`. Gaps at
// the ends of B are used flush against B; interior gaps centre the interval.
// Ties go to the leftmost candidate.
Interval avoid_finite_points(const Interval& B, const std::vector<Scalar>& points, const Scalar& alpha);
// Same, keeping away from closed regions instead of points.
Interval avoid_regions(const Interval& B, std::vector<Interval> regions, const Scalar& alpha);

// Geometric order of two sibling branches inside a parent of the given
// orientation: negative when a lies to the left of b.
int sibling_compare(const MapModel& m, Symbol a, Symbol b, int parent_orientation);

// Codings of the endpoints of a closed interval inside a frame cylinder. The
// lower endpoint is coded with Tie::Left and the upper with Tie::Right, so the
// codings bracket every cylinder whose closure meets the interval.
class IntervalCoding {
 public:
  IntervalCoding(const MapModel& m, const Cylinder& frame, const Interval& I);
  // Length of the common prefix beyond the frame, looking at most `limit` symbols.
  std::size_t common(std::size_t limit);
  // Whether some cylinder whose word carries d at absolute 0-based position
  // s can meet the interval. When the codings of the endpoints still differ
  // before position s the answer is yes (conservatively).
  bool alive(std::size_t s, const Word& d);

 private:
  int side_ok(const Word& w, std::size_t from, PointCoder& pc, int want);
  const MapModel* m_;
  const Cylinder* frame_;
  Interval I_;
  PointCoder lo_, hi_;
};

// ---------------------------------------------------------------- master strategy

struct MasterPlan {
  int k = 0;               // generation offset, g(k-1) < 1/4
  int k_contraction = 0;   // minimal k from g alone
  int k_distortion = 0;    // beta-shift threshold 1 + 4 C_b^2 / ln(beta); 0 otherwise
  int M = 0;               // max m with g(m) >= (alpha beta)^3
  int K = 0;               // k + M, bound on k_{i+1} - k_i
  Rational c;              // 1/(2K)
  int n = 0;               // block size
};

int strategy_k(const MapModel& m, int* k_contraction = nullptr, int* k_distortion = nullptr);
MasterPlan master_plan(const MapModel& m, const Scalar& alpha, const Scalar& beta);

struct MasterOptions {
  int phase2_budget = 500;
  std::size_t endpoint_cap = 64;
};

std::unique_ptr<WhiteStrategy> white_master_strategy(ModelPtr m, Scalar x, const GameConfig& cfg,
                                                     MasterOptions opt = {});

// Phase 2 machinery alone: trap the game in a cylinder `step` generations
// below the current one, over and over.
std::unique_ptr<WhiteStrategy> trap_strategy(ModelPtr m, int step, MasterOptions opt = {});

// Round-robin over component strategies; component i plays rounds i mod m.
std::unique_ptr<WhiteStrategy> interleave_strategies(std::vector<std::unique_ptr<WhiteStrategy>> parts);
// Game seen by one of m interleaved components: beta becomes beta (alpha beta)^(m-1).
GameConfig effective_config(const GameConfig& cfg, int m);

// ---------------------------------------------------------------- Black adversaries

std::unique_ptr<BlackStrategy> greedy_tracker(ModelPtr m, Scalar x, std::uint64_t seed);
std::unique_ptr<BlackStrategy> random_black(std::uint64_t seed);
// Opens with [2^-i, 2^-(i-1)] and always answers with an even-index part
// (where the pathological map is undefined) lying inside White's interval.
std::unique_ptr<BlackStrategy> pathological_black(long i, std::uint64_t seed);

}  // namespace schmidt
