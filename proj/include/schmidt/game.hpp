#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "schmidt/error.hpp"
#include "schmidt/serialize.hpp"

namespace schmidt {

struct ModifiedRatios {
  Scalar alpha0, gamma0;
};

struct GameConfig {
  Scalar alpha{Rational(1, 4)};
  Scalar beta{Rational(1, 2)};
  std::optional<ModifiedRatios> modified;  // nullopt: classical game
  int max_rounds = 100000;
};

enum class Role { Black, White };
std::string role_name(Role r);

struct RoundRecord {
  int index = 0;
  Interval black, white;
  Scalar black_ratio, white_ratio;  // black_ratio is 1 for the initial interval
  Json ann = Json::object();
};

struct ForfeitRecord {
  Role role;
  int round;
  std::string reason;
};

struct GameTranscript {
  std::vector<RoundRecord> rounds;
  Interval limit_enclosure;
  std::optional<ForfeitRecord> forfeit;
};

enum class Rule { Degenerate, Containment, Ratio, RatioBelowMinimum, RatioAboveOne };
std::string rule_name(Rule r);

struct Violation {
  Role role;
  Rule rule;
  std::string message;
};

// `outer` is the interval the move must nest in (nullopt for Black's
// opening interval, which must lie in [0,1]).
std::optional<Violation> validate_move(const GameConfig& cfg, const std::optional<Interval>& outer,
                                       const Interval& proposed, Role role);

// Thrown by a strategy that cannot or will not continue.
struct ForfeitSignal : Error {
  using Error::Error;
};

struct IllegalMove : Error {
  IllegalMove(Role r, int rd, Violation v)
      : Error(role_name(r) + " made an illegal move in round " + std::to_string(rd) + ": " + v.message),
        role(r),
        round(rd),
        violation(std::move(v)) {}
  Role role;
  int round;
  Violation violation;
};

class BlackStrategy {
 public:
  virtual ~BlackStrategy() = default;
  virtual Interval opening(const GameConfig& cfg) = 0;
  // history.back().white is the interval to nest in.
  virtual Interval respond(const GameConfig& cfg, const std::vector<RoundRecord>& history) = 0;
};

struct WhiteMove {
  Interval interval;
  Json ann = Json::object();
};

class WhiteStrategy {
 public:
  virtual ~WhiteStrategy() = default;
  // history holds the completed rounds; B is Black's current interval.
  virtual WhiteMove respond(const GameConfig& cfg, const std::vector<RoundRecord>& history, const Interval& B) = 0;
};

// Plays the opening step and then `rounds` repetitions, so a complete
// transcript has rounds + 1 entries.
GameTranscript run_game(const GameConfig& cfg, BlackStrategy& black, WhiteStrategy& white, int rounds);

enum class Tri { Yes, No, Unknown };
Tri winning_check(const GameTranscript& t, const std::function<Tri(const Interval&)>& predicate);

Json round_to_json(const RoundRecord& r, bool with_ratios);
std::string transcript_to_jsonl(const GameTranscript& t, const GameConfig& cfg);
GameTranscript transcript_from_jsonl(const std::string& text, FieldRegistry& fields);

}  // namespace schmidt
