#include "schmidt/game.hpp"

#include <sstream>

namespace schmidt {

std::string role_name(Role r) { return r == Role::Black ? "black" : "white"; }

std::string rule_name(Rule r) {
  switch (r) {
    case Rule::Degenerate:
      return "degenerate";
    case Rule::Containment:
      return "containment";
    case Rule::Ratio:
      return "ratio";
    case Rule::RatioBelowMinimum:
      return "ratio below minimum";
    case Rule::RatioAboveOne:
      return "ratio above one";
  }
  return "?";
}

std::optional<Violation> validate_move(const GameConfig& cfg, const std::optional<Interval>& outer,
                                       const Interval& p, Role role) {
  if (!(p.lo < p.hi)) return Violation{role, Rule::Degenerate, "interval must have positive length"};
  Interval host = outer ? *outer : Interval{Scalar(0), Scalar(1)};
  if (!host.contains(p)) return Violation{role, Rule::Containment, "interval is not contained in the previous one"};
  if (!outer) return std::nullopt;
  Scalar ratio = p.length() / outer->length();
  if (!cfg.modified) {
    const Scalar& want = role == Role::White ? cfg.alpha : cfg.beta;
    if (ratio != want) return Violation{role, Rule::Ratio, "length ratio " + ratio.debug_string() + " differs from the fixed ratio"};
    return std::nullopt;
  }
  const Scalar& minimum = role == Role::White ? cfg.modified->alpha0 : cfg.modified->gamma0;
  if (ratio < minimum) return Violation{role, Rule::RatioBelowMinimum, "length ratio below the allowed minimum"};
  if (Scalar(1) < ratio) return Violation{role, Rule::RatioAboveOne, "length ratio above 1"};
  return std::nullopt;
}

GameTranscript run_game(const GameConfig& cfg, BlackStrategy& black, WhiteStrategy& white, int rounds) {
  GameTranscript t;
  int last = std::min(rounds, cfg.max_rounds);
  for (int k = 0; k <= last; ++k) {
    RoundRecord rec;
    rec.index = k;
    std::optional<Interval> outer;
    if (k > 0) outer = t.rounds.back().white;
    try {
      rec.black = k == 0 ? black.opening(cfg) : black.respond(cfg, t.rounds);
    } catch (const ForfeitSignal& f) {
      t.forfeit = ForfeitRecord{Role::Black, k, f.what()};
      break;
    }
    if (auto v = validate_move(cfg, outer, rec.black, Role::Black)) throw IllegalMove(Role::Black, k, *v);
    rec.black_ratio = outer ? rec.black.length() / outer->length() : Scalar(1);
    WhiteMove wm;
    try {
      wm = white.respond(cfg, t.rounds, rec.black);
    } catch (const ForfeitSignal& f) {
      t.forfeit = ForfeitRecord{Role::White, k, f.what()};
      t.limit_enclosure = rec.black;
      return t;
    }
    if (auto v = validate_move(cfg, rec.black, wm.interval, Role::White)) throw IllegalMove(Role::White, k, *v);
    rec.white = std::move(wm.interval);
    rec.white_ratio = rec.white.length() / rec.black.length();
    rec.ann = std::move(wm.ann);
    t.rounds.push_back(std::move(rec));
  }
  if (!t.rounds.empty()) t.limit_enclosure = t.rounds.back().white;
  return t;
}

Tri winning_check(const GameTranscript& t, const std::function<Tri(const Interval&)>& predicate) {
  return predicate(t.limit_enclosure);
}

Json round_to_json(const RoundRecord& r, bool with_ratios) {
  Json j;
  j["round"] = r.index;
  j["B"] = interval_to_json(r.black);
  j["W"] = interval_to_json(r.white);
  if (with_ratios) j["ratios"] = Json::array({scalar_to_json(r.black_ratio), scalar_to_json(r.white_ratio)});
  j["ann"] = r.ann;
  return j;
}

std::string transcript_to_jsonl(const GameTranscript& t, const GameConfig& cfg) {
  std::string out;
  for (const auto& r : t.rounds) {
    out += round_to_json(r, cfg.modified.has_value()).dump();
    out += '\n';
  }
  if (t.forfeit) {
    Json f;
    f["forfeit"] = role_name(t.forfeit->role);
    f["round"] = t.forfeit->round;
    f["reason"] = t.forfeit->reason;
    out += f.dump();
    out += '\n';
  }
  return out;
}

GameTranscript transcript_from_jsonl(const std::string& text, FieldRegistry& fields) {
  GameTranscript t;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Json j = Json::parse(line);
    if (j.contains("forfeit")) {
      t.forfeit = ForfeitRecord{j["forfeit"] == "black" ? Role::Black : Role::White, j["round"].get<int>(),
                                j["reason"].get<std::string>()};
      continue;
    }
    RoundRecord r;
    r.index = j.at("round").get<int>();
    r.black = interval_from_json(j.at("B"), fields);
    r.white = interval_from_json(j.at("W"), fields);
    if (j.contains("ratios")) {
      r.black_ratio = scalar_from_json(j["ratios"][0], fields);
      r.white_ratio = scalar_from_json(j["ratios"][1], fields);
    } else {
      r.white_ratio = r.white.length() / r.black.length();
      r.black_ratio = t.rounds.empty() ? Scalar(1) : r.black.length() / t.rounds.back().white.length();
    }
    if (j.contains("ann")) r.ann = j["ann"];
    t.rounds.push_back(std::move(r));
  }
  if (!t.rounds.empty()) t.limit_enclosure = t.rounds.back().white;
  return t;
}

}  // namespace schmidt
