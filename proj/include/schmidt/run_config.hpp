#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "schmidt/game.hpp"
#include "schmidt/map_model.hpp"

namespace schmidt {

// Everything a CLI run depends on. Scalars are kept as their canonical
// "num/den" strings so that a config survives a JSON round trip unchanged.
struct RunConfig {
  std::string command = "verify";
  std::string model = "integer_base:2";
  std::string target = "1/3";
  std::string alpha = "1/4";
  std::optional<std::string> beta_game;  // unset: command default
  std::string variant = "classical";     // classical | modified
  int rounds = 200;
  std::uint64_t seed = 1;
  std::string black = "greedy";  // greedy | random | pathological
  std::string white = "master";  // master | trap
  int trap_step = 1;
  int budget = 500;
  long pathological_i = 5;
  std::vector<std::string> components = {"integer_base:2@1/3", "integer_base:3@1/2", "beta:11@1/2"};
  std::string avoid_word = "010";
  int depth = 12;
  std::string method = "oracle";  // oracle | boxcount
  long digit_bound = 8;
  std::string d1_word = "11";
  std::string out;  // transcript path, empty for none
};

extern const std::vector<std::string> kCommands;

// Checks every field, fills command-dependent defaults and rewrites scalars
// canonically. Throws ConfigError naming the offending field.
RunConfig resolve(RunConfig c);

Json config_to_json(const RunConfig& c);
RunConfig config_from_json(const Json& j);

ModelPtr config_model(const std::string& spec);
Scalar config_scalar(const std::string& field, const std::string& text);
GameConfig game_config(const RunConfig& c);
// "model@target"
std::pair<ModelPtr, Scalar> parse_component(const std::string& text);
Word parse_word(const MapModel& m, const std::string& field, const std::string& text);

}  // namespace schmidt
