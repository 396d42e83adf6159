#include "schmidt/run_config.hpp"

#include <algorithm>

#include "schmidt/beta_shift.hpp"
#include "schmidt/models.hpp"
#include "schmidt/target.hpp"

namespace schmidt {

const std::vector<std::string> kCommands = {"simulate", "verify", "intersect", "beta", "dim", "demo-pathological", "play"};

namespace {

void require_one_of(const std::string& field, const std::string& v, std::initializer_list<const char*> options) {
  std::string list;
  for (const char* o : options) {
    if (v == o) return;
    list += list.empty() ? o : std::string(", ") + o;
  }
  throw ConfigError(field, "must be one of " + list + " (got '" + v + "')");
}

void require_positive(const std::string& field, long v) {
  if (v < 1) throw ConfigError(field, "must be at least 1");
}

std::string unit_ratio(const std::string& field, const std::string& text) {
  Scalar s = config_scalar(field, text);
  if (!(Scalar(0) < s) || !(s < Scalar(1))) throw ConfigError(field, "must lie strictly between 0 and 1");
  return to_string(s.rational());
}

}  // namespace

ModelPtr config_model(const std::string& spec) {
  try {
    return make_model(spec);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("model", e.what());
  }
}

Scalar config_scalar(const std::string& field, const std::string& text) {
  try {
    return Scalar(parse_rational(text));
  } catch (const std::exception& e) {
    throw ConfigError(field, "expected p/q or a decimal (got '" + text + "')");
  }
}

std::pair<ModelPtr, Scalar> parse_component(const std::string& text) {
  auto at = text.rfind('@');
  if (at == std::string::npos) throw ConfigError("components", "expected model@target (got '" + text + "')");
  ModelPtr m = config_model(text.substr(0, at));
  try {
    return {m, parse_target(*m, text.substr(at + 1))};
  } catch (const ConfigError& e) {
    throw ConfigError("components", e.what());
  }
}

Word parse_word(const MapModel& m, const std::string& field, const std::string& text) {
  Word w;
  try {
    if (text.find(',') != std::string::npos) {
      std::size_t pos = 0;
      while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        w.push_back(m.parse_symbol(text.substr(pos, comma - pos)));
        pos = comma + 1;
      }
    } else {
      for (char ch : text) w.push_back(m.parse_symbol(std::string(1, ch)));
    }
  } catch (const std::exception& e) {
    throw ConfigError(field, e.what());
  }
  if (w.empty()) throw ConfigError(field, "empty word");
  for (Symbol s : w)
    if (!m.next_state(m.start_state(), s)) throw ConfigError(field, "symbol " + m.symbol_name(s) + " is not in the alphabet");
  return w;
}

RunConfig resolve(RunConfig c) {
  if (std::find(kCommands.begin(), kCommands.end(), c.command) == kCommands.end())
    throw ConfigError("command", "unknown command '" + c.command + "'");
  if (c.command == "demo-pathological") c.model = "pathological";
  ModelPtr m = config_model(c.model);
  c.model = m->name();
  c.alpha = unit_ratio("alpha", c.alpha);
  if (!c.beta_game) {
    if (c.command == "demo-pathological") {
      require_positive("pathological_i", c.pathological_i);
      Rational b = 1 / (4 * c.pathological_i * config_scalar("alpha", c.alpha).rational());
      c.beta_game = to_string(b);
    } else {
      c.beta_game = "1/2";
    }
  }
  c.beta_game = unit_ratio("beta_game", *c.beta_game);
  require_one_of("variant", c.variant, {"classical", "modified"});
  if (c.rounds < 0) throw ConfigError("rounds", "must be non-negative");
  require_one_of("black", c.black, {"greedy", "random", "pathological"});
  require_one_of("white", c.white, {"master", "trap"});
  require_positive("trap_step", c.trap_step);
  require_positive("budget", c.budget);
  require_positive("pathological_i", c.pathological_i);
  require_positive("depth", c.depth);
  require_one_of("method", c.method, {"oracle", "boxcount"});
  require_positive("digit_bound", c.digit_bound);

  bool game = c.command == "simulate" || c.command == "verify" || c.command == "play";
  if (game) {
    try {
      parse_target(*m, c.target);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError("target", e.what());
    }
  }
  if (c.command == "intersect") {
    if (c.components.empty()) throw ConfigError("components", "need at least one component");
    for (const auto& comp : c.components) parse_component(comp);
  }
  if (c.command == "dim") parse_word(*m, "avoid_word", c.avoid_word);
  if (c.command == "beta") {
    try {
      BetaSystem sys(c.d1_word);
    } catch (const std::exception& e) {
      throw ConfigError("d1_word", e.what());
    }
  }
  return c;
}

Json config_to_json(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  j["model"] = c.model;
  j["target"] = c.target;
  j["alpha"] = c.alpha;
  j["beta_game"] = c.beta_game ? Json(*c.beta_game) : Json(nullptr);
  j["variant"] = c.variant;
  j["rounds"] = c.rounds;
  j["seed"] = c.seed;
  j["black"] = c.black;
  j["white"] = c.white;
  j["trap_step"] = c.trap_step;
  j["budget"] = c.budget;
  j["pathological_i"] = c.pathological_i;
  j["components"] = c.components;
  j["avoid_word"] = c.avoid_word;
  j["depth"] = c.depth;
  j["method"] = c.method;
  j["digit_bound"] = c.digit_bound;
  j["d1_word"] = c.d1_word;
  j["out"] = c.out;
  return j;
}

RunConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("config", "expected a JSON object");
  RunConfig c;
  for (const auto& [key, v] : j.items()) {
    try {
      if (key == "command") c.command = v.get<std::string>();
      else if (key == "model") c.model = v.get<std::string>();
      else if (key == "target") c.target = v.get<std::string>();
      else if (key == "alpha") c.alpha = v.get<std::string>();
      else if (key == "beta_game") c.beta_game = v.is_null() ? std::nullopt : std::optional(v.get<std::string>());
      else if (key == "variant") c.variant = v.get<std::string>();
      else if (key == "rounds") c.rounds = v.get<int>();
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "black") c.black = v.get<std::string>();
      else if (key == "white") c.white = v.get<std::string>();
      else if (key == "trap_step") c.trap_step = v.get<int>();
      else if (key == "budget") c.budget = v.get<int>();
      else if (key == "pathological_i") c.pathological_i = v.get<long>();
      else if (key == "components") c.components = v.get<std::vector<std::string>>();
      else if (key == "avoid_word") c.avoid_word = v.get<std::string>();
      else if (key == "depth") c.depth = v.get<int>();
      else if (key == "method") c.method = v.get<std::string>();
      else if (key == "digit_bound") c.digit_bound = v.get<long>();
      else if (key == "d1_word") c.d1_word = v.get<std::string>();
      else if (key == "out") c.out = v.get<std::string>();
      else throw ConfigError(key, "unknown field");
    } catch (const Json::exception&) {
      throw ConfigError(key, "wrong type");
    }
  }
  return c;
}

GameConfig game_config(const RunConfig& c) {
  GameConfig g;
  g.alpha = config_scalar("alpha", c.alpha);
  g.beta = config_scalar("beta_game", c.beta_game.value_or("1/2"));
  if (c.variant == "modified") g.modified = ModifiedRatios{g.alpha, g.beta};
  return g;
}

}  // namespace schmidt
