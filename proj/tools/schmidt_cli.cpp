#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "schmidt/beta_shift.hpp"
#include "schmidt/models.hpp"
#include "schmidt/run_config.hpp"
#include "schmidt/strategies.hpp"
#include "schmidt/target.hpp"
#include "schmidt/verification.hpp"

using namespace schmidt;

namespace {

void write_transcript(const RunConfig& c, const GameTranscript& t, const GameConfig& g) {
  if (c.out.empty()) return;
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw ConfigError("out", "cannot open '" + c.out + "' for writing");
  f << transcript_to_jsonl(t, g);
}

Json forfeit_json(const GameTranscript& t) {
  if (!t.forfeit) return nullptr;
  Json f;
  f["role"] = role_name(t.forfeit->role);
  f["round"] = t.forfeit->round;
  f["reason"] = t.forfeit->reason;
  return f;
}

Json plan_json(const MasterPlan& p) {
  Json j;
  j["k"] = p.k;
  j["M"] = p.M;
  j["K"] = p.K;
  j["c"] = to_string(p.c);
  j["n"] = p.n;
  return j;
}

std::unique_ptr<BlackStrategy> make_black(const RunConfig& c, const ModelPtr& m, const Scalar& x) {
  if (c.black == "greedy") return greedy_tracker(m, x, c.seed);
  if (c.black == "random") return random_black(c.seed);
  return pathological_black(c.pathological_i, c.seed);
}

MasterOptions master_options(const RunConfig& c) {
  MasterOptions o;
  o.phase2_budget = c.budget;
  return o;
}

// Audit plus certificate for one master-strategy component.
Json assess(const MapModel& m, const Scalar& x, const GameConfig& cfg, const GameTranscript& part,
            const GameTranscript& whole) {
  Json j;
  auto rep = transcript_audit(m, x, cfg, part);
  j["model"] = m.name();
  j["audit_ok"] = rep.ok();
  Json fails = Json::array();
  for (const auto& f : rep.failures) fails.push_back({{"round", f.round}, {"check", f.check}, {"message", f.message}});
  j["audit_failures"] = fails;
  j["plan"] = plan_json(rep.plan);
  j["b0"] = rep.b0 >= 0 ? Json(rep.b0) : Json(nullptr);
  j["N"] = rep.b0 >= 0 ? Json(rep.N) : Json(nullptr);
  j["K_observed"] = rep.K_observed;
  j["gap_bound_ok"] = rep.gap_bound_derived_ok;
  j["gap_bound_literal_ok"] = rep.gap_bound_ok;
  j["phases"] = rep.phases;
  j["certificate"] = nullptr;
  j["cannot_certify"] = nullptr;
  bool avoided = false;
  if (!rep.blocks()) {
    j["cannot_certify"] = "no trap has been completed";
  } else {
    try {
      auto cert = certify_avoidance(m, whole, x, rep.N, *rep.blocks());
      Json cj;
      cj["L"] = cert.L;
      cj["epsilon"] = scalar_to_json(cert.epsilon);
      cj["blocks_checked"] = cert.blocks_checked;
      cj["samples_checked"] = cert.samples_checked;
      cj["steps_checked"] = cert.steps_checked;
      j["certificate"] = cj;
      avoided = true;
    } catch (const CannotCertify& e) {
      j["cannot_certify"] = e.what();
    }
  }
  j["avoided"] = avoided;
  return j;
}

// ---------------------------------------------------------------- commands

Json cmd_simulate(const RunConfig& c) {
  ModelPtr m = config_model(c.model);
  Scalar x = parse_target(*m, c.target);
  GameConfig g = game_config(c);
  std::unique_ptr<WhiteStrategy> w =
      c.white == "master" ? white_master_strategy(m, x, g, master_options(c)) : trap_strategy(m, c.trap_step, master_options(c));
  auto b = make_black(c, m, x);
  auto t = run_game(g, *b, *w, c.rounds);
  write_transcript(c, t, g);
  Json j;
  j["command"] = c.command;
  j["model"] = c.model;
  j["target"] = c.target;
  j["white"] = c.white;
  j["black"] = c.black;
  j["seed"] = c.seed;
  j["rounds_played"] = t.rounds.empty() ? 0 : t.rounds.size() - 1;
  j["forfeit"] = forfeit_json(t);
  j["limit_enclosure"] = t.rounds.empty() ? Json(nullptr) : interval_to_json(t.limit_enclosure);
  return j;
}

Json cmd_verify(const RunConfig& c) {
  ModelPtr m = config_model(c.model);
  Scalar x = parse_target(*m, c.target);
  GameConfig g = game_config(c);
  auto w = white_master_strategy(m, x, g, master_options(c));
  auto b = make_black(c, m, x);
  auto t = run_game(g, *b, *w, c.rounds);
  write_transcript(c, t, g);
  Json j;
  j["command"] = c.command;
  j["target"] = c.target;
  j["seed"] = c.seed;
  j["rounds_played"] = t.rounds.empty() ? 0 : t.rounds.size() - 1;
  j["forfeit"] = forfeit_json(t);
  j.update(assess(*m, x, g, t, t));
  return j;
}

Json cmd_intersect(const RunConfig& c) {
  GameConfig g = game_config(c);
  int n = static_cast<int>(c.components.size());
  GameConfig eff = effective_config(g, n);
  std::vector<std::pair<ModelPtr, Scalar>> comps;
  std::vector<std::unique_ptr<WhiteStrategy>> parts;
  for (const auto& s : c.components) {
    comps.push_back(parse_component(s));
    parts.push_back(white_master_strategy(comps.back().first, comps.back().second, eff, master_options(c)));
  }
  auto w = interleave_strategies(std::move(parts));
  auto b = make_black(c, comps[0].first, comps[0].second);
  auto t = run_game(g, *b, *w, c.rounds);
  write_transcript(c, t, g);
  Json j;
  j["command"] = c.command;
  j["seed"] = c.seed;
  j["rounds_played"] = t.rounds.empty() ? 0 : t.rounds.size() - 1;
  j["forfeit"] = forfeit_json(t);
  j["effective_beta"] = to_string(eff.beta.rational());
  bool avoided = true, gap_ok = true, audit_ok = true;
  Json N = nullptr;
  int K_obs = 0;
  Json list = Json::array();
  for (int i = 0; i < n; ++i) {
    auto part = component_transcript(t, i, n);
    Json a = assess(*comps[i].first, comps[i].second, eff, part, t);
    a["component"] = c.components[static_cast<std::size_t>(i)];
    avoided = avoided && a["avoided"].get<bool>();
    gap_ok = gap_ok && a["gap_bound_ok"].get<bool>();
    audit_ok = audit_ok && a["audit_ok"].get<bool>();
    K_obs = std::max(K_obs, a["K_observed"].get<int>());
    if (!a["N"].is_null() && (N.is_null() || N.get<int>() < a["N"].get<int>())) N = a["N"];
    list.push_back(a);
  }
  j["avoided"] = avoided;
  j["N"] = N;
  j["K_observed"] = K_obs;
  j["gap_bound_ok"] = gap_ok;
  j["audit_ok"] = audit_ok;
  j["components"] = list;
  return j;
}

Json cmd_demo(const RunConfig& c) {
  ModelPtr m = config_model("pathological");
  GameConfig g = game_config(c);
  int rounds = c.budget + 1;
  auto w = trap_strategy(m, c.trap_step, master_options(c));
  auto b = pathological_black(c.pathological_i, c.seed);
  auto t = run_game(g, *b, *w, rounds);
  write_transcript(c, t, g);

  ModelPtr f2 = config_model("integer_base:2");
  auto w2 = trap_strategy(f2, c.trap_step, master_options(c));
  auto b2 = random_black(c.seed);
  auto t2 = run_game(g, *b2, *w2, rounds);
  long traps = 0;
  for (const auto& r : t2.rounds)
    if (r.ann.contains("trap")) ++traps;

  auto exceeded = [](const GameTranscript& tr) {
    return tr.forfeit && tr.forfeit->role == Role::White && tr.forfeit->reason.find("budget") != std::string::npos;
  };
  Json j;
  j["command"] = c.command;
  j["i"] = c.pathological_i;
  j["alpha"] = c.alpha;
  j["beta_game"] = *c.beta_game;
  j["seed"] = c.seed;
  j["budget"] = c.budget;
  j["budget_exceeded"] = exceeded(t);
  j["forfeit"] = forfeit_json(t);
  Json control;
  control["model"] = f2->name();
  control["budget_exceeded"] = exceeded(t2);
  control["forfeit"] = forfeit_json(t2);
  control["traps"] = traps;
  j["control"] = control;
  j["avoided"] = nullptr;
  j["N"] = nullptr;
  j["K_observed"] = nullptr;
  j["gap_bound_ok"] = nullptr;
  j["demonstrated"] = exceeded(t) && !exceeded(t2);
  return j;
}

Json cmd_beta(const RunConfig& c) {
  auto sys = std::make_shared<BetaSystem>(c.d1_word);
  BetaModel m(sys);
  Json j;
  j["command"] = c.command;
  j["d1_word"] = sys->d1_string();
  Rational a = sys->beta().approx(64), e = pow2(-64);
  j["beta"] = scalar_to_json(sys->beta());
  j["beta_enclosure"] = Json::array({to_string(a - e), to_string(a + e)});
  j["forbidden_words"] = sys->forbidden_words();
  j["C_b"] = scalar_to_json(sys->distortion_constant());
  j["depth"] = c.depth;
  Json cyls = Json::array();
  std::vector<int> w;
  std::function<void(int)> walk = [&](int state) {
    if (static_cast<int>(w.size()) == c.depth) {
      std::string s;
      for (int d : w) s += static_cast<char>('0' + d);
      cyls.push_back({{"word", s}, {"closure", interval_to_json(beta_cylinder(m, w).closure())}});
      return;
    }
    for (int d : {0, 1}) {
      auto ns = sys->next_state(state, d);
      if (!ns) continue;
      w.push_back(d);
      walk(*ns);
      w.pop_back();
    }
  };
  walk(sys->start_state());
  j["cylinders"] = cyls;
  return j;
}

Json cmd_dim(const RunConfig& c) {
  ModelPtr m = config_model(c.model);
  Word w = parse_word(*m, "avoid_word", c.avoid_word);
  DimensionEstimate d;
  if (c.method == "oracle") {
    auto* ib = dynamic_cast<const IntegerBase*>(m.get());
    if (!ib) throw ConfigError("method", "the oracle needs an integer_base model");
    d = subshift_dimension_oracle(ib->base(), {w});
  } else {
    d = box_count_lower_bound(*m, w, c.depth, c.digit_bound);
  }
  Json j;
  j["command"] = c.command;
  j["model"] = c.model;
  j["avoid_word"] = w;
  j["method"] = c.method;
  j["estimate"] = d.estimate;
  j["certified_direction"] = "lower";
  j["empty"] = d.empty;
  if (c.method == "oracle") {
    j["upper"] = d.upper;
  } else {
    j["depth"] = c.depth;
    j["count"] = d.count;
    j["digit_bound"] = d.digit_bound ? Json(*d.digit_bound) : Json(nullptr);
  }
  return j;
}

// ---------------------------------------------------------------- play

std::string bar(const Interval& outer, const Interval& inner) {
  const int width = 60;
  double lo = outer.lo.to_double(), len = outer.length().to_double();
  int a = static_cast<int>((inner.lo.to_double() - lo) / len * width);
  int b = static_cast<int>((inner.hi.to_double() - lo) / len * width + 0.5);
  a = std::clamp(a, 0, width - 1);
  b = std::clamp(b, a + 1, width);
  return "|" + std::string(static_cast<std::size_t>(a), '.') + std::string(static_cast<std::size_t>(b - a), '#') +
         std::string(static_cast<std::size_t>(width - b), '.') + "|";
}

std::string show(const Interval& I) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "[%.15g, %.15g]", I.lo.to_double(), I.hi.to_double());
  return buf;
}

std::optional<Interval> parse_move(std::string line, const std::optional<Interval>& outer, const GameConfig& g) {
  for (char& ch : line)
    if (ch == ',' || ch == '[' || ch == ']') ch = ' ';
  std::istringstream in(line);
  std::string a, b;
  in >> a;
  if (a == "c" || a.empty()) {
    if (!outer) return Interval{Scalar(0), Scalar(1)};
    Scalar len = (g.modified ? g.modified->gamma0 : g.beta) * outer->length();
    Scalar lo = outer->center() - len / Scalar(2);
    return Interval{lo, lo + len};
  }
  in >> b;
  return Interval{Scalar(parse_rational(a)), Scalar(parse_rational(b))};
}

Json cmd_play(const RunConfig& c, bool json) {
  ModelPtr m = config_model(c.model);
  Scalar x = parse_target(*m, c.target);
  GameConfig g = game_config(c);
  auto w = white_master_strategy(m, x, g, master_options(c));
  std::ostream& view = json ? std::cerr : std::cout;
  view << "You play Black on " << c.model << " against White avoiding " << c.target << ".\n"
       << "Enter an interval as 'lo hi' (exact p/q or decimals), 'c' to zoom into the middle, 'q' to stop.\n";
  GameTranscript t;
  std::string line;
  bool stopped = false;
  for (int k = 0; k <= c.rounds && !stopped; ++k) {
    std::optional<Interval> outer;
    if (k > 0) outer = t.rounds.back().white;
    Interval B;
    for (;;) {
      view << "round " << k << " Black> " << std::flush;
      if (!std::getline(std::cin, line) || line == "q") {
        stopped = true;
        break;
      }
      std::optional<Interval> mv;
      try {
        mv = parse_move(line, outer, g);
      } catch (const std::exception& e) {
        view << "  rejected: cannot parse the interval (" << e.what() << ")\n";
        continue;
      }
      if (auto v = validate_move(g, outer, *mv, Role::Black)) {
        view << "  rejected: " << rule_name(v->rule) << ": " << v->message << "\n";
        continue;
      }
      B = *mv;
      break;
    }
    if (stopped) break;
    RoundRecord rec;
    rec.index = k;
    rec.black = B;
    rec.black_ratio = outer ? B.length() / outer->length() : Scalar(1);
    WhiteMove wm;
    try {
      wm = w->respond(g, t.rounds, B);
    } catch (const ForfeitSignal& f) {
      t.forfeit = ForfeitRecord{Role::White, k, f.what()};
      break;
    }
    if (auto v = validate_move(g, B, wm.interval, Role::White)) throw IllegalMove(Role::White, k, *v);
    rec.white = wm.interval;
    rec.white_ratio = wm.interval.length() / B.length();
    rec.ann = std::move(wm.ann);
    view << "  B = " << show(B) << "\n  W = " << show(rec.white) << "\n  " << bar(B, rec.white) << "\n";
    t.rounds.push_back(std::move(rec));
  }
  if (!t.rounds.empty()) t.limit_enclosure = t.rounds.back().white;
  write_transcript(c, t, g);
  Json j;
  j["command"] = c.command;
  j["target"] = c.target;
  j["rounds_played"] = t.rounds.empty() ? 0 : t.rounds.size() - 1;
  j["forfeit"] = forfeit_json(t);
  if (t.rounds.empty()) {
    j["avoided"] = false;
    j["N"] = nullptr;
    j["K_observed"] = nullptr;
    j["gap_bound_ok"] = nullptr;
    j["audit_ok"] = true;
  } else {
    j.update(assess(*m, x, g, t, t));
  }
  return j;
}

void print_human(const Json& j, const std::string& indent = "") {
  for (const auto& [k, v] : j.items()) {
    if (v.is_object() && !v.empty() && indent.empty()) {
      std::cout << indent << k << ":\n";
      print_human(v, indent + "  ");
    } else {
      std::cout << indent << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schmidt games for expanding interval maps: simulate, verify and certify avoidance of a target."};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML-style key = value file; command-line flags take precedence");
  app.allow_config_extras(CLI::config_extras_mode::error);
  RunConfig c;
  bool json = false, print_config = false;
  std::string beta_game;
  app.add_flag("--json", json, "Print a single JSON summary object");
  app.add_flag("--print-config", print_config, "Print the resolved configuration as canonical JSON and exit");
  app.add_option("--model", c.model, "integer_base:B | gauss | beta:D1WORD | pathological | cantor_complement")
      ->capture_default_str();
  app.add_option("--target", c.target, "p/q, a decimal, alg:c0,c1,...@lo,hi or digits:s1,s2,...")->capture_default_str();
  app.add_option("--alpha", c.alpha, "White's ratio")->capture_default_str();
  app.add_option("--beta-game", beta_game, "Black's ratio (default 1/2; demo-pathological: 1/(4 i alpha))");
  app.add_option("--variant", c.variant, "classical | modified")->capture_default_str();
  app.add_option("--rounds", c.rounds, "Rounds after the opening")->capture_default_str();
  app.add_option("--seed", c.seed, "Adversary seed")->capture_default_str();
  app.add_option("--black", c.black, "greedy | random | pathological")->capture_default_str();
  app.add_option("--white", c.white, "master | trap (simulate only)")->capture_default_str();
  app.add_option("--trap-step", c.trap_step, "Generations per trap for the trap strategy")->capture_default_str();
  app.add_option("--budget", c.budget, "Phase 2 turn budget")->capture_default_str();
  app.add_option("--pathological-i", c.pathological_i, "Index i of the pathological adversary")->capture_default_str();
  app.add_option("--component", c.components, "model@target, repeatable (intersect)")->capture_default_str();
  app.add_option("--avoid-word", c.avoid_word, "Word to avoid: digits, or comma-separated symbols (dim)")
      ->capture_default_str();
  app.add_option("--depth", c.depth, "Cylinder generation (dim boxcount, beta)")->capture_default_str();
  app.add_option("--method", c.method, "oracle | boxcount (dim)")->capture_default_str();
  app.add_option("--digit-bound", c.digit_bound, "Largest Gauss digit in box counting")->capture_default_str();
  app.add_option("--d1-word", c.d1_word, "Terminating expansion of 1 (beta)")->capture_default_str();
  app.add_option("--out", c.out, "Write the transcript as JSON lines to this file");

  std::vector<CLI::App*> subs;
  subs.push_back(app.add_subcommand("simulate", "Play one game and write its transcript"));
  subs.push_back(app.add_subcommand("verify", "Master strategy against an adversary, then audit and certify"));
  subs.push_back(app.add_subcommand("intersect", "Interleave master strategies for several maps and targets"));
  subs.push_back(app.add_subcommand("beta", "Describe a beta-shift: forbidden words, C_b, cylinders"));
  subs.push_back(app.add_subcommand("dim", "Dimension estimate for the sequences avoiding a word"));
  subs.push_back(app.add_subcommand("demo-pathological", "Trap budget exhaustion on the pathological map"));
  subs.push_back(app.add_subcommand("play", "Play Black interactively against the master strategy"));
  for (auto* s : subs) s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::FileError& e) {
    std::cerr << "config error: config: " << e.what() << "\n";
    return 2;
  } catch (const CLI::RequiredError& e) {
    std::cerr << "config error: command: " << e.what() << "\n";
    return 2;
  } catch (const CLI::ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  for (auto* s : subs)
    if (s->parsed()) c.command = s->get_name();
  if (!beta_game.empty()) c.beta_game = beta_game;

  try {
    c = resolve(c);
    if (print_config) {
      std::cout << config_to_json(c).dump() << "\n";
      return 0;
    }
    Json out;
    if (c.command == "simulate") out = cmd_simulate(c);
    else if (c.command == "verify") out = cmd_verify(c);
    else if (c.command == "intersect") out = cmd_intersect(c);
    else if (c.command == "beta") out = cmd_beta(c);
    else if (c.command == "dim") out = cmd_dim(c);
    else if (c.command == "demo-pathological") out = cmd_demo(c);
    else out = cmd_play(c, json);
    if (json)
      std::cout << out.dump() << "\n";
    else
      print_human(out);
    bool ok = !out.contains("audit_ok") || out["audit_ok"].get<bool>();
    if (out.contains("avoided") && out["avoided"].is_boolean() && !out["avoided"].get<bool>()) ok = false;
    if (out.contains("demonstrated") && !out["demonstrated"].get<bool>()) ok = false;
    return ok ? 0 : 1;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
