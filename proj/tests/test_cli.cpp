#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "schmidt/run_config.hpp"

using namespace schmidt;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
};

Result sh(const std::string& cmd) {
  Result r{0, ""};
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, p)) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string cli() { return SCHMIDT_CLI_PATH; }

Result run(const std::string& args) { return sh(cli() + " " + args); }

fs::path scratch() {
  fs::path d = fs::temp_directory_path() / ("schmidt_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

bool valid(const std::string& schema, const std::string& jsonl) {
  fs::path tmp = scratch() / "doc.jsonl";
  std::ofstream(tmp, std::ios::binary) << jsonl;
  std::string cmd = "python3 " + std::string(SCHMIDT_SCHEMA_DIR) + "/../tests/validate_schema.py " +
                    std::string(SCHMIDT_SCHEMA_DIR) + "/" + schema + " < " + tmp.string() + " 2>&1";
  Result r = sh(cmd);
  if (r.code != 0) MESSAGE(r.out);
  return r.code == 0;
}

}  // namespace

TEST_CASE("verify example") {
  Result r = run("verify --model integer_base:2 --target 1/3 --alpha 1/4 --beta-game 1/2 --rounds 200 --seed 7 --json");
  CHECK(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["avoided"] == true);
  CHECK(j["N"] == 403);
  CHECK(j["gap_bound_ok"] == true);
  CHECK(j["K_observed"].get<int>() <= 13);
  CHECK(valid("summary_verify.schema.json", r.out));
  // human-readable output carries the same fields
  Result h = run("verify --seed 7");
  CHECK(h.code == 0);
  CHECK(h.out.find("avoided: true") != std::string::npos);
}

TEST_CASE("too short a game is not certified") {
  Result r = run("verify --rounds 10 --json");
  CHECK(r.code == 1);
  Json j = Json::parse(r.out);
  CHECK(j["avoided"] == false);
  CHECK(j["audit_ok"] == true);
}

TEST_CASE("dim example") {
  Result r = run("dim --model integer_base:2 --avoid-word 010 --method oracle --json");
  CHECK(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["estimate"].get<double>() == doctest::Approx(0.8114).epsilon(1e-4));
  CHECK(j["certified_direction"] == "lower");
  CHECK(valid("summary_dim.schema.json", r.out));
  Result b = run("dim --model integer_base:3 --avoid-word 00 --method boxcount --depth 10 --json");
  CHECK(b.code == 0);
  CHECK(Json::parse(b.out)["count"] == 24960);
  CHECK(valid("summary_dim.schema.json", b.out));
  Result g = run("dim --model gauss --avoid-word 1,1 --method boxcount --depth 4 --digit-bound 5 --json");
  CHECK(g.code == 0);
  CHECK(Json::parse(g.out)["digit_bound"] == 5);
  CHECK(run("dim --model gauss --avoid-word 1,1 --method oracle").code == 2);
}

TEST_CASE("beta command") {
  Result r = run("beta --d1-word 11 --depth 5 --json");
  CHECK(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["forbidden_words"] == Json::array({"11"}));
  CHECK(j["cylinders"].size() == 13);
  CHECK(valid("summary_beta.schema.json", r.out));
  Result bad = run("beta --d1-word 2");
  CHECK(bad.code == 2);
}

TEST_CASE("config errors exit 2 and name the field") {
  struct Case {
    const char* args;
    const char* field;
  };
  for (Case c : {Case{"verify --alpha abc", "alpha"}, Case{"verify --beta-game 2", "beta_game"},
                 Case{"verify --model nope", "model"}, Case{"verify --target digits:", "target"},
                 Case{"verify --black nobody", "black"}, Case{"intersect --component integer_base:2", "components"},
                 Case{"verify --rounds -3", "rounds"}, Case{"dim --avoid-word 2", "avoid_word"},
                 Case{"verify --config /nonexistent.toml", "config"}}) {
    CAPTURE(c.args);
    Result r = sh(cli() + " " + c.args + " 2>&1");
    CHECK(r.code == 2);
    CHECK(r.out.find(c.field) != std::string::npos);
  }
  Result none = sh(cli() + " 2>&1");
  CHECK(none.code == 2);
}

TEST_CASE("config file precedence") {
  fs::path f = scratch() / "run.toml";
  std::ofstream(f) << "# a run\nmodel = \"integer_base:3\"\nalpha = 0.125\nbeta-game = \"1/3\"\nrounds = 50\nseed = 4\n";
  Json j = Json::parse(run("verify --config " + f.string() + " --print-config").out);
  CHECK(j["model"] == "integer_base:3");
  CHECK(j["alpha"] == "1/8");
  CHECK(j["beta_game"] == "1/3");
  CHECK(j["rounds"] == 50);
  CHECK(j["black"] == "greedy");  // default
  Json k = Json::parse(run("verify --config " + f.string() + " --rounds 70 --alpha 1/4 --print-config").out);
  CHECK(k["rounds"] == 70);
  CHECK(k["alpha"] == "1/4");
  CHECK(k["seed"] == 4);
  CHECK(valid("run_config.schema.json", k.dump() + "\n"));

  fs::path bad = scratch() / "bad.toml";
  std::ofstream(bad) << "colour = 3\n";
  Result r = sh(cli() + " verify --config " + bad.string() + " 2>&1");
  CHECK(r.code == 2);
  CHECK(r.out.find("colour") != std::string::npos);
}

TEST_CASE("configs round-trip through canonical JSON") {
  RunConfig c;
  c.command = "intersect";
  c.alpha = "0.25";
  c.beta_game = "2/4";
  Json j = config_to_json(resolve(c));
  CHECK(j["alpha"] == "1/4");
  CHECK(j["beta_game"] == "1/2");
  CHECK(config_to_json(config_from_json(j)) == j);
  CHECK(config_to_json(resolve(config_from_json(j))) == j);
  CHECK(config_to_json(config_from_json(j)).dump() == j.dump());

  RunConfig d;
  d.command = "demo-pathological";
  Json dj = config_to_json(resolve(d));
  CHECK(dj["beta_game"] == "1/5");
  CHECK(dj["model"] == "pathological");

  Json bad = j;
  bad["colour"] = 1;
  CHECK_THROWS_AS(config_from_json(bad), ConfigError);
  Json wrong = j;
  wrong["rounds"] = "many";
  try {
    config_from_json(wrong);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "rounds");
  }
  // the CLI prints the same canonical form
  Result r = run("intersect --alpha 0.25 --beta-game 2/4 --print-config");
  CHECK(Json::parse(r.out) == j);
}

TEST_CASE("repeated runs are byte-identical") {
  fs::path a = scratch() / "a.jsonl", b = scratch() / "b.jsonl";
  Result r1 = run("verify --seed 3 --json --out " + a.string());
  Result r2 = run("verify --seed 3 --json --out " + b.string());
  CHECK(r1.out == r2.out);
  CHECK(slurp(a) == slurp(b));
  CHECK(valid("transcript_line.schema.json", slurp(a)));
  Result r3 = run("simulate --seed 4 --black random --json --out " + b.string());
  CHECK(slurp(a) != slurp(b));
  CHECK(valid("summary_simulate.schema.json", r3.out));
}

TEST_CASE("simulate variants") {
  fs::path t = scratch() / "mod.jsonl";
  Result r = run("simulate --variant modified --black random --rounds 30 --json --out " + t.string());
  CHECK(r.code == 0);
  std::string text = slurp(t);
  CHECK(text.find("\"ratios\"") != std::string::npos);
  CHECK(valid("transcript_line.schema.json", text));
  Result trap = run("simulate --white trap --trap-step 2 --black random --rounds 30 --json");
  CHECK(trap.code == 0);
  CHECK(Json::parse(trap.out)["forfeit"].is_null());
}

TEST_CASE("intersect") {
  Result r = run("intersect --component integer_base:2@1/3 --component integer_base:3@1/2 --black random --seed 7 "
                 "--rounds 500 --json");
  CHECK(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["avoided"] == true);
  CHECK(j["components"].size() == 2);
  CHECK(j["effective_beta"] == "1/16");
  CHECK(valid("summary_intersect.schema.json", r.out));
}

TEST_CASE("demo-pathological") {
  Result r = run("demo-pathological --json");
  CHECK(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["budget_exceeded"] == true);
  CHECK(j["control"]["budget_exceeded"] == false);
  CHECK(j["forfeit"]["round"] == 500);
  CHECK(valid("summary_demo_pathological.schema.json", r.out));
}

TEST_CASE("play against a conceding human") {
  Result r = sh("yes c | head -n 201 | " + cli() + " play --rounds 200 --json 2>/dev/null");
  CHECK(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["avoided"] == true);
  CHECK(j["rounds_played"] == 200);
  CHECK(valid("summary_play.schema.json", r.out));

  // an illegal move is refused with the rule and the human tries again
  Result t = sh("printf '0 2\\n1/2 1/2\\nzero one\\n0 1\\nc\\nq\\n' | " + cli() + " play --rounds 5");
  CHECK(t.out.find("rejected: containment") != std::string::npos);
  CHECK(t.out.find("rejected: degenerate") != std::string::npos);
  CHECK(t.out.find("rejected: cannot parse") != std::string::npos);
  CHECK(t.out.find("round 1 Black>") != std::string::npos);
  CHECK(t.out.find("#") != std::string::npos);
}
