#include <random>

#include "doctest.h"
#include "schmidt/beta_shift.hpp"
#include "schmidt/error.hpp"
#include "schmidt/models.hpp"

using namespace schmidt;

namespace {

Scalar q(const char* s) { return Scalar(parse_rational(s)); }

Scalar golden_conjugate() {
  // (sqrt5 - 1)/2 = 1/phi, as an element of Q(phi)
  BetaSystem sys("11");
  return sys.beta_inv();
}

// All generation-n cylinders of a finite-alphabet model.
std::vector<Cylinder> level(const MapModel& m, int n) {
  std::vector<Cylinder> cur{root_cylinder(m)};
  for (int j = 0; j < n; ++j) {
    std::vector<Cylinder> nxt;
    for (const auto& c : cur) {
      auto qy = children_meeting(m, c, c.closure(), Scalar(0));
      for (auto& ch : qy.children) nxt.push_back(std::move(ch));
    }
    cur = std::move(nxt);
  }
  return cur;
}

}  // namespace

TEST_CASE("cylinder examples") {
  IntegerBase f2(2);
  Cylinder c = cylinder(f2, {0, 1});
  CHECK(c.lo == q("1/4"));
  CHECK(c.hi == q("1/2"));
  Gauss g;
  Cylinder g1 = cylinder(g, {1});
  CHECK(g1.lo == q("1/2"));
  CHECK(g1.hi == q("1"));
  Cylinder g11 = cylinder(g, {1, 1});
  CHECK(g11.lo == q("1/2"));
  CHECK(g11.hi == q("2/3"));
  CHECK_THROWS_AS(cylinder(f2, {2}), InadmissibleWord);
  CHECK_THROWS_AS(cylinder(g, {0}), InadmissibleWord);
}

TEST_CASE("encode examples") {
  IntegerBase f3(3);
  CHECK(*encode(f3, q("5/9"), 2) == Word{1, 2});
  Gauss g;
  CHECK_FALSE(encode(g, q("2/5"), 3).has_value());
  CHECK(*encode(g, q("2/5"), 2) == Word{2, 2});
  CHECK(*encode(g, golden_conjugate(), 4) == Word{1, 1, 1, 1});
  // half-open conventions: 1/2 belongs to digit 2 for Gauss, to digit 1 in base 2
  CHECK(*encode(g, q("1/2"), 1) == Word{2});
  CHECK(*encode(IntegerBase(2), q("1/2"), 1) == Word{1});
}

TEST_CASE("contraction bounds") {
  Gauss g;
  CHECK(contraction_bound(g, 5) == q("1/4"));
  CHECK(contraction_bound(g, 0) == Scalar(1));
  CHECK(contraction_bound(IntegerBase(2), 3) == q("1/8"));
  CHECK_THROWS_AS(contraction_bound(Pathological(), 1), ModelError);
}

TEST_CASE("condition (ii) checks") {
  Gauss g;
  auto r = check_condition_ii(g, 2, 4, 1000, 1);
  CHECK(r.ok);
  CHECK(r.worst_ratio < q("1/4"));
  auto r5 = check_condition_ii(IntegerBase(5), 1, 1, 200, 2);
  CHECK(r5.ok);
  CHECK(r5.worst_ratio == q("1/5"));
  BetaModel golden(std::make_shared<BetaSystem>("11"));
  auto rb = check_condition_ii(golden, 3, 3, 500, 3);
  CHECK(rb.ok);
  // exhaustive over admissible words of length 6
  Scalar g3 = contraction_bound(golden, 3);
  for (const auto& c6 : level(golden, 6)) {
    Word pre(c6.word.begin(), c6.word.begin() + 3);
    CHECK(c6.length() / cylinder(golden, pre).length() <= g3);
  }
}

TEST_CASE("gauss two-step expansion") {
  CHECK(*gauss_two_step_derivative(q("3/7")) == Scalar(49));
  // 1/(x f(x))^2 with f(2/3) = 1/2
  CHECK(*gauss_two_step_derivative(q("2/3")) == Scalar(9));
  CHECK_FALSE(gauss_two_step_derivative(q("1/2")).has_value());
  auto rep = gauss_two_step_expansion_check(2000, 5);
  CHECK(rep.ok);
  CHECK(rep.checked == 2000);
  CHECK(rep.minimum >= q("9/4"));
}

TEST_CASE("endpoints_in examples") {
  auto e = endpoints_in(IntegerBase(2), {q("0"), q("1")}, 2);
  REQUIRE(e.finite());
  CHECK(e.points == std::vector<Scalar>{q("0"), q("1/4"), q("1/2"), q("3/4")});
  Gauss g;
  auto eg = endpoints_in(g, {q("1/3"), q("1")}, 1);
  REQUIRE(eg.finite());
  CHECK(eg.points == std::vector<Scalar>{q("1/3"), q("1/2"), q("1")});
  auto acc = endpoints_in(g, {q("0"), q("1/10")}, 1);
  CHECK_FALSE(acc.finite());
  CHECK(acc.accumulation == std::vector<Scalar>{q("0")});
  REQUIRE(acc.tails.size() == 1);
  CHECK(acc.tails[0].from == 10);
  CHECK(acc.points.empty());
  CHECK_THROWS_AS(endpoints_in(Pathological(), {q("0"), q("1")}, 1), ModelError);
}

TEST_CASE("same-generation cylinders tile the interval") {
  std::vector<ModelPtr> models{make_model("integer_base:2"), make_model("integer_base:3"), make_model("beta:11"),
                               make_model("beta:111"), make_model("beta:101")};
  for (const auto& m : models) {
    for (int n = 1; n <= 6; ++n) {
      auto cyl = level(*m, n);
      Scalar total(0);
      for (std::size_t i = 0; i < cyl.size(); ++i) {
        CHECK(cyl[i].length().sign() > 0);
        total += cyl[i].length();
        if (i) CHECK(cyl[i - 1].hi == cyl[i].lo);
        Cylinder parent = cylinder(*m, Word(cyl[i].word.begin(), cyl[i].word.end() - 1));
        CHECK(parent.closure().contains(cyl[i].closure()));
      }
      CHECK(total == Scalar(1));
      CHECK(cyl.front().lo == Scalar(0));
    }
  }
  Gauss g;
  Scalar total(0);
  for (Symbol a = 1; a <= 20; ++a) {
    Cylinder c = cylinder(g, {a});
    total += c.length();
    for (Symbol b = 1; b <= 20; ++b) {
      Cylinder d = cylinder(g, {a, b});
      CHECK(c.closure().contains(d.closure()));
      if (b > 1) CHECK(cylinder(g, {a, b - 1}).closure().meets(d.closure()));
    }
  }
  CHECK(total == Scalar(1) - q("1/21"));
}

TEST_CASE("encode and cylinder agree") {
  std::mt19937_64 rng(17);
  std::vector<ModelPtr> models{make_model("integer_base:2"), make_model("integer_base:7"), make_model("gauss"),
                               make_model("beta:11"), make_model("beta:1101")};
  for (const auto& m : models) {
    for (int i = 0; i < 50; ++i) {
      long d = std::uniform_int_distribution<long>(2, 1L << 30)(rng);
      Scalar x(Rational(std::uniform_int_distribution<long>(1, d - 1)(rng), d));
      auto w = encode(*m, x, 8);
      if (!w) continue;
      Cylinder c = cylinder(*m, *w);
      CHECK(c.closure().contains(x));
      if (m->half_open_upper())
        CHECK(x < c.hi);
      else
        CHECK(c.lo < x);
    }
  }
}

TEST_CASE("branches expand") {
  std::mt19937_64 rng(3);
  Gauss g;
  for (int i = 0; i < 200; ++i) {
    Symbol a = std::uniform_int_distribution<Symbol>(1, 50)(rng);
    Cylinder c = cylinder(g, {a});
    Scalar u(Rational(std::uniform_int_distribution<long>(1, 999)(rng), 1000));
    Scalar v(Rational(std::uniform_int_distribution<long>(1, 999)(rng), 1000));
    Scalar x = c.lo + u * c.length(), y = c.lo + v * c.length();
    CHECK(abs(g.forward(a, x) - g.forward(a, y)) >= abs(x - y));
  }
}

TEST_CASE("pathological branch structure") {
  Pathological p;
  for (long i : {1L, 2L, 5L}) {
    Interval r{Scalar(pow2(-i)), Scalar(pow2(-(i - 1)))};
    // query the open inside of the region, one level deep
    Scalar w = r.length() / Scalar(4 * i);
    auto bq = p.branches_meeting(0, r.lo + w / Scalar(2), r.hi - w / Scalar(2), w);
    CHECK(bq.symbols.size() == static_cast<std::size_t>(2 * i));
    CHECK_FALSE(bq.complete);  // the undefined parts recurse
    // inside an undefined part the same pattern repeats
    Interval u{r.lo, r.lo + w};
    Scalar w2 = w / Scalar(4 * i);
    auto bq2 = p.branches_meeting(0, u.lo + w2 / Scalar(2), u.hi - w2 / Scalar(2), w2);
    CHECK(bq2.symbols.size() == static_cast<std::size_t>(2 * i));
    for (Symbol s : bq2.symbols) {
      Interval c = p.branch_closure(0, s);
      CHECK(c.length() == w2);
      CHECK(u.contains(c));
    }
  }
  Symbol s = p.parse_symbol("5.0.3");
  CHECK(p.symbol_name(s) == "5.0.3");
  CHECK_THROWS_AS(p.parse_symbol("5.1.3"), UnknownSymbol);
}

TEST_CASE("cantor complement branches") {
  CantorComplement c;
  CHECK(CantorComplement::removed_interval(0) == Interval{q("1/3"), q("2/3")});
  CHECK(CantorComplement::removed_interval(1) == Interval{q("1/9"), q("2/9")});
  CHECK(CantorComplement::removed_interval(2) == Interval{q("7/9"), q("8/9")});
  auto bq = c.branches_meeting(0, Scalar(0), Scalar(1), q("1/27"));
  CHECK(bq.symbols.size() == 7);
  CHECK_FALSE(bq.complete);
  for (std::size_t i = 1; i < bq.symbols.size(); ++i)
    CHECK(c.branch_closure(0, bq.symbols[i - 1]).hi < c.branch_closure(0, bq.symbols[i]).lo);
  CHECK(contraction_bound(c, 2) == q("1/9"));
}

TEST_CASE("model factory") {
  CHECK(make_model("integer_base:3")->name() == "integer_base:3");
  CHECK(make_model_json(nlohmann::json{{"kind", "beta"}, {"d1_word", "11"}})->name() == "beta:11");
  CHECK(model_to_json(*make_model("gauss")) == nlohmann::json{{"kind", "gauss"}});
  CHECK_THROWS_AS(make_model("integer_base:1"), ModelError);
  CHECK_THROWS_AS(make_model("hyperbolic"), ModelError);
}
