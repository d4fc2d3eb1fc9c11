#include <doctest.h>

#include "oracle.hpp"
#include "wa/certificates.hpp"
#include "wa/natural.hpp"
#include "wa/parse.hpp"

using namespace wa;

namespace {
const Var x = var_named("x"), y = var_named("y"), z = var_named("z");
}

TEST_CASE("bounded formulas agree with the reference evaluator") {
  oracle::Gen g(3, {x, y, z});
  for (int i = 0; i < 400; ++i) {
    Formula f = g.delta0(3);
    for (unsigned a = 0; a < 3; ++a) {
      std::map<Var, Nat> as{{x, a}, {y, (a * 2) % 5}, {z, 4 - a}};
      NatAssignment na(as.begin(), as.end());
      Truth t = nat_evaluate(f, na);
      REQUIRE(t != Truth::Unknown);
      CHECK((t == Truth::True) == oracle::nat_truth(f, as, 0));
    }
  }
}

TEST_CASE("existential search") {
  CHECK(nat_evaluate(parse_formula("exists x (x * x = 49)"), {}, 100) == Truth::True);
  CHECK(nat_evaluate(parse_formula("exists x (S x = 0)"), {}, 1000) == Truth::Unknown);
  auto w = nat_witness(parse_formula("exists x (x * x = 49)"));
  REQUIRE(w);
  CHECK(w->at(x) == 7);
  NatOptions exact;
  exact.exact = true;
  CHECK(nat_evaluate(parse_formula("exists x (S x = 0)"), {}, exact) == Truth::False);
}

TEST_CASE("existential witnesses satisfy the body") {
  oracle::Gen g(5, {x, y, z});
  int found = 0;
  for (int i = 0; i < 200; ++i) {
    Formula body = g.delta0(2);
    Formula f = ex(x, ex(y, ex(z, body)));
    auto w = nat_witness(f, {}, NatOptions{.cap = 20});
    // the reference search over 0..6 finds a witness only if one exists
    bool ref = oracle::nat_truth(f, {}, 6);
    if (ref) CHECK(w.has_value());
    if (!w) continue;
    ++found;
    std::map<Var, Nat> a(w->begin(), w->end());
    for (Var v : {x, y, z}) a.emplace(v, 0);
    CHECK(oracle::nat_truth(body, a, 0));
  }
  CHECK(found > 50);
}

TEST_CASE("least witness") {
  auto w = nat_least_witness(x, parse_formula("x * x = 49"));
  REQUIRE(w);
  CHECK(*w == 7);
  CHECK_FALSE(nat_least_witness(x, parse_formula("S x = 0"), {}, 50));
}

TEST_CASE("certificates hold in the standard model") {
  Var v = var_named("v");
  Formula c = cert_formula(v);
  for (unsigned n = 0; n <= 60; ++n) CHECK(nat_evaluate(c, {{v, n}}) == Truth::True);
  CHECK(nat_evaluate(c, {{v, 17}}) == Truth::True);
  // the reference evaluator agrees where it is affordable
  for (unsigned n = 0; n <= 4; ++n) CHECK(oracle::nat_truth(c, {{v, n}}, 0));
}

TEST_CASE("evaluation errors") {
  CHECK_THROWS_AS(nat_evaluate(parse_formula("x = 0")), EvalError);
  CHECK(nat_value(parse_term("S S 0 * (3 + x)"), {{x, 4}}) == 14);
}
