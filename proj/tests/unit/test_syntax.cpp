#include <doctest.h>

#include <algorithm>

#include "oracle.hpp"
#include "wa/corpus.hpp"
#include "wa/parse.hpp"
#include "wa/syntax.hpp"

using namespace wa;

namespace {
const Var x = var_named("x"), y = var_named("y"), z = var_named("z");
}

TEST_CASE("parse builds the expected trees") {
  CHECK(equal(parse_formula("0 = 0"), eq(zero(), zero())));
  Formula hand = ex(x, conj(le(var(x), var(var_named("v"))), eq(succ(var(x)), var(var_named("v")))));
  CHECK(equal(parse_formula("exists x (x <= v & S x = v)"), hand));
  CHECK_THROWS_AS(parse_formula("x + y"), SyntaxError);
  CHECK_THROWS_AS(parse_formula("exists x"), SyntaxError);
  CHECK_THROWS_AS(parse_formula("Q(x)"), SyntaxError);
}

TEST_CASE("numerals are S-chains") {
  CHECK(render(num(0)) == "0");
  CHECK(render(num(3)) == "S S S 0");
  Term t = zero();
  for (int i = 0; i < 3; ++i) t = succ(t);
  CHECK(equal(t, num(3)));
  CHECK(equal(parse_term("S S S 0"), num(3)));
  CHECK(equal(parse_term("3"), num(3)));
  CHECK(depth(num(3)) == 3);
}

TEST_CASE("render and parse round-trip") {
  oracle::Gen g(7, {x, y, z});
  for (int i = 0; i < 300; ++i) {
    Formula f = g.delta0(3);
    CHECK(equal(parse_formula(render(f)), f));
    CHECK(equal(parse_tree_formula(render_tree(f)), f));
  }
  for (const auto& s : sigma1_corpus()) {
    Formula f = parse_formula(s.text);
    CHECK(equal(parse_formula(render(f)), f));
  }
}

TEST_CASE("substitution avoids capture") {
  Formula f = eq(var(x), var(x));
  CHECK(equal(substitute(f, x, num(2)), eq(num(2), num(2))));
  Formula g = ex(y, eq(var(y), var(x)));
  Formula r = substitute(g, x, var(y));
  CHECK(free_vars(r) == std::vector<Var>{y});
  CHECK(r->kind == FKind::Ex);
  CHECK(r->var != y);
  CHECK(alpha_equal(r, ex(z, eq(var(z), var(y)))));
}

TEST_CASE("substitution agrees with evaluation under the updated assignment") {
  oracle::Gen g(11, {x, y, z});
  for (int i = 0; i < 200; ++i) {
    Formula f = g.delta0(3);
    Term t = g.term(1);
    std::map<Var, Nat> a{{x, 2}, {y, 1}, {z, 3}};
    auto b = a;
    b[x] = oracle::term_value(t, a);
    CHECK(oracle::nat_truth(substitute(f, x, t), a, 0) == oracle::nat_truth(f, b, 0));
  }
}

TEST_CASE("classification") {
  CHECK(classify(parse_formula("x0 + x1 = x2")) == SyntacticClass::PureDelta0);
  CHECK(classify(parse_formula("S(S 0) = x")) == SyntacticClass::Delta0);
  CHECK(classify(parse_formula("exists x exists y <= x (y * y = x)")) == SyntacticClass::PureOneSigma1);
  CHECK(classify(parse_formula("exists x exists y (x = y)")) == SyntacticClass::PureSigma1);
  CHECK(classify(parse_formula("exists x (x * x = 4)")) == SyntacticClass::Sigma1);
  CHECK(classify(parse_formula("forall x (x = x)")) == SyntacticClass::Other);
  CHECK(classify(parse_formula("~exists x (x = 0)")) == SyntacticClass::Other);
  CHECK(in_class(parse_formula("x0 + x1 = x2"), SyntacticClass::Sigma1));
  CHECK_FALSE(in_class(parse_formula("S(S 0) = x"), SyntacticClass::PureSigma1));
}

TEST_CASE("free variables") {
  CHECK(free_vars(parse_formula("0 = 0")).empty());
  CHECK(free_vars(parse_formula("exists y (y <= x)")) == std::vector<Var>{x});
  for (const auto& s : pure_delta0_corpus()) {
    Formula f = parse_formula(s);
    CHECK(is_pure_delta0(f));
    CHECK_FALSE(free_vars(f).empty());
  }
}

TEST_CASE("identity axioms follow the arities") {
  CHECK(id_axioms(Signature::identity_only()).size() == 3);
  CHECK(id_axioms(Signature::La()).size() == 3 + 4);
  CHECK(id_axioms(Signature::Lap()).size() == 3 + 5);
  // the count oracle: one per non-constant function and per relation
  for (const auto& sig : {Signature::La(), Signature::Lap()}) {
    std::size_t n = 3;
    for (auto& [name, ar] : sig.functions) n += ar > 0;
    n += sig.relations.size();
    CHECK(id_axioms(sig).size() == n);
  }
}

TEST_CASE("alpha equivalence") {
  CHECK(alpha_equal(parse_formula("exists x (x = 0)"), parse_formula("exists y (y = 0)")));
  CHECK_FALSE(alpha_equal(parse_formula("exists x (x = y)"), parse_formula("exists y (y = y)")));
  CHECK(equal(alpha_canonical(parse_formula("forall x exists y (x = y)")),
              alpha_canonical(parse_formula("forall z exists x (z = x)"))));
}

TEST_CASE("fresh variables avoid the used ones") {
  std::vector<Var> used{0, 1, 3};
  Var v = fresh_var(used);
  CHECK(std::find(used.begin(), used.end(), v) == used.end());
  CHECK(var_name(var_named("x")) == "x");
  CHECK(var_name(var_named("v12")) == "v12");
}
