#include <doctest.h>

#include <algorithm>

#include "oracle.hpp"
#include "wa/certificates.hpp"
#include "wa/models.hpp"
#include "wa/natural.hpp"
#include "wa/parse.hpp"
#include "wa/theories.hpp"

using namespace wa;

namespace {
const Var x = var_named("x"), y = var_named("y");
const Signature La = Signature::La();

bool contains(const std::vector<Formula>& fs, const Formula& f) {
  return std::any_of(fs.begin(), fs.end(), [&](const Formula& g) { return alpha_equal(f, g); });
}

// R1, R2: (n+1)^2 each; R3: (n+1)n; R4: n+1; R5': pairs m <= k
std::size_t r0_count(std::size_t n) { return 2 * (n + 1) * (n + 1) + (n + 1) * n + (n + 1) + (n + 1) * (n + 2) / 2; }
}  // namespace

TEST_CASE("R0 instance counts") {
  for (std::size_t n = 0; n <= 6; ++n) {
    CHECK(axioms_R0(n).size() == r0_count(n));
    CHECK(axioms_R0p(n).size() == r0_count(n) + n + 1);
    CHECK(axioms_R(n).size() == r0_count(n) - (n + 1) * (n + 2) / 2 + n + 1);
  }
  CHECK(axioms_R0(1).size() == 15);
}

TEST_CASE("R0 at cutoff 1 has the listed instances") {
  auto ax = axioms_R0(1);
  CHECK(contains(ax, parse_formula("0 + 1 = 1")));
  CHECK(contains(ax, parse_formula("~0 = 1")));
  CHECK(contains(ax, parse_formula("forall x (x <= 1 -> x = 0 | x = 1)")));
  CHECK(contains(ax, parse_formula("0 <= 1")));
}

TEST_CASE("axioms hold in the standard model and in large clipped models") {
  Structure M = clipped_model(40);
  for (const auto& a : axioms_R0(4)) {
    // R4 and R5' quantify without a bound; the reference search covers them
    Truth t = nat_evaluate(a);
    CHECK(t != Truth::False);
    if (t == Truth::Unknown) CHECK(oracle::nat_truth(a, {}, 60));
    CHECK(evaluate(M, a));
  }
  // R5 is true in N but unbounded
  for (const auto& a : axioms_R(3)) CHECK(evaluate(M, a));
}

TEST_CASE("axiom references") {
  AxiomRef r = parse_axiom_ref("R1 2 3");
  CHECK(r.schema == "R1");
  CHECK(to_string(r) == "R1 2 3");
  CHECK(equal(axiom_instance(r), parse_formula("2 + 3 = 5")));
  CHECK(equal(axiom_instance({"R2", {2, 3}}), parse_formula("2 * 3 = 6")));
  CHECK_THROWS_AS(axiom_instance({"R3", {2, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(axiom_instance({"R9", {1}}), std::invalid_argument);
  CHECK(axiom_in_theory({"R1", {1, 1}}, "R0", 1));
  CHECK_FALSE(axiom_in_theory({"R1", {1, 2}}, "R0", 1));
  CHECK_FALSE(axiom_in_theory({"R5", {1}}, "R0", 5));
  CHECK(axiom_in_theory({"P", {1}}, "R0p", 1));
  CHECK_FALSE(axiom_in_theory({"P", {1}}, "R0", 1));
}

TEST_CASE("wb relativization") {
  Translation c = Translation::relativization(La, wb_formula(0), "wb");
  Formula r5 = axiom_instance({"R5", {2}});
  Formula t = translate(c, r5);
  Formula want = all(x, imp(wb_formula(x), parse_formula("x <= 2 | 2 <= x")));
  CHECK(alpha_equal(t, want));
  for (int K : {3, 8}) CHECK(evaluate(clipped_model(K), t));
}

TEST_CASE("internal structures") {
  Translation c = Translation::relativization(La, wb_formula(0), "wb");
  Structure M = clipped_model(10);
  Structure N = internal_structure(M, c);
  CHECK(N.size == M.size);
  Translation none = Translation::relativization(La, parse_formula("~v0 = v0"), "empty");
  CHECK_THROWS_AS(internal_structure(M, none), TranslationError);
  Translation id = Translation::identity_on(La);
  CHECK(internal_structure(M, id) == M);
}

TEST_CASE("translation truth transfer") {
  // M |= tau(phi) iff the internal structure |= phi
  Translation half = Translation::relativization(La, parse_formula("v0 <= 3"), "half");
  Structure M = clipped_model(3);
  Structure N = internal_structure(M, half);
  for (const char* s : {"forall x (x <= 3)", "exists x (S x = x)", "forall x exists y (x + y = 3)"}) {
    Formula f = parse_formula(s);
    CHECK(evaluate(M, translate(half, f)) == evaluate(N, f));
  }
}

TEST_CASE("parameter axioms") {
  Translation id = Translation::identity_on(La);
  ParamAxiom p{parse_formula("x <= y"), {x, y}, [](const std::vector<std::uint64_t>& t) { return t[0] <= t[1]; }};
  auto ax = axioms_param(id, {p}, 2);
  CHECK(ax.size() == axioms_R0(2).size() + 6);
  CHECK(axioms_param(id, {}, 2).size() == axioms_R0(2).size());
}

TEST_CASE("ovee and owedge") {
  Signature su;
  su.name = "U";
  su.constants = {{"e", 0}};
  su.functions = {{"f", 2}};
  Sym f = intern("f"), e = intern("e");
  TheorySpec U = finite_theory("U", su, {all(x, eq(app(f, {constant(e), var(x)}), var(x)))});
  Signature sv;
  sv.name = "V";
  sv.relations = {{"Q", 1}};
  TheorySpec V = finite_theory("V", sv, {ex(x, rel(intern("Q"), {var(x)}))});
  Combined o = ovee(U, V);
  auto ax = o.theory.generator(0);
  CHECK(ax.size() == 2);
  // a model of ovee is a model of one side, read through the renaming
  SearchOptions so;
  so.fix_first_constant = false;
  std::size_t n = enumerate_structures(o.theory.signature, 2, ax, [&](const Structure& M) {
    Structure mu = reduct(M, su, o.left_names);
    Structure mv = reduct(M, sv, o.right_names);
    CHECK((evaluate(mu, U.generator(0)[0]) || evaluate(mv, V.generator(0)[0])));
    return true;
  }, so);
  CHECK(n > 0);
  Combined w = owedge(U, V);
  CHECK(find_model(w.theory.signature, 2, w.theory.generator(0)).has_value());
  CHECK_FALSE(find_model(w.theory.signature, 1, w.theory.generator(0)).has_value());
}

TEST_CASE("map files") {
  Translation t = translation_from_text("source La\ntarget La\ndomain v0 <= 5\n");
  CHECK(equal(t.domain, parse_formula("v0 <= 5")));
  CHECK_THROWS(translation_from_text("source Nope\n"));
}
