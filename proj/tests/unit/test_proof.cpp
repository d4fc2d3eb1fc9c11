#include <doctest.h>

#include "oracle.hpp"
#include "wa/certificates.hpp"
#include "wa/corpus.hpp"
#include "wa/parse.hpp"
#include "wa/proof.hpp"
#include "wa/prover.hpp"

using namespace wa;

namespace {
const Var x = var_named("x"), y = var_named("y"), z = var_named("z");

Step step(Rule r, Formula f, std::vector<std::size_t> prem = {}) {
  Step s;
  s.rule = r;
  s.formula = std::move(f);
  s.premises = std::move(prem);
  return s;
}
}  // namespace

TEST_CASE("kernel accepts small hand proofs") {
  Proof p;
  Step r = step(Rule::Refl, parse_formula("0 = 0"));
  r.term = zero();
  p.steps.push_back(r);
  CHECK(check(p, {{}, parse_formula("0 = 0")}).ok);

  // A -> A
  Proof q;
  Formula a = parse_formula("0 = 1");
  q.steps.push_back(step(Rule::Assume, a));
  q.steps.push_back(step(Rule::ImpI, imp(a, a), {0, 0}));
  CHECK(check(q, {{}, imp(a, a)}).ok);

  // axiom leaf
  Proof ax;
  Step s = step(Rule::Axiom, parse_formula("2 + 2 = 4"));
  s.axiom = {"R1", {2, 2}};
  ax.steps.push_back(s);
  CHECK(check(ax, {{}, parse_formula("2 + 2 = 4"), "R0", 2}).ok);
  CHECK_FALSE(check(ax, {{}, parse_formula("2 + 2 = 4"), "R0", 1}).ok);
}

TEST_CASE("kernel rejects broken proofs") {
  Formula a = parse_formula("0 = 1"), b = parse_formula("1 = 1");
  Proof p;
  p.steps.push_back(step(Rule::Hyp, imp(a, b)));
  p.steps.push_back(step(Rule::Hyp, b));  // the wrong minor premise
  p.steps.push_back(step(Rule::ImpE, b, {0, 1}));
  auto res = check(p, {{imp(a, b), b}, b});
  CHECK_FALSE(res.ok);
  CHECK(res.step == 2);

  // an open assumption cannot be the conclusion
  Proof open;
  open.steps.push_back(step(Rule::Assume, a));
  CHECK_FALSE(check(open, {{}, a}).ok);

  // the eigenvariable may not occur free in an open hypothesis
  Proof eig;
  Formula px = parse_formula("x = 0");
  eig.steps.push_back(step(Rule::Assume, px));
  Step g = step(Rule::AllI, all(x, px), {0});
  g.var = x;
  eig.steps.push_back(g);
  CHECK_FALSE(check(eig, {{}, all(x, px)}).ok);

  // an axiom step must match its schema instance
  Proof bad;
  Step s = step(Rule::Axiom, parse_formula("2 + 2 = 5"));
  s.axiom = {"R1", {2, 2}};
  bad.steps.push_back(s);
  CHECK_FALSE(check(bad, {{}, parse_formula("2 + 2 = 5")}).ok);
}

TEST_CASE("delta0 proofs") {
  auto r = prove_delta0(parse_formula("2 + 2 = 4"), true);
  CHECK(check(r).ok);
  auto leaves = axiom_leaves(r.proof);
  CHECK_FALSE(leaves.empty());
  CHECK(leaves.front().schema == "R1");

  auto n = prove_delta0(parse_formula("2 = 3"), false);
  CHECK(check(n).ok);
  CHECK(equal(n.proof.conclusion(), parse_formula("~2 = 3")));
  bool has_r3 = false;
  for (auto& l : axiom_leaves(n.proof)) has_r3 |= l.schema == "R3";
  CHECK(has_r3);

  CHECK(check(prove_delta0(parse_formula("forall y <= 2 (y <= 2)"), true)).ok);
  CHECK_THROWS_AS(prove_delta0(parse_formula("2 = 3"), true), ProofError);
}

TEST_CASE("random closed delta0 sentences are proved with the right polarity") {
  oracle::Gen g(23, {x, y, z});
  int n = 0;
  for (int i = 0; i < 150; ++i) {
    Formula f = substitute(g.delta0(3), Subst{{x, num(1)}, {y, num(2)}, {z, num(0)}});
    bool truth = oracle::nat_truth(f, {}, 0);
    auto r = prove_delta0(f, truth);
    auto res = check(r);
    CHECK_MESSAGE(res.ok, render(f) << ": " << res.message);
    CHECK(equal(r.goal.conclusion, truth ? f : neg(f)));
    ++n;
  }
  CHECK(n == 150);
}

TEST_CASE("sigma1 proofs") {
  auto r = prove_sigma1(parse_formula("exists x (x * x = 4)"));
  CHECK(check(r).ok);
  CHECK(r.goal.theory == "R0");
  auto c = bracket(parse_formula("exists x (0 <= x & 0 = 0)"));
  auto rc = prove_sigma1(c.certified);
  CHECK(check(rc).ok);
  CHECK(equal(rc.proof.conclusion(), c.certified));
  CHECK_THROWS_AS(prove_sigma1(parse_formula("exists x (S x = 0)"), ProverOptions{.witness_cap = 50}), ProofError);
}

TEST_CASE("wb split") {
  for (std::uint64_t n = 0; n <= 3; ++n)
    for (auto v : {WbSplit::Lt, WbSplit::Gt, WbSplit::Dichotomy}) {
      auto r = prove_wb_split(n, v);
      CHECK(check(r).ok);
      CHECK(equal(r.proof.conclusion(), wb_split_formula(n, v)));
    }
}

TEST_CASE("comparison refutations") {
  auto pairs = comparison_pairs();
  for (std::size_t i = 0; i < 4; ++i) {
    auto& p = pairs[i];
    auto r = prove_not_comparison(p.sigma, p.sigma_p, ComparisonMode::LeBlocksLt);
    CHECK(check(r).ok);
    CHECK(equal(r.proof.conclusion(), neg(comparison_formula(wc_lt(p.sigma_p, p.sigma)))));
    if (p.a < p.b) {
      auto s = prove_not_comparison(p.sigma, p.sigma_p, ComparisonMode::LtBlocksLe);
      CHECK(check(s).ok);
      CHECK(equal(s.proof.conclusion(), neg(comparison_formula(wc_le(p.sigma_p, p.sigma)))));
    }
  }
}

TEST_CASE("proof text round-trip") {
  auto r = prove_sigma1(parse_formula("exists x (x + x = 4)"));
  Proof back = proof_from_text(to_text(r.proof));
  CHECK(back.size() == r.proof.size());
  CHECK(check(back, r.goal).ok);
  CHECK_THROWS_AS(proof_from_text("0\tNoSuchRule\t-\t-\t0 = 0\n"), std::invalid_argument);
}

TEST_CASE("step limit") {
  ProverOptions tiny;
  tiny.max_steps = 3;
  CHECK_THROWS_AS(prove_sigma1(parse_formula("exists x (x * x = 49)"), tiny), ProofError);
}
