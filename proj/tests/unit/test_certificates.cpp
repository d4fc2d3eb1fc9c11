#include <doctest.h>

#include "oracle.hpp"
#include "wa/certificates.hpp"
#include "wa/corpus.hpp"
#include "wa/models.hpp"
#include "wa/natural.hpp"
#include "wa/parse.hpp"

using namespace wa;

namespace {
const Var x = var_named("x"), y = var_named("y"), v = var_named("v");
const Signature La = Signature::La();

Structure with_p(const Structure& M, bool value) {
  Structure N(Signature::Lap(), M.size);
  N.constants = M.constants;
  N.functions = M.functions;
  for (std::size_t i = 0; i < M.relations.size(); ++i) N.relations[N.relation_index(intern(M.sig.relations[i].first))] = M.relations[i];
  N.relations[N.relation_index(sym::P)].assign(M.size, value ? 1 : 0);
  return N;
}
}  // namespace

TEST_CASE("ten conjuncts") {
  CHECK(cert_conjuncts(v).size() == 10);
  CHECK(cert_conjuncts(v, true).size() == 10);
  // the naive and bounded forms agree in clipped models
  for (int K : {3, 7, 13}) {
    Structure M = clipped_model(K);
    for (int e = 0; e <= K; ++e)
      CHECK(evaluate(M, cert_formula(v), {{v, e}}) == evaluate(M, cert_formula(v, true), {{v, e}}));
  }
}

TEST_CASE("cert implies wb in every structure of size <= 2") {
  Formula f = ex(v, conj(cert_formula(v), neg(wb_formula(v))));
  CHECK_FALSE(find_model(La, 1, {f}).has_value());
  CHECK_FALSE(find_model(La, 2, {f}).has_value());
}

TEST_CASE("corpus labels") {
  // true sentences: the reference evaluator finds a witness below 30;
  // false ones: no witness below 30, and exact evaluation refutes them
  NatOptions exact;
  exact.exact = true;
  int t = 0;
  for (const auto& s : sigma1_corpus()) {
    Formula f = parse_formula(s.text, La);
    CHECK(is_sigma1(f));
    CHECK(is_closed(f));
    CHECK_MESSAGE(oracle::nat_truth(f, {}, 30) == s.truth, s.text);
    if (!s.truth) CHECK_MESSAGE(nat_evaluate(f, {}, exact) == Truth::False, s.text);
    t += s.truth;
  }
  CHECK(sigma1_corpus().size() == 50);
  CHECK(t == 35);
}

TEST_CASE("certify rejects other shapes") {
  CHECK_THROWS_AS(certify(parse_formula("exists x (x * x = 4)")), std::invalid_argument);
  Formula c = certify(parse_formula("exists x exists y <= x (y = x)"));
  CHECK(c->kind == FKind::Ex);
  CHECK(is_sigma1(c));
}

TEST_CASE("bracket of a true sentence is true, of a false one has no small model") {
  auto tb = bracket(parse_formula("0 = 0"));
  CHECK(nat_evaluate(tb.certified) == Truth::True);
  auto sq = bracket(parse_formula("exists x (x * x = 4)"));
  CHECK(is_sigma1(sq.certified));
  CHECK(nat_evaluate(sq.certified) == Truth::True);
  auto fb = bracket(parse_formula("exists x (S x = 0)"));
  CHECK_FALSE(find_model(La, 1, {fb.certified}).has_value());
  CHECK_FALSE(find_model(La, 2, {fb.certified}).has_value());
}

TEST_CASE("P-certification") {
  auto b = bracket(parse_formula("exists x (x * x = 4)"), Flavor::WithP);
  // witness of the pure form is small; a clipped model well above it works with P total
  Structure M = with_p(clipped_model(60), true);
  CHECK(evaluate(M, b.certified));
  CHECK_FALSE(evaluate(with_p(clipped_model(60), false), b.certified));
}

TEST_CASE("witness comparison against least witnesses") {
  // phi has least witness 3, psi least witness 5
  Formula phi = parse_formula("exists x (x + x = 6)");
  Formula psi = parse_formula("exists x (S x = 6)");
  CHECK(nat_evaluate(comparison_formula(wc_le(phi, psi))) == Truth::True);
  CHECK(nat_evaluate(comparison_formula(wc_lt(phi, psi))) == Truth::True);
  CHECK(nat_evaluate(comparison_formula(wc_le(psi, phi)), {}, 100) != Truth::True);
  CHECK(nat_evaluate(comparison_formula(wc_le(phi, phi))) == Truth::True);
  CHECK(nat_evaluate(comparison_formula(wc_lt(phi, phi)), {}, 100) != Truth::True);
  auto bot = wc_bot(wc_le(phi, psi));
  CHECK(bot.strict);
  CHECK(equal(bot.phi, psi));
}

TEST_CASE("comparison pairs have the advertised least witnesses") {
  auto pairs = comparison_pairs();
  CHECK(pairs.size() == 20);
  for (const auto& p : pairs) {
    CHECK(p.a <= p.b);
    auto la = nat_least_witness(p.sigma->var, p.sigma->a, {}, 100);
    auto lb = nat_least_witness(p.sigma_p->var, p.sigma_p->a, {}, 100);
    REQUIRE(la);
    REQUIRE(lb);
    CHECK(*la == p.a);
    CHECK(*lb == p.b);
  }
}
