#include <doctest.h>

#include <set>

#include "oracle.hpp"
#include "wa/certificates.hpp"
#include "wa/corpus.hpp"
#include "wa/goedel.hpp"
#include "wa/natural.hpp"
#include "wa/parse.hpp"

using namespace wa;

namespace {
const Var x = var_named("x"), y = var_named("y"), z = var_named("z");

// pi(a, b) = (a + b)(a + b + 1)/2 + b
Nat pair_oracle(const Nat& a, const Nat& b) { return (a + b) * (a + b + 1) / 2 + b; }
}  // namespace

TEST_CASE("cantor pairing") {
  for (unsigned a = 0; a < 30; ++a)
    for (unsigned b = 0; b < 30; ++b) {
      Nat c = cantor_pair(a, b);
      CHECK(c == pair_oracle(a, b));
      auto [p, q] = cantor_unpair(c);
      CHECK(p == a);
      CHECK(q == b);
    }
  Nat big = Nat(1) << 200;
  auto [p, q] = cantor_unpair(cantor_pair(big, big + 7));
  CHECK(p == big);
  CHECK(q == big + 7);
}

TEST_CASE("pair_formula defines the pairing in N") {
  Var a = var_named("a"), b = var_named("b"), c = var_named("c");
  Formula f = pair_formula(var(a), var(b), var(c));
  for (unsigned i = 0; i < 8; ++i)
    for (unsigned j = 0; j < 8; ++j)
      for (unsigned k = 0; k < 90; ++k)
        CHECK(oracle::nat_truth(f, {{a, i}, {b, j}, {c, k}}, 0) == (pair_oracle(i, j) == k));
  Var w = var_named("w");
  Formula u = unpair_formula(var(c), a, b, w);
  for (unsigned k = 0; k < 40; ++k) {
    auto [p, q] = cantor_unpair(k);
    NatAssignment as{{c, k}, {a, p}, {b, q}};
    CHECK(nat_evaluate(u, as) == Truth::True);
    as[b] = q + 1;
    CHECK(nat_evaluate(u, as) != Truth::True);
  }
}

TEST_CASE("encode and decode") {
  CHECK(equal(decode(encode(parse_formula("0 = 0"))), parse_formula("0 = 0")));
  oracle::Gen g(29, {x, y, z});
  std::set<Nat> codes;
  std::set<std::string> texts;
  for (int i = 0; i < 1000; ++i) {
    Formula f = g.delta0(3);
    Nat n = encode(f);
    CHECK(equal(decode(n), f));
    if (texts.insert(render_tree(f)).second) CHECK(codes.insert(n).second);
  }
  CHECK_THROWS_AS(decode(Nat(1) << 70), std::invalid_argument);
}

TEST_CASE("self-referential fixed points are exact") {
  Formula phi = parse_formula("x = x");
  auto r = fixed_point(phi, {Numbering::SelfReferential});
  auto n = sgn(r.eta);
  REQUIRE(n);
  CHECK(equal(r.eta, substitute(phi, x, num(*n))));
  std::set<Nat> seen;
  for (const auto& s : self_ref_templates()) {
    Formula t = parse_formula(s);
    auto fp = fixed_point(t, {Numbering::SelfReferential});
    auto k = sgn(fp.eta);
    REQUIRE_MESSAGE(k, s);
    CHECK_MESSAGE(equal(fp.eta, substitute(t, x, num(*k))), s);
    CHECK(seen.insert(*k).second);
  }
}

TEST_CASE("sgn takes the smallest pre-image") {
  // phi(c) itself is one pre-image, so the least one is no larger
  Formula phi = parse_formula("x = x");
  Formula psi = self_ref_sentence(substitute(phi, x, constant(fresh_constant())));
  auto n = sgn(psi);
  REQUIRE(n);
  CHECK(*n <= self_ref_encode(substitute(phi, x, constant(fresh_constant()))));
  CHECK_FALSE(sgn(parse_formula("0 = 1")).has_value());
}

TEST_CASE("ordinary fixed points agree with their instance in N") {
  NatOptions exact;
  exact.exact = true;
  auto t = fixed_point(parse_formula("0 = 0 & x = x"));
  CHECK(nat_evaluate(t.eta, {}, exact) == Truth::True);
  auto f = fixed_point(parse_formula("exists y (S y = 0) & x = x"));
  CHECK(nat_evaluate(f.eta, {}, exact) != Truth::True);
  for (const auto& s : ordinary_templates()) {
    Formula sigma = parse_formula(s);
    auto fp = fixed_point(sigma);
    Truth lhs = nat_evaluate(fp.eta, {}, exact);
    Truth rhs = nat_evaluate(substitute(sigma, x, num(encode(fp.eta))), {}, exact);
    CHECK_MESSAGE(lhs != Truth::Unknown, s);
    CHECK_MESSAGE(lhs == rhs, s);
  }
  CHECK_THROWS_AS(fixed_point(parse_formula("x = y")), std::invalid_argument);
}

TEST_CASE("double fixed points") {
  Var a = var_named("a"), b = var_named("b");
  NatOptions exact;
  exact.exact = true;
  auto r = double_fixed_point(parse_formula("0 = 0"), parse_formula("0 = 1"), a, b);
  CHECK(nat_evaluate(r.eta, {}, exact) == Truth::True);
  CHECK(nat_evaluate(r.eta_prime, {}, exact) == Truth::False);
  auto s = double_fixed_point(parse_formula("0 = 1"), parse_formula("0 = 0"), a, b);
  CHECK(nat_evaluate(s.eta, {}, exact) == Truth::False);
  CHECK(nat_evaluate(s.eta_prime, {}, exact) == Truth::True);
}

TEST_CASE("represented graphs") {
  Formula star = parse_formula("exists z (S x = y & z = z)");
  Formula sigma = represent_graph(star, x, y);
  CHECK(is_sigma1(sigma));
  NatOptions exact;
  exact.exact = true;
  exact.cap = 50;
  for (unsigned n = 0; n <= 10; ++n)
    CHECK(nat_evaluate(sigma, {{x, 3}, {y, n}}, exact) == (n == 4 ? Truth::True : Truth::False));
  // a relation that is not a function: the uniqueness conjunct fails everywhere
  Formula rel2 = represent_graph(parse_formula("exists z (x <= y & z = z)"), x, y);
  CHECK(nat_evaluate(rel2, {{x, 0}, {y, 1}}, 50) != Truth::True);
  CHECK_THROWS_AS(represent_graph(parse_formula("x = y"), x, y), std::invalid_argument);
}

TEST_CASE("dagger normal form keeps truth") {
  Formula chi = parse_formula("exists x (x = 2) & exists y (y * y = 9 & exists z (z = y))");
  Formula n = sigma1_dagger_normal(chi);
  CHECK(n->kind == FKind::Ex);
  CHECK(nat_evaluate(n) == nat_evaluate(chi));
}
