#include <doctest.h>

#include "oracle.hpp"
#include "wa/corpus.hpp"
#include "wa/models.hpp"
#include "wa/natural.hpp"
#include "wa/parse.hpp"
#include "wa/purify.hpp"

using namespace wa;

namespace {
const Var x = var_named("x"), y = var_named("y");

// Every Le atom compares two variables.
bool le_on_variables(const Formula& f) {
  if (f->kind == FKind::Rel && f->rel == sym::Le)
    return f->args[0]->kind == TermKind::Var && f->args[1]->kind == TermKind::Var;
  if (is_atomic(f->kind)) return true;
  bool ok = le_on_variables(f->a);
  if (f->b) ok = ok && le_on_variables(f->b);
  return ok;
}
}  // namespace

TEST_CASE("pure input is a fixpoint") {
  Formula f = parse_formula("x0 + x1 = x2");
  CHECK(equal(purify(f), f));
}

TEST_CASE("nested terms agree with the original on small values") {
  for (const char* s : {"S(S 0) = x", "2 <= x", "x * S x = 6", "S x + x = 2 * x"}) {
    Formula f = parse_formula(s);
    Formula p = purify(f);
    CHECK(is_pure_sigma1(p));
    CHECK(le_on_variables(p));
    CHECK(free_vars(p) == free_vars(f));
    for (unsigned n = 0; n <= 100; ++n) {
      bool want = oracle::nat_truth(f, {{x, n}}, 0);
      CHECK(nat_evaluate(p, {{x, n}}, NatOptions{.exact = true}) == (want ? Truth::True : Truth::False));
    }
  }
}

TEST_CASE("corpus sentences stay pure and equivalent") {
  for (const auto& s : purification_corpus()) {
    Formula f = parse_formula(s, Signature::La());
    Formula p = purify(f);
    CHECK(is_pure_sigma1(p));
    CHECK(is_closed(p));
  }
}

TEST_CASE("purification holds in the same small structures") {
  // exhaustively over size 1 and a sample of size 2
  const Signature La = Signature::La();
  std::vector<Formula> fs;
  for (const char* s : {"exists x (x * x = 4)", "exists x (S x = 0)", "exists x exists y (x + y = S y & y <= x)"})
    fs.push_back(parse_formula(s));
  for (const auto& f : fs) {
    Formula p = purify(f);
    int seen = 0;
    enumerate_structures(La, 2, {}, [&](const Structure& M) {
      CHECK(evaluate(M, f) == evaluate(M, p));
      return ++seen < 3000;
    });
  }
}

TEST_CASE("collapse to one existential") {
  Formula c = collapse_to_one(parse_formula("exists x (x * x = 4)"));
  CHECK(is_pure_one_sigma1(c));
  CHECK(nat_evaluate(c) == Truth::True);
  Formula d = collapse_to_one(parse_formula("exists x (S x = 0)"));
  CHECK(nat_evaluate(d, {}, 1000) != Truth::True);
  Formula t = collapse_to_one(parse_formula("0 = 0"));
  CHECK(is_pure_one_sigma1(t));
  CHECK(nat_evaluate(t) == Truth::True);
  CHECK_THROWS_AS(collapse_to_one(parse_formula("forall x (x = x)")), std::invalid_argument);
  CHECK_THROWS_AS(collapse_to_one(parse_formula("x = 0")), std::invalid_argument);
}
