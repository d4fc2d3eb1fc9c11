#include <doctest.h>

#include <set>

#include "oracle.hpp"
#include "wa/certificates.hpp"
#include "wa/corpus.hpp"
#include "wa/models.hpp"
#include "wa/parse.hpp"

using namespace wa;

namespace {
const Var x = var_named("x"), y = var_named("y"), z = var_named("z");
const Signature La = Signature::La();
}  // namespace

TEST_CASE("clipped arithmetic") {
  Structure M = clipped_model(5);
  CHECK(evaluate(M, parse_formula("2 + 2 = 4")));
  // min(3 + 3, 5) = 5 and the numeral 6 also clips to 5
  CHECK(evaluate(M, parse_formula("3 + 3 = 6")));
  CHECK(evaluate(M, parse_formula("forall x (x = x)")));
  CHECK(evaluate(clipped_model(10), parse_formula("~2 = 3")));
  CHECK_FALSE(evaluate(clipped_model(3), parse_formula("~7 = 8")));
  CHECK(evaluate(M, wb_formula(x), {{x, 5}}));
  CHECK(evaluate(clipped_model(7), cert_formula(x), {{x, 2}}));
}

TEST_CASE("evaluate agrees with plain recursion") {
  oracle::Gen g(13, {x, y, z});
  std::vector<Structure> ms{clipped_model(3), clipped_model(6), wraparound_model(4)};
  for (int i = 0; i < 300; ++i) {
    Formula f = g.delta0(3);
    Formula q = i % 2 ? all(y, f) : ex(z, f);
    for (const auto& M : ms) {
      std::map<Var, int> a{{x, 1}, {y, 2}, {z, 0}};
      Assignment as(a.begin(), a.end());
      CHECK(evaluate(M, q, as) == oracle::struct_truth(M, q, a));
    }
  }
}

TEST_CASE("cert holds in a clipped model above n^2 + n") {
  Formula c = cert_formula(x);
  for (int n = 0; n <= 6; ++n) {
    Structure M = clipped_model(n * n + n + 1);
    CHECK(evaluate(M, c, {{x, n}}));
  }
}

TEST_CASE("dagger") {
  Structure M = clipped_model(50);
  CHECK(check_dagger(M, 6, 6));
  CHECK_FALSE(check_dagger(M, 6, 7));
  for (int v = 0; v < 6; ++v) CHECK(check_dagger(M, v, 0) == evaluate(M, cert_formula(x), {{x, v}}));
  CHECK(evaluate(M, dagger_formula(x, 6), {{x, 6}}));
  CHECK_FALSE(evaluate(M, dagger_formula(x, 7), {{x, 6}}));
}

TEST_CASE("enumeration counts") {
  // one element: every table is forced except the truth of 0 <= 0
  CHECK(enumerate_structures(La, 1, {truth()}, [](const Structure&) { return true; }) == 2);
  Formula distinct = parse_formula("exists x exists y ~x = y", Signature::identity_only());
  CHECK(find_model(Signature::identity_only(), 2, {distinct}).has_value());
  CHECK_FALSE(find_model(Signature::identity_only(), 1, {distinct}).has_value());
}

TEST_CASE("every enumerated structure satisfies the filters") {
  Formula f = parse_formula("forall x (S x = x) & 0 <= S 0");
  std::size_t n = enumerate_structures(La, 2, {f}, [&](const Structure& M) {
    CHECK(oracle::struct_truth(M, f, {}));
    return true;
  });
  CHECK(n > 0);
}

TEST_CASE("lazy search finds a model exactly when enumeration does") {
  oracle::Gen g(17, {x, y});
  for (int i = 0; i < 60; ++i) {
    Formula f = all(x, ex(y, g.delta0(2)));
    bool by_enum = enumerate_structures(La, 2, {f}, [](const Structure&) { return false; }) > 0;
    std::size_t lazy = search_models(La, 2, {f}, [&](const Structure& M) {
      CHECK(evaluate(M, f));
      return false;
    });
    CHECK(by_enum == (lazy > 0));
  }
}

TEST_CASE("text form round-trips") {
  Structure M = clipped_model(4);
  Structure N = structure_from_text(to_text(M), La);
  CHECK(M == N);
  CHECK_THROWS_AS(structure_from_text("structure bad 2\n", La), EvalError);
}

TEST_CASE("unassigned variables are errors") {
  CHECK_THROWS_AS(evaluate(clipped_model(2), parse_formula("x = 0")), EvalError);
}
