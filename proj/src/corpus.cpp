#include "wa/corpus.hpp"

#include <random>

#include "wa/certificates.hpp"
#include "wa/parse.hpp"

namespace wa {

const std::vector<LabeledSentence>& sigma1_corpus() {
  static const std::vector<LabeledSentence> c = {
      {"exists x (x = 0)", true},
      {"exists x (S x = 3)", true},
      {"exists x (x + x = 6)", true},
      {"exists x (x * x = 9)", true},
      {"exists x (x * x = 4 & x + 1 = 3)", true},
      {"exists x exists y (x + y = 6 & x = S S y)", true},
      {"exists x exists y (x * y = 6 & S x = y)", true},
      {"exists x (2 * x = 8)", true},
      {"exists x (x <= 3 & 3 <= x)", true},
      {"exists x (~(x = 0) & x * x = x)", true},
      {"0 = 0", true},
      {"2 + 2 = 4", true},
      {"3 * 3 = 9", true},
      {"forall x <= 3 (x * x <= 9)", true},
      {"exists x (x + 3 = 7 & exists y <= x (y * y = x))", true},
      {"exists x exists y exists z (x + y = z & x * y = 2 & ~(z = 0))", true},
      {"exists x (exists y <= 5 (x = y + y) & 7 <= x)", true},
      {"exists x (x * x + 1 = 10)", true},
      {"exists x (x + x + x = 9)", true},
      {"exists x exists y (x * x + y * y = 13)", true},
      {"exists x (S S x * S x = 12)", true},
      {"exists x (x <= 10 & ~(x <= 9))", true},
      {"exists x exists y (x <= y & ~(x = y) & y * y = 4 * x)", true},
      {"exists x ((x = 1 | x = 2) & x * x = 4)", true},
      {"exists x exists y (x = y + 1 & y * x = 2)", true},
      {"exists x (forall y <= 4 ~(y * y = x) & 2 <= x & x <= 3)", true},
      {"exists x (x * x = x + x & ~(x = 0))", true},
      {"exists x exists y (x + y = 10 & x * y = 21)", true},
      {"exists x (x * x * x = 8)", true},
      {"exists x (x = 12)", true},
      {"exists x exists y (S x = y & S y = 4)", true},
      {"exists x (exists y <= x exists z <= x (y * z = x & 2 <= y & 2 <= z) & x <= 6)", true},
      {"exists x (x + 0 = x & x * 1 = 7)", true},
      {"exists x exists y (x * y = 0 & S y = 3)", true},
      {"forall x <= 2 exists y <= 4 (y = x + x)", true},
      {"exists x (S x = 0)", false},
      {"exists x (x + x = 7)", false},
      {"exists x (x * x = 2)", false},
      {"1 = 2", false},
      {"2 + 2 = 5", false},
      {"exists x (x + 3 = 1)", false},
      {"exists x (S x <= 0)", false},
      {"exists x (S S x = 1)", false},
      {"exists x (x * x = 3 & x <= 3)", false},
      {"exists x (x <= 2 & 3 <= x)", false},
      {"forall x <= 3 (x * x <= 4)", false},
      {"exists x ~(x = x)", false},
      {"exists x (S x = x)", false},
      {"exists x (x * x + 1 = 0)", false},
      {"exists x (x * 0 = 1)", false},
  };
  return c;
}

namespace {

std::string gen_term(std::mt19937& rng, int depth, const std::vector<std::string>& vars) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 5 : 1);
  switch (pick(rng)) {
    case 0: return vars[std::uniform_int_distribution<std::size_t>(0, vars.size() - 1)(rng)];
    case 1: return std::to_string(std::uniform_int_distribution<int>(0, 4)(rng));
    case 2: return "S " + gen_term(rng, depth - 1, vars);
    case 3:
    case 4: return "(" + gen_term(rng, depth - 1, vars) + " + " + gen_term(rng, depth - 1, vars) + ")";
    default: return "(" + gen_term(rng, depth - 1, vars) + " * " + gen_term(rng, depth - 1, vars) + ")";
  }
}

std::string gen_atom(std::mt19937& rng, const std::vector<std::string>& vars) {
  std::string s = gen_term(rng, 2, vars), t = gen_term(rng, 1, vars);
  std::uniform_int_distribution<int> pick(0, 3);
  switch (pick(rng)) {
    case 0: return s + " = " + t;
    case 1: return s + " <= " + t;
    case 2: return "~(" + s + " = " + t + ")";
    default: return t + " <= " + s;
  }
}

}  // namespace

std::vector<std::string> purification_corpus() {
  std::vector<std::string> out;
  for (const auto& s : sigma1_corpus()) out.push_back(s.text);
  std::mt19937 rng(20240601);
  while (out.size() < 100) {
    std::vector<std::string> vars = {"x", "y"};
    std::string body = gen_atom(rng, vars) + " & " + gen_atom(rng, vars);
    switch (out.size() % 4) {
      case 0: body = "(" + body + ") | " + gen_atom(rng, vars); break;
      case 1: body += " & forall z <= x (" + gen_atom(rng, {"x", "y", "z"}) + " | z = x)"; break;
      case 2: body += " & exists z <= y (" + gen_atom(rng, {"x", "z"}) + ")"; break;
      default: break;
    }
    out.push_back("exists x exists y (" + body + ")");
  }
  return out;
}

const std::vector<std::string>& pure_delta0_corpus() {
  static const std::vector<std::string> c = {
      "x = y",
      "0 = x",
      "S x = y",
      "x + y = z",
      "x * y = z",
      "x <= y",
      "~(x = y)",
      "x <= y & ~(x = y)",
      "x + y = z -> y + x = z",
      "x * y = z <-> y * x = z",
      "forall u <= x (u <= y)",
      "exists u <= x (u + u = x)",
      "exists u <= x exists w <= x (u * w = x & ~(u = x) & ~(w = x))",
      "forall u <= x (u * u = x -> u <= y)",
      "exists u <= y (x + u = y)",
      "forall u <= x exists w <= y (u <= w)",
      "exists u <= x (S u = x)",
      "forall u <= x forall w <= y (u + w = z -> w <= z)",
      "exists u <= z (x * u = z)",
      "~(exists u <= x (S u = y))",
      "x <= y | y <= x",
      "exists u <= x (0 = u & u + x = y)",
      "forall u <= y (x * u = y -> x <= y | 0 = y)",
      "exists u <= z exists w <= z (x + u = w & w * y = z)",
      "(S x = y -> x <= y) & (x = y -> x <= y)",
  };
  return c;
}

std::vector<ComparisonPair> comparison_pairs() {
  const Var x = var_named("x"), y = var_named("y");
  auto body = [](Var v, std::uint64_t n, int shape) -> Formula {
    Term t = var(v);
    switch (shape % 4) {
      case 0: return eq(t, num(n));
      case 1: return eq(add(t, t), num(2 * n));
      case 2: return eq(succ(t), num(n + 1));
      default: return conj(le(num(n), t), le(t, num(n)));
    }
  };
  std::vector<ComparisonPair> out;
  for (std::uint64_t i = 0; i < 20; ++i) {
    std::uint64_t a = i % 4, b = a + (i * 7) % 3;
    out.push_back({ex(x, body(x, a, static_cast<int>(i))), ex(y, conj(wb_formula(y), body(y, b, static_cast<int>(i / 4)))), a, b});
  }
  return out;
}

const std::vector<std::string>& self_ref_templates() {
  static const std::vector<std::string> c = {
      "x = x",
      "~(x = 0)",
      "0 <= x",
      "exists y (y = x)",
      "S x = x",
      "x <= x + 1",
      "x * 0 = 0",
      "exists y (y + y = x)",
      "~(x = S x) & x = x",
      "forall y <= 3 (y <= x)",
      "exists y (S y = x)",
      "x + x = x * 2",
      "x = x | 0 = 1",
      "exists y exists z (y + z = x)",
      "x <= 7",
      "exists y <= 2 (y = x)",
      "~(exists y (y * y = x))",
      "x * x = x",
      "forall y <= 2 ~(S y = x)",
      "(x = x -> x = x) & 1 <= x",
  };
  return c;
}

const std::vector<std::string>& ordinary_templates() {
  static const std::vector<std::string> c = {
      "x = x",
      "~(x = x)",
      "0 = 0 & x = x",
      "x <= 5",
      "5 <= x",
      "exists z (z + z = x)",
      "exists z (S z = x)",
      "exists z (S z = 0)",
      "~(x = 0)",
      "x + 0 = x",
  };
  return c;
}

}  // namespace wa
