// Fixed sentence collections used by the suite, the CLI and the tests.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wa/syntax.hpp"

namespace wa {

struct LabeledSentence {
  std::string text;
  bool truth;  // in the standard model
};

// 50 Sigma1 sentences over L_a. The true ones have small witnesses.
const std::vector<LabeledSentence>& sigma1_corpus();

// 100 Sigma1 sentences: the Sigma1 corpus plus 50 generated ones.
std::vector<std::string> purification_corpus();

// 25 pure Delta0 formulas with free variables.
const std::vector<std::string>& pure_delta0_corpus();

// sigma = exists x sigma0(x) with least witness a, sigma_p = exists y (wb(y) & sigma0'(y))
// with least witness b, always a <= b.
struct ComparisonPair {
  Formula sigma, sigma_p;
  std::uint64_t a, b;
};
std::vector<ComparisonPair> comparison_pairs();

// Formulas in the free variable x.
const std::vector<std::string>& self_ref_templates();
// Formulas in x whose instances nat_evaluate decides exactly.
const std::vector<std::string>& ordinary_templates();

}  // namespace wa
