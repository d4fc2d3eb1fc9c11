// Flattening Sigma1 formulas into pure form.
#pragma once

#include <vector>

#include "wa/syntax.hpp"

namespace wa {

struct PureForm {
  std::vector<Var> exists;  // leading unbounded existentials, outermost first
  Formula matrix;           // pure Delta0, or an equivalent closed-off atom set
  Formula formula() const { return ex_list(exists, matrix); }
};

// Every compound term becomes a variable defined by one of the atoms
// 0 = a, S a = b, a + b = c, a * b = c; terms under bounded quantifiers get
// a bounded witness whose bound is the term's value at the tops of the ranges.
// Numerals up to 4096 become S-chains. Larger even ones are built by doubling,
// which keeps codes shallow but ties the equivalence to the R1 instances.
// Throws std::invalid_argument when the input is not Sigma1 over L_ap.
PureForm purify_parts(const Formula& phi);
Formula purify(const Formula& phi);

// exists x exists v1 <= x ... exists vk <= x lambda0 for purify(lambda) = exists v lambda0.
// Throws std::invalid_argument when lambda is not a Sigma1 sentence.
Formula collapse_to_one(const Formula& lambda);

}  // namespace wa
