// Evaluation in the standard model of arithmetic.
//
// Bounded quantifiers are decided honestly. Unbounded existential blocks are
// searched: literals that pin a variable down (x * x = 49, y <= z, chains of
// definitions) narrow its candidates before anything is enumerated, and a
// variable with no finite candidate set is enumerated for at most `cap` values.
#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "wa/models.hpp"
#include "wa/syntax.hpp"

namespace wa {

using NatAssignment = std::map<Var, Nat>;

struct NatOptions {
  // Values tried for an unbounded variable that no literal narrows.
  std::uint64_t cap = 10000;
  // When false, a search over an unbounded existential that finds no witness
  // answers Unknown. When true it answers False if the search space was
  // provably exhausted (e.g. every branch was narrowed to nothing).
  bool exact = false;
  // Total search steps before giving up with Unknown.
  std::uint64_t work_budget = 400'000'000;
  // Largest bounded range enumerated value by value.
  std::uint64_t range_budget = 50'000'000;
  // P is read as true everywhere, the intended model of the P-axioms.
  bool p_true = true;
};

// Throws EvalError on unassigned free variables, symbols outside L_ap, or a
// formula alternating unbounded quantifiers.
Truth nat_evaluate(const Formula& f, const NatAssignment& a = {}, const NatOptions& opt = {});
Truth nat_evaluate(const Formula& f, const NatAssignment& a, std::uint64_t cap);

Nat nat_value(const Term& t, const NatAssignment& a = {});

// Least n <= limit with body[x := n] true (exact evaluation of the instances).
std::optional<Nat> nat_least_witness(Var x, const Formula& body, const NatAssignment& a = {},
                                     std::uint64_t limit = 10000, const NatOptions& opt = {});

// A satisfying assignment for the leading existential block of f, if the search finds one.
std::optional<NatAssignment> nat_witness(const Formula& f, const NatAssignment& a = {}, const NatOptions& opt = {});

}  // namespace wa
