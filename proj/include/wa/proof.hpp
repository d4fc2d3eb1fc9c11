// Natural deduction kernel for first-order logic with equality.
//
// A proof is a list of steps; premises refer to earlier steps, so a proof is
// a DAG and shared subproofs are checked once. Assume steps open a hypothesis
// that ImpI, NegI, OrE and ExE discharge. The conclusion is the last step.
#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "wa/syntax.hpp"
#include "wa/theories.hpp"

namespace wa {

enum class Rule : std::uint8_t {
  Axiom,   // theory axiom, re-derived from its schema
  Hyp,     // one of the goal's hypotheses
  Assume,  // opens itself
  Refl,    // t = t
  EqSub,   // [s = t, M(s)] => M(t), motive M over var
  AndI,
  AndE1,
  AndE2,
  OrI1,    // [a] => a | b
  OrI2,    // [b] => a | b
  OrE,     // [a | b, Assume a, c, Assume b, c] => c
  ImpI,    // [Assume a, b] => a -> b
  ImpE,    // [a -> b, a] => b
  NegI,    // [Assume a, p, ~p] => ~a
  NegE,    // [p, ~p] => anything
  Dne,     // [~~a] => a
  IffI,    // [a -> b, b -> a] => a <-> b
  IffE1,   // [a <-> b, a] => b
  IffE2,   // [a <-> b, b] => a
  AllI,    // [phi(y)] => forall x phi(x), y the eigenvariable
  AllE,    // [forall x phi] => phi(t)
  ExI,     // [phi(t)] => exists x phi
  ExE,     // [exists x phi, Assume phi(y), c] => c
  Unfold,  // bounded quantifier => its unbounded reading
  Fold,
};

std::string to_string(Rule r);
Rule rule_from_string(const std::string& s);

struct Step {
  Rule rule = Rule::Assume;
  std::vector<std::size_t> premises;
  Formula formula;
  Term term;        // AllE, ExI
  Var var = 0;      // AllI and ExE eigenvariable, EqSub motive variable
  Formula motive;   // EqSub
  AxiomRef axiom;   // Axiom
};

struct Proof {
  std::vector<Step> steps;
  std::size_t size() const { return steps.size(); }
  const Formula& conclusion() const { return steps.back().formula; }
};

inline constexpr std::size_t kMaxProofSteps = 1'000'000;

struct ProofGoal {
  std::vector<Formula> hypotheses;
  Formula conclusion;
  std::string theory = "R0";  // schema family that Axiom steps may cite
  std::uint64_t cutoff = std::numeric_limits<std::uint64_t>::max();
};

struct CheckResult {
  bool ok = false;
  std::size_t step = 0;  // offending step when !ok
  std::string message;
};

CheckResult check(const Proof& p, const ProofGoal& g);

// Line format: id <TAB> rule <TAB> premises <TAB> argument <TAB> formula.
// Premises are comma separated; the argument is an axiom reference, a term,
// a variable, or "var|motive" for EqSub; "-" when empty.
std::string to_text(const Proof& p);
// Throws std::invalid_argument with the offending line number.
Proof proof_from_text(const std::string& text);

// Axiom steps of the proof, for leaf audits.
std::vector<AxiomRef> axiom_leaves(const Proof& p);

}  // namespace wa
