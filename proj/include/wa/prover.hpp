// Proof generators over R0: numeral instances of Delta0 sentences, true
// Sigma1 sentences, the well-behaved case split and witness comparisons.
//
// Every generator expands its macros into kernel steps; nothing is trusted.
// The returned goal carries the smallest cutoff that covers the axiom leaves.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "wa/proof.hpp"
#include "wa/syntax.hpp"

namespace wa {

class ProofError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProverOptions {
  std::uint64_t witness_cap = 10000;
  std::size_t max_steps = kMaxProofSteps;
};

struct ProofResult {
  Proof proof;
  ProofGoal goal;
};

inline CheckResult check(const ProofResult& r) { return check(r.proof, r.goal); }

// phi (polarity true) or ~phi (false) for a closed Delta0 sentence. Theory
// R0, or R0p when a P-atom had to be proved.
ProofResult prove_delta0(const Formula& phi, bool polarity, const ProverOptions& opt = {});

// A true Sigma1 sentence. The hint, when it works, is used as the witness of
// the outermost existential.
ProofResult prove_sigma1(const Formula& sigma, const ProverOptions& opt = {}, std::optional<Nat> hint = {});

// Lt:  forall x (wb(x) -> x < n | n <= x)
// Gt:  forall x (wb(x) -> x <= n | n < x)
// Dichotomy: forall x (wb(x) -> x <= n | n <= x)
enum class WbSplit { Lt, Gt, Dichotomy };
Formula wb_split_formula(std::uint64_t n, WbSplit v = WbSplit::Lt);
ProofResult prove_wb_split(std::uint64_t n, WbSplit v = WbSplit::Lt);

// LeBlocksLt: from N |= sigma <= sigma', a proof of ~(sigma' < sigma).
// LtBlocksLe: from N |= sigma < sigma', a proof of ~(sigma' <= sigma).
// sigma is exists x sigma0(x) and sigma' is exists y (wb(y) & sigma0'(y)).
enum class ComparisonMode { LeBlocksLt, LtBlocksLe };
ProofResult prove_not_comparison(const Formula& sigma, const Formula& sigma_p, ComparisonMode mode,
                                 const ProverOptions& opt = {});

}  // namespace wa
