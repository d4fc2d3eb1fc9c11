// Certification of elements and certified sentences.
#pragma once

#include <vector>

#include "wa/syntax.hpp"

namespace wa {

// A1..A10 for the element v. With naive = true, A3 and A4 keep their
// unbounded biconditional form instead of the bounded rewriting.
std::vector<Formula> cert_conjuncts(Var v, bool naive = false);
Formula cert_formula(Var v, bool naive = false);

// 0 <= x & forall y < x (S y <= x)
Formula wb_formula(Var x);

// exists x (cert(x) & sigma0(x)); throws std::invalid_argument unless sigma is pure 1-Sigma1.
Formula certify(const Formula& sigma);
// /\ id(L_ap) & exists v (cert(v) & sigma0(v) & forall x <= v P(x))
Formula certify_p(const Formula& sigma);

enum class Flavor { Plain, WithP };

struct CertifiedSentence {
  Formula original;
  Formula pure_form;
  Formula certified;
  Flavor flavor;
};

// [lambda] = (lambda*)^cert, or the P-variant.
CertifiedSentence bracket(const Formula& lambda, Flavor flavor = Flavor::Plain);

// Witness comparison between formulas of the shape exists x phi0(x).
struct Comparison {
  bool strict = false;  // false: phi <= psi, true: phi < psi
  Formula phi, psi;
};

Comparison wc_le(const Formula& phi, const Formula& psi);
Comparison wc_lt(const Formula& phi, const Formula& psi);
// (phi <= psi)^bot = psi < phi, (phi < psi)^bot = psi <= phi
Comparison wc_bot(const Comparison& c);
// exists x (phi0(x) & forall y < x ~psi0(y)), or with y <= x for the strict form.
Formula comparison_formula(const Comparison& c);

}  // namespace wa
