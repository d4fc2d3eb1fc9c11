// Goedel numbering and fixed points.
//
// A code is pi(skeleton, payload) with pi the Cantor pairing. The skeleton is
// the prefix token string read as a bijective base-20 numeral; variables,
// binders and numerals are placeholder tokens whose values (variable index,
// numeral value) form the payload, last placeholder first:
//   payload = 0                         no placeholders
//   payload = pi(a_last, list(rest))    otherwise
// where list() spells the remaining values in decimal, separated, as a
// bijective base-11 numeral. With the distinguished variable v0 as the last
// placeholder, substituting a numeral for it is the arithmetic map
//   pi(s, pi(0, R))  |->  pi(s + 1, pi(n, R)).
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wa/syntax.hpp"

namespace wa {

inline constexpr int kNumberingVersion = 1;

Nat cantor_pair(const Nat& a, const Nat& b);
std::pair<Nat, Nat> cantor_unpair(const Nat& n);

// Formulas over L_ap plus the fresh constant c of the self-referential numbering.
Nat encode(const Formula& f);
// Throws std::invalid_argument when n is not a code.
Formula decode(const Nat& n);

Sym fresh_constant();           // c
Signature self_ref_signature();  // L_a with c

// Ordinary code of phi(c).
Nat self_ref_encode(const Formula& phi_c);
// phi(numeral(code of phi(c))).
Formula self_ref_sentence(const Formula& phi_c);
// The smallest code of some phi'(c) with phi'(numeral(code phi'(c))) = psi,
// searching every subset of the numeral occurrences of a value n, where an
// occurrence of n + j (j <= 8) stands for S^j(c). At most 2^max_occurrences
// subsets per value; none when psi has no such pre-image.
std::optional<Nat> sgn(const Formula& psi, unsigned max_occurrences = 16);

// c = pi(a, b), as the L_a equation c + c = (a + b) * S(a + b) + (b + b).
Formula pair_formula(const Term& a, const Term& b, const Term& c);
// exists w (w * Sw <= n + n & ~(Sw * SSw <= n + n) & w * Sw + (b + b) = n + n & a + b = w)
Formula unpair_formula(const Term& n, Var a, Var b, Var w);
// y is the code of the formula coded by m with the numeral n at its last
// placeholder, which must be the variable v0. Bound variables come from `fresh`.
Formula sub_formula(const Term& m, const Term& n, const Term& y, std::vector<Var>& fresh);

// exists z (wb(z) & y <= z & exists u <= z s0(x, y, u) & forall a <= z forall b <= z (s0(x, a, b) -> a = y))
// for sigma_star = exists z s0(x, y, z). Throws std::invalid_argument on other shapes.
Formula represent_graph(const Formula& sigma_star, Var x, Var y);

// Pulls existentials out through conjunctions: the Sigma1-dagger normal form.
Formula sigma1_dagger_normal(const Formula& chi);

enum class Numbering { Ordinary, SelfReferential };

struct FixedPointOptions {
  Numbering numbering = Numbering::Ordinary;
  // Route the substitution graph through represent_graph (single fixed points
  // only). The result is then far too large to evaluate; a construction only.
  bool represent_substitution = false;
};

struct FixedPointResult {
  Formula eta, eta_prime;       // eta_prime only for double fixed points
  Formula theta, theta_prime;   // diagonal formulas in v0
  Nat argument;                 // the numeral substituted into theta
  std::vector<std::string> transcript;
};

// sigma has at most one free variable. Ordinary: eta = theta(code theta) with
// theta(v0) = exists u exists y (Sub(u, u, y) & sigma(y) & u = v0). Self-referential:
// eta = sigma(numeral(sgn eta)) exactly. Throws std::invalid_argument on more
// free variables.
FixedPointResult fixed_point(const Formula& sigma, const FixedPointOptions& opt = {});

// sigma and sigma_p in the variables a, b (either may be absent). Returns eta,
// eta_prime with eta <-> sigma(code eta, code eta_prime) and likewise for eta_prime.
FixedPointResult double_fixed_point(const Formula& sigma, const Formula& sigma_p, Var a, Var b,
                                    const FixedPointOptions& opt = {});

// rho with rho <-> eta(code [rho]) <= xi(code [rho]), built as the fixed point
// of exists b (graph(y, b) & (eta(b) <= xi(b))) for a caller-supplied Sigma1
// graph of the bracket map. The instance mentioning the numeral of [rho] is
// returned alongside.
struct RosserResult {
  FixedPointResult fixed;
  Formula rho;
  Nat bracket_code;
  Formula instance;  // eta(code [rho]) <= xi(code [rho])
};
RosserResult rosser(const Formula& eta, const Formula& xi, const Formula& bracket_graph, Var y, Var b);

}  // namespace wa
