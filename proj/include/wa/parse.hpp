// Text grammar and tree interchange format for terms and formulas.
//
//   t ::= 0 | 17 | x | S t | t + t | t * t | f(t, ...) | c | (t)
//   f ::= t = t | t <= t | R(t, ...) | ~f | f & f | f | f | f -> f | f <-> f
//       | forall x f | exists x f | forall x <= t f | exists x <= t f | (f)
//
// Decimal literals abbreviate numerals. & and | and -> associate to the right;
// a quantifier body is a single unary formula.
#pragma once

#include <string>
#include <string_view>

#include "wa/syntax.hpp"

namespace wa {

Formula parse_formula(std::string_view text, const Signature& sig = Signature::Lap());
Term parse_term(std::string_view text, const Signature& sig = Signature::Lap());

// Numerals up to this value print as S-chains, larger ones in decimal.
inline constexpr std::uint64_t kMaxUnaryNumeral = 16;

std::string render(const Term& t);
std::string render(const Formula& f);

// Tree encoding, one constructor per node:
//   (var x) (num 12) (app + t u)
//   (eq t u) (rel <= t u) (not f) (and f g) (or f g) (imp f g) (iff f g)
//   (forall x f) (exists x f) (ball x t f) (bex x t f)
std::string render_tree(const Term& t);
std::string render_tree(const Formula& f);
Formula parse_tree_formula(std::string_view text);
Term parse_tree_term(std::string_view text);

}  // namespace wa
