// Reference evaluators written directly from the definitions, without the
// narrowing and block solving of the library. Slow, small inputs only.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "wa/models.hpp"
#include "wa/syntax.hpp"

namespace oracle {

using wa::FKind;
using wa::Formula;
using wa::Nat;
using wa::Term;
using wa::TermKind;

// Standard model. Unbounded quantifiers range over 0..search, so the answer is
// exact only for formulas whose unbounded witnesses lie below that.
inline Nat term_value(const Term& t, const std::map<wa::Var, Nat>& a) {
  switch (t->kind) {
    case TermKind::Num: return t->value();
    case TermKind::Var: {
      auto it = a.find(t->var);
      if (it == a.end()) throw std::runtime_error("unassigned " + wa::var_name(t->var));
      return it->second;
    }
    case TermKind::App: break;
  }
  if (t->fn == wa::sym::S) return term_value(t->args[0], a) + 1;
  if (t->fn == wa::sym::Add) return term_value(t->args[0], a) + term_value(t->args[1], a);
  if (t->fn == wa::sym::Mul) return term_value(t->args[0], a) * term_value(t->args[1], a);
  throw std::runtime_error("symbol outside L_a");
}

inline bool nat_truth(const Formula& f, std::map<wa::Var, Nat> a, std::uint64_t search) {
  auto range = [&](const Nat& hi, bool want_all) {
    for (Nat i = 0; i <= hi; ++i) {
      a[f->var] = i;
      bool r = nat_truth(f->a, a, search);
      if (want_all && !r) return false;
      if (!want_all && r) return true;
    }
    return want_all;
  };
  switch (f->kind) {
    case FKind::Eq: return term_value(f->args[0], a) == term_value(f->args[1], a);
    case FKind::Rel:
      if (f->rel == wa::sym::Le) return term_value(f->args[0], a) <= term_value(f->args[1], a);
      if (f->rel == wa::sym::P) return true;
      throw std::runtime_error("relation outside L_ap");
    case FKind::Not: return !nat_truth(f->a, a, search);
    case FKind::And: return nat_truth(f->a, a, search) && nat_truth(f->b, a, search);
    case FKind::Or: return nat_truth(f->a, a, search) || nat_truth(f->b, a, search);
    case FKind::Imp: return !nat_truth(f->a, a, search) || nat_truth(f->b, a, search);
    case FKind::Iff: return nat_truth(f->a, a, search) == nat_truth(f->b, a, search);
    case FKind::All: return range(Nat(search), true);
    case FKind::Ex: return range(Nat(search), false);
    case FKind::BAll: return range(term_value(f->bound, a), true);
    case FKind::BEx: return range(term_value(f->bound, a), false);
  }
  return false;
}

// Tarskian truth by plain recursion over the domain.
inline int struct_term(const wa::Structure& M, const Term& t, const std::map<wa::Var, int>& a) {
  switch (t->kind) {
    case TermKind::Var: return a.at(t->var);
    case TermKind::Num: {
      // numerals are S-chains over the constant 0
      int v = M.constants[M.constant_index(wa::intern("0"))];
      const auto& s = M.functions[M.function_index(wa::sym::S)];
      for (Nat i = 0; i < t->value(); ++i) v = s[v];
      return v;
    }
    case TermKind::App: break;
  }
  if (t->args.empty()) return M.constants[M.constant_index(t->fn)];
  const auto& tab = M.functions[M.function_index(t->fn)];
  std::size_t idx = 0;
  for (const auto& u : t->args) idx = idx * M.size + struct_term(M, u, a);
  return tab[idx];
}

inline bool struct_truth(const wa::Structure& M, const Formula& f, std::map<wa::Var, int> a) {
  auto range = [&](int hi, bool want_all) {
    const auto& le = M.relations[M.relation_index(wa::sym::Le)];
    for (int i = 0; i < M.size; ++i) {
      if (hi >= 0 && !le[i * M.size + hi]) continue;
      a[f->var] = i;
      bool r = struct_truth(M, f->a, a);
      if (want_all && !r) return false;
      if (!want_all && r) return true;
    }
    return want_all;
  };
  switch (f->kind) {
    case FKind::Eq: return struct_term(M, f->args[0], a) == struct_term(M, f->args[1], a);
    case FKind::Rel: {
      const auto& tab = M.relations[M.relation_index(f->rel)];
      std::size_t idx = 0;
      for (const auto& u : f->args) idx = idx * M.size + struct_term(M, u, a);
      return tab[idx] != 0;
    }
    case FKind::Not: return !struct_truth(M, f->a, a);
    case FKind::And: return struct_truth(M, f->a, a) && struct_truth(M, f->b, a);
    case FKind::Or: return struct_truth(M, f->a, a) || struct_truth(M, f->b, a);
    case FKind::Imp: return !struct_truth(M, f->a, a) || struct_truth(M, f->b, a);
    case FKind::Iff: return struct_truth(M, f->a, a) == struct_truth(M, f->b, a);
    case FKind::All: return range(-1, true);
    case FKind::Ex: return range(-1, false);
    case FKind::BAll: return range(struct_term(M, f->bound, a), true);
    case FKind::BEx: return range(struct_term(M, f->bound, a), false);
  }
  return false;
}

// Random L_a formulas in the given variables.
struct Gen {
  std::mt19937 rng;
  std::vector<wa::Var> vars;
  explicit Gen(unsigned seed, std::vector<wa::Var> vs) : rng(seed), vars(std::move(vs)) {}

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

  Term term(int depth) {
    int k = depth <= 0 ? pick(2) : pick(5);
    switch (k) {
      case 0: return wa::num(static_cast<std::uint64_t>(pick(4)));
      case 1: return wa::var(vars[pick(static_cast<int>(vars.size()))]);
      case 2: return wa::succ(term(depth - 1));
      case 3: return wa::add(term(depth - 1), term(depth - 1));
      default: return wa::mul(term(depth - 1), term(depth - 1));
    }
  }

  // Bounded formulas only; bounds are variables or small numerals.
  Formula delta0(int depth) {
    int k = depth <= 0 ? pick(2) : pick(7);
    switch (k) {
      case 0: return wa::eq(term(2), term(2));
      case 1: return wa::le(term(2), term(2));
      case 2: return wa::neg(delta0(depth - 1));
      case 3: return wa::conj(delta0(depth - 1), delta0(depth - 1));
      case 4: return wa::disj(delta0(depth - 1), delta0(depth - 1));
      default: {
        wa::Var x = vars[pick(static_cast<int>(vars.size()))];
        Term b = pick(2) ? wa::num(static_cast<std::uint64_t>(pick(4)))
                         : wa::var(vars[pick(static_cast<int>(vars.size()))]);
        if (wa::occurs_free(x, b)) b = wa::num(3);
        return k == 5 ? wa::ball(x, b, delta0(depth - 1)) : wa::bex(x, b, delta0(depth - 1));
      }
    }
  }
};

}  // namespace oracle
