#include "wa/prover.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>

#include "wa/certificates.hpp"
#include "wa/natural.hpp"
#include "wa/parse.hpp"

namespace wa {

namespace {

std::uint64_t small_value(const Term& t) {
  if (t->kind != TermKind::Num || !t->is_small()) throw ProofError("numeral too large for an axiom instance");
  return t->small;
}

bool compound_closed(const Term& t) { return t->kind == TermKind::App && t->fv.empty(); }

void collect_closed(const Term& t, std::vector<Term>& out) {
  if (compound_closed(t)) {
    for (auto& u : out)
      if (equal(u, t)) return;
    out.push_back(t);
    return;
  }
  if (t->kind == TermKind::App)
    for (auto& a : t->args) collect_closed(a, out);
}

void collect_closed(const Formula& f, std::vector<Term>& out) {
  switch (f->kind) {
    case FKind::Eq:
    case FKind::Rel:
      for (auto& t : f->args) collect_closed(t, out);
      return;
    case FKind::Not: collect_closed(f->a, out); return;
    case FKind::And:
    case FKind::Or:
    case FKind::Imp:
    case FKind::Iff:
      collect_closed(f->a, out);
      collect_closed(f->b, out);
      return;
    case FKind::BAll:
    case FKind::BEx: collect_closed(f->bound, out); [[fallthrough]];
    case FKind::All:
    case FKind::Ex: collect_closed(f->a, out); return;
  }
}

using TermMap = std::unordered_map<Term, Term, TermHash, TermEq>;

Term replace(const Term& t, const TermMap& m) {
  if (t->kind != TermKind::App) return t;
  if (t->fv.empty()) {
    auto it = m.find(t);
    if (it != m.end()) return it->second;
  }
  std::vector<Term> args;
  for (auto& a : t->args) args.push_back(replace(a, m));
  return app(t->fn, std::move(args));
}

Formula replace(const Formula& f, const TermMap& m) {
  switch (f->kind) {
    case FKind::Eq: return eq(replace(f->args[0], m), replace(f->args[1], m));
    case FKind::Rel: {
      std::vector<Term> args;
      for (auto& a : f->args) args.push_back(replace(a, m));
      return rel(f->rel, std::move(args));
    }
    case FKind::Not: return neg(replace(f->a, m));
    case FKind::And: return conj(replace(f->a, m), replace(f->b, m));
    case FKind::Or: return disj(replace(f->a, m), replace(f->b, m));
    case FKind::Imp: return imp(replace(f->a, m), replace(f->b, m));
    case FKind::Iff: return iff(replace(f->a, m), replace(f->b, m));
    case FKind::All: return all(f->var, replace(f->a, m));
    case FKind::Ex: return ex(f->var, replace(f->a, m));
    case FKind::BAll: return ball(f->var, replace(f->bound, m), replace(f->a, m));
    case FKind::BEx: return bex(f->var, replace(f->bound, m), replace(f->a, m));
  }
  return f;
}

class Builder {
 public:
  explicit Builder(const ProverOptions& o) : opt_(o) {
    nat_.exact = true;
    nat_.cap = o.witness_cap;
  }

  Proof proof;
  std::uint64_t cutoff = 0;
  bool used_p = false;

  Formula f(std::size_t i) const { return proof.steps[i].formula; }

  std::size_t push(Step s) {
    if (proof.steps.size() >= opt_.max_steps)
      throw ProofError("proof exceeds " + std::to_string(opt_.max_steps) + " steps");
    proof.steps.push_back(std::move(s));
    return proof.steps.size() - 1;
  }

  std::size_t mk(Rule r, std::vector<std::size_t> prem, Formula F) {
    Step s;
    s.rule = r;
    s.premises = std::move(prem);
    s.formula = std::move(F);
    return push(std::move(s));
  }

  std::size_t axiom(const AxiomRef& r) {
    std::string key = to_string(r);
    auto it = axioms_.find(key);
    if (it != axioms_.end()) return it->second;
    for (auto p : r.params) cutoff = std::max(cutoff, p);
    if (r.schema == "P") used_p = true;
    Step s;
    s.rule = Rule::Axiom;
    s.formula = axiom_instance(r);
    s.axiom = r;
    return axioms_[key] = push(std::move(s));
  }

  std::size_t assume(const Formula& F) { return mk(Rule::Assume, {}, F); }

  std::size_t refl(const Term& t) {
    auto it = refl_.find(t);
    if (it != refl_.end()) return it->second;
    return refl_[t] = mk(Rule::Refl, {}, eq(t, t));
  }

  // [s = t, M(s)] => M(t)
  std::size_t eqsub(std::size_t e, std::size_t m, Var z, const Formula& motive) {
    Step s;
    s.rule = Rule::EqSub;
    s.premises = {e, m};
    s.var = z;
    s.motive = motive;
    s.formula = substitute(motive, z, f(e)->args[1]);
    return push(std::move(s));
  }

  std::size_t and_i(std::size_t a, std::size_t b) { return mk(Rule::AndI, {a, b}, conj(f(a), f(b))); }
  std::size_t and_e1(std::size_t c) { return mk(Rule::AndE1, {c}, f(c)->a); }
  std::size_t and_e2(std::size_t c) { return mk(Rule::AndE2, {c}, f(c)->b); }
  std::size_t or_i1(std::size_t a, const Formula& other) { return mk(Rule::OrI1, {a}, disj(f(a), other)); }
  std::size_t or_i2(const Formula& other, std::size_t b) { return mk(Rule::OrI2, {b}, disj(other, f(b))); }
  std::size_t or_e(std::size_t d, std::size_t ha, std::size_t ca, std::size_t hb, std::size_t cb) {
    return mk(Rule::OrE, {d, ha, ca, hb, cb}, f(ca));
  }
  std::size_t imp_i(std::size_t h, std::size_t b) { return mk(Rule::ImpI, {h, b}, imp(f(h), f(b))); }
  std::size_t imp_e(std::size_t m, std::size_t a) { return mk(Rule::ImpE, {m, a}, f(m)->b); }
  std::size_t neg_i(std::size_t h, std::size_t p, std::size_t np) { return mk(Rule::NegI, {h, p, np}, neg(f(h))); }
  std::size_t neg_e(std::size_t p, std::size_t np, const Formula& c) { return mk(Rule::NegE, {p, np}, c); }
  std::size_t dne(std::size_t s) { return mk(Rule::Dne, {s}, f(s)->a->a); }
  std::size_t iff_i(std::size_t ab, std::size_t ba) { return mk(Rule::IffI, {ab, ba}, iff(f(ab)->a, f(ab)->b)); }
  std::size_t iff_e1(std::size_t b, std::size_t a) { return mk(Rule::IffE1, {b, a}, f(b)->b); }
  std::size_t iff_e2(std::size_t b, std::size_t a) { return mk(Rule::IffE2, {b, a}, f(b)->a); }

  std::size_t all_i(std::size_t s, Var y, const Formula& target) {
    Step st;
    st.rule = Rule::AllI;
    st.premises = {s};
    st.var = y;
    st.formula = target;
    return push(std::move(st));
  }
  std::size_t all_e(std::size_t s, const Term& t) {
    Step st;
    st.rule = Rule::AllE;
    st.premises = {s};
    st.term = t;
    st.formula = substitute(f(s)->a, f(s)->var, t);
    return push(std::move(st));
  }
  std::size_t ex_i(std::size_t s, const Term& t, const Formula& target) {
    Step st;
    st.rule = Rule::ExI;
    st.premises = {s};
    st.term = t;
    st.formula = target;
    return push(std::move(st));
  }
  std::size_t ex_e(std::size_t e, std::size_t h, std::size_t c, Var y) {
    Step st;
    st.rule = Rule::ExE;
    st.premises = {e, h, c};
    st.var = y;
    st.formula = f(c);
    return push(std::move(st));
  }
  std::size_t unfold(std::size_t s) { return mk(Rule::Unfold, {s}, desugar_top(f(s))); }
  std::size_t fold(std::size_t s, const Formula& target) { return mk(Rule::Fold, {s}, target); }

  // t = s from s = t
  std::size_t sym(std::size_t e) {
    Term s = f(e)->args[0];
    Term t = f(e)->args[1];
    Var z = fresh_var({&s->fv, &t->fv});
    return eqsub(e, refl(s), z, eq(var(z), s));
  }

  // a = c from a = b and b = c
  std::size_t trans(std::size_t ab, std::size_t bc) {
    Term a = f(ab)->args[0];
    Var z = fresh_var({&a->fv, &f(bc)->fv});
    return eqsub(bc, ab, z, eq(a, var(z)));
  }

  // p | ~p
  std::size_t lem(const Formula& p) {
    Formula d = disj(p, neg(p));
    std::size_t h = assume(neg(d));
    std::size_t a = assume(p);
    std::size_t da = or_i1(a, neg(p));
    std::size_t np = neg_i(a, da, h);
    std::size_t dn = or_i2(p, np);
    std::size_t nn = neg_i(h, dn, h);
    return dne(nn);
  }

  // The disjunction at step d has `count` right-nested disjuncts; each case
  // receives its index and the step holding that disjunct and proves c.
  using Case = std::function<std::size_t(std::size_t, std::size_t)>;
  std::size_t or_chain(std::size_t d, std::size_t count, const Case& each, std::size_t idx = 0) {
    std::vector<std::pair<std::size_t, std::size_t>> open;  // (disjunction step, left assumption)
    std::vector<std::size_t> left;
    std::size_t cur = d;
    for (; count > 1; --count, ++idx) {
      Formula D = f(cur);
      std::size_t ha = assume(D->a);
      left.push_back(each(idx, ha));
      std::size_t hb = assume(D->b);
      open.push_back({cur, ha});
      cur = hb;
    }
    std::size_t c = each(idx, cur);
    for (std::size_t k = open.size(); k-- > 0;) {
      std::size_t hb = k + 1 < open.size() ? open[k + 1].first : cur;
      c = or_e(open[k].first, open[k].second, left[k], hb, c);
    }
    return c;
  }

  // t = n for a closed term t
  std::size_t eval(const Term& t) {
    if (t->kind == TermKind::Num) return refl(t);
    if (!t->fv.empty()) throw ProofError("cannot compute an open term");
    auto it = eval_.find(t);
    if (it != eval_.end()) return it->second;
    std::size_t out;
    if (t->fn == sym::S) {
      std::size_t ea = eval(t->args[0]);
      Var z = fresh_var(t->fv);
      out = eqsub(ea, refl(t), z, eq(t, succ(var(z))));
    } else if (t->fn == sym::Add || t->fn == sym::Mul) {
      const Term& a = t->args[0];
      const Term& b = t->args[1];
      std::size_t ea = eval(a), eb = eval(b);
      Term av = f(ea)->args[1], bv = f(eb)->args[1];
      AxiomRef r{t->fn == sym::Add ? "R1" : "R2", {small_value(av), small_value(bv)}};
      std::size_t ax = axiom(r);
      if (a->kind == TermKind::Num && b->kind == TermKind::Num) {
        out = ax;
      } else {
        Var z = 0;
        std::size_t s = refl(t);
        if (a->kind != TermKind::Num) s = eqsub(ea, s, z, eq(t, app(t->fn, {var(z), b})));
        if (b->kind != TermKind::Num) s = eqsub(eb, s, z, eq(t, app(t->fn, {av, var(z)})));
        out = trans(s, ax);
      }
    } else {
      throw ProofError("no arithmetic for symbol " + sym_name(t->fn));
    }
    return eval_[t] = out;
  }

  Truth truth(const Formula& phi) {
    auto it = truth_.find(phi);
    if (it != truth_.end()) return it->second;
    Truth v = nat_evaluate(phi, {}, nat_);
    if (v == Truth::Unknown) throw ProofError("truth value undecided: " + render(phi));
    return truth_[phi] = v;
  }
  bool holds(const Formula& phi) { return truth(phi) == Truth::True; }

  std::optional<Nat> witness(Var x, const Formula& body) {
    return nat_least_witness(x, body, {}, opt_.witness_cap, nat_);
  }

  // phi (pol) or ~phi (!pol), phi closed.
  std::size_t prove(const Formula& phi, bool pol) {
    auto& memo = pol ? pos_ : neg_;
    auto it = memo.find(phi);
    if (it != memo.end()) return it->second;
    std::size_t r = prove_fresh(phi, pol);
    return memo[phi] = r;
  }

  std::size_t prove_fresh(const Formula& phi, bool pol) {
    std::vector<Term> ts;
    collect_closed(phi, ts);
    if (!ts.empty()) return normalize(phi, pol, ts);
    switch (phi->kind) {
      case FKind::Eq: return eq_atom(phi, pol);
      case FKind::Rel: return rel_atom(phi, pol);
      case FKind::Not: {
        if (pol) return prove(phi->a, false);
        std::size_t pa = prove(phi->a, true);
        std::size_t h = assume(phi);
        return neg_i(h, pa, h);
      }
      case FKind::And: {
        if (pol) return and_i(prove(phi->a, true), prove(phi->b, true));
        bool left = !holds(phi->a);
        std::size_t n = prove(left ? phi->a : phi->b, false);
        std::size_t h = assume(phi);
        std::size_t part = left ? and_e1(h) : and_e2(h);
        return neg_i(h, part, n);
      }
      case FKind::Or: {
        if (pol) {
          if (holds(phi->a)) return or_i1(prove(phi->a, true), phi->b);
          return or_i2(phi->a, prove(phi->b, true));
        }
        std::size_t na = prove(phi->a, false), nb = prove(phi->b, false);
        Formula c = neg(phi);
        std::size_t h = assume(phi);
        std::size_t ha = assume(phi->a);
        std::size_t ca = neg_e(ha, na, c);
        std::size_t hb = assume(phi->b);
        std::size_t cb = neg_e(hb, nb, c);
        return neg_i(h, h, or_e(h, ha, ca, hb, cb));
      }
      case FKind::Imp: {
        if (pol) {
          std::size_t ha = assume(phi->a);
          if (!holds(phi->a)) return imp_i(ha, neg_e(ha, prove(phi->a, false), phi->b));
          return imp_i(ha, prove(phi->b, true));
        }
        std::size_t pa = prove(phi->a, true), nb = prove(phi->b, false);
        std::size_t h = assume(phi);
        return neg_i(h, imp_e(h, pa), nb);
      }
      case FKind::Iff: {
        if (pol) return iff_i(prove(imp(phi->a, phi->b), true), prove(imp(phi->b, phi->a), true));
        std::size_t h = assume(phi);
        if (holds(phi->a)) {
          std::size_t pa = prove(phi->a, true), nb = prove(phi->b, false);
          return neg_i(h, iff_e1(h, pa), nb);
        }
        std::size_t pb = prove(phi->b, true), na = prove(phi->a, false);
        return neg_i(h, iff_e2(h, pb), na);
      }
      case FKind::BAll: return pol ? ball_true(phi) : ball_false(phi);
      case FKind::BEx: return pol ? bex_true(phi) : bex_false(phi);
      case FKind::Ex: {
        if (!pol) throw ProofError("refuting an unbounded existential is outside the generators");
        auto w = witness(phi->var, phi->a);
        if (!w) throw ProofError("no witness below the cap for " + render(phi));
        Term n = num(*w);
        return ex_i(prove(substitute(phi->a, phi->var, n), true), n, phi);
      }
      case FKind::All: throw ProofError("unbounded universal quantifiers are outside the generators");
    }
    throw ProofError("unreachable");
  }

  // Maximal closed compound terms are replaced by their values, the
  // normalized sentence is proved and the terms are put back one at a time.
  std::size_t normalize(const Formula& phi, bool pol, const std::vector<Term>& ts) {
    Formula target = pol ? phi : neg(phi);
    std::vector<std::size_t> evs;
    TermMap m;
    for (auto& t : ts) {
      evs.push_back(eval(t));
      m[t] = f(evs.back())->args[1];
    }
    std::size_t cur = prove(replace(phi, m), pol);
    Var z = fresh_var(all_vars(target));
    for (std::size_t k = 0; k < ts.size(); ++k) {
      m[ts[k]] = var(z);
      Formula motive = replace(target, m);
      cur = eqsub(sym(evs[k]), cur, z, motive);
      m[ts[k]] = ts[k];
    }
    return cur;
  }

  std::size_t eq_atom(const Formula& phi, bool pol) {
    std::uint64_t a = small_value(phi->args[0]), b = small_value(phi->args[1]);
    if ((a == b) != pol) throw ProofError("polarity mismatch at " + render(phi));
    return pol ? refl(phi->args[0]) : axiom({"R3", {a, b}});
  }

  std::size_t rel_atom(const Formula& phi, bool pol) {
    if (phi->rel == sym::P) {
      if (!pol) throw ProofError("P is never refuted");
      return axiom({"P", {small_value(phi->args[0])}});
    }
    if (phi->rel != sym::Le) throw ProofError("relation " + sym_name(phi->rel) + " is outside L_ap");
    std::uint64_t m = small_value(phi->args[0]), n = small_value(phi->args[1]);
    if ((m <= n) != pol) throw ProofError("polarity mismatch at " + render(phi));
    if (pol) return axiom({"R5p", {m, n}});
    Formula c = neg(phi);
    std::size_t h = assume(phi);
    std::size_t d = imp_e(all_e(axiom({"R4", {n}}), phi->args[0]), h);
    std::size_t chain = or_chain(d, n + 1, [&](std::size_t i, std::size_t hyp) {
      return neg_e(hyp, axiom({"R3", {m, i}}), c);
    });
    return neg_i(h, h, chain);
  }

  // From y <= n, the R4 disjunction y = 0 | ... | y = n.
  std::size_t cases_below(const Term& y, std::uint64_t n, std::size_t le_step) {
    return imp_e(all_e(axiom({"R4", {n}}), y), le_step);
  }

  // body[x := y] from y = i and a proof of body[x := i]
  std::size_t transport(std::size_t y_eq_i, std::size_t at_i, Var x, const Formula& body) {
    return eqsub(sym(y_eq_i), at_i, x, body);
  }

  std::size_t ball_true(const Formula& phi) {
    std::uint64_t n = small_value(phi->bound);
    Var x = phi->var;
    Var y = fresh_var(all_vars(phi));
    Term Y = var(y);
    std::size_t h = assume(le(Y, phi->bound));
    std::size_t d = cases_below(Y, n, h);
    std::size_t body = or_chain(d, n + 1, [&](std::size_t i, std::size_t hyp) {
      return transport(hyp, prove(substitute(phi->a, x, num(i)), true), x, phi->a);
    });
    std::size_t gen = all_i(imp_i(h, body), y, desugar_top(phi));
    return fold(gen, phi);
  }

  std::size_t ball_false(const Formula& phi) {
    std::uint64_t n = small_value(phi->bound);
    for (std::uint64_t i = 0; i <= n; ++i) {
      Formula inst = substitute(phi->a, phi->var, num(i));
      if (holds(inst)) continue;
      std::size_t ni = prove(inst, false);
      std::size_t h = assume(phi);
      std::size_t at = all_e(unfold(h), num(i));
      std::size_t pi = imp_e(at, axiom({"R5p", {i, n}}));
      return neg_i(h, pi, ni);
    }
    throw ProofError("polarity mismatch at " + render(phi));
  }

  std::size_t bex_true(const Formula& phi) {
    std::uint64_t n = small_value(phi->bound);
    for (std::uint64_t i = 0; i <= n; ++i) {
      Formula inst = substitute(phi->a, phi->var, num(i));
      if (!holds(inst)) continue;
      std::size_t both = and_i(axiom({"R5p", {i, n}}), prove(inst, true));
      return fold(ex_i(both, num(i), desugar_top(phi)), phi);
    }
    throw ProofError("polarity mismatch at " + render(phi));
  }

  std::size_t bex_false(const Formula& phi) {
    std::uint64_t n = small_value(phi->bound);
    Var x = phi->var;
    Formula c = neg(phi);
    std::size_t h = assume(phi);
    std::size_t u = unfold(h);
    Var y = fresh_var(all_vars(phi));
    Term Y = var(y);
    std::size_t hy = assume(substitute(f(u)->a, f(u)->var, Y));
    std::size_t d = cases_below(Y, n, and_e1(hy));
    std::size_t py = and_e2(hy);
    Formula nbody = neg(phi->a);
    std::size_t chain = or_chain(d, n + 1, [&](std::size_t i, std::size_t hyp) {
      std::size_t ni = prove(substitute(phi->a, x, num(i)), false);
      return neg_e(py, transport(hyp, ni, x, nbody), c);
    });
    return neg_i(h, h, ex_e(u, hy, chain, y));
  }

  ProofResult result(const Formula& conclusion) {
    ProofResult r;
    r.proof = std::move(proof);
    r.goal.conclusion = conclusion;
    r.goal.theory = used_p ? "R0p" : "R0";
    r.goal.cutoff = cutoff;
    return r;
  }

 private:
  ProverOptions opt_;
  NatOptions nat_;
  std::map<std::string, std::size_t> axioms_;
  std::unordered_map<Term, std::size_t, TermHash, TermEq> refl_, eval_;
  std::unordered_map<Formula, std::size_t, FormulaHash, FormulaEq> pos_, neg_;
  std::unordered_map<Formula, Truth, FormulaHash, FormulaEq> truth_;
};

// Same sentence up to bound variable names; the kernel compares that way too.
bool same(const Formula& a, const Formula& b) { return equal(a, b) || alpha_equal(a, b); }

}  // namespace

ProofResult prove_delta0(const Formula& phi, bool polarity, const ProverOptions& opt) {
  if (!is_closed(phi)) throw ProofError("prove_delta0: input is not closed");
  if (!is_delta0(phi)) throw ProofError("prove_delta0: input is not Delta0");
  Builder b(opt);
  if ((b.truth(phi) == Truth::True) != polarity) throw ProofError("prove_delta0: polarity does not match the standard model");
  b.prove(phi, polarity);
  return b.result(polarity ? phi : neg(phi));
}

ProofResult prove_sigma1(const Formula& sigma, const ProverOptions& opt, std::optional<Nat> hint) {
  if (!is_closed(sigma)) throw ProofError("prove_sigma1: input is not closed");
  if (!is_sigma1(sigma)) throw ProofError("prove_sigma1: input is not Sigma1");
  Builder b(opt);
  if (hint && sigma->kind == FKind::Ex) {
    Term n = num(*hint);
    Formula inst = substitute(sigma->a, sigma->var, n);
    if (b.truth(inst) == Truth::True) {
      b.ex_i(b.prove(inst, true), n, sigma);
      return b.result(sigma);
    }
  }
  if (b.truth(sigma) != Truth::True) throw ProofError("prove_sigma1: sentence is not true below the cap");
  b.prove(sigma, true);
  return b.result(sigma);
}

Formula wb_split_formula(std::uint64_t n, WbSplit v) {
  Var x = var_named("x");
  Term X = var(x), N = num(n);
  Formula rhs;
  switch (v) {
    case WbSplit::Lt: rhs = disj(lt(X, N), le(N, X)); break;
    case WbSplit::Gt: rhs = disj(le(X, N), lt(N, X)); break;
    case WbSplit::Dichotomy: rhs = disj(le(X, N), le(N, X)); break;
  }
  return all(x, imp(wb_formula(x), rhs));
}

namespace {

// Inside an open context where step w proves wb(x): the disjunction
// n <= x | x = n-1 | ... | x = 0 (just 0 <= x for n = 0).
std::size_t wb_ladder(Builder& b, const Term& X, std::size_t w, std::uint64_t n) {
  std::size_t ih = b.and_e1(w);
  std::size_t u = b.unfold(b.and_e2(w));
  Formula E;  // x = k-1 | ... | x = 0
  for (std::uint64_t k = 0; k < n; ++k) {
    Term K = num(k);
    Formula xk = eq(X, K);
    Formula Enext = k == 0 ? xk : disj(xk, E);
    Formula ge_next = le(num(k + 1), X);
    Formula IHnext = disj(ge_next, Enext);
    auto case_ge = [&](std::size_t a) {
      std::size_t l = b.lem(eq(K, X));
      std::size_t he = b.assume(eq(K, X));
      std::size_t xe = b.sym(he);
      std::size_t in_e = k == 0 ? xe : b.or_i1(xe, E);
      std::size_t ce = b.or_i2(ge_next, in_e);
      std::size_t hn = b.assume(neg(eq(K, X)));
      std::size_t step = b.imp_e(b.imp_e(b.all_e(u, K), a), hn);
      std::size_t cn = b.or_i1(step, Enext);
      return b.or_e(l, he, ce, hn, cn);
    };
    if (k == 0) {
      ih = case_ge(ih);
    } else {
      std::size_t ha = b.assume(b.f(ih)->a);
      std::size_t ca = case_ge(ha);
      std::size_t hb = b.assume(E);
      std::size_t cb = b.or_i2(ge_next, b.or_i2(xk, hb));
      ih = b.or_e(ih, ha, ca, hb, cb);
    }
    E = Enext;
  }
  return ih;
}

}  // namespace

ProofResult prove_wb_split(std::uint64_t n, WbSplit v) {
  ProverOptions opt;
  Builder b(opt);
  Formula goal = wb_split_formula(n, v);
  Var x = goal->var;
  Term X = var(x), N = num(n);
  Formula wb = goal->a->a;
  Formula rhs = goal->a->b;
  std::size_t w = b.assume(wb);
  std::size_t ladder = wb_ladder(b, X, w, n);

  // x = i for i < n
  auto below = [&](std::size_t i, std::size_t hyp) {
    std::size_t back = b.sym(hyp);  // i = x
    Var z = fresh_var({&X->fv});
    z = z == x ? z + 1 : z;
    std::size_t le_x = b.eqsub(back, b.axiom({"R5p", {i, n}}), z, le(var(z), N));
    if (v == WbSplit::Lt) {
      std::size_t ne_x = b.eqsub(back, b.axiom({"R3", {i, n}}), z, neg(eq(var(z), N)));
      return b.or_i1(b.and_i(le_x, ne_x), rhs->b);
    }
    return b.or_i1(le_x, rhs->b);
  };
  // n <= x
  auto above = [&](std::size_t a) {
    if (v != WbSplit::Gt) return b.or_i2(rhs->a, a);
    std::size_t l = b.lem(eq(N, X));
    std::size_t he = b.assume(eq(N, X));
    Var z = x + 1;
    std::size_t le_x = b.eqsub(he, b.axiom({"R5p", {n, n}}), z, le(var(z), N));
    std::size_t ce = b.or_i1(le_x, rhs->b);
    std::size_t hn = b.assume(neg(eq(N, X)));
    std::size_t cn = b.or_i2(rhs->a, b.and_i(a, hn));
    return b.or_e(l, he, ce, hn, cn);
  };

  std::size_t out;
  if (n == 0) {
    out = above(ladder);
  } else {
    Formula L = b.f(ladder);
    std::size_t ha = b.assume(L->a);
    std::size_t ca = above(ha);
    std::size_t hb = b.assume(L->b);
    // E_n lists x = n-1 first
    std::size_t cb = b.or_chain(hb, n, [&](std::size_t idx, std::size_t hyp) { return below(n - 1 - idx, hyp); });
    out = b.or_e(ladder, ha, ca, hb, cb);
  }
  std::size_t gen = b.all_i(b.imp_i(w, out), x, goal);
  (void)gen;
  return b.result(goal);
}

ProofResult prove_not_comparison(const Formula& sigma, const Formula& sigma_p, ComparisonMode mode,
                                 const ProverOptions& opt) {
  if (sigma->kind != FKind::Ex || !is_closed(sigma)) throw ProofError("sigma must be a closed exists x sigma0(x)");
  if (sigma_p->kind != FKind::Ex || !is_closed(sigma_p) || sigma_p->a->kind != FKind::And ||
      !same(sigma_p->a->a, wb_formula(sigma_p->var)))
    throw ProofError("sigma' must have the shape exists y (wb(y) & sigma0'(y))");
  bool strict = mode == ComparisonMode::LeBlocksLt;
  Formula C = comparison_formula(strict ? wc_lt(sigma_p, sigma) : wc_le(sigma_p, sigma));
  Formula goal = neg(C);

  Builder b(opt);
  // premise: least witness n of sigma0, and sigma0' false below n (through n when strict)
  auto wn = b.witness(sigma->var, sigma->a);
  if (!wn || *wn > std::numeric_limits<std::uint32_t>::max())
    throw ProofError("premise not verified: sigma has no witness below the cap");
  std::uint64_t n = wn->convert_to<std::uint64_t>();
  Formula body_p = sigma_p->a->b;
  Var yv = sigma_p->var;
  std::uint64_t last = strict ? n : n + 1;
  for (std::uint64_t k = 0; k < last; ++k)
    if (b.truth(substitute(body_p, yv, num(k))) != Truth::False)
      throw ProofError("premise not verified: sigma0' holds at " + std::to_string(k));

  Var y = fresh_var(all_vars(C));
  Term Y = var(y), N = num(n);
  std::size_t h = b.assume(C);
  std::size_t hy = b.assume(substitute(C->a, C->var, Y));
  std::size_t body = b.and_e1(hy);
  std::size_t w = b.and_e1(body);
  std::size_t sp = b.and_e2(body);    // sigma0'(y)
  std::size_t guard = b.and_e2(hy);   // forall x <= y (...)
  Formula c = goal;

  // ~sigma0'(y) from y = k, and the contradiction with sp
  Formula nbody = neg(body_p);
  auto refute_at = [&](std::uint64_t k, std::size_t y_eq) {
    std::size_t nk = b.prove(substitute(body_p, yv, num(k)), false);
    return b.neg_e(sp, b.eqsub(b.sym(y_eq), nk, yv, nbody), c);
  };

  std::size_t split_proof_end;
  {
    ProofResult ws = prove_wb_split(n, WbSplit::Lt);
    // splice the lemma in; it is closed, so its steps are valid anywhere
    std::size_t base = b.proof.steps.size();
    for (auto& s : ws.proof.steps) {
      Step t = s;
      for (auto& p : t.premises) p += base;
      if (t.rule == Rule::Axiom) {
        b.cutoff = std::max(b.cutoff, ws.goal.cutoff);
      }
      b.push(std::move(t));
    }
    split_proof_end = b.proof.steps.size() - 1;
  }
  std::size_t d = b.imp_e(b.all_e(split_proof_end, Y), w);

  std::size_t ha = b.assume(b.f(d)->a);  // y < n
  std::size_t le_n = b.and_e1(ha);
  std::size_t ne_n = b.and_e2(ha);
  std::size_t cases = b.cases_below(Y, n, le_n);
  std::size_t ca = b.or_chain(cases, n + 1, [&](std::size_t i, std::size_t hyp) {
    if (i == n) return b.neg_e(hyp, ne_n, c);
    return refute_at(i, hyp);
  });

  std::size_t hb = b.assume(b.f(d)->b);  // n <= y
  std::size_t pn = b.prove(substitute(sigma->a, sigma->var, N), true);
  std::size_t u = b.unfold(guard);
  std::size_t at = b.imp_e(b.all_e(u, N), hb);
  std::size_t cb;
  if (strict) {
    cb = b.neg_e(pn, at, c);
  } else {
    std::size_t l = b.lem(eq(N, Y));
    std::size_t he = b.assume(eq(N, Y));
    std::size_t nk = b.prove(substitute(body_p, yv, N), false);
    std::size_t ce = b.neg_e(sp, b.eqsub(he, nk, yv, nbody), c);
    std::size_t hn = b.assume(neg(eq(N, Y)));
    std::size_t cn = b.neg_e(pn, b.imp_e(at, hn), c);
    cb = b.or_e(l, he, ce, hn, cn);
  }
  std::size_t cases_done = b.or_e(d, ha, ca, hb, cb);
  std::size_t ex = b.ex_e(h, hy, cases_done, y);
  b.neg_i(h, h, ex);
  return b.result(goal);
}

}  // namespace wa
