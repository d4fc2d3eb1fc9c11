#include "wa/natural.hpp"

#include <algorithm>

namespace wa {

namespace {

using Slot = std::uint32_t;

// ------------------------------------------------------------ polynomials

struct Mono {
  std::vector<Slot> vars;  // sorted, with repetition
  Nat coef;
};

struct Poly {
  std::vector<Mono> ms;  // sorted by vars, positive coefficients
};

bool operator==(const Poly& a, const Poly& b) {
  if (a.ms.size() != b.ms.size()) return false;
  for (std::size_t i = 0; i < a.ms.size(); ++i)
    if (a.ms[i].vars != b.ms[i].vars || a.ms[i].coef != b.ms[i].coef) return false;
  return true;
}

int compare(const Poly& a, const Poly& b) {
  std::size_t n = std::min(a.ms.size(), b.ms.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.ms[i].vars != b.ms[i].vars) return a.ms[i].vars < b.ms[i].vars ? -1 : 1;
    if (a.ms[i].coef != b.ms[i].coef) return a.ms[i].coef < b.ms[i].coef ? -1 : 1;
  }
  if (a.ms.size() != b.ms.size()) return a.ms.size() < b.ms.size() ? -1 : 1;
  return 0;
}

void normalize(Poly& p) {
  std::sort(p.ms.begin(), p.ms.end(), [](const Mono& a, const Mono& b) { return a.vars < b.vars; });
  std::vector<Mono> out;
  for (auto& m : p.ms) {
    if (m.coef == 0) continue;
    if (!out.empty() && out.back().vars == m.vars) out.back().coef += m.coef;
    else out.push_back(std::move(m));
  }
  p.ms = std::move(out);
}

Poly pconst(const Nat& c) {
  Poly p;
  if (c != 0) p.ms.push_back({{}, c});
  return p;
}

Poly pvar(Slot s) {
  Poly p;
  p.ms.push_back({{s}, Nat(1)});
  return p;
}

Poly padd(const Poly& a, const Poly& b) {
  Poly p;
  p.ms = a.ms;
  p.ms.insert(p.ms.end(), b.ms.begin(), b.ms.end());
  normalize(p);
  return p;
}

Poly pmul(const Poly& a, const Poly& b) {
  Poly p;
  for (auto& x : a.ms)
    for (auto& y : b.ms) {
      Mono m;
      std::merge(x.vars.begin(), x.vars.end(), y.vars.begin(), y.vars.end(), std::back_inserter(m.vars));
      m.coef = x.coef * y.coef;
      p.ms.push_back(std::move(m));
    }
  normalize(p);
  return p;
}

Nat constant_term(const Poly& p) { return (!p.ms.empty() && p.ms[0].vars.empty()) ? p.ms[0].coef : Nat(0); }
bool is_constant(const Poly& p) { return p.ms.empty() || (p.ms.size() == 1 && p.ms[0].vars.empty()); }

std::vector<Slot> poly_slots(const Poly& p) {
  std::vector<Slot> s;
  for (auto& m : p.ms) s.insert(s.end(), m.vars.begin(), m.vars.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

// Removes the common part of both sides.
void cancel(Poly& l, Poly& r) {
  std::size_t i = 0, j = 0;
  while (i < l.ms.size() && j < r.ms.size()) {
    if (l.ms[i].vars == r.ms[j].vars) {
      Nat m = std::min(l.ms[i].coef, r.ms[j].coef);
      l.ms[i].coef -= m;
      r.ms[j].coef -= m;
      ++i;
      ++j;
    } else if (l.ms[i].vars < r.ms[j].vars) {
      ++i;
    } else {
      ++j;
    }
  }
  auto zero = [](const Mono& m) { return m.coef == 0; };
  l.ms.erase(std::remove_if(l.ms.begin(), l.ms.end(), zero), l.ms.end());
  r.ms.erase(std::remove_if(r.ms.begin(), r.ms.end(), zero), r.ms.end());
}

// --------------------------------------------------------------------- IR

enum class NK : std::uint8_t { Const, Lit, And, Or, Block };

struct Node;
using NodeP = std::shared_ptr<Node>;

struct BVar {
  Slot slot;
  bool bounded = false;
  Poly bound;
  bool deferred = false;
  int bound_by = -1;  // index of the deferred variable this one is bounded by
};

struct Node {
  NK kind = NK::Const;
  Truth value = Truth::True;
  bool is_eq = false, negated = false;
  Poly L, R;
  std::vector<NodeP> kids;
  bool block_negated = false;
  bool has_unbounded = false;
  std::vector<BVar> vars;
  std::vector<std::pair<Slot, Poly>> defs;  // eliminated block variables, by value
  NodeP body;
  std::vector<Slot> fv;
  // last evaluation of a closed block
  mutable bool memo_valid = false;
  mutable std::vector<Nat> memo_key;
  mutable Truth memo_val = Truth::Unknown;
};

NodeP mk_const(Truth t) {
  auto n = std::make_shared<Node>();
  n->kind = NK::Const;
  n->value = t;
  return n;
}

Truth flip(Truth t) { return t == Truth::True ? Truth::False : t == Truth::False ? Truth::True : t; }

std::vector<Slot> merge_slots(const std::vector<Slot>& a, const std::vector<Slot>& b) {
  std::vector<Slot> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

NodeP mk_lit(bool is_eq, bool negated, Poly l, Poly r) {
  cancel(l, r);
  auto fold = [&](bool v) { return mk_const((v != negated) ? Truth::True : Truth::False); };
  Nat cl = constant_term(l), cr = constant_term(r);
  if (is_eq) {
    if (l.ms.empty() && r.ms.empty()) return fold(true);
    if (is_constant(l) && is_constant(r)) return fold(cl == cr);
    if (is_constant(r) && cl > cr) return fold(false);
    if (is_constant(l) && cr > cl) return fold(false);
    if (compare(l, r) > 0) std::swap(l, r);
  } else {
    if (l.ms.empty()) return fold(true);
    if (is_constant(l) && is_constant(r)) return fold(cl <= cr);
    if (is_constant(l) && cr >= cl) return fold(true);
    if (is_constant(r) && cl > cr) return fold(false);
  }
  auto n = std::make_shared<Node>();
  n->kind = NK::Lit;
  n->is_eq = is_eq;
  n->negated = negated;
  n->fv = merge_slots(poly_slots(l), poly_slots(r));
  n->L = std::move(l);
  n->R = std::move(r);
  return n;
}

bool complementary(const Node& a, const Node& b) {
  return a.kind == NK::Lit && b.kind == NK::Lit && a.is_eq == b.is_eq && a.negated != b.negated && a.L == b.L &&
         a.R == b.R;
}

bool same_lit(const Node& a, const Node& b) {
  return a.kind == NK::Lit && b.kind == NK::Lit && a.is_eq == b.is_eq && a.negated == b.negated && a.L == b.L &&
         a.R == b.R;
}

NodeP mk_junction(NK kind, std::vector<NodeP> in) {
  Truth absorbing = kind == NK::And ? Truth::False : Truth::True;
  Truth neutral = flip(absorbing);
  std::vector<NodeP> kids;
  std::vector<NodeP> stack(in.rbegin(), in.rend());
  while (!stack.empty()) {
    NodeP k = stack.back();
    stack.pop_back();
    if (k->kind == kind) {
      for (auto it = k->kids.rbegin(); it != k->kids.rend(); ++it) stack.push_back(*it);
      continue;
    }
    if (k->kind == NK::Const) {
      if (k->value == absorbing) return k;
      if (k->value == neutral) continue;
    }
    bool dup = false;
    for (auto& e : kids) {
      if (complementary(*e, *k)) return mk_const(absorbing);
      if (same_lit(*e, *k)) dup = true;
    }
    if (!dup) kids.push_back(k);
  }
  if (kids.empty()) return mk_const(neutral);
  if (kids.size() == 1) return kids[0];
  auto n = std::make_shared<Node>();
  n->kind = kind;
  for (auto& k : kids) n->fv = merge_slots(n->fv, k->fv);
  n->kids = std::move(kids);
  return n;
}

std::vector<Slot> remove_slots(const std::vector<Slot>& a, const std::vector<Slot>& gone) {
  std::vector<Slot> out;
  for (Slot s : a)
    if (!std::binary_search(gone.begin(), gone.end(), s)) out.push_back(s);
  return out;
}

Poly psubst(const Poly& p, Slot s, const Poly& q) {
  Poly out;
  for (auto& m : p.ms) {
    Poly term;
    Mono rest{{}, m.coef};
    std::size_t k = 0;
    for (Slot v : m.vars) {
      if (v == s) ++k;
      else rest.vars.push_back(v);
    }
    if (k == 0) {
      out = padd(out, Poly{{m}});
      continue;
    }
    term.ms.push_back(rest);
    for (std::size_t i = 0; i < k; ++i) term = pmul(term, q);
    out = padd(out, term);
  }
  return out;
}

NodeP mk_block(std::vector<BVar> vars, NodeP body, bool negated, bool exact,
               std::vector<std::pair<Slot, Poly>> defs = {});

// n with the slot s replaced by q; widest records the largest polynomial built.
NodeP subst_node(const NodeP& n, Slot s, const Poly& q, bool exact, std::size_t& widest) {
  if (!std::binary_search(n->fv.begin(), n->fv.end(), s)) return n;
  switch (n->kind) {
    case NK::Const: return n;
    case NK::Lit: {
      Poly l = psubst(n->L, s, q), r = psubst(n->R, s, q);
      widest = std::max({widest, l.ms.size(), r.ms.size()});
      return mk_lit(n->is_eq, n->negated, std::move(l), std::move(r));
    }
    case NK::And:
    case NK::Or: {
      std::vector<NodeP> kids;
      for (auto& k : n->kids) kids.push_back(subst_node(k, s, q, exact, widest));
      return mk_junction(n->kind, std::move(kids));
    }
    case NK::Block: {
      auto vars = n->vars;
      for (auto& v : vars)
        if (v.bounded) v.bound = psubst(v.bound, s, q);
      auto defs = n->defs;
      for (auto& d : defs) d.second = psubst(d.second, s, q);
      return mk_block(std::move(vars), subst_node(n->body, s, q, exact, widest), n->block_negated, exact,
                      std::move(defs));
    }
  }
  return n;
}

constexpr std::size_t kMaxInlinedWidth = 64;

// Eliminates a block variable fixed by a conjunct v = q with q a constant or
// another variable, replacing it by q everywhere (a bounded v leaves q <= bound
// behind). False when none qualifies.
bool eliminate_definition(std::vector<BVar>& vars, NodeP& body, std::vector<std::pair<Slot, Poly>>& defs,
                          bool exact) {
  std::vector<NodeP> kids;
  if (body->kind == NK::And) kids = body->kids;
  else if (body->kind == NK::Lit) kids = {body};
  for (std::size_t k = 0; k < kids.size(); ++k) {
    const Node& lit = *kids[k];
    if (lit.kind != NK::Lit || !lit.is_eq || lit.negated) continue;
    for (int side = 0; side < 2; ++side) {
      const Poly& lhs = side == 0 ? lit.L : lit.R;
      const Poly& q = side == 0 ? lit.R : lit.L;
      if (lhs.ms.size() != 1 || lhs.ms[0].vars.size() != 1 || lhs.ms[0].coef != 1) continue;
      Slot s = lhs.ms[0].vars[0];
      auto it = std::find_if(vars.begin(), vars.end(), [&](const BVar& v) { return v.slot == s; });
      if (it == vars.end()) continue;
      bool renaming = q.ms.size() == 1 && q.ms[0].vars.size() == 1 && q.ms[0].coef == 1;
      if (!is_constant(q) && !renaming) continue;
      auto qs = poly_slots(q);
      if (std::binary_search(qs.begin(), qs.end(), s)) continue;
      bool in_bound = false;
      for (auto& v : vars)
        if (v.bounded && v.slot != s) {
          auto bs = poly_slots(v.bound);
          in_bound |= std::binary_search(bs.begin(), bs.end(), s);
        }
      if (in_bound) continue;
      std::size_t widest = q.ms.size();
      std::vector<NodeP> rest;
      for (std::size_t j = 0; j < kids.size(); ++j)
        if (j != k) rest.push_back(subst_node(kids[j], s, q, exact, widest));
      if (it->bounded) rest.push_back(mk_lit(false, false, q, it->bound));
      std::vector<BVar> nv;
      for (auto& v : vars)
        if (v.slot != s) nv.push_back(v);
      if (widest > kMaxInlinedWidth) continue;
      for (auto& d : defs) d.second = psubst(d.second, s, q);
      defs.emplace_back(s, q);
      vars = std::move(nv);
      body = mk_junction(NK::And, std::move(rest));
      return true;
    }
  }
  return false;
}

NodeP mk_block(std::vector<BVar> vars, NodeP body, bool negated, bool exact,
               std::vector<std::pair<Slot, Poly>> defs) {
  // pull existential sub-blocks of a conjunctive body into this block
  {
    for (bool changed = true; changed;) {
      changed = false;
      if (body->kind == NK::Block && !body->block_negated) {
        vars.insert(vars.end(), body->vars.begin(), body->vars.end());
        defs.insert(defs.end(), body->defs.begin(), body->defs.end());
        body = body->body;
        changed = true;
      } else if (body->kind == NK::And) {
        std::vector<NodeP> kids;
        bool pulled = false;
        for (auto& k : body->kids) {
          if (k->kind == NK::Block && !k->block_negated) {
            vars.insert(vars.end(), k->vars.begin(), k->vars.end());
            defs.insert(defs.end(), k->defs.begin(), k->defs.end());
            kids.push_back(k->body);
            pulled = true;
          } else {
            kids.push_back(k);
          }
        }
        if (pulled) {
          body = mk_junction(NK::And, kids);
          changed = true;
        }
      }
    }
  }
  bool had_unbounded = false;
  for (auto& v : vars) had_unbounded |= !v.bounded;
  std::vector<Slot> bound_here;
  for (auto& v : vars) bound_here.push_back(v.slot);
  for (auto& d : defs) bound_here.push_back(d.first);
  std::sort(bound_here.begin(), bound_here.end());
  while (eliminate_definition(vars, body, defs, exact)) {
  }
  // drop variables nothing depends on; their ranges are never empty
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      Slot s = vars[i].slot;
      bool used = std::binary_search(body->fv.begin(), body->fv.end(), s);
      for (std::size_t j = 0; j < vars.size() && !used; ++j)
        if (j != i && vars[j].bounded) {
          auto ps = poly_slots(vars[j].bound);
          used = std::binary_search(ps.begin(), ps.end(), s);
        }
      if (!used) {
        if (!negated) defs.emplace_back(s, pconst(0));
        vars.erase(vars.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
    }
  }
  bool unbounded = false;
  for (auto& v : vars) unbounded |= !v.bounded;
  // a true block whose variables all went away still reports their values
  const bool reports = !negated && !defs.empty();
  if (vars.empty() && !negated && !reports) return body;
  if (body->kind == NK::Const && !(reports && body->value == Truth::True)) {
    Truth t = body->value;
    if (t == Truth::False && had_unbounded && !exact) t = Truth::Unknown;
    return mk_const(negated ? flip(t) : t);
  }
  // deferred variables: used only as the exact bound of other block variables
  for (auto& v : vars) {
    v.deferred = false;
    v.bound_by = -1;
  }
  for (std::size_t i = 0; i < vars.size(); ++i) {
    Slot s = vars[i].slot;
    if (std::binary_search(body->fv.begin(), body->fv.end(), s)) continue;
    bool ok = true, any = false;
    for (std::size_t j = 0; j < vars.size() && ok; ++j) {
      if (j == i || !vars[j].bounded) continue;
      auto ps = poly_slots(vars[j].bound);
      if (!std::binary_search(ps.begin(), ps.end(), s)) continue;
      if (vars[j].bound == pvar(s)) any = true;
      else ok = false;
    }
    if (ok && any && !vars[i].bounded) {
      vars[i].deferred = true;
      for (std::size_t j = 0; j < vars.size(); ++j)
        if (j != i && vars[j].bounded && vars[j].bound == pvar(s)) vars[j].bound_by = static_cast<int>(i);
    }
  }
  auto n = std::make_shared<Node>();
  n->kind = NK::Block;
  n->block_negated = negated;
  n->has_unbounded = unbounded || had_unbounded;
  std::vector<Slot> own;
  std::vector<Slot> fv = body->fv;
  for (auto& v : vars) {
    own.push_back(v.slot);
    if (v.bounded) fv = merge_slots(fv, poly_slots(v.bound));
  }
  std::sort(own.begin(), own.end());
  n->fv = remove_slots(fv, own);
  for (auto& d : defs) n->fv = merge_slots(n->fv, remove_slots(poly_slots(d.second), bound_here));
  n->vars = std::move(vars);
  n->defs = std::move(defs);
  n->body = std::move(body);
  return n;
}

// ---------------------------------------------------------------- compiler

struct Compiler {
  const NatOptions& opt;
  std::vector<Var> slot_var;
  std::vector<std::pair<Var, Slot>> scope;

  explicit Compiler(const NatOptions& o) : opt(o) {}

  Slot new_slot(Var v) {
    slot_var.push_back(v);
    return static_cast<Slot>(slot_var.size() - 1);
  }

  Slot lookup(Var v) const {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->first == v) return it->second;
    throw EvalError("unassigned free variable " + var_name(v));
  }

  Poly term(const Term& t) {
    switch (t->kind) {
      case TermKind::Var: return pvar(lookup(t->var));
      case TermKind::Num: return pconst(t->value());
      case TermKind::App:
        if (t->fn == sym::S && t->args.size() == 1) return padd(term(t->args[0]), pconst(1));
        if (t->fn == sym::Add && t->args.size() == 2) return padd(term(t->args[0]), term(t->args[1]));
        if (t->fn == sym::Mul && t->args.size() == 2) return pmul(term(t->args[0]), term(t->args[1]));
        throw EvalError("symbol " + sym_name(t->fn) + " has no standard interpretation");
    }
    return {};
  }

  // ctx: 0 outside unbounded quantifiers, 1 under an unbounded exists, 2 under an unbounded forall
  NodeP formula(const Formula& f, bool pol, int ctx) {
    switch (f->kind) {
      case FKind::Eq: return mk_lit(true, !pol, term(f->args[0]), term(f->args[1]));
      case FKind::Rel:
        if (f->rel == sym::Le && f->args.size() == 2) return mk_lit(false, !pol, term(f->args[0]), term(f->args[1]));
        if (f->rel == sym::P && f->args.size() == 1 && opt.p_true) {
          term(f->args[0]);
          return mk_const(pol ? Truth::True : Truth::False);
        }
        throw EvalError("relation " + sym_name(f->rel) + " has no standard interpretation");
      case FKind::Not: return formula(f->a, !pol, ctx);
      case FKind::And:
        return mk_junction(pol ? NK::And : NK::Or, {formula(f->a, pol, ctx), formula(f->b, pol, ctx)});
      case FKind::Or:
        return mk_junction(pol ? NK::Or : NK::And, {formula(f->a, pol, ctx), formula(f->b, pol, ctx)});
      case FKind::Imp:
        return mk_junction(pol ? NK::Or : NK::And, {formula(f->a, !pol, ctx), formula(f->b, pol, ctx)});
      case FKind::Iff: {
        NodeP ap = formula(f->a, true, ctx), an = formula(f->a, false, ctx);
        NodeP bp = formula(f->b, true, ctx), bn = formula(f->b, false, ctx);
        if (pol) return mk_junction(NK::And, {mk_junction(NK::Or, {an, bp}), mk_junction(NK::Or, {ap, bn})});
        return mk_junction(NK::Or, {mk_junction(NK::And, {ap, bn}), mk_junction(NK::And, {an, bp})});
      }
      default: {
        bool universal = (f->kind == FKind::All || f->kind == FKind::BAll) == pol;
        bool bounded = f->bound != nullptr;
        BVar bv;
        if (bounded) {
          bv.bounded = true;
          bv.bound = term(f->bound);
        }
        int inner = ctx;
        if (!bounded) {
          int mine = universal ? 2 : 1;
          if (ctx != 0 && ctx != mine)
            throw EvalError("formula alternates unbounded quantifiers; not decidable by bounded search");
          inner = mine;
        }
        bv.slot = new_slot(f->var);
        scope.emplace_back(f->var, bv.slot);
        // a universal block is the negation of an existential one over the negated body
        NodeP body = formula(f->a, universal ? !pol : pol, inner);
        scope.pop_back();
        return mk_block({bv}, body, universal, opt.exact);
      }
    }
  }
};

// ------------------------------------------------------------------ solver

struct Env {
  std::vector<Nat> val;
  std::vector<char> set;
};

Nat eval_poly(const Poly& p, const Env& env) {
  Nat acc = 0;
  Nat m;
  for (auto& mono : p.ms) {
    m = mono.coef;
    for (Slot s : mono.vars) m *= env.val[s];
    acc += m;
  }
  return acc;
}

// Coefficients of p as a polynomial in v, other slots read from env.
std::vector<Nat> univariate(const Poly& p, Slot v, const Env& env) {
  std::vector<Nat> c(1);
  for (auto& mono : p.ms) {
    std::size_t d = 0;
    Nat m = mono.coef;
    for (Slot s : mono.vars) {
      if (s == v) ++d;
      else m *= env.val[s];
    }
    if (c.size() <= d) c.resize(d + 1);
    c[d] += m;
  }
  return c;
}

Nat horner(const std::vector<Nat>& c, const Nat& x) {
  Nat acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

bool increasing(const std::vector<Nat>& c) {
  for (std::size_t d = 1; d < c.size(); ++d)
    if (c[d] > 0) return true;
  return false;
}

// Smallest x in [lo, hi] with g(x) >= target (g nondecreasing), or hi+1.
Nat first_reaching(const std::vector<Nat>& g, const Nat& target, Nat lo, Nat hi) {
  if (hi < lo) return lo;
  if (horner(g, hi) < target) return hi + 1;
  while (lo < hi) {
    Nat mid = (lo + hi) / 2;
    if (horner(g, mid) >= target) hi = mid;
    else lo = mid + 1;
  }
  return lo;
}

struct Range {
  Nat lo = 0;
  std::optional<Nat> hi;
  std::optional<Nat> root;
  bool empty = false;

  void cap_hi(const Nat& h) {
    if (!hi || h < *hi) hi = h;
  }
  void raise_lo(const Nat& l) {
    if (l > lo) lo = l;
  }
  void finish() {
    if (root) {
      if (*root < lo || (hi && *root > *hi)) empty = true;
      else lo = *root, hi = *root;
    }
    if (hi && *hi < lo) empty = true;
  }
};

class Solver {
 public:
  Solver(const NatOptions& o, std::size_t slots) : opt_(o) {
    env.val.resize(slots);
    env.set.assign(slots, 0);
  }

  Env env;
  bool exhausted = false;
  std::vector<Slot>* witness_slots = nullptr;
  std::map<Slot, Nat>* witness = nullptr;

  Truth eval(const Node* n) {
    switch (n->kind) {
      case NK::Const: return n->value;
      case NK::Lit: {
        for (Slot s : n->fv)
          if (!env.set[s]) return Truth::Unknown;
        Nat l = eval_poly(n->L, env), r = eval_poly(n->R, env);
        bool v = n->is_eq ? l == r : l <= r;
        return (v != n->negated) ? Truth::True : Truth::False;
      }
      case NK::And:
      case NK::Or: {
        bool is_and = n->kind == NK::And;
        bool unknown = false;
        for (auto& k : n->kids) {
          Truth t = eval(k.get());
          if (t == (is_and ? Truth::False : Truth::True)) return t;
          if (t == Truth::Unknown) unknown = true;
        }
        if (unknown) return Truth::Unknown;
        return is_and ? Truth::True : Truth::False;
      }
      case NK::Block: {
        for (Slot s : n->fv)
          if (!env.set[s]) return Truth::Unknown;
        if (n->memo_valid && n->memo_key.size() == n->fv.size()) {
          bool same = true;
          for (std::size_t i = 0; i < n->fv.size() && same; ++i) same = n->memo_key[i] == env.val[n->fv[i]];
          if (same) return n->memo_val;
        }
        Truth t = solve(*n, nullptr);
        if (n->block_negated) t = flip(t);
        n->memo_key.clear();
        for (Slot s : n->fv) n->memo_key.push_back(env.val[s]);
        n->memo_val = t;
        n->memo_valid = true;
        return t;
      }
    }
    return Truth::Unknown;
  }

  // Existential reading of the block; records a witness when asked.
  Truth solve(const Node& b, std::map<Slot, Nat>* wit) {
    std::vector<const Node*> extras;
    std::vector<const Node*> split;
    bool truncated = false;
    auto* saved = witness;
    witness = wit;
    Truth t = search(b, extras, split, truncated);
    witness = saved;
    for (auto& v : b.vars) env.set[v.slot] = 0;
    if (t == Truth::True) return t;
    if (t == Truth::False && (truncated || (b.has_unbounded && !opt_.exact))) return Truth::Unknown;
    return t;
  }

 private:
  const NatOptions& opt_;
  std::uint64_t work_ = 0;

  void conjuncts(const Node* n, std::vector<const Node*>& out) {
    if (n->kind == NK::And)
      for (auto& k : n->kids) conjuncts(k.get(), out);
    else
      out.push_back(n);
  }

  int unassigned_count(const Node* lit, Slot& which) const {
    int c = 0;
    for (Slot s : lit->fv)
      if (!env.set[s]) {
        which = s;
        ++c;
      }
    return c;
  }

  void narrow(const Node* lit, Slot v, Range& r) {
    auto gl = univariate(lit->L, v, env);
    auto gr = univariate(lit->R, v, env);
    bool inl = increasing(gl), inr = increasing(gr);
    if (inl && inr) return;
    if (!inl && !inr) {
      bool val = lit->is_eq ? gl[0] == gr[0] : gl[0] <= gr[0];
      if (val == lit->negated) r.empty = true;
      return;
    }
    const std::vector<Nat>& g = inl ? gl : gr;
    Nat c = inl ? gr[0] : gl[0];
    Nat top = r.hi ? *r.hi : std::max(r.lo, c + 1);
    if (lit->is_eq) {
      if (lit->negated) return;
      Nat x = first_reaching(g, c, r.lo, std::min(top, std::max(r.lo, c)));
      if (horner(g, x) != c) {
        r.empty = true;
        return;
      }
      if (r.root && *r.root != x) r.empty = true;
      r.root = x;
      return;
    }
    // g on the left:  g <= c, or g >= c+1 when negated
    // g on the right: c <= g, or g <= c-1 when negated
    bool upper = inl != lit->negated;
    if (upper) {
      Nat bound = inl ? c : c - 1;
      if (!inl && c == 0) {
        r.empty = true;
        return;
      }
      // largest x with g(x) <= bound
      Nat hi_search = std::max(r.lo, std::min(top, bound + 1));
      Nat x = first_reaching(g, bound + 1, r.lo, hi_search);
      if (x == r.lo) {
        r.empty = true;
        return;
      }
      r.cap_hi(x - 1);
    } else {
      Nat target = inl ? c + 1 : c;
      Nat hi_search = std::max(r.lo, target);
      if (r.hi && *r.hi < hi_search) hi_search = *r.hi;
      Nat x = first_reaching(g, target, r.lo, hi_search);
      r.raise_lo(x);
      if (r.hi && x > *r.hi) r.empty = true;
    }
  }

  void record(const Node& b) {
    if (!witness) return;
    for (auto& v : b.vars) {
      if (env.set[v.slot]) (*witness)[v.slot] = env.val[v.slot];
    }
    // anything left open is unconstrained; complete it with the least admissible value
    for (auto& v : b.vars)
      if (!env.set[v.slot] && !v.deferred) (*witness)[v.slot] = 0;
    for (std::size_t i = 0; i < b.vars.size(); ++i) {
      auto& v = b.vars[i];
      if (env.set[v.slot] || !v.deferred) continue;
      Nat m = 0;
      for (auto& u : b.vars)
        if (u.bound_by == static_cast<int>(i)) m = std::max(m, (*witness)[u.slot]);
      (*witness)[v.slot] = m;
    }
    for (auto& [slot, q] : b.defs) {
      Nat acc = 0;
      for (auto& mono : q.ms) {
        Nat m = mono.coef;
        for (Slot s : mono.vars) m *= env.set[s] ? env.val[s] : (*witness)[s];
        acc += m;
      }
      (*witness)[slot] = acc;
    }
  }

  Truth assign_and_search(const Node& b, Slot s, const Nat& x, std::vector<const Node*>& extras,
                          std::vector<const Node*>& split, bool& truncated) {
    env.val[s] = x;
    env.set[s] = 1;
    Truth t = search(b, extras, split, truncated);
    env.set[s] = 0;
    return t;
  }

  Truth search(const Node& b, std::vector<const Node*>& extras, std::vector<const Node*>& split, bool& truncated) {
    if (++work_ > opt_.work_budget) {
      exhausted = true;
      truncated = true;
      return Truth::Unknown;
    }
    Truth t = eval(b.body.get());
    if (t == Truth::False) return t;
    for (auto* e : extras) {
      Truth te = eval(e);
      if (te == Truth::False) return te;
      if (te == Truth::Unknown) t = Truth::Unknown;
    }
    if (t == Truth::True) {
      record(b);
      return t;
    }

    std::vector<const Node*> lits;
    conjuncts(b.body.get(), lits);
    for (auto* e : extras) conjuncts(e, lits);

    int best = -1;
    Range best_range;
    bool best_finite = false;
    Nat best_count = 0;
    bool any_open = false;
    for (std::size_t i = 0; i < b.vars.size(); ++i) {
      const BVar& v = b.vars[i];
      if (env.set[v.slot] || v.deferred) continue;
      any_open = true;
      Range r;
      bool ready = true;
      if (v.bounded && v.bound_by < 0) {
        for (auto& m : v.bound.ms)
          for (Slot s : m.vars)
            if (!env.set[s]) ready = false;
        if (ready) r.hi = eval_poly(v.bound, env);
      }
      for (auto* l : lits) {
        if (l->kind != NK::Lit) continue;
        Slot which = 0;
        if (unassigned_count(l, which) == 1 && which == v.slot) {
          narrow(l, v.slot, r);
          if (r.empty) break;
        }
      }
      r.finish();
      // empty without its bound is empty under every bound
      if (r.empty) return Truth::False;
      if (!ready) continue;
      bool finite = r.hi.has_value();
      Nat count = finite ? *r.hi - r.lo + 1 : Nat(0);
      bool better = best < 0 || (finite && !best_finite) || (finite && best_finite && count < best_count);
      if (better) {
        best = static_cast<int>(i);
        best_range = r;
        best_finite = finite;
        best_count = count;
      }
    }

    if (!any_open) {
      // only deferred variables remain: take the least value that covers their dependents
      for (std::size_t i = 0; i < b.vars.size(); ++i) {
        const BVar& w = b.vars[i];
        if (env.set[w.slot] || !w.deferred) continue;
        Nat m = 0;
        for (auto& u : b.vars)
          if (u.bound_by == static_cast<int>(i)) m = std::max(m, env.val[u.slot]);
        return assign_and_search(b, w.slot, m, extras, split, truncated);
      }
      return t;  // nothing left to choose; body is undetermined only through exhausted budgets
    }
    if (best < 0) return Truth::Unknown;

    bool huge = !best_finite || best_count > opt_.range_budget;
    if (huge) {
      // split a disjunctive conjunct to gain narrowing literals
      for (auto* l : lits) {
        if (l->kind != NK::Or) continue;
        if (std::find(split.begin(), split.end(), l) != split.end()) continue;
        bool open = false;
        for (Slot s : l->fv)
          if (!env.set[s]) open = true;
        if (!open) continue;
        split.push_back(l);
        bool unknown = false;
        Truth res = Truth::False;
        for (auto& d : l->kids) {
          extras.push_back(d.get());
          Truth r = search(b, extras, split, truncated);
          extras.pop_back();
          if (r == Truth::True) {
            res = r;
            break;
          }
          if (r == Truth::Unknown) unknown = true;
        }
        split.pop_back();
        if (res == Truth::True) return res;
        return unknown ? Truth::Unknown : Truth::False;
      }
    }

    Slot s = b.vars[best].slot;
    Nat lo = best_range.lo;
    Nat hi;
    if (!best_finite) {
      hi = lo + opt_.cap - 1;
      truncated = true;
    } else if (best_count > opt_.range_budget) {
      hi = lo + opt_.range_budget - 1;
      truncated = true;
    } else {
      hi = *best_range.hi;
    }
    bool unknown = false;
    for (Nat x = lo; x <= hi; ++x) {
      Truth r = assign_and_search(b, s, x, extras, split, truncated);
      if (r == Truth::True) return r;
      if (r == Truth::Unknown) unknown = true;
      if (exhausted) return Truth::Unknown;
    }
    return unknown ? Truth::Unknown : Truth::False;
  }
};

struct Program {
  std::vector<Var> slot_var;
  NodeP root;
  std::size_t free_count = 0;
};

Program compile(const Formula& f, const std::vector<Var>& free, const NatOptions& opt) {
  Compiler c(opt);
  for (Var v : free) c.scope.emplace_back(v, c.new_slot(v));
  Program p;
  p.root = c.formula(f, true, 0);
  p.slot_var = c.slot_var;
  p.free_count = free.size();
  return p;
}

std::vector<Var> free_list(const Formula& f, const NatAssignment& a, const std::vector<Var>& extra = {}) {
  std::vector<Var> out = extra;
  for (Var v : free_vars(f)) {
    if (std::find(extra.begin(), extra.end(), v) != extra.end()) continue;
    if (!a.count(v)) throw EvalError("unassigned free variable " + var_name(v));
    out.push_back(v);
  }
  return out;
}

}  // namespace

Truth nat_evaluate(const Formula& f, const NatAssignment& a, const NatOptions& opt) {
  auto free = free_list(f, a);
  Program p = compile(f, free, opt);
  Solver s(opt, p.slot_var.size());
  for (std::size_t i = 0; i < free.size(); ++i) {
    Nat v = a.at(free[i]);
    if (v < 0) throw EvalError("negative value for " + var_name(free[i]));
    s.env.val[i] = v;
    s.env.set[i] = 1;
  }
  return s.eval(p.root.get());
}

Truth nat_evaluate(const Formula& f, const NatAssignment& a, std::uint64_t cap) {
  NatOptions o;
  o.cap = cap;
  return nat_evaluate(f, a, o);
}

Nat nat_value(const Term& t, const NatAssignment& a) {
  switch (t->kind) {
    case TermKind::Var: {
      auto it = a.find(t->var);
      if (it == a.end()) throw EvalError("unassigned free variable " + var_name(t->var));
      return it->second;
    }
    case TermKind::Num: return t->value();
    case TermKind::App:
      if (t->fn == sym::S) return nat_value(t->args[0], a) + 1;
      if (t->fn == sym::Add) return nat_value(t->args[0], a) + nat_value(t->args[1], a);
      if (t->fn == sym::Mul) return nat_value(t->args[0], a) * nat_value(t->args[1], a);
      throw EvalError("symbol " + sym_name(t->fn) + " has no standard interpretation");
  }
  return 0;
}

std::optional<Nat> nat_least_witness(Var x, const Formula& body, const NatAssignment& a, std::uint64_t limit,
                                     const NatOptions& opt) {
  NatAssignment rest = a;
  rest.erase(x);
  auto free = free_list(body, rest, {x});
  Program p = compile(body, free, opt);
  Solver s(opt, p.slot_var.size());
  for (std::size_t i = 1; i < free.size(); ++i) {
    s.env.val[i] = rest.at(free[i]);
    s.env.set[i] = 1;
  }
  s.env.set[0] = 1;
  for (std::uint64_t n = 0; n <= limit; ++n) {
    s.env.val[0] = n;
    if (s.eval(p.root.get()) == Truth::True) return Nat(n);
  }
  return std::nullopt;
}

std::optional<NatAssignment> nat_witness(const Formula& f, const NatAssignment& a, const NatOptions& opt) {
  auto free = free_list(f, a);
  Program p = compile(f, free, opt);
  Solver s(opt, p.slot_var.size());
  for (std::size_t i = 0; i < free.size(); ++i) {
    s.env.val[i] = a.at(free[i]);
    s.env.set[i] = 1;
  }
  if (p.root->kind != NK::Block || p.root->block_negated) {
    if (s.eval(p.root.get()) == Truth::True) return NatAssignment{};
    return std::nullopt;
  }
  std::map<Slot, Nat> w;
  if (s.solve(*p.root, &w) != Truth::True) return std::nullopt;
  NatAssignment out;
  for (auto& [slot, v] : w) out[p.slot_var[slot]] = v;
  return out;
}

}  // namespace wa
