#include "wa/purify.hpp"

#include <set>
#include <stdexcept>
#include <unordered_map>

namespace wa {

namespace {
constexpr unsigned kUnaryNumerals = 4096;
}  // namespace

namespace {

class Purifier {
 public:
  explicit Purifier(const Formula& phi) {
    for (Var v : all_vars(phi)) used_.insert(v);
    for (Var v : free_vars(phi)) top_.insert(v);
  }

  PureForm run(const Formula& phi) {
    Formula nnf = prenex(normal(phi, true));
    Formula matrix = flatten(nnf);
    PureForm out;
    out.exists = pulled_;
    out.exists.insert(out.exists.end(), top_vars_.begin(), top_vars_.end());
    std::vector<Formula> parts = top_defs_;
    parts.push_back(matrix);
    out.matrix = conj_list(parts);
    return out;
  }

 private:
  std::set<Var> used_;
  std::set<Var> top_;                       // variables valid at the top level
  std::map<Var, Var> top_of_;               // bounded or inner variable -> top variable bounding it
  std::vector<Var> pulled_;                 // unbounded existentials moved to the front
  std::vector<Var> top_vars_;
  std::vector<Formula> top_defs_;
  std::unordered_map<Term, Var, TermHash, TermEq> top_memo_;

  Var fresh() {
    Var x = 0;
    while (used_.count(x)) ++x;
    used_.insert(x);
    return x;
  }

  static void check_term(const Term& t) {
    if (t->kind != TermKind::App) return;
    if (t->fn != sym::S && t->fn != sym::Add && t->fn != sym::Mul)
      throw std::invalid_argument("symbol " + sym_name(t->fn) + " is outside the arithmetic signature");
    for (auto& a : t->args) check_term(a);
  }

  // Negation normal form with every binder renamed apart.
  Formula normal(const Formula& f, bool pol) {
    switch (f->kind) {
      case FKind::Eq:
      case FKind::Rel:
        if (f->kind == FKind::Rel && !((f->rel == sym::Le && f->args.size() == 2) || (f->rel == sym::P && f->args.size() == 1)))
          throw std::invalid_argument("relation " + sym_name(f->rel) + " is outside the arithmetic signature");
        for (auto& a : f->args) check_term(a);
        return pol ? f : neg(f);
      case FKind::Not: return normal(f->a, !pol);
      case FKind::And: return pol ? conj(normal(f->a, true), normal(f->b, true)) : disj(normal(f->a, false), normal(f->b, false));
      case FKind::Or: return pol ? disj(normal(f->a, true), normal(f->b, true)) : conj(normal(f->a, false), normal(f->b, false));
      case FKind::Imp: return pol ? disj(normal(f->a, false), normal(f->b, true)) : conj(normal(f->a, true), normal(f->b, false));
      case FKind::Iff:
        if (pol)
          return conj(disj(normal(f->a, false), normal(f->b, true)), disj(normal(f->a, true), normal(f->b, false)));
        return disj(conj(normal(f->a, true), normal(f->b, false)), conj(normal(f->a, false), normal(f->b, true)));
      default: {
        Var y = fresh();
        Formula body = substitute(f->a, f->var, var(y));
        bool universal = (f->kind == FKind::All || f->kind == FKind::BAll) == pol;
        if (f->bound) {
          check_term(f->bound);
          return universal ? ball(y, f->bound, normal(body, pol)) : bex(y, f->bound, normal(body, pol));
        }
        if (universal) throw std::invalid_argument("unbounded universal quantifier: input is not Sigma1");
        return ex(y, normal(body, pol));
      }
    }
  }

  // Moves unbounded existentials out through &, | and bounded exists.
  Formula prenex(const Formula& f) {
    switch (f->kind) {
      case FKind::Ex:
        pulled_.push_back(f->var);
        top_.insert(f->var);
        return prenex(f->a);
      case FKind::And: return conj(prenex(f->a), prenex(f->b));
      case FKind::Or: return disj(prenex(f->a), prenex(f->b));
      case FKind::BEx: return bex(f->var, f->bound, prenex(f->a));
      case FKind::BAll:
        if (contains_unbounded(f->a)) throw std::invalid_argument("unbounded existential under a bounded universal");
        return f;
      default: return f;
    }
  }

  static bool contains_unbounded(const Formula& f) {
    if (f->kind == FKind::Ex || f->kind == FKind::All) return true;
    if (f->a && contains_unbounded(f->a)) return true;
    if (f->b && contains_unbounded(f->b)) return true;
    return false;
  }

  bool is_top_term(const Term& t) const {
    for (Var v : t->fv)
      if (!top_.count(v)) return false;
    return true;
  }

  Var top_image(Var v) const {
    if (top_.count(v)) return v;
    auto it = top_of_.find(v);
    if (it == top_of_.end()) throw std::logic_error("variable without top bound");
    return it->second;
  }

  // A top-level variable equal to T, defined by pure atoms at the front.
  Var define_top(const Term& T) {
    if (T->kind == TermKind::Var) return T->var;
    auto it = top_memo_.find(T);
    if (it != top_memo_.end()) return it->second;
    Formula def;
    Var out;
    Term pred;
    if (is_zero(T)) {
      out = fresh();
      def = eq(zero(), var(out));
    } else if (T->kind == TermKind::Num && T->value() > kUnaryNumerals && T->value() % 2 == 0) {
      // codes and other huge constants as h + h; equivalent only given the R1 instance h + h = 2h
      Var h = define_top(num(T->value() / 2));
      out = fresh();
      def = eq(add(var(h), var(h)), var(out));
    } else if (is_succ(T, &pred)) {
      Var a = define_top(pred);
      out = fresh();
      def = eq(succ(var(a)), var(out));
    } else {
      Var a = define_top(T->args[0]);
      Var b = define_top(T->args[1]);
      out = fresh();
      def = eq(app(T->fn, {var(a), var(b)}), var(out));
    }
    top_vars_.push_back(out);
    top_defs_.push_back(def);
    top_.insert(out);
    top_memo_.emplace(T, out);
    return out;
  }

  struct InnerDef {
    Var v;
    Var bound;
    Formula atom;
  };

  // Bounded variables replaced by the tops of their ranges.
  Term top_term(const Term& t) {
    Subst s;
    for (Var v : t->fv)
      if (!top_.count(v)) s[v] = var(top_image(v));
    return s.empty() ? t : substitute(t, s);
  }

  Var flatten_term(const Term& t, std::vector<InnerDef>& defs) {
    if (t->kind == TermKind::Var) return t->var;
    if (is_top_term(t)) return define_top(t);
    Var bound = define_top(top_term(t));
    Term lhs;
    Term pred;
    if (is_succ(t, &pred)) {
      lhs = succ(var(flatten_term(pred, defs)));
    } else {
      Var a = flatten_term(t->args[0], defs);
      Var b = flatten_term(t->args[1], defs);
      lhs = app(t->fn, {var(a), var(b)});
    }
    Var out = fresh();
    defs.push_back({out, bound, eq(lhs, var(out))});
    top_of_[out] = bound;
    return out;
  }

  // A pure left-hand side: variable, 0, S a, a + b or a * b.
  Term pure_lhs(const Term& t, std::vector<InnerDef>& defs) {
    if (t->kind == TermKind::Var || is_zero(t)) return t;
    Term pred;
    if (is_succ(t, &pred)) return succ(var(flatten_term(pred, defs)));
    Var a = flatten_term(t->args[0], defs);
    Var b = flatten_term(t->args[1], defs);
    return app(t->fn, {var(a), var(b)});
  }

  static Formula wrap(const std::vector<InnerDef>& defs, const Formula& core) {
    if (defs.empty()) return core;
    std::vector<Formula> parts;
    for (auto& d : defs) parts.push_back(d.atom);
    parts.push_back(core);
    Formula body = conj_list(parts);
    for (auto it = defs.rbegin(); it != defs.rend(); ++it) body = bex(it->v, var(it->bound), body);
    return body;
  }

  Formula literal(const Formula& atom, bool positive) {
    std::vector<InnerDef> defs;
    Formula core;
    if (atom->kind == FKind::Eq) {
      Term s = atom->args[0], t = atom->args[1];
      if (s->kind == TermKind::Var && t->kind != TermKind::Var) std::swap(s, t);
      Var r = flatten_term(t, defs);
      core = eq(pure_lhs(s, defs), var(r));
    } else if (atom->rel == sym::Le) {
      Var a = flatten_term(atom->args[0], defs);
      Var b = flatten_term(atom->args[1], defs);
      core = le(var(a), var(b));
    } else {
      core = rel(atom->rel, {var(flatten_term(atom->args[0], defs))});
    }
    return wrap(defs, positive ? core : neg(core));
  }

  Formula flatten(const Formula& f) {
    switch (f->kind) {
      case FKind::Eq:
      case FKind::Rel: return literal(f, true);
      case FKind::Not: return literal(f->a, false);
      case FKind::And: return conj(flatten(f->a), flatten(f->b));
      case FKind::Or: return disj(flatten(f->a), flatten(f->b));
      case FKind::BAll:
      case FKind::BEx: {
        std::vector<InnerDef> defs;
        Var c = flatten_term(f->bound, defs);
        top_of_[f->var] = top_image(c);
        Formula body = flatten(f->a);
        Formula q = f->kind == FKind::BAll ? ball(f->var, var(c), body) : bex(f->var, var(c), body);
        return wrap(defs, q);
      }
      default: throw std::logic_error("unexpected node in purification matrix");
    }
  }
};

}  // namespace

PureForm purify_parts(const Formula& phi) {
  if (!is_sigma1(phi)) throw std::invalid_argument("purify: input is not Sigma1");
  Purifier p(phi);
  return p.run(phi);
}

Formula purify(const Formula& phi) {
  if (is_pure_sigma1(phi)) return phi;
  return purify_parts(phi).formula();
}

Formula collapse_to_one(const Formula& lambda) {
  if (!is_closed(lambda)) throw std::invalid_argument("collapse_to_one: input is not a sentence");
  PureForm p = purify_parts(lambda);
  std::vector<Var> used = all_vars(p.formula());
  Var x = fresh_var(used);
  Formula body = p.matrix;
  for (auto it = p.exists.rbegin(); it != p.exists.rend(); ++it) body = bex(*it, var(x), body);
  return ex(x, body);
}

}  // namespace wa
