#include "wa/goedel.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "wa/certificates.hpp"
#include "wa/parse.hpp"

namespace wa {

namespace {

enum Tok : int {
  kEq = 1, kLe, kP, kNot, kAnd, kOr, kImp, kIff, kAll, kEx, kBAll, kBEx,
  kVar, kNum, kS, kAdd, kMul, kConst,
};
constexpr int kSkelBase = 20;
constexpr int kListBase = 11;  // decimal digits 1..10, separator 11

}  // namespace

Nat cantor_pair(const Nat& a, const Nat& b) {
  Nat s = a + b;
  return s * (s + 1) / 2 + b;
}

std::pair<Nat, Nat> cantor_unpair(const Nat& n) {
  Nat w = (boost::multiprecision::sqrt(8 * n + 1) - 1) / 2;
  Nat t = w * (w + 1) / 2;
  Nat b = n - t;
  return {w - b, b};
}

Sym fresh_constant() {
  static const Sym c = intern("c");
  return c;
}

Signature self_ref_signature() {
  Signature s = Signature::La();
  s.name = "La+c";
  s.constants.push_back({"c", 0});
  return s;
}

// ---------------------------------------------------------------- encode

namespace {

struct Flat {
  std::vector<int> toks;
  std::vector<Nat> leaves;

  void term(const Term& t) {
    switch (t->kind) {
      case TermKind::Var:
        toks.push_back(kVar);
        leaves.push_back(Nat(t->var));
        return;
      case TermKind::Num:
        toks.push_back(kNum);
        leaves.push_back(t->value());
        return;
      case TermKind::App:
        if (t->fn == sym::S) toks.push_back(kS);
        else if (t->fn == sym::Add) toks.push_back(kAdd);
        else if (t->fn == sym::Mul) toks.push_back(kMul);
        else if (t->fn == fresh_constant() && t->args.empty()) toks.push_back(kConst);
        else throw std::invalid_argument("no code for symbol " + sym_name(t->fn));
        for (auto& a : t->args) term(a);
        return;
    }
  }

  void binder(Var x) {
    toks.push_back(kVar);
    leaves.push_back(Nat(x));
  }

  void formula(const Formula& f) {
    switch (f->kind) {
      case FKind::Eq: toks.push_back(kEq); break;
      case FKind::Rel:
        if (f->rel == sym::Le) toks.push_back(kLe);
        else if (f->rel == sym::P) toks.push_back(kP);
        else throw std::invalid_argument("no code for relation " + sym_name(f->rel));
        break;
      case FKind::Not: toks.push_back(kNot); formula(f->a); return;
      case FKind::And: toks.push_back(kAnd); break;
      case FKind::Or: toks.push_back(kOr); break;
      case FKind::Imp: toks.push_back(kImp); break;
      case FKind::Iff: toks.push_back(kIff); break;
      case FKind::All:
      case FKind::Ex:
        toks.push_back(f->kind == FKind::All ? kAll : kEx);
        binder(f->var);
        formula(f->a);
        return;
      case FKind::BAll:
      case FKind::BEx:
        toks.push_back(f->kind == FKind::BAll ? kBAll : kBEx);
        binder(f->var);
        term(f->bound);
        formula(f->a);
        return;
    }
    if (f->kind == FKind::Eq || f->kind == FKind::Rel) {
      for (auto& t : f->args) term(t);
    } else {
      formula(f->a);
      formula(f->b);
    }
  }
};

Nat list_code(const std::vector<Nat>& xs) {
  Nat v = 0;
  for (auto& x : xs) {
    for (char d : x.str()) v = v * kListBase + (d - '0' + 1);
    v = v * kListBase + kListBase;
  }
  return v;
}

std::vector<int> bijective_digits(Nat n, int base) {
  std::vector<int> out;
  while (n > 0) {
    int d = static_cast<int>(n % base);
    if (d == 0) d = base;
    out.push_back(d);
    n = (n - d) / base;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace

Nat encode(const Formula& f) {
  Flat fl;
  fl.formula(f);
  Nat skel = 0;
  for (int t : fl.toks) skel = skel * kSkelBase + t;
  Nat pay = 0;
  if (!fl.leaves.empty()) {
    std::vector<Nat> rest(fl.leaves.rbegin() + 1, fl.leaves.rend());
    pay = cantor_pair(fl.leaves.back(), list_code(rest));
  }
  return cantor_pair(skel, pay);
}

// ---------------------------------------------------------------- decode

namespace {

[[noreturn]] void not_a_code(const std::string& why) { throw std::invalid_argument("not a code: " + why); }

struct Reader {
  const std::vector<int>& toks;
  const std::vector<Nat>* leaves = nullptr;
  std::size_t pos = 0, leaf = 0;

  int next() {
    if (pos >= toks.size()) not_a_code("token string ends early");
    return toks[pos++];
  }
  Nat take() {
    if (!leaves) {
      ++leaf;
      return 0;
    }
    return (*leaves)[leaf++];
  }
  Var take_var() {
    Nat v = take();
    if (v > std::numeric_limits<Var>::max()) not_a_code("variable index out of range");
    return v.convert_to<Var>();
  }

  Term term() {
    switch (next()) {
      case kVar: return var(take_var());
      case kNum: return num(take());
      case kS: return succ(term());
      case kAdd: {
        Term a = term();
        return add(a, term());
      }
      case kMul: {
        Term a = term();
        return mul(a, term());
      }
      case kConst: return constant(fresh_constant());
      default: not_a_code("formula token where a term was expected");
    }
  }

  Var binder() {
    if (next() != kVar) not_a_code("binder is not a variable");
    return take_var();
  }

  Formula formula() {
    int t = next();
    switch (t) {
      case kEq: {
        Term a = term();
        return eq(a, term());
      }
      case kLe: {
        Term a = term();
        return le(a, term());
      }
      case kP: return rel(sym::P, {term()});
      case kNot: return neg(formula());
      case kAnd:
      case kOr:
      case kImp:
      case kIff: {
        Formula a = formula();
        Formula b = formula();
        return t == kAnd ? conj(a, b) : t == kOr ? disj(a, b) : t == kImp ? imp(a, b) : iff(a, b);
      }
      case kAll:
      case kEx: {
        Var x = binder();
        Formula body = formula();
        return t == kAll ? all(x, body) : ex(x, body);
      }
      case kBAll:
      case kBEx: {
        Var x = binder();
        Term bound = term();
        Formula body = formula();
        return t == kBAll ? ball(x, bound, body) : bex(x, bound, body);
      }
      default: not_a_code("term token where a formula was expected");
    }
  }
};

std::vector<Nat> decode_list(const Nat& v) {
  std::vector<Nat> out;
  std::string cur;
  bool open = false;
  for (int d : bijective_digits(v, kListBase)) {
    if (d == kListBase) {
      if (cur.empty()) not_a_code("empty payload entry");
      if (cur.size() > 1 && cur[0] == '0') not_a_code("payload entry with a leading zero");
      out.emplace_back(cur);
      cur.clear();
      open = false;
    } else {
      cur.push_back(static_cast<char>('0' + d - 1));
      open = true;
    }
  }
  if (open) not_a_code("unterminated payload entry");
  return out;
}

}  // namespace

Formula decode(const Nat& n) {
  if (n < 0) not_a_code("negative");
  auto [skel, pay] = cantor_unpair(n);
  std::vector<int> toks = bijective_digits(skel, kSkelBase);
  for (int t : toks)
    if (t > kConst) not_a_code("unused token");
  Reader count{toks};
  count.formula();
  if (count.pos != toks.size()) not_a_code("trailing tokens");
  std::size_t r = count.leaf;
  std::vector<Nat> leaves(r);
  if (r == 0) {
    if (pay != 0) not_a_code("payload without placeholders");
  } else {
    auto [last, rest] = cantor_unpair(pay);
    std::vector<Nat> xs = decode_list(rest);
    if (xs.size() != r - 1) not_a_code("payload count does not match the skeleton");
    leaves[r - 1] = last;
    for (std::size_t k = 0; k < xs.size(); ++k) leaves[r - 2 - k] = xs[k];
  }
  Reader build{toks, &leaves};
  Formula f = build.formula();
  if (encode(f) != n) not_a_code("non-canonical form");
  return f;
}

// ------------------------------------------------------- self-reference

namespace {

Term map_term(const Term& t, const std::function<Term(const Term&)>& leaf) {
  if (t->kind != TermKind::App || t->args.empty()) return leaf(t);
  std::vector<Term> args;
  for (auto& a : t->args) args.push_back(map_term(a, leaf));
  return app(t->fn, std::move(args));
}

Formula map_terms(const Formula& f, const std::function<Term(const Term&)>& leaf) {
  auto T = [&](const Term& t) { return map_term(t, leaf); };
  switch (f->kind) {
    case FKind::Eq: return eq(T(f->args[0]), T(f->args[1]));
    case FKind::Rel: {
      std::vector<Term> args;
      for (auto& a : f->args) args.push_back(T(a));
      return rel(f->rel, std::move(args));
    }
    case FKind::Not: return neg(map_terms(f->a, leaf));
    case FKind::And: return conj(map_terms(f->a, leaf), map_terms(f->b, leaf));
    case FKind::Or: return disj(map_terms(f->a, leaf), map_terms(f->b, leaf));
    case FKind::Imp: return imp(map_terms(f->a, leaf), map_terms(f->b, leaf));
    case FKind::Iff: return iff(map_terms(f->a, leaf), map_terms(f->b, leaf));
    case FKind::All: return all(f->var, map_terms(f->a, leaf));
    case FKind::Ex: return ex(f->var, map_terms(f->a, leaf));
    case FKind::BAll: {
      Term b = T(f->bound);
      return ball(f->var, b, map_terms(f->a, leaf));
    }
    case FKind::BEx: {
      Term b = T(f->bound);
      return bex(f->var, b, map_terms(f->a, leaf));
    }
  }
  return f;
}

bool is_c(const Term& t) { return t->kind == TermKind::App && t->fn == fresh_constant() && t->args.empty(); }

}  // namespace

Nat self_ref_encode(const Formula& phi_c) { return encode(phi_c); }

Formula self_ref_sentence(const Formula& phi_c) {
  Term n = num(encode(phi_c));
  return map_terms(phi_c, [&](const Term& t) { return is_c(t) ? n : t; });
}

std::optional<Nat> sgn(const Formula& psi, unsigned max_occurrences) {
  // numeral occurrences in the order map_terms visits them; S(c) folds into a
  // numeral, so an occurrence of n + j may stand for S^j(c)
  constexpr unsigned kMaxSuccessors = 8;
  std::vector<Nat> occ;
  map_terms(psi, [&](const Term& t) {
    if (t->kind == TermKind::Num) occ.push_back(t->value());
    return t;
  });
  std::set<Nat> values(occ.begin(), occ.end());
  std::optional<Nat> best;
  for (const Nat& value : values) {
    std::vector<std::size_t> where;
    for (std::size_t i = 0; i < occ.size(); ++i)
      if (occ[i] >= value && occ[i] - value <= kMaxSuccessors) where.push_back(i);
    if (where.size() > max_occurrences) continue;
    std::uint64_t subsets = std::uint64_t{1} << where.size();
    for (std::uint64_t mask = 1; mask < subsets; ++mask) {
      std::vector<bool> pick(occ.size(), false);
      for (std::size_t k = 0; k < where.size(); ++k)
        if (mask >> k & 1) pick[where[k]] = true;
      std::size_t i = 0;
      Formula phi_c = map_terms(psi, [&](const Term& t) {
        if (t->kind != TermKind::Num) return t;
        std::size_t at = i++;
        if (!pick[at]) return t;
        Term c = constant(fresh_constant());
        for (Nat j = value; j < occ[at]; ++j) c = succ(c);
        return c;
      });
      Nat code = encode(phi_c);
      if (code == value && (!best || code < *best)) best = code;
    }
  }
  return best;
}

// --------------------------------------------------------- arithmetic

Formula pair_formula(const Term& a, const Term& b, const Term& c) {
  Term s = add(a, b);
  return eq(add(c, c), add(mul(s, succ(s)), add(b, b)));
}

Formula unpair_formula(const Term& n, Var a, Var b, Var w) {
  Term W = var(w), A = var(a), B = var(b), two_n = add(n, n);
  Term tri = mul(W, succ(W));
  return ex(w, conj_list({le(tri, two_n), neg(le(mul(succ(W), succ(succ(W))), two_n)),
                          eq(add(tri, add(B, B)), two_n), eq(add(A, B), W)}));
}

namespace {

Var take(std::vector<Var>& fresh) {
  if (fresh.empty()) throw std::logic_error("out of helper variables");
  Var v = fresh.front();
  fresh.erase(fresh.begin());
  return v;
}

// Variables not in `used`, and never v0.
std::vector<Var> helper_vars(std::vector<Var> used, std::size_t n) {
  used.push_back(0);
  std::vector<Var> out;
  while (out.size() < n) {
    Var v = fresh_var(used);
    used.push_back(v);
    out.push_back(v);
  }
  return out;
}

// Renames bound occurrences of v away from `avoid`.
Formula rename_binders(const Formula& f, const std::vector<Var>& avoid, std::vector<Var>& pool) {
  auto clash = [&](Var v) { return std::find(avoid.begin(), avoid.end(), v) != avoid.end(); };
  switch (f->kind) {
    case FKind::Eq:
    case FKind::Rel: return f;
    case FKind::Not: return neg(rename_binders(f->a, avoid, pool));
    case FKind::And: return conj(rename_binders(f->a, avoid, pool), rename_binders(f->b, avoid, pool));
    case FKind::Or: return disj(rename_binders(f->a, avoid, pool), rename_binders(f->b, avoid, pool));
    case FKind::Imp: return imp(rename_binders(f->a, avoid, pool), rename_binders(f->b, avoid, pool));
    case FKind::Iff: return iff(rename_binders(f->a, avoid, pool), rename_binders(f->b, avoid, pool));
    default: break;
  }
  Formula q = f;
  if (clash(f->var)) q = rename_bound(f, take(pool));
  Formula body = rename_binders(q->a, avoid, pool);
  switch (q->kind) {
    case FKind::All: return all(q->var, body);
    case FKind::Ex: return ex(q->var, body);
    case FKind::BAll: return ball(q->var, q->bound, body);
    default: return bex(q->var, q->bound, body);
  }
}

}  // namespace

Formula sub_formula(const Term& m, const Term& n, const Term& y, std::vector<Var>& fresh) {
  Var s = take(fresh), q = take(fresh), w = take(fresh), R = take(fresh), q1 = take(fresh);
  Term S = var(s), Q = var(q), RR = var(R), Q1 = var(q1);
  return ex(s, ex(q, conj(unpair_formula(m, s, q, w),
                          ex(R, conj(pair_formula(zero(), RR, Q),
                                     ex(q1, conj(pair_formula(n, RR, Q1), pair_formula(succ(S), Q1, y))))))));
}

Formula represent_graph(const Formula& sigma_star, Var x, Var y) {
  if (sigma_star->kind != FKind::Ex || !is_delta0(sigma_star->a))
    throw std::invalid_argument("represent_graph: expected exists z sigma0(x, y, z) with sigma0 Delta0");
  for (Var v : sigma_star->fv)
    if (v != x && v != y) throw std::invalid_argument("represent_graph: free variable " + var_name(v) + " besides x, y");
  Var zin = sigma_star->var;
  Formula s0 = sigma_star->a;
  std::vector<Var> used = all_vars(sigma_star);
  used.push_back(x);
  used.push_back(y);
  std::vector<Var> h;
  for (int k = 0; k < 4; ++k) {
    Var v = fresh_var(used);
    used.push_back(v);
    h.push_back(v);
  }
  Var z = h[0], u = h[1], a = h[2], b = h[3];
  Term Z = var(z);
  Formula witness = bex(u, Z, substitute(s0, zin, var(u)));
  Formula at_ab = substitute(s0, Subst{{y, var(a)}, {zin, var(b)}});
  Formula unique = ball(a, Z, ball(b, Z, imp(at_ab, eq(var(a), var(y)))));
  return ex(z, conj_list({wb_formula(z), le(var(y), Z), witness, unique}));
}

// ------------------------------------------------------ normalization

namespace {

struct Prenex {
  std::vector<Var> vars;
  Formula matrix;
};

Prenex pull(const Formula& f, std::vector<Var>& seen, std::vector<Var>& names) {
  if (f->kind == FKind::Ex) {
    Var v = f->var;
    Formula body = f->a;
    if (std::find(seen.begin(), seen.end(), v) != seen.end()) {
      Var w = fresh_var(names);
      names.push_back(w);
      body = substitute(body, v, var(w));
      v = w;
    }
    seen.push_back(v);
    Prenex p = pull(body, seen, names);
    p.vars.insert(p.vars.begin(), v);
    return p;
  }
  if (f->kind == FKind::And) {
    Prenex a = pull(f->a, seen, names);
    Prenex b = pull(f->b, seen, names);
    a.vars.insert(a.vars.end(), b.vars.begin(), b.vars.end());
    return {a.vars, conj(a.matrix, b.matrix)};
  }
  return {{}, f};
}

}  // namespace

Formula sigma1_dagger_normal(const Formula& chi) {
  // a pulled binder is renamed when it would capture a free variable or
  // collide with one pulled earlier
  std::vector<Var> seen = chi->fv;
  std::vector<Var> names = all_vars(chi);
  Prenex p = pull(chi, seen, names);
  return ex_list(p.vars, p.matrix);
}

// --------------------------------------------------------- fixed points

namespace {

Var single_free(const Formula& f, const char* who) {
  if (f->fv.size() > 1) throw std::invalid_argument(std::string(who) + ": more than one free variable");
  return f->fv.empty() ? 0 : f->fv[0];
}

std::string trunc(const std::string& s, std::size_t n = 160) {
  return s.size() <= n ? s : s.substr(0, n) + "... (" + std::to_string(s.size()) + " chars)";
}

std::string digits(const Nat& n) {
  std::string s = n.str();
  return s.size() <= 40 ? s : s.substr(0, 20) + "..." + " (" + std::to_string(s.size()) + " digits)";
}

// Sub(u, u, y), either directly or through represent_graph.
Formula substitution_graph(const Term& m, const Term& n, Var y, std::vector<Var>& pool, bool represent) {
  Formula direct = sub_formula(m, n, var(y), pool);
  if (!represent) return direct;
  // collapse the block into one witness bounding the rest
  Formula norm = sigma1_dagger_normal(direct);
  std::vector<Var> vs;
  Formula body = norm;
  while (body->kind == FKind::Ex) {
    vs.push_back(body->var);
    body = body->a;
  }
  Var z = take(pool);
  Formula inner = body;
  for (auto it = vs.rbegin(); it != vs.rend(); ++it) inner = bex(*it, var(z), inner);
  Var x = m->kind == TermKind::Var ? m->var : take(pool);
  Formula graph = represent_graph(ex(z, inner), x, y);
  return graph;
}

}  // namespace

FixedPointResult fixed_point(const Formula& sigma, const FixedPointOptions& opt) {
  Var xs = single_free(sigma, "fixed_point");
  FixedPointResult r;
  if (opt.numbering == Numbering::SelfReferential) {
    Formula phi_c = sigma->fv.empty() ? sigma : substitute(sigma, xs, constant(fresh_constant()));
    Nat code = self_ref_encode(phi_c);
    r.eta = self_ref_sentence(phi_c);
    r.theta = phi_c;
    r.argument = code;
    r.transcript.push_back("phi(c) := " + trunc(render(phi_c)));
    r.transcript.push_back("sgn(phi(c)) = code(phi(c)) = " + digits(code));
    r.transcript.push_back("psi := phi(" + digits(code) + ")");
    return r;
  }
  std::vector<Var> used = all_vars(sigma);
  std::vector<Var> pool = helper_vars(used, 16);
  Var u = take(pool), y = take(pool);
  std::vector<Var> pool2 = helper_vars([&] { auto v = used; v.insert(v.end(), pool.begin(), pool.end()); v.push_back(u); v.push_back(y); return v; }(), 4);
  Formula s = rename_binders(sigma, {0, u, y}, pool2);
  if (!sigma->fv.empty()) s = substitute(s, xs, var(y));
  Formula sub = substitution_graph(var(u), var(u), y, pool, opt.represent_substitution);
  Formula chi = ex(u, conj(ex(y, conj(sub, s)), eq(var(u), var(0))));
  r.transcript.push_back("chi(v0) := " + trunc(render(chi)));
  r.theta = sigma1_dagger_normal(chi);
  r.transcript.push_back("theta(v0) := " + trunc(render(r.theta)) + "  [existentials moved out]");
  r.argument = encode(r.theta);
  r.transcript.push_back("code(theta) = " + digits(r.argument));
  r.eta = substitute(r.theta, 0, num(r.argument));
  r.transcript.push_back("eta := theta(code(theta))");
  r.transcript.push_back("code(eta) = " + digits(encode(r.eta)));
  return r;
}

FixedPointResult double_fixed_point(const Formula& sigma, const Formula& sigma_p, Var a, Var b,
                                    const FixedPointOptions& opt) {
  for (const Formula* f : {&sigma, &sigma_p})
    for (Var v : (*f)->fv)
      if (v != a && v != b) throw std::invalid_argument("double_fixed_point: free variable " + var_name(v) + " besides the two arguments");
  if (opt.numbering == Numbering::SelfReferential || opt.represent_substitution)
    throw std::invalid_argument("double_fixed_point: only the direct ordinary construction is supported");
  std::vector<Var> used = all_vars(sigma);
  for (Var v : all_vars(sigma_p)) used.push_back(v);
  used.push_back(a);
  used.push_back(b);
  std::vector<Var> pool = helper_vars(used, 40);
  Var u = take(pool), m1 = take(pool), m2 = take(pool), y1 = take(pool), y2 = take(pool), w = take(pool);
  std::vector<Var> renames = helper_vars([&] { auto v = used; v.insert(v.end(), pool.begin(), pool.end()); for (Var x : {u, m1, m2, y1, y2, w}) v.push_back(x); return v; }(), 8);
  FixedPointResult r;
  Formula thetas[2];
  int i = 0;
  for (const Formula* s : {&sigma, &sigma_p}) {
    std::vector<Var> p = pool;
    std::vector<Var> rn = renames;
    Formula body = rename_binders(*s, {0, u, m1, m2, y1, y2, w}, rn);
    body = substitute(body, Subst{{a, var(y1)}, {b, var(y2)}});
    Formula block = ex_list({m1, m2, y1, y2},
                            conj_list({unpair_formula(var(u), m1, m2, w), sub_formula(var(m1), var(u), var(y1), p),
                                       sub_formula(var(m2), var(u), var(y2), p), body}));
    Formula chi = ex(u, conj(block, eq(var(u), var(0))));
    thetas[i] = sigma1_dagger_normal(chi);
    r.transcript.push_back(std::string(i == 0 ? "theta" : "theta'") + "(v0) := " + trunc(render(thetas[i])));
    ++i;
  }
  r.theta = thetas[0];
  r.theta_prime = thetas[1];
  Nat c1 = encode(r.theta), c2 = encode(r.theta_prime);
  r.argument = cantor_pair(c1, c2);
  r.transcript.push_back("code(theta) = " + digits(c1) + ", code(theta') = " + digits(c2));
  r.transcript.push_back("p := pair(code(theta), code(theta')) = " + digits(r.argument));
  r.eta = substitute(r.theta, 0, num(r.argument));
  r.eta_prime = substitute(r.theta_prime, 0, num(r.argument));
  r.transcript.push_back("eta := theta(p), eta' := theta'(p)");
  return r;
}

RosserResult rosser(const Formula& eta, const Formula& xi, const Formula& bracket_graph, Var y, Var b) {
  for (Var v : bracket_graph->fv)
    if (v != y && v != b) throw std::invalid_argument("rosser: bracket graph has free variables besides y, b");
  auto at = [&](const Formula& f, const Term& t) {
    Var v = single_free(f, "rosser");
    return f->fv.empty() ? f : substitute(f, v, t);
  };
  Formula cmp = comparison_formula(wc_le(at(eta, var(b)), at(xi, var(b))));
  Formula sigma = ex(b, conj(bracket_graph, cmp));
  RosserResult r;
  r.fixed = fixed_point(sigma);
  r.rho = r.fixed.eta;
  r.bracket_code = encode(bracket(r.rho).certified);
  Term n = num(r.bracket_code);
  r.instance = comparison_formula(wc_le(at(eta, n), at(xi, n)));
  r.fixed.transcript.push_back("code([rho]) = " + digits(r.bracket_code));
  r.fixed.transcript.push_back("instance := eta(code [rho]) <= xi(code [rho])");
  return r;
}

}  // namespace wa
