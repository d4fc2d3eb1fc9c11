#include "wa/theories.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "wa/parse.hpp"

namespace wa {

// ---------------------------------------------------------------- schemata

std::string to_string(const AxiomRef& r) {
  std::string s = r.schema;
  for (auto p : r.params) s += " " + std::to_string(p);
  return s;
}

AxiomRef parse_axiom_ref(const std::string& text) {
  std::istringstream in(text);
  AxiomRef r;
  if (!(in >> r.schema)) throw std::invalid_argument("empty axiom reference");
  std::string tok;
  while (in >> tok) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad axiom parameter '" + tok + "'");
    r.params.push_back(std::stoull(tok));
  }
  return r;
}

namespace {

std::size_t schema_arity(const std::string& s) {
  if (s == "R1" || s == "R2" || s == "R3" || s == "R5p") return 2;
  if (s == "R4" || s == "R5" || s == "P" || s == "VS") return 1;
  throw std::invalid_argument("unknown schema " + s);
}

Var vx() { return var_named("x"); }

Formula vs_axiom(std::uint64_t n) {
  Var z = var_named("z"), y = var_named("y");
  Formula inner;
  if (n == 0) {
    inner = neg(rel(vs_in(), {var(y), var(z)}));
  } else {
    std::vector<Formula> ds;
    std::vector<Var> xs;
    for (std::uint64_t i = 0; i < n; ++i) {
      xs.push_back(var_named("x" + std::to_string(i)));
      ds.push_back(eq(var(y), var(xs.back())));
    }
    inner = iff(rel(vs_in(), {var(y), var(z)}), disj_list(ds));
  }
  Formula f = ex(z, all(y, inner));
  for (std::uint64_t i = n; i-- > 0;) f = all(var_named("x" + std::to_string(i)), f);
  return f;
}

}  // namespace

Formula axiom_instance(const AxiomRef& r) {
  if (r.params.size() != schema_arity(r.schema))
    throw std::invalid_argument("schema " + r.schema + " takes " + std::to_string(schema_arity(r.schema)) + " parameters");
  const auto& p = r.params;
  if (r.schema == "R1") return eq(add(numeral(p[0]), numeral(p[1])), numeral(Nat(p[0]) + p[1]));
  if (r.schema == "R2") return eq(mul(numeral(p[0]), numeral(p[1])), numeral(Nat(p[0]) * p[1]));
  if (r.schema == "R3") {
    if (p[0] == p[1]) throw std::invalid_argument("R3 needs distinct numerals");
    return neg(eq(numeral(p[0]), numeral(p[1])));
  }
  if (r.schema == "R4") {
    std::vector<Formula> ds;
    for (std::uint64_t i = 0; i <= p[0]; ++i) ds.push_back(eq(var(vx()), numeral(i)));
    return all(vx(), imp(le(var(vx()), numeral(p[0])), disj_list(ds)));
  }
  if (r.schema == "R5") return all(vx(), disj(le(var(vx()), numeral(p[0])), le(numeral(p[0]), var(vx()))));
  if (r.schema == "R5p") {
    if (p[0] > p[1]) throw std::invalid_argument("R5p needs m <= n");
    return le(numeral(p[0]), numeral(p[1]));
  }
  if (r.schema == "P") return rel(sym::P, {numeral(p[0])});
  return vs_axiom(p[0]);
}

bool axiom_in_theory(const AxiomRef& r, const std::string& theory, std::uint64_t cutoff) {
  for (auto p : r.params)
    if (p > cutoff) return false;
  const std::string& s = r.schema;
  if (theory == "R") return s == "R1" || s == "R2" || s == "R3" || s == "R4" || s == "R5";
  if (theory == "R0") return s == "R1" || s == "R2" || s == "R3" || s == "R4" || s == "R5p";
  if (theory == "R0p") return s == "R1" || s == "R2" || s == "R3" || s == "R4" || s == "R5p" || s == "P";
  if (theory == "VS") return s == "VS";
  return false;
}

std::vector<AxiomRef> axiom_refs(const std::string& theory, std::uint64_t n) {
  std::vector<AxiomRef> out;
  if (theory == "VS") {
    for (std::uint64_t i = 0; i <= n; ++i) out.push_back({"VS", {i}});
    return out;
  }
  if (theory != "R" && theory != "R0" && theory != "R0p") throw std::invalid_argument("unknown theory " + theory);
  for (const char* s : {"R1", "R2"})
    for (std::uint64_t m = 0; m <= n; ++m)
      for (std::uint64_t k = 0; k <= n; ++k) out.push_back({s, {m, k}});
  for (std::uint64_t m = 0; m <= n; ++m)
    for (std::uint64_t k = 0; k <= n; ++k)
      if (m != k) out.push_back({"R3", {m, k}});
  for (std::uint64_t k = 0; k <= n; ++k) out.push_back({"R4", {k}});
  if (theory == "R") {
    for (std::uint64_t k = 0; k <= n; ++k) out.push_back({"R5", {k}});
  } else {
    for (std::uint64_t m = 0; m <= n; ++m)
      for (std::uint64_t k = m; k <= n; ++k) out.push_back({"R5p", {m, k}});
  }
  if (theory == "R0p")
    for (std::uint64_t m = 0; m <= n; ++m) out.push_back({"P", {m}});
  return out;
}

namespace {

std::vector<Formula> instances(const std::string& theory, std::uint64_t n) {
  std::vector<Formula> out;
  for (auto& r : axiom_refs(theory, n)) out.push_back(axiom_instance(r));
  return out;
}

}  // namespace

std::vector<Formula> axioms_R(std::uint64_t n) { return instances("R", n); }
std::vector<Formula> axioms_R0(std::uint64_t n) { return instances("R0", n); }
std::vector<Formula> axioms_R0p(std::uint64_t n) { return instances("R0p", n); }
std::vector<Formula> axioms_VS(std::uint64_t n) { return instances("VS", n); }

Sym vs_in() {
  static const Sym s = intern("in");
  return s;
}

Signature vs_signature() {
  Signature s;
  s.name = "VS";
  s.relations = {{"in", 2}};
  return s;
}

TheorySpec theory_R() { return {"R", Signature::La(), axioms_R}; }
TheorySpec theory_R0() { return {"R0", Signature::La(), axioms_R0}; }
TheorySpec theory_R0p() { return {"R0p", Signature::Lap(), axioms_R0p}; }
TheorySpec theory_VS() { return {"VS", vs_signature(), axioms_VS}; }

TheorySpec finite_theory(std::string name, Signature sig, std::vector<Formula> axioms) {
  return {std::move(name), std::move(sig), [axioms](std::uint64_t) { return axioms; }};
}

TheorySpec theory_by_name(const std::string& name) {
  if (name == "R") return theory_R();
  if (name == "R0") return theory_R0();
  if (name == "R0p") return theory_R0p();
  if (name == "VS") return theory_VS();
  throw std::invalid_argument("unknown theory " + name);
}

// ------------------------------------------------------------ translations

namespace {

Var vi(std::size_t i) { return static_cast<Var>(i); }

std::vector<Var> vlist(std::size_t n) {
  std::vector<Var> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(vi(i));
  return v;
}

Term symbol_term(const std::string& name, std::vector<Term> args) {
  if (name == "0" && args.empty()) return zero();
  return app(intern(name), std::move(args));
}

Formula symbol_atom(const std::string& name, std::vector<Term> args) {
  if (name == "<=" && args.size() == 2) return le(args[0], args[1]);
  return rel(intern(name), std::move(args));
}

// The formula that says v0..v(n-1) stand in the relation, or vn is the value.
Formula own_symbol(const Signature& sig, const std::string& name) {
  if (sig.has_constant(name)) return eq(symbol_term(name, {}), var(vi(0)));
  if (auto a = sig.function_arity(name)) {
    std::vector<Term> args;
    for (Var v : vlist(*a)) args.push_back(var(v));
    return eq(symbol_term(name, args), var(vi(*a)));
  }
  if (auto a = sig.relation_arity(name)) {
    std::vector<Term> args;
    for (Var v : vlist(*a)) args.push_back(var(v));
    return symbol_atom(name, args);
  }
  throw TranslationError("symbol " + name + " not in signature " + sig.name);
}

class Translator {
 public:
  Translator(const Translation& t, const Formula& phi) : tau_(t) {
    for (Var v : all_vars(phi)) used_.insert(v);
  }

  Formula run(const Formula& f) {
    switch (f->kind) {
      case FKind::Eq:
      case FKind::Rel: return atom(f);
      case FKind::Not: return neg(run(f->a));
      case FKind::And: return conj(run(f->a), run(f->b));
      case FKind::Or: return disj(run(f->a), run(f->b));
      case FKind::Imp: return imp(run(f->a), run(f->b));
      case FKind::Iff: return iff(run(f->a), run(f->b));
      case FKind::All: return all(f->var, imp(dom(f->var), run(f->a)));
      case FKind::Ex: return ex(f->var, conj(dom(f->var), run(f->a)));
      default: return run(desugar_top(f));
    }
  }

 private:
  const Translation& tau_;
  std::set<Var> used_;

  Var fresh() {
    Var x = 0;
    while (used_.count(x)) ++x;
    used_.insert(x);
    return x;
  }

  Formula dom(Var x) { return substitute(tau_.domain, vi(0), var(x)); }

  const Formula& symbol(const std::string& name) {
    auto it = tau_.symbols.find(name);
    if (it == tau_.symbols.end()) throw TranslationError("translation " + tau_.name + " does not map symbol " + name);
    return it->second;
  }

  static Formula instantiate(const Formula& f, const std::vector<Var>& xs) {
    Subst s;
    for (std::size_t i = 0; i < xs.size(); ++i) s[vi(i)] = var(xs[i]);
    return substitute(f, s);
  }

  struct Def {
    Var y;
    Formula graph;
  };

  Var flatten(const Term& t, std::vector<Def>& defs) {
    if (t->kind == TermKind::Var) return t->var;
    std::string name;
    std::vector<Var> args;
    Term pred;
    if (is_zero(t)) {
      name = "0";
    } else if (is_succ(t, &pred)) {
      name = "S";
      args.push_back(flatten(pred, defs));
    } else {
      name = sym_name(t->fn);
      for (auto& a : t->args) args.push_back(flatten(a, defs));
    }
    Var y = fresh();
    args.push_back(y);
    defs.push_back({y, instantiate(symbol(name), args)});
    return y;
  }

  Formula atom(const Formula& f) {
    if (tau_.keep_atoms) return f;
    std::vector<Def> defs;
    std::vector<Var> xs;
    for (auto& a : f->args) xs.push_back(flatten(a, defs));
    Formula core;
    if (f->kind == FKind::Eq) {
      core = tau_.identity ? instantiate(*tau_.identity, xs) : eq(var(xs[0]), var(xs[1]));
    } else {
      std::string name = f->rel == sym::Le ? "<=" : sym_name(f->rel);
      core = instantiate(symbol(name), xs);
    }
    for (auto it = defs.rbegin(); it != defs.rend(); ++it)
      core = ex(it->y, conj_list({dom(it->y), it->graph, core}));
    return core;
  }
};

}  // namespace

Translation Translation::identity_on(const Signature& sig) {
  Translation t = relativization(sig, eq(var(0), var(0)), "id");
  return t;
}

Translation Translation::relativization(const Signature& sig, const Formula& domain, std::string name) {
  Translation t;
  t.name = std::move(name);
  t.source = sig;
  t.target = sig;
  t.domain = domain;
  t.keep_atoms = true;
  for (auto& c : sig.constants) t.symbols[c.first] = own_symbol(sig, c.first);
  for (auto& f : sig.functions) t.symbols[f.first] = own_symbol(sig, f.first);
  for (auto& r : sig.relations) t.symbols[r.first] = own_symbol(sig, r.first);
  return t;
}

Formula translate(const Translation& tau, const Formula& phi) {
  for (Var v : free_vars(tau.domain))
    if (v != 0) throw TranslationError("domain formula of " + tau.name + " has a free variable besides v0");
  Translator t(tau, phi);
  return t.run(phi);
}

Structure internal_structure(const Structure& M, const Translation& tau) {
  std::vector<int> D;
  for (int a = 0; a < M.size; ++a)
    if (evaluate(M, tau.domain, {{0, a}})) D.push_back(a);
  if (D.empty()) throw TranslationError("empty internal domain");
  Formula idf = tau.identity ? *tau.identity : eq(var(0), var(1));
  auto E = [&](int a, int b) { return evaluate(M, idf, {{0, a}, {1, b}}); };
  for (int a : D)
    if (!E(a, a)) throw TranslationError("identity formula is not reflexive on the domain");
  for (int a : D)
    for (int b : D)
      if (E(a, b) != E(b, a)) throw TranslationError("identity formula is not symmetric on the domain");
  for (int a : D)
    for (int b : D)
      for (int c : D)
        if (E(a, b) && E(b, c) && !E(a, c)) throw TranslationError("identity formula is not transitive on the domain");
  std::vector<int> cls(M.size, -1);
  std::vector<int> reps;
  for (int a : D) {
    if (cls[a] >= 0) continue;
    int id = static_cast<int>(reps.size());
    reps.push_back(a);
    for (int b : D)
      if (E(a, b)) cls[b] = id;
  }
  const int n = static_cast<int>(reps.size());
  Structure K(tau.source, n);

  // every tuple over D, with the class tuple it represents
  auto for_tuples = [&](int arity, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<std::size_t> idx(arity, 0);
    std::vector<int> t(arity);
    while (true) {
      for (int i = 0; i < arity; ++i) t[i] = D[idx[i]];
      fn(t);
      int i = arity - 1;
      while (i >= 0 && ++idx[i] == D.size()) idx[i--] = 0;
      if (i < 0) break;
    }
  };
  auto cell_of = [&](const std::vector<int>& t) {
    int c = 0;
    for (int a : t) c = c * n + cls[a];
    return c;
  };
  auto lookup = [&](const std::string& name) -> const Formula& {
    auto it = tau.symbols.find(name);
    if (it == tau.symbols.end()) throw TranslationError("translation " + tau.name + " does not map symbol " + name);
    return it->second;
  };
  auto graph_value = [&](const Formula& g, const std::vector<int>& t) {
    int value = -1;
    Assignment asg;
    for (std::size_t i = 0; i < t.size(); ++i) asg[vi(i)] = t[i];
    for (int b : D) {
      asg[vi(t.size())] = b;
      if (!evaluate(M, g, asg)) continue;
      if (value >= 0 && value != cls[b]) throw TranslationError("function graph is not functional on the domain");
      value = cls[b];
    }
    if (value < 0) throw TranslationError("function graph has no value on the domain");
    return value;
  };

  for (std::size_t i = 0; i < tau.source.constants.size(); ++i)
    K.constants[i] = graph_value(lookup(tau.source.constants[i].first), {});
  for (std::size_t i = 0; i < tau.source.functions.size(); ++i) {
    auto& [name, arity] = tau.source.functions[i];
    const Formula& g = lookup(name);
    for_tuples(arity, [&](const std::vector<int>& t) {
      int v = graph_value(g, t);
      int& cell = K.functions[i][cell_of(t)];
      if (cell >= 0 && cell != v) throw TranslationError("identity formula is not a congruence for " + name);
      cell = v;
    });
  }
  for (std::size_t i = 0; i < tau.source.relations.size(); ++i) {
    auto& [name, arity] = tau.source.relations[i];
    const Formula& r = lookup(name);
    for_tuples(arity, [&](const std::vector<int>& t) {
      Assignment asg;
      for (std::size_t j = 0; j < t.size(); ++j) asg[vi(j)] = t[j];
      std::int8_t v = evaluate(M, r, asg) ? 1 : 0;
      auto& cell = K.relations[i][cell_of(t)];
      if (cell >= 0 && cell != v) throw TranslationError("identity formula is not a congruence for " + name);
      cell = v;
    });
  }
  return K;
}

namespace {

Signature signature_named(const std::string& n) {
  if (n == "La") return Signature::La();
  if (n == "Lap") return Signature::Lap();
  if (n == "VS") return vs_signature();
  if (n == "id") return Signature::identity_only();
  throw std::invalid_argument("unknown signature " + n);
}

}  // namespace

Translation translation_from_text(const std::string& text) {
  Translation t;
  t.name = "map";
  std::istringstream in(text);
  std::string line;
  bool have_source = false, have_target = false;
  std::vector<std::pair<std::string, std::string>> pending;
  std::string domain_text, identity_text;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    std::string rest;
    std::getline(ls, rest);
    if (key == "source") {
      t.source = signature_named(rest.substr(rest.find_first_not_of(' ')));
      have_source = true;
    } else if (key == "target") {
      t.target = signature_named(rest.substr(rest.find_first_not_of(' ')));
      have_target = true;
    } else if (key == "domain") {
      domain_text = rest;
    } else if (key == "identity") {
      identity_text = rest;
    } else if (key == "keep-atoms") {
      t.keep_atoms = true;
    } else if (key == "symbol") {
      std::istringstream rs(rest);
      std::string name;
      rs >> name;
      std::string body;
      std::getline(rs, body);
      pending.emplace_back(name, body);
    } else {
      throw std::invalid_argument("unknown map directive '" + key + "'");
    }
  }
  if (!have_source || !have_target || domain_text.empty())
    throw std::invalid_argument("map file needs source, target and domain lines");
  t.domain = parse_formula(domain_text, t.target);
  if (!identity_text.empty()) t.identity = parse_formula(identity_text, t.target);
  if (t.keep_atoms) {
    for (auto& c : t.source.constants) t.symbols[c.first] = own_symbol(t.source, c.first);
    for (auto& f : t.source.functions) t.symbols[f.first] = own_symbol(t.source, f.first);
    for (auto& r : t.source.relations) t.symbols[r.first] = own_symbol(t.source, r.first);
  }
  for (auto& [name, body] : pending) t.symbols[name] = parse_formula(body, t.target);
  return t;
}

// -------------------------------------------------------------- parameters

std::vector<Formula> axioms_param(const Translation& tau0, const std::vector<ParamAxiom>& params, std::uint64_t n) {
  std::vector<Formula> out;
  for (auto& a : axioms_R0(n)) out.push_back(translate(tau0, a));
  for (auto& p : params) {
    const std::size_t k = p.vars.size();
    if (!p.oracle) throw std::invalid_argument("parameter axiom without oracle");
    std::vector<std::uint64_t> tuple(k, 0);
    while (true) {
      if (p.oracle(tuple)) {
        if (tau0.keep_atoms) {
          Subst s;
          for (std::size_t i = 0; i < k; ++i) s[p.vars[i]] = numeral(tuple[i]);
          out.push_back(substitute(p.chi, s));
        } else {
          // exists y (delta(y) & (y = n)^tau & chi(y))
          std::vector<Var> used = all_vars(p.chi);
          std::vector<Formula> parts;
          std::vector<Var> ys;
          Subst s;
          for (std::size_t i = 0; i < k; ++i) {
            Var y = fresh_var(used);
            used.push_back(y);
            ys.push_back(y);
            s[p.vars[i]] = var(y);
          }
          for (std::size_t i = 0; i < k; ++i) {
            parts.push_back(substitute(tau0.domain, 0, var(ys[i])));
            parts.push_back(translate(tau0, eq(var(ys[i]), numeral(tuple[i]))));
          }
          parts.push_back(substitute(p.chi, s));
          out.push_back(ex_list(ys, conj_list(parts)));
        }
      }
      std::size_t i = k;
      while (i > 0 && ++tuple[i - 1] > n) tuple[--i] = 0;
      if (i == 0) break;
    }
  }
  return out;
}

// ------------------------------------------------------------- combinators

namespace {

std::string tagged(const std::string& name, int pos) {
  static const std::map<std::string, std::string> words = {
      {"0", "zero"}, {"S", "succ"}, {"+", "add"}, {"*", "mul"}, {"<=", "le"}};
  auto it = words.find(name);
  return (it == words.end() ? name : it->second) + "_" + std::to_string(pos);
}

std::map<std::string, std::string> tagging(const Signature& sig, int pos) {
  std::map<std::string, std::string> m;
  for (auto& c : sig.constants) m[c.first] = tagged(c.first, pos);
  for (auto& f : sig.functions) m[f.first] = tagged(f.first, pos);
  for (auto& r : sig.relations) m[r.first] = tagged(r.first, pos);
  return m;
}

const std::string& renamed(const std::map<std::string, std::string>& names, const std::string& n) {
  auto it = names.find(n);
  if (it == names.end()) throw std::invalid_argument("no renaming for symbol " + n);
  return it->second;
}

Term rename_term(const Term& t, const std::map<std::string, std::string>& names) {
  switch (t->kind) {
    case TermKind::Var: return t;
    case TermKind::Num: {
      Term z = symbol_term(renamed(names, "0"), {});
      Sym s = intern(renamed(names, "S"));
      for (Nat i = 0; i < t->value(); ++i) z = app(s, {z});
      return z;
    }
    case TermKind::App: {
      std::vector<Term> args;
      for (auto& a : t->args) args.push_back(rename_term(a, names));
      return symbol_term(renamed(names, sym_name(t->fn)), std::move(args));
    }
  }
  return t;
}

}  // namespace

Formula rename_symbols(const Formula& f, const std::map<std::string, std::string>& names) {
  switch (f->kind) {
    case FKind::Eq: return eq(rename_term(f->args[0], names), rename_term(f->args[1], names));
    case FKind::Rel: {
      std::vector<Term> args;
      for (auto& a : f->args) args.push_back(rename_term(a, names));
      std::string n = f->rel == sym::Le ? "<=" : sym_name(f->rel);
      return symbol_atom(renamed(names, n), std::move(args));
    }
    case FKind::Not: return neg(rename_symbols(f->a, names));
    case FKind::And: return conj(rename_symbols(f->a, names), rename_symbols(f->b, names));
    case FKind::Or: return disj(rename_symbols(f->a, names), rename_symbols(f->b, names));
    case FKind::Imp: return imp(rename_symbols(f->a, names), rename_symbols(f->b, names));
    case FKind::Iff: return iff(rename_symbols(f->a, names), rename_symbols(f->b, names));
    case FKind::All: return all(f->var, rename_symbols(f->a, names));
    case FKind::Ex: return ex(f->var, rename_symbols(f->a, names));
    default: return rename_symbols(desugar_top(f), names);
  }
}

Signature rename_signature(const Signature& sig, const std::map<std::string, std::string>& names) {
  Signature out;
  out.name = sig.name + "'";
  for (auto& c : sig.constants) out.constants.push_back({renamed(names, c.first), 0});
  for (auto& f : sig.functions) out.functions.push_back({renamed(names, f.first), f.second});
  for (auto& r : sig.relations) out.relations.push_back({renamed(names, r.first), r.second});
  return out;
}

Structure reduct(const Structure& M, const Signature& sig, const std::map<std::string, std::string>& names) {
  Structure K(sig, M.size);
  for (std::size_t i = 0; i < sig.constants.size(); ++i) {
    int j = M.constant_index(intern(renamed(names, sig.constants[i].first)));
    if (j < 0) throw EvalError("reduct: missing constant " + sig.constants[i].first);
    K.constants[i] = M.constants[j];
  }
  for (std::size_t i = 0; i < sig.functions.size(); ++i) {
    int j = M.function_index(intern(renamed(names, sig.functions[i].first)));
    if (j < 0) throw EvalError("reduct: missing function " + sig.functions[i].first);
    K.functions[i] = M.functions[j];
  }
  for (std::size_t i = 0; i < sig.relations.size(); ++i) {
    int j = M.relation_index(intern(renamed(names, sig.relations[i].first)));
    if (j < 0) throw EvalError("reduct: missing relation " + sig.relations[i].first);
    K.relations[i] = M.relations[j];
  }
  return K;
}

namespace {

Signature merged(const Signature& a, const Signature& b, const std::string& name) {
  Signature s;
  s.name = name;
  for (const Signature* p : {&a, &b}) {
    s.constants.insert(s.constants.end(), p->constants.begin(), p->constants.end());
    s.functions.insert(s.functions.end(), p->functions.begin(), p->functions.end());
    s.relations.insert(s.relations.end(), p->relations.begin(), p->relations.end());
  }
  return s;
}

// tri(c) and forall x (tri(x) -> tri(f(x))), with tri negated for the second operand.
std::vector<Formula> closure_axioms(const Signature& sig, Sym tri, bool positive) {
  auto in = [&](const Term& t) { return positive ? rel(tri, {t}) : neg(rel(tri, {t})); };
  std::vector<Formula> out;
  for (auto& c : sig.constants) out.push_back(in(symbol_term(c.first, {})));
  for (auto& [name, arity] : sig.functions) {
    std::vector<Var> xs;
    std::vector<Term> args;
    std::vector<Formula> hyp;
    for (int i = 0; i < arity; ++i) {
      xs.push_back(var_named("x" + std::to_string(i + 1)));
      args.push_back(var(xs.back()));
      hyp.push_back(in(args.back()));
    }
    Formula body = in(symbol_term(name, args));
    if (!hyp.empty()) body = imp(conj_list(hyp), body);
    out.push_back(all_list(xs, body));
  }
  return out;
}

}  // namespace

Combined ovee(const TheorySpec& U, const TheorySpec& V) {
  Combined c;
  c.left_names = tagging(U.signature, 1);
  c.right_names = tagging(V.signature, 2);
  Signature sig = merged(rename_signature(U.signature, c.left_names), rename_signature(V.signature, c.right_names),
                         U.name + "_ovee_" + V.name);
  sig.relations.push_back({"sw", 0});
  sig.validate();
  c.switch_symbol = intern("sw");
  Sym sw = c.switch_symbol;
  auto ln = c.left_names, rn = c.right_names;
  c.theory = {sig.name, sig, [U, V, ln, rn, sw](std::uint64_t n) {
                std::vector<Formula> out;
                Formula p = rel(sw, {});
                for (auto& a : U.generator(n)) out.push_back(imp(p, rename_symbols(a, ln)));
                for (auto& a : V.generator(n)) out.push_back(imp(neg(p), rename_symbols(a, rn)));
                return out;
              }};
  return c;
}

Combined owedge(const TheorySpec& U, const TheorySpec& V) {
  Combined c;
  c.left_names = tagging(U.signature, 1);
  c.right_names = tagging(V.signature, 2);
  Signature su = rename_signature(U.signature, c.left_names);
  Signature sv = rename_signature(V.signature, c.right_names);
  Signature sig = merged(su, sv, U.name + "_owedge_" + V.name);
  sig.relations.push_back({"tri", 1});
  sig.validate();
  c.switch_symbol = intern("tri");
  Sym tri = c.switch_symbol;
  auto ln = c.left_names, rn = c.right_names;
  Translation left = Translation::relativization(su, rel(tri, {var(0)}), "tri");
  Translation right = Translation::relativization(sv, neg(rel(tri, {var(0)})), "not-tri");
  c.theory = {sig.name, sig, [U, V, ln, rn, tri, left, right, su, sv](std::uint64_t n) {
                std::vector<Formula> out;
                for (auto& a : U.generator(n)) out.push_back(translate(left, rename_symbols(a, ln)));
                for (auto& a : V.generator(n)) out.push_back(translate(right, rename_symbols(a, rn)));
                Var x = var_named("x");
                out.push_back(ex(x, rel(tri, {var(x)})));
                out.push_back(ex(x, neg(rel(tri, {var(x)}))));
                for (auto& a : closure_axioms(su, tri, true)) out.push_back(a);
                for (auto& a : closure_axioms(sv, tri, false)) out.push_back(a);
                return out;
              }};
  return c;
}

}  // namespace wa
