#include "wa/syntax.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_map>

namespace wa {

// ------------------------------------------------------------------ symbols

namespace {

struct SymbolTable {
  std::mutex mu;
  std::vector<std::unique_ptr<std::string>> names;
  std::unordered_map<std::string, Sym> ids;
  SymbolTable() {
    for (const char* n : {"S", "+", "*", "<=", "P"}) {
      ids.emplace(n, static_cast<Sym>(names.size()));
      names.push_back(std::make_unique<std::string>(n));
    }
  }
};

SymbolTable& symbols() {
  static SymbolTable table;
  return table;
}

inline std::size_t mix(std::size_t h, std::size_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::size_t hash_nat(const Nat& n) {
  const __mpz_struct* z = n.backend().data();
  std::size_t h = 0x51ed27;
  int sz = z->_mp_size < 0 ? -z->_mp_size : z->_mp_size;
  for (int i = 0; i < sz; ++i) h = mix(h, static_cast<std::size_t>(z->_mp_d[i]));
  return h;
}

std::vector<Var> merge_fv(const std::vector<Var>& a, const std::vector<Var>& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  std::vector<Var> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<Var> remove_fv(const std::vector<Var>& a, Var x) {
  auto it = std::lower_bound(a.begin(), a.end(), x);
  if (it == a.end() || *it != x) return a;
  std::vector<Var> out(a.begin(), it);
  out.insert(out.end(), it + 1, a.end());
  return out;
}

bool contains(const std::vector<Var>& sorted, Var x) {
  return std::binary_search(sorted.begin(), sorted.end(), x);
}

constexpr std::uint64_t kSmallMax = std::uint64_t(1) << 63;

}  // namespace

Sym intern(std::string_view name) {
  auto& t = symbols();
  std::lock_guard<std::mutex> lock(t.mu);
  auto it = t.ids.find(std::string(name));
  if (it != t.ids.end()) return it->second;
  Sym id = static_cast<Sym>(t.names.size());
  t.names.push_back(std::make_unique<std::string>(name));
  t.ids.emplace(std::string(name), id);
  return id;
}

const std::string& sym_name(Sym s) {
  auto& t = symbols();
  std::lock_guard<std::mutex> lock(t.mu);
  if (s >= t.names.size()) throw std::out_of_range("unknown symbol id");
  return *t.names[s];
}

// ---------------------------------------------------------------- signature

Signature Signature::La() {
  Signature s;
  s.name = "La";
  s.constants = {{"0", 0}};
  s.functions = {{"S", 1}, {"+", 2}, {"*", 2}};
  s.relations = {{"<=", 2}};
  return s;
}

Signature Signature::Lap() {
  Signature s = La();
  s.name = "Lap";
  s.relations.push_back({"P", 1});
  return s;
}

Signature Signature::identity_only() {
  Signature s;
  s.name = "id";
  return s;
}

bool Signature::has_constant(std::string_view n) const {
  for (auto& c : constants)
    if (c.first == n) return true;
  return false;
}

std::optional<int> Signature::function_arity(std::string_view n) const {
  for (auto& f : functions)
    if (f.first == n) return f.second;
  return std::nullopt;
}

std::optional<int> Signature::relation_arity(std::string_view n) const {
  for (auto& r : relations)
    if (r.first == n) return r.second;
  return std::nullopt;
}

bool Signature::has_symbol(std::string_view n) const {
  return has_constant(n) || function_arity(n) || relation_arity(n);
}

void Signature::validate() const {
  std::vector<std::string> all;
  for (auto& c : constants) all.push_back(c.first);
  for (auto& f : functions) all.push_back(f.first);
  for (auto& r : relations) all.push_back(r.first);
  std::sort(all.begin(), all.end());
  auto dup = std::adjacent_find(all.begin(), all.end());
  if (dup != all.end()) throw std::invalid_argument("duplicate symbol " + *dup + " in signature " + name);
}

// -------------------------------------------------------------------- terms

Term var(Var v) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Var;
  n->var = v;
  n->hash = mix(0x1234, v);
  n->fv = {v};
  return n;
}

Term num(const Nat& value) {
  if (value < 0) throw std::invalid_argument("negative numeral");
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Num;
  if (value < kSmallMax) {
    n->small = value.convert_to<std::uint64_t>();
    n->hash = mix(0x4321, n->small);
  } else {
    n->big = std::make_shared<const Nat>(value);
    n->hash = mix(0x4321, hash_nat(value));
  }
  return n;
}

Term num(std::uint64_t value) {
  if (value >= kSmallMax) return num(Nat(value));
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Num;
  n->small = value;
  n->hash = mix(0x4321, value);
  return n;
}

Term zero() {
  static const Term z = num(std::uint64_t(0));
  return z;
}

Term app(Sym f, std::vector<Term> args) {
  if (f == sym::S) {
    if (args.size() != 1) throw std::invalid_argument("S takes one argument");
    if (args[0]->kind == TermKind::Num) {
      if (args[0]->is_small() && args[0]->small + 1 < kSmallMax) return num(args[0]->small + 1);
      return num(args[0]->value() + 1);
    }
  }
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::App;
  n->fn = f;
  std::size_t h = mix(0x777, f);
  for (auto& a : args) {
    h = mix(h, a->hash);
    n->fv = merge_fv(n->fv, a->fv);
  }
  n->hash = h;
  n->args = std::move(args);
  return n;
}

Term succ(const Term& t) { return app(sym::S, {t}); }
Term add(const Term& a, const Term& b) { return app(sym::Add, {a, b}); }
Term mul(const Term& a, const Term& b) { return app(sym::Mul, {a, b}); }
Term constant(Sym c) { return app(c, {}); }

bool is_succ(const Term& t, Term* arg) {
  if (t->kind == TermKind::App && t->fn == sym::S) {
    if (arg) *arg = t->args[0];
    return true;
  }
  if (t->kind == TermKind::Num && (t->big || t->small > 0)) {
    if (arg) *arg = t->is_small() ? num(t->small - 1) : num(t->value() - 1);
    return true;
  }
  return false;
}

bool is_zero(const Term& t) { return t->kind == TermKind::Num && !t->big && t->small == 0; }
bool is_numeral(const Term& t) { return t->kind == TermKind::Num; }

Nat depth(const Term& t) {
  switch (t->kind) {
    case TermKind::Var: return 0;
    case TermKind::Num: return t->value();
    case TermKind::App: {
      Nat d = 0;
      for (auto& a : t->args) d = std::max(d, depth(a));
      return d + 1;
    }
  }
  return 0;
}

bool equal(const Term& a, const Term& b) {
  if (a.get() == b.get()) return true;
  if (a->hash != b->hash || a->kind != b->kind) return false;
  switch (a->kind) {
    case TermKind::Var: return a->var == b->var;
    case TermKind::Num:
      if (a->is_small() && b->is_small()) return a->small == b->small;
      if (a->is_small() != b->is_small()) return false;
      return *a->big == *b->big;
    case TermKind::App:
      if (a->fn != b->fn || a->args.size() != b->args.size()) return false;
      for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!equal(a->args[i], b->args[i])) return false;
      return true;
  }
  return false;
}

// ----------------------------------------------------------------- formulas

namespace {

std::shared_ptr<FormulaNode> node(FKind k) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = k;
  return n;
}

std::size_t sat_add(std::size_t a, std::size_t b) {
  std::size_t s = a + b;
  return s < a ? SIZE_MAX : s;
}

Formula atom(FKind k, Sym r, std::vector<Term> args) {
  auto n = node(k);
  n->rel = r;
  std::size_t h = mix(static_cast<std::size_t>(k) * 131, r);
  for (auto& a : args) {
    h = mix(h, a->hash);
    n->fv = merge_fv(n->fv, a->fv);
  }
  n->hash = h;
  n->args = std::move(args);
  return n;
}

Formula binary(FKind k, const Formula& f, const Formula& g) {
  auto n = node(k);
  n->a = f;
  n->b = g;
  n->hash = mix(mix(static_cast<std::size_t>(k) * 977, f->hash), g->hash);
  n->fv = merge_fv(f->fv, g->fv);
  n->size = sat_add(sat_add(f->size, g->size), 1);
  return n;
}

Formula quant(FKind k, Var x, const Term& t, const Formula& f) {
  auto n = node(k);
  n->var = x;
  n->a = f;
  n->bound = t;
  std::size_t h = mix(mix(static_cast<std::size_t>(k) * 3571, x), f->hash);
  n->fv = remove_fv(f->fv, x);
  if (t) {
    h = mix(h, t->hash);
    n->fv = merge_fv(n->fv, t->fv);
  }
  n->hash = h;
  n->size = sat_add(f->size, 1);
  return n;
}

}  // namespace

Formula eq(const Term& s, const Term& t) { return atom(FKind::Eq, 0, {s, t}); }
Formula le(const Term& s, const Term& t) { return atom(FKind::Rel, sym::Le, {s, t}); }
Formula rel(Sym r, std::vector<Term> args) { return atom(FKind::Rel, r, std::move(args)); }

Formula neg(const Formula& f) {
  auto n = node(FKind::Not);
  n->a = f;
  n->hash = mix(0xabcdef, f->hash);
  n->fv = f->fv;
  n->size = sat_add(f->size, 1);
  return n;
}

Formula conj(const Formula& f, const Formula& g) { return binary(FKind::And, f, g); }
Formula disj(const Formula& f, const Formula& g) { return binary(FKind::Or, f, g); }
Formula imp(const Formula& f, const Formula& g) { return binary(FKind::Imp, f, g); }
Formula iff(const Formula& f, const Formula& g) { return binary(FKind::Iff, f, g); }
Formula all(Var x, const Formula& f) { return quant(FKind::All, x, nullptr, f); }
Formula ex(Var x, const Formula& f) { return quant(FKind::Ex, x, nullptr, f); }
Formula ball(Var x, const Term& t, const Formula& f) { return quant(FKind::BAll, x, t, f); }
Formula bex(Var x, const Term& t, const Formula& f) { return quant(FKind::BEx, x, t, f); }

Formula lt(const Term& s, const Term& t) { return conj(le(s, t), neg(eq(s, t))); }

Formula ball_lt(Var x, const Term& t, const Formula& f) {
  return ball(x, t, imp(neg(eq(var(x), t)), f));
}

Formula conj_list(const std::vector<Formula>& fs) {
  if (fs.empty()) throw std::invalid_argument("empty conjunction");
  Formula acc = fs.back();
  for (std::size_t i = fs.size() - 1; i-- > 0;) acc = conj(fs[i], acc);
  return acc;
}

Formula disj_list(const std::vector<Formula>& fs) {
  if (fs.empty()) throw std::invalid_argument("empty disjunction");
  Formula acc = fs.back();
  for (std::size_t i = fs.size() - 1; i-- > 0;) acc = disj(fs[i], acc);
  return acc;
}

Formula all_list(const std::vector<Var>& xs, const Formula& f) {
  Formula acc = f;
  for (std::size_t i = xs.size(); i-- > 0;) acc = all(xs[i], acc);
  return acc;
}

Formula ex_list(const std::vector<Var>& xs, const Formula& f) {
  Formula acc = f;
  for (std::size_t i = xs.size(); i-- > 0;) acc = ex(xs[i], acc);
  return acc;
}

Formula truth() {
  static const Formula t = eq(zero(), zero());
  return t;
}

bool equal(const Formula& a, const Formula& b) {
  if (a.get() == b.get()) return true;
  if (a->hash != b->hash || a->kind != b->kind) return false;
  switch (a->kind) {
    case FKind::Eq:
    case FKind::Rel:
      if (a->rel != b->rel || a->args.size() != b->args.size()) return false;
      for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!equal(a->args[i], b->args[i])) return false;
      return true;
    case FKind::Not: return equal(a->a, b->a);
    case FKind::And:
    case FKind::Or:
    case FKind::Imp:
    case FKind::Iff: return equal(a->a, b->a) && equal(a->b, b->b);
    case FKind::All:
    case FKind::Ex: return a->var == b->var && equal(a->a, b->a);
    case FKind::BAll:
    case FKind::BEx: return a->var == b->var && equal(a->bound, b->bound) && equal(a->a, b->a);
  }
  return false;
}

bool is_quantifier(FKind k) {
  return k == FKind::All || k == FKind::Ex || k == FKind::BAll || k == FKind::BEx;
}
bool is_binary(FKind k) {
  return k == FKind::And || k == FKind::Or || k == FKind::Imp || k == FKind::Iff;
}
bool is_atomic(FKind k) { return k == FKind::Eq || k == FKind::Rel; }

// ---------------------------------------------------------------- variables

namespace {

constexpr std::uint64_t kNamedBase = std::uint64_t(1) << 32;
constexpr const char* kAlphabet =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789_'";

int alpha_index(char c) {
  if (c >= 'A' && c <= 'Z') return c - 'A';
  if (c >= 'a' && c <= 'z') return 26 + (c - 'a');
  if (c >= '0' && c <= '9') return 52 + (c - '0');
  if (c == '_') return 62;
  if (c == '\'') return 63;
  return -1;
}

std::optional<std::uint64_t> v_digits(std::string_view name) {
  if (name.size() < 2 || name[0] != 'v') return std::nullopt;
  if (name.size() > 2 && name[1] == '0') return std::nullopt;
  unsigned __int128 acc = 0;
  for (std::size_t i = 1; i < name.size(); ++i) {
    if (name[i] < '0' || name[i] > '9') return std::nullopt;
    acc = acc * 10 + static_cast<unsigned>(name[i] - '0');
    if (acc > UINT64_MAX) return std::nullopt;
  }
  return static_cast<std::uint64_t>(acc);
}

bool reserved_word(std::string_view n) { return n == "S" || n == "forall" || n == "exists"; }

}  // namespace

bool valid_identifier(std::string_view name) {
  if (name.empty()) return false;
  char c = name[0];
  if (!((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'))) return false;
  for (char d : name)
    if (alpha_index(d) < 0) return false;
  return true;
}

Var var_named(std::string_view name) {
  if (auto d = v_digits(name)) return *d;
  if (!valid_identifier(name)) throw std::invalid_argument("invalid variable name '" + std::string(name) + "'");
  if (name.size() > 10) throw std::invalid_argument("variable name too long: " + std::string(name));
  if (reserved_word(name)) throw std::invalid_argument("reserved word used as variable: " + std::string(name));
  std::uint64_t acc = 0;
  for (char c : name) acc = acc * 64 + static_cast<std::uint64_t>(alpha_index(c) + 1);
  return kNamedBase + acc;
}

std::string var_name(Var v) {
  if (v >= kNamedBase) {
    std::uint64_t acc = v - kNamedBase;
    std::string s;
    while (acc > 0) {
      std::uint64_t d = (acc - 1) % 64;
      s.push_back(kAlphabet[d]);
      acc = (acc - 1) / 64;
    }
    std::reverse(s.begin(), s.end());
    if (!s.empty() && s.size() <= 10 && valid_identifier(s) && !reserved_word(s) && !v_digits(s)) return s;
  }
  return "v" + std::to_string(v);
}

Var fresh_var(const std::vector<Var>& used) {
  std::vector<Var> u = used;
  std::sort(u.begin(), u.end());
  Var x = 0;
  for (Var v : u) {
    if (v == x) ++x;
    else if (v > x) break;
  }
  return x;
}

Var fresh_var(std::initializer_list<const std::vector<Var>*> used) {
  std::vector<Var> all;
  for (auto* u : used) all.insert(all.end(), u->begin(), u->end());
  return fresh_var(all);
}

const std::vector<Var>& free_vars(const Term& t) { return t->fv; }
const std::vector<Var>& free_vars(const Formula& f) { return f->fv; }
bool occurs_free(Var x, const Term& t) { return contains(t->fv, x); }
bool occurs_free(Var x, const Formula& f) { return contains(f->fv, x); }
bool is_closed(const Formula& f) { return f->fv.empty(); }

namespace {
void collect_vars(const Formula& f, std::vector<Var>& out) {
  if (is_atomic(f->kind)) {
    for (auto& a : f->args) out.insert(out.end(), a->fv.begin(), a->fv.end());
    return;
  }
  if (is_quantifier(f->kind)) {
    out.push_back(f->var);
    if (f->bound) out.insert(out.end(), f->bound->fv.begin(), f->bound->fv.end());
  }
  if (f->a) collect_vars(f->a, out);
  if (f->b) collect_vars(f->b, out);
}
}  // namespace

std::vector<Var> all_vars(const Formula& f) {
  std::vector<Var> out;
  collect_vars(f, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ------------------------------------------------------------ substitution

namespace {

bool touches(const std::vector<Var>& fv, const Subst& s) {
  if (s.empty() || fv.empty()) return false;
  if (s.size() < fv.size()) {
    for (auto& kv : s)
      if (contains(fv, kv.first)) return true;
    return false;
  }
  for (Var v : fv)
    if (s.count(v)) return true;
  return false;
}

}  // namespace

Term substitute(const Term& t, const Subst& s) {
  if (!touches(t->fv, s)) return t;
  switch (t->kind) {
    case TermKind::Var: {
      auto it = s.find(t->var);
      return it == s.end() ? t : it->second;
    }
    case TermKind::Num: return t;
    case TermKind::App: {
      std::vector<Term> args;
      args.reserve(t->args.size());
      for (auto& a : t->args) args.push_back(substitute(a, s));
      return app(t->fn, std::move(args));
    }
  }
  return t;
}

Formula substitute(const Formula& f, const Subst& s) {
  if (!touches(f->fv, s)) return f;
  switch (f->kind) {
    case FKind::Eq: return eq(substitute(f->args[0], s), substitute(f->args[1], s));
    case FKind::Rel: {
      std::vector<Term> args;
      for (auto& a : f->args) args.push_back(substitute(a, s));
      return rel(f->rel, std::move(args));
    }
    case FKind::Not: return neg(substitute(f->a, s));
    case FKind::And: return conj(substitute(f->a, s), substitute(f->b, s));
    case FKind::Or: return disj(substitute(f->a, s), substitute(f->b, s));
    case FKind::Imp: return imp(substitute(f->a, s), substitute(f->b, s));
    case FKind::Iff: return iff(substitute(f->a, s), substitute(f->b, s));
    case FKind::All:
    case FKind::Ex:
    case FKind::BAll:
    case FKind::BEx: {
      Term bound = f->bound ? substitute(f->bound, s) : nullptr;
      Subst inner;
      std::vector<Var> ranges;
      for (auto& kv : s) {
        if (kv.first == f->var || !contains(f->a->fv, kv.first)) continue;
        inner.emplace(kv.first, kv.second);
        ranges.insert(ranges.end(), kv.second->fv.begin(), kv.second->fv.end());
      }
      Var x = f->var;
      if (!inner.empty() && std::find(ranges.begin(), ranges.end(), x) != ranges.end()) {
        std::vector<Var> used = f->a->fv;
        used.insert(used.end(), ranges.begin(), ranges.end());
        for (auto& kv : inner) used.push_back(kv.first);
        used.push_back(x);
        Var y = fresh_var(used);
        inner[x] = var(y);
        x = y;
      }
      Formula body = inner.empty() ? f->a : substitute(f->a, inner);
      switch (f->kind) {
        case FKind::All: return all(x, body);
        case FKind::Ex: return ex(x, body);
        case FKind::BAll: return ball(x, bound, body);
        default: return bex(x, bound, body);
      }
    }
  }
  return f;
}

Term substitute(const Term& t, Var x, const Term& u) { return substitute(t, Subst{{x, u}}); }
Formula substitute(const Formula& f, Var x, const Term& u) { return substitute(f, Subst{{x, u}}); }

Formula rename_bound(const Formula& q, Var y) {
  if (!is_quantifier(q->kind)) throw std::invalid_argument("rename_bound on non-quantifier");
  if (y == q->var) return q;
  if (occurs_free(y, q->a)) throw std::invalid_argument("rename_bound: target variable occurs free");
  Formula body = substitute(q->a, q->var, var(y));
  switch (q->kind) {
    case FKind::All: return all(y, body);
    case FKind::Ex: return ex(y, body);
    case FKind::BAll: return ball(y, q->bound, body);
    default: return bex(y, q->bound, body);
  }
}

// ------------------------------------------------------------ alpha equality

namespace {

using Binders = std::vector<Var>;

long bound_index(const Binders& b, Var x) {
  for (std::size_t i = b.size(); i-- > 0;)
    if (b[i] == x) return static_cast<long>(i);
  return -1;
}

bool aeq(const Term& a, const Term& b, const Binders& ba, const Binders& bb) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TermKind::Var: {
      long ia = bound_index(ba, a->var), ib = bound_index(bb, b->var);
      if (ia != ib) return false;
      return ia >= 0 || a->var == b->var;
    }
    case TermKind::Num: return equal(a, b);
    case TermKind::App:
      if (a->fn != b->fn || a->args.size() != b->args.size()) return false;
      for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!aeq(a->args[i], b->args[i], ba, bb)) return false;
      return true;
  }
  return false;
}

bool aeq(const Formula& a, const Formula& b, Binders& ba, Binders& bb) {
  if (a.get() == b.get() && ba == bb) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case FKind::Eq:
    case FKind::Rel:
      if (a->rel != b->rel || a->args.size() != b->args.size()) return false;
      for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!aeq(a->args[i], b->args[i], ba, bb)) return false;
      return true;
    case FKind::Not: return aeq(a->a, b->a, ba, bb);
    case FKind::And:
    case FKind::Or:
    case FKind::Imp:
    case FKind::Iff: return aeq(a->a, b->a, ba, bb) && aeq(a->b, b->b, ba, bb);
    default: {
      if (a->bound && !aeq(a->bound, b->bound, ba, bb)) return false;
      ba.push_back(a->var);
      bb.push_back(b->var);
      bool r = aeq(a->a, b->a, ba, bb);
      ba.pop_back();
      bb.pop_back();
      return r;
    }
  }
}

constexpr Var kCanonBase = Var(1) << 63;

Term canon_term(const Term& t, const std::map<Var, Var>& ren) {
  Subst s;
  for (Var v : t->fv) {
    auto it = ren.find(v);
    if (it != ren.end()) s.emplace(v, var(it->second));
  }
  return s.empty() ? t : substitute(t, s);
}

Formula canon(const Formula& f, std::map<Var, Var>& ren, Var depth) {
  switch (f->kind) {
    case FKind::Eq: return eq(canon_term(f->args[0], ren), canon_term(f->args[1], ren));
    case FKind::Rel: {
      std::vector<Term> args;
      for (auto& a : f->args) args.push_back(canon_term(a, ren));
      return rel(f->rel, std::move(args));
    }
    case FKind::Not: return neg(canon(f->a, ren, depth));
    case FKind::And: return conj(canon(f->a, ren, depth), canon(f->b, ren, depth));
    case FKind::Or: return disj(canon(f->a, ren, depth), canon(f->b, ren, depth));
    case FKind::Imp: return imp(canon(f->a, ren, depth), canon(f->b, ren, depth));
    case FKind::Iff: return iff(canon(f->a, ren, depth), canon(f->b, ren, depth));
    default: {
      Term bound = f->bound ? canon_term(f->bound, ren) : nullptr;
      Var y = kCanonBase + depth;
      std::optional<Var> saved;
      if (auto it = ren.find(f->var); it != ren.end()) saved = it->second;
      ren[f->var] = y;
      Formula body = canon(f->a, ren, depth + 1);
      if (saved) ren[f->var] = *saved;
      else ren.erase(f->var);
      switch (f->kind) {
        case FKind::All: return all(y, body);
        case FKind::Ex: return ex(y, body);
        case FKind::BAll: return ball(y, bound, body);
        default: return bex(y, bound, body);
      }
    }
  }
}

}  // namespace

bool alpha_equal(const Formula& a, const Formula& b) {
  if (a.get() == b.get()) return true;
  if (a->fv != b->fv) return false;
  Binders ba, bb;
  return aeq(a, b, ba, bb);
}

Formula alpha_canonical(const Formula& f) {
  std::map<Var, Var> ren;
  return canon(f, ren, 0);
}

// --------------------------------------------------------------- desugaring

Formula desugar_top(const Formula& f) {
  if (f->kind != FKind::BAll && f->kind != FKind::BEx) return f;
  Var x = f->var;
  Formula body = f->a;
  if (occurs_free(x, f->bound)) {
    std::vector<Var> used = body->fv;
    used.insert(used.end(), f->bound->fv.begin(), f->bound->fv.end());
    used.push_back(x);
    Var y = fresh_var(used);
    body = substitute(body, x, var(y));
    x = y;
  }
  Formula guard = le(var(x), f->bound);
  return f->kind == FKind::BAll ? all(x, imp(guard, body)) : ex(x, conj(guard, body));
}

Formula desugar(const Formula& f) {
  switch (f->kind) {
    case FKind::Eq:
    case FKind::Rel: return f;
    case FKind::Not: return neg(desugar(f->a));
    case FKind::And: return conj(desugar(f->a), desugar(f->b));
    case FKind::Or: return disj(desugar(f->a), desugar(f->b));
    case FKind::Imp: return imp(desugar(f->a), desugar(f->b));
    case FKind::Iff: return iff(desugar(f->a), desugar(f->b));
    case FKind::All: return all(f->var, desugar(f->a));
    case FKind::Ex: return ex(f->var, desugar(f->a));
    default: {
      Formula d = desugar_top(f);
      // d is forall x (g -> body) or exists x (g & body)
      Formula inner = d->a;
      Formula body = desugar(inner->b);
      if (d->kind == FKind::All) return all(d->var, imp(inner->a, body));
      return ex(d->var, conj(inner->a, body));
    }
  }
}

// ----------------------------------------------------------- classification

std::string to_string(SyntacticClass c) {
  switch (c) {
    case SyntacticClass::PureDelta0: return "PureDelta0";
    case SyntacticClass::Delta0: return "Delta0";
    case SyntacticClass::PureSigma1: return "PureSigma1";
    case SyntacticClass::PureOneSigma1: return "PureOneSigma1";
    case SyntacticClass::Sigma1: return "Sigma1";
    case SyntacticClass::Other: return "Other";
  }
  return "Other";
}

namespace {

bool is_v(const Term& t) { return t->kind == TermKind::Var; }

bool arithmetic_term(const Term& t) {
  switch (t->kind) {
    case TermKind::Var:
    case TermKind::Num: return true;
    case TermKind::App:
      if (t->fn != sym::S && t->fn != sym::Add && t->fn != sym::Mul) return false;
      for (auto& a : t->args)
        if (!arithmetic_term(a)) return false;
      return true;
  }
  return false;
}

bool arithmetic_atom(const Formula& f) {
  if (f->kind == FKind::Eq) return arithmetic_term(f->args[0]) && arithmetic_term(f->args[1]);
  if (f->kind != FKind::Rel) return false;
  if (f->rel == sym::Le && f->args.size() == 2) return arithmetic_term(f->args[0]) && arithmetic_term(f->args[1]);
  if (f->rel == sym::P && f->args.size() == 1) return arithmetic_term(f->args[0]);
  return false;
}

}  // namespace

bool is_pure_atom(const Formula& f) {
  if (f->kind == FKind::Rel) {
    if (f->rel == sym::Le) return f->args.size() == 2 && is_v(f->args[0]) && is_v(f->args[1]);
    if (f->rel == sym::P) return f->args.size() == 1 && is_v(f->args[0]);
    return false;
  }
  if (f->kind != FKind::Eq) return false;
  const Term& l = f->args[0];
  const Term& r = f->args[1];
  if (!is_v(r)) return false;
  if (is_v(l)) return true;
  if (is_zero(l)) return true;
  if (l->kind != TermKind::App) return false;
  if (l->fn == sym::S) return is_v(l->args[0]);
  if (l->fn == sym::Add || l->fn == sym::Mul) return is_v(l->args[0]) && is_v(l->args[1]);
  return false;
}

bool is_pure_delta0(const Formula& f) {
  switch (f->kind) {
    case FKind::Eq:
    case FKind::Rel: return is_pure_atom(f);
    case FKind::Not: return is_pure_delta0(f->a);
    case FKind::And:
    case FKind::Or:
    case FKind::Imp:
    case FKind::Iff: return is_pure_delta0(f->a) && is_pure_delta0(f->b);
    case FKind::BAll:
    case FKind::BEx: return is_v(f->bound) && f->bound->var != f->var && is_pure_delta0(f->a);
    default: return false;
  }
}

bool is_delta0(const Formula& f) {
  switch (f->kind) {
    case FKind::Eq:
    case FKind::Rel: return arithmetic_atom(f);
    case FKind::Not: return is_delta0(f->a);
    case FKind::And:
    case FKind::Or:
    case FKind::Imp:
    case FKind::Iff: return is_delta0(f->a) && is_delta0(f->b);
    case FKind::BAll:
    case FKind::BEx: return arithmetic_term(f->bound) && is_delta0(f->a);
    default: return false;
  }
}

bool is_sigma1(const Formula& f) {
  if (is_delta0(f)) return true;
  switch (f->kind) {
    case FKind::And:
    case FKind::Or: return is_sigma1(f->a) && is_sigma1(f->b);
    case FKind::Ex: return is_sigma1(f->a);
    case FKind::BEx: return arithmetic_term(f->bound) && is_sigma1(f->a);
    default: return false;
  }
}

bool is_pure_sigma1(const Formula& f) {
  const FormulaNode* g = f.get();
  while (g->kind == FKind::Ex) g = g->a.get();
  // g is a shared subterm of f; rebuild a non-owning handle for the check
  Formula body(f, g);
  return is_pure_delta0(body);
}

bool is_pure_one_sigma1(const Formula& f) { return f->kind == FKind::Ex && is_pure_delta0(f->a); }

SyntacticClass classify(const Formula& f) {
  if (is_pure_delta0(f)) return SyntacticClass::PureDelta0;
  if (is_delta0(f)) return SyntacticClass::Delta0;
  if (is_pure_one_sigma1(f)) return SyntacticClass::PureOneSigma1;
  if (is_pure_sigma1(f)) return SyntacticClass::PureSigma1;
  if (is_sigma1(f)) return SyntacticClass::Sigma1;
  return SyntacticClass::Other;
}

bool in_class(const Formula& f, SyntacticClass c) {
  switch (c) {
    case SyntacticClass::PureDelta0: return is_pure_delta0(f);
    case SyntacticClass::Delta0: return is_delta0(f);
    case SyntacticClass::PureOneSigma1: return is_pure_one_sigma1(f);
    case SyntacticClass::PureSigma1: return is_pure_sigma1(f);
    case SyntacticClass::Sigma1: return is_sigma1(f);
    case SyntacticClass::Other: return true;
  }
  return false;
}

bool in_signature(const Term& t, const Signature& sig) {
  switch (t->kind) {
    case TermKind::Var: return true;
    case TermKind::Num:
      if (!sig.has_constant("0")) return false;
      if (is_zero(t)) return true;
      return sig.function_arity("S") == 1;
    case TermKind::App: {
      const std::string& n = sym_name(t->fn);
      if (t->args.empty()) {
        if (!sig.has_constant(n)) return false;
      } else {
        auto ar = sig.function_arity(n);
        if (!ar || *ar != static_cast<int>(t->args.size())) return false;
      }
      for (auto& a : t->args)
        if (!in_signature(a, sig)) return false;
      return true;
    }
  }
  return false;
}

bool in_signature(const Formula& f, const Signature& sig) {
  switch (f->kind) {
    case FKind::Eq: return in_signature(f->args[0], sig) && in_signature(f->args[1], sig);
    case FKind::Rel: {
      auto ar = sig.relation_arity(sym_name(f->rel));
      if (!ar || *ar != static_cast<int>(f->args.size())) return false;
      for (auto& a : f->args)
        if (!in_signature(a, sig)) return false;
      return true;
    }
    default:
      if (f->bound && !in_signature(f->bound, sig)) return false;
      if (f->a && !in_signature(f->a, sig)) return false;
      if (f->b && !in_signature(f->b, sig)) return false;
      return true;
  }
}

std::vector<Formula> id_axioms(const Signature& sig) {
  Var x = var_named("x"), y = var_named("y"), z = var_named("z");
  std::vector<Formula> out;
  out.push_back(all(x, eq(var(x), var(x))));
  out.push_back(all(x, all(y, imp(eq(var(x), var(y)), eq(var(y), var(x))))));
  out.push_back(all(x, all(y, all(z, imp(conj(eq(var(x), var(y)), eq(var(y), var(z))), eq(var(x), var(z)))))));
  auto vars_for = [](int n, std::vector<Var>& xs, std::vector<Var>& ys) {
    for (int i = 1; i <= n; ++i) {
      xs.push_back(var_named("x" + std::to_string(i)));
      ys.push_back(var_named("y" + std::to_string(i)));
    }
  };
  auto build = [](int n, const std::vector<Var>& xs, const std::vector<Var>& ys, const Formula& concl) {
    std::vector<Formula> eqs;
    for (int i = 0; i < n; ++i) eqs.push_back(eq(var(xs[i]), var(ys[i])));
    Formula body = eqs.empty() ? concl : imp(conj_list(eqs), concl);
    std::vector<Var> bound = xs;
    bound.insert(bound.end(), ys.begin(), ys.end());
    return all_list(bound, body);
  };
  for (auto& [name, n] : sig.functions) {
    std::vector<Var> xs, ys;
    vars_for(n, xs, ys);
    std::vector<Term> ax, ay;
    for (int i = 0; i < n; ++i) {
      ax.push_back(var(xs[i]));
      ay.push_back(var(ys[i]));
    }
    Sym f = intern(name);
    out.push_back(build(n, xs, ys, eq(app(f, ax), app(f, ay))));
  }
  for (auto& [name, n] : sig.relations) {
    std::vector<Var> xs, ys;
    vars_for(n, xs, ys);
    std::vector<Term> ax, ay;
    for (int i = 0; i < n; ++i) {
      ax.push_back(var(xs[i]));
      ay.push_back(var(ys[i]));
    }
    Sym r = intern(name);
    out.push_back(build(n, xs, ys, imp(rel(r, ax), rel(r, ay))));
  }
  return out;
}

}  // namespace wa
