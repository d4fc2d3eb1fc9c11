#include "wa/models.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wa/certificates.hpp"

namespace wa {

// ---------------------------------------------------------------- structure

namespace {

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

Structure::Structure(Signature s, int n) : sig(std::move(s)), size(n) {
  if (n < 1) throw EvalError("structure size must be positive");
  constants.assign(sig.constants.size(), -1);
  for (auto& [name, ar] : sig.functions) functions.emplace_back(ipow(n, ar), -1);
  for (auto& [name, ar] : sig.relations) relations.emplace_back(ipow(n, ar), -1);
}

bool Structure::complete() const {
  for (int c : constants)
    if (c < 0) return false;
  for (auto& t : functions)
    for (int c : t)
      if (c < 0) return false;
  for (auto& t : relations)
    for (auto c : t)
      if (c < 0) return false;
  return true;
}

void Structure::validate() const {
  if (size < 1) throw EvalError("structure size must be positive");
  if (constants.size() != sig.constants.size() || functions.size() != sig.functions.size() ||
      relations.size() != sig.relations.size())
    throw EvalError("structure tables do not match signature " + sig.name);
  for (int c : constants)
    if (c < 0 || c >= size) throw EvalError("constant out of range");
  for (std::size_t i = 0; i < functions.size(); ++i) {
    if (functions[i].size() != ipow(size, sig.functions[i].second))
      throw EvalError("table for " + sig.functions[i].first + " has wrong length");
    for (int c : functions[i])
      if (c < 0 || c >= size) throw EvalError("value out of range in table for " + sig.functions[i].first);
  }
  for (std::size_t i = 0; i < relations.size(); ++i) {
    if (relations[i].size() != ipow(size, sig.relations[i].second))
      throw EvalError("table for " + sig.relations[i].first + " has wrong length");
    for (auto c : relations[i])
      if (c != 0 && c != 1) throw EvalError("relation entry must be 0 or 1");
  }
}

void Structure::build_index() const {
  if (!fn_by_sym_.empty() || !rel_by_sym_.empty() || !const_by_sym_.empty()) return;
  auto fill = [](std::vector<int>& v, const std::vector<std::pair<std::string, int>>& syms) {
    for (std::size_t i = 0; i < syms.size(); ++i) {
      Sym s = intern(syms[i].first);
      if (v.size() <= s) v.resize(s + 1, -1);
      v[s] = static_cast<int>(i);
    }
    if (v.empty()) v.push_back(-1);
  };
  fill(fn_by_sym_, sig.functions);
  fill(rel_by_sym_, sig.relations);
  fill(const_by_sym_, sig.constants);
}

int Structure::function_index(Sym f) const {
  build_index();
  return f < fn_by_sym_.size() ? fn_by_sym_[f] : -1;
}
int Structure::relation_index(Sym r) const {
  build_index();
  return r < rel_by_sym_.size() ? rel_by_sym_[r] : -1;
}
int Structure::constant_index(Sym c) const {
  build_index();
  return c < const_by_sym_.size() ? const_by_sym_[c] : -1;
}

int Structure::numeral_value(const Nat& n) const {
  int zi = constant_index(intern("0"));
  int si = function_index(sym::S);
  if (zi < 0 || (n > 0 && si < 0)) throw EvalError("numerals need 0 and S in signature " + sig.name);
  int x = constants[zi];
  if (x < 0) return -1;
  // walk until a repeat, then jump using the period
  std::vector<int> seen(size, -1);
  std::uint64_t steps = 0;
  Nat remaining = n;
  while (remaining > 0) {
    if (seen[x] >= 0) {
      std::uint64_t period = steps - static_cast<std::uint64_t>(seen[x]);
      Nat r = remaining % period;
      std::uint64_t left = r.convert_to<std::uint64_t>();
      for (std::uint64_t i = 0; i < left; ++i) {
        x = functions[si][x];
        if (x < 0) return -1;
      }
      return x;
    }
    seen[x] = static_cast<int>(steps);
    x = functions[si][x];
    if (x < 0) return -1;
    ++steps;
    remaining -= 1;
  }
  return x;
}

bool operator==(const Structure& a, const Structure& b) {
  return a.sig.name == b.sig.name && a.size == b.size && a.constants == b.constants && a.functions == b.functions &&
         a.relations == b.relations;
}

std::string to_string(Truth t) {
  switch (t) {
    case Truth::True: return "true";
    case Truth::False: return "false";
    default: return "unknown";
  }
}

// --------------------------------------------------------------- evaluation

namespace {

constexpr int kUnknown = -1;

struct Evaluator {
  const Structure& M;
  std::vector<std::pair<Var, int>> env;
  std::pair<int, int> need{-1, -1};
  int const_tables, fn_tables;

  explicit Evaluator(const Structure& m)
      : M(m), const_tables(1), fn_tables(static_cast<int>(m.functions.size())) {}

  void note(int table, int cell) {
    if (need.first < 0) need = {table, cell};
  }

  int lookup(Var x) const {
    for (auto it = env.rbegin(); it != env.rend(); ++it)
      if (it->first == x) return it->second;
    throw EvalError("unassigned free variable " + var_name(x));
  }

  int term(const Term& t) {
    switch (t->kind) {
      case TermKind::Var: return lookup(t->var);
      case TermKind::Num: {
        if (is_zero(t)) {
          int ci = M.constant_index(intern("0"));
          if (ci < 0) throw EvalError("symbol 0 not in signature " + M.sig.name);
          if (M.constants[ci] < 0) note(0, ci);
          return M.constants[ci];
        }
        int v = M.numeral_value(t->value());
        if (v < 0) {
          // find the undetermined cell on the walk
          int ci = M.constant_index(intern("0"));
          int si = M.function_index(sym::S);
          int x = M.constants[ci];
          if (x < 0) {
            note(0, ci);
          } else {
            while (M.functions[si][x] >= 0) x = M.functions[si][x];
            note(1 + si, x);
          }
        }
        return v;
      }
      case TermKind::App: {
        if (t->args.empty()) {
          int ci = M.constant_index(t->fn);
          if (ci < 0) throw EvalError("symbol " + sym_name(t->fn) + " not in signature " + M.sig.name);
          if (M.constants[ci] < 0) note(0, ci);
          return M.constants[ci];
        }
        int fi = M.function_index(t->fn);
        if (fi < 0 || M.sig.functions[fi].second != static_cast<int>(t->args.size()))
          throw EvalError("symbol " + sym_name(t->fn) + " not in signature " + M.sig.name);
        int cell = 0;
        for (auto& a : t->args) {
          int v = term(a);
          if (v < 0) return kUnknown;
          cell = cell * M.size + v;
        }
        int r = M.functions[fi][cell];
        if (r < 0) note(1 + fi, cell);
        return r;
      }
    }
    return kUnknown;
  }

  Truth relation(Sym r, const std::vector<Term>& args) {
    int ri = M.relation_index(r);
    if (ri < 0 || M.sig.relations[ri].second != static_cast<int>(args.size()))
      throw EvalError("relation " + sym_name(r) + " not in signature " + M.sig.name);
    int cell = 0;
    bool unknown = false;
    for (auto& a : args) {
      int v = term(a);
      if (v < 0) unknown = true;
      cell = cell * M.size + std::max(v, 0);
    }
    if (unknown) return Truth::Unknown;
    auto b = M.relations[ri][cell];
    if (b < 0) {
      note(1 + fn_tables + ri, cell);
      return Truth::Unknown;
    }
    return b ? Truth::True : Truth::False;
  }

  Truth le_values(int x, int y) {
    int ri = M.relation_index(sym::Le);
    if (ri < 0) throw EvalError("bounded quantifier needs <= in signature " + M.sig.name);
    int cell = x * M.size + y;
    auto b = M.relations[ri][cell];
    if (b < 0) {
      note(1 + fn_tables + ri, cell);
      return Truth::Unknown;
    }
    return b ? Truth::True : Truth::False;
  }

  static Truth neg3(Truth t) { return t == Truth::Unknown ? t : (t == Truth::True ? Truth::False : Truth::True); }

  Truth formula(const Formula& f) {
    switch (f->kind) {
      case FKind::Eq: {
        int a = term(f->args[0]);
        int b = term(f->args[1]);
        if (a < 0 || b < 0) return Truth::Unknown;
        return a == b ? Truth::True : Truth::False;
      }
      case FKind::Rel: return relation(f->rel, f->args);
      case FKind::Not: return neg3(formula(f->a));
      case FKind::And: {
        Truth a = formula(f->a);
        if (a == Truth::False) return a;
        Truth b = formula(f->b);
        if (b == Truth::False) return b;
        return (a == Truth::True && b == Truth::True) ? Truth::True : Truth::Unknown;
      }
      case FKind::Or: {
        Truth a = formula(f->a);
        if (a == Truth::True) return a;
        Truth b = formula(f->b);
        if (b == Truth::True) return b;
        return (a == Truth::False && b == Truth::False) ? Truth::False : Truth::Unknown;
      }
      case FKind::Imp: {
        Truth a = formula(f->a);
        if (a == Truth::False) return Truth::True;
        Truth b = formula(f->b);
        if (b == Truth::True) return b;
        return (a == Truth::True && b == Truth::False) ? Truth::False : Truth::Unknown;
      }
      case FKind::Iff: {
        Truth a = formula(f->a);
        Truth b = formula(f->b);
        if (a == Truth::Unknown || b == Truth::Unknown) return Truth::Unknown;
        return a == b ? Truth::True : Truth::False;
      }
      case FKind::Ex:
      case FKind::BEx:
        if (f->a->kind == FKind::Ex || f->a->kind == FKind::BEx) {
          Truth r;
          if (exists_block(f, &r)) return r;
        }
        [[fallthrough]];
      case FKind::All:
      case FKind::BAll: {
        bool universal = f->kind == FKind::All || f->kind == FKind::BAll;
        bool bounded = f->bound != nullptr;
        int bv = 0;
        if (bounded) {
          bv = term(f->bound);
          if (bv < 0) return Truth::Unknown;
        }
        bool unknown = false;
        env.emplace_back(f->var, 0);
        for (int d = 0; d < M.size; ++d) {
          env.back().second = d;
          Truth guard = bounded ? le_values(d, bv) : Truth::True;
          if (guard == Truth::False) continue;
          Truth body = formula(f->a);
          // forall: guard -> body; exists: guard & body
          Truth r;
          if (universal) {
            r = body == Truth::True ? Truth::True
                                    : (guard == Truth::True && body == Truth::False ? Truth::False : Truth::Unknown);
            if (r == Truth::False) {
              env.pop_back();
              return r;
            }
          } else {
            r = body == Truth::False ? Truth::False
                                     : (guard == Truth::True && body == Truth::True ? Truth::True : Truth::Unknown);
            if (r == Truth::True) {
              env.pop_back();
              return r;
            }
          }
          if (r == Truth::Unknown) unknown = true;
        }
        env.pop_back();
        if (unknown) return Truth::Unknown;
        return universal ? Truth::True : Truth::False;
      }
    }
    return Truth::Unknown;
  }

  // A chain of existentials over a conjunction is solved as one block:
  // conjuncts are checked as soon as their variables are set, and a variable
  // equated to an already computable term is set to that value directly.
  struct Block {
    std::vector<Var> vars;
    std::vector<Term> bounds;          // null for unbounded
    std::vector<std::vector<int>> bound_deps;
    std::vector<Formula> parts;
    std::vector<std::vector<int>> deps;  // block variables free in each part
    std::vector<int> value;
  };

  static void split_conj(const Formula& f, std::vector<Formula>& out) {
    if (f->kind == FKind::And) {
      split_conj(f->a, out);
      split_conj(f->b, out);
    } else {
      out.push_back(f);
    }
  }

  bool exists_block(const Formula& f, Truth* result) {
    Block b;
    Formula g = f;
    while (g->kind == FKind::Ex || g->kind == FKind::BEx) {
      if (std::find(b.vars.begin(), b.vars.end(), g->var) != b.vars.end()) return false;
      b.vars.push_back(g->var);
      b.bounds.push_back(g->bound);
      g = g->a;
    }
    split_conj(g, b.parts);
    auto deps_of = [&](const std::vector<Var>& fv) {
      std::vector<int> d;
      for (std::size_t i = 0; i < b.vars.size(); ++i)
        if (std::binary_search(fv.begin(), fv.end(), b.vars[i])) d.push_back(static_cast<int>(i));
      return d;
    };
    for (auto& t : b.bounds) b.bound_deps.push_back(t ? deps_of(t->fv) : std::vector<int>{});
    for (auto& p : b.parts) b.deps.push_back(deps_of(p->fv));
    b.value.assign(b.vars.size(), -1);
    std::size_t base = env.size();
    for (Var v : b.vars) env.emplace_back(v, 0);
    *result = solve(b, base);
    env.resize(base);
    return true;
  }

  bool ready(const Block& b, const std::vector<int>& d) const {
    for (int i : d)
      if (b.value[i] < 0) return false;
    return true;
  }

  // Sets block variable i (its env slot is base + i) and returns the guard truth.
  Truth place(Block& b, std::size_t base, int i, int d) {
    b.value[i] = d;
    env[base + i].second = d;
    if (!b.bounds[i]) return Truth::True;
    int bv = term(b.bounds[i]);
    if (bv < 0) return Truth::Unknown;
    return le_values(d, bv);
  }

  Truth solve(Block& b, std::size_t base) {
    bool unknown = false;
    for (std::size_t k = 0; k < b.parts.size(); ++k) {
      if (!ready(b, b.deps[k])) continue;
      Truth t = formula(b.parts[k]);
      if (t == Truth::False) return t;
      if (t == Truth::Unknown) unknown = true;
    }
    int pick = -1;
    for (std::size_t i = 0; i < b.vars.size(); ++i) {
      if (b.value[i] >= 0 || !ready(b, b.bound_deps[i])) continue;
      for (std::size_t k = 0; k < b.parts.size(); ++k) {
        const Formula& p = b.parts[k];
        if (p->kind != FKind::Eq) continue;
        for (int side = 0; side < 2; ++side) {
          const Term& lhs = p->args[side];
          const Term& rhs = p->args[1 - side];
          if (lhs->kind != TermKind::Var || lhs->var != b.vars[i]) continue;
          bool ok = true;
          for (int j : b.deps[k])
            if (j != static_cast<int>(i) && b.value[j] < 0) ok = false;
          if (!ok || occurs_free(b.vars[i], rhs)) continue;
          int w = term(rhs);
          if (w < 0) continue;
          // every other value falsifies this conjunct
          Truth guard = place(b, base, static_cast<int>(i), w);
          Truth r = guard == Truth::False ? Truth::False : solve(b, base);
          b.value[i] = -1;
          if (r == Truth::True && guard == Truth::Unknown) r = Truth::Unknown;
          return r;
        }
      }
      if (pick < 0) pick = static_cast<int>(i);
    }
    if (pick < 0) {
      for (int v : b.value)
        if (v < 0) throw EvalError("bound of an existential depends on a later variable");
      return unknown ? Truth::Unknown : Truth::True;
    }
    bool any_unknown = false;
    for (int d = 0; d < M.size; ++d) {
      Truth guard = place(b, base, pick, d);
      if (guard == Truth::False) continue;
      Truth r = solve(b, base);
      if (r == Truth::True && guard == Truth::True) {
        b.value[pick] = -1;
        return r;
      }
      if (r != Truth::False) any_unknown = true;
    }
    b.value[pick] = -1;
    return any_unknown ? Truth::Unknown : Truth::False;
  }

};

void check_assignment(const Structure& M, const Assignment& a) {
  for (auto& [x, v] : a)
    if (v < 0 || v >= M.size) throw EvalError("assignment to " + var_name(x) + " out of range");
}

}  // namespace

bool evaluate(const Structure& M, const Formula& f, const Assignment& a) {
  check_assignment(M, a);
  Evaluator ev(M);
  ev.env.assign(a.begin(), a.end());
  Truth t = ev.formula(f);
  if (t == Truth::Unknown) throw EvalError("structure is not fully determined");
  return t == Truth::True;
}

int evaluate(const Structure& M, const Term& t, const Assignment& a) {
  check_assignment(M, a);
  Evaluator ev(M);
  ev.env.assign(a.begin(), a.end());
  int v = ev.term(t);
  if (v < 0) throw EvalError("structure is not fully determined");
  return v;
}

Truth evaluate_partial(const Structure& M, const Formula& f, const Assignment& a, std::pair<int, int>* need) {
  check_assignment(M, a);
  Evaluator ev(M);
  ev.env.assign(a.begin(), a.end());
  Truth t = ev.formula(f);
  if (need) *need = ev.need;
  return t;
}

// ------------------------------------------------------------ fixed models

namespace {

Structure arithmetic_model(int K, bool clip) {
  if (K < 1) throw EvalError("model bound must be at least 1");
  int n = K + 1;
  Structure M(Signature::La(), n);
  int zi = M.constant_index(intern("0"));
  M.constants[zi] = 0;
  int si = M.function_index(sym::S), ai = M.function_index(sym::Add), mi = M.function_index(sym::Mul);
  int li = M.relation_index(sym::Le);
  auto fold = [&](long long v) { return clip ? static_cast<int>(std::min<long long>(v, K)) : static_cast<int>(v % n); };
  for (int x = 0; x < n; ++x) {
    M.functions[si][x] = fold(x + 1);
    for (int y = 0; y < n; ++y) {
      M.functions[ai][x * n + y] = fold(static_cast<long long>(x) + y);
      M.functions[mi][x * n + y] = fold(static_cast<long long>(x) * y);
      M.relations[li][x * n + y] = x <= y;
    }
  }
  return M;
}

}  // namespace

Structure clipped_model(int K) { return arithmetic_model(K, true); }
Structure wraparound_model(int K) { return arithmetic_model(K, false); }

// ------------------------------------------------------------ text format

std::string to_text(const Structure& M) {
  std::ostringstream out;
  out << "structure " << M.sig.name << " " << M.size << "\n";
  for (std::size_t i = 0; i < M.constants.size(); ++i) out << "const " << M.sig.constants[i].first << " " << M.constants[i] << "\n";
  for (std::size_t i = 0; i < M.functions.size(); ++i) {
    out << "func " << M.sig.functions[i].first;
    for (int v : M.functions[i]) out << " " << v;
    out << "\n";
  }
  for (std::size_t i = 0; i < M.relations.size(); ++i) {
    out << "rel " << M.sig.relations[i].first << " ";
    for (auto v : M.relations[i]) out << (v < 0 ? '?' : static_cast<char>('0' + v));
    out << "\n";
  }
  return out.str();
}

Structure structure_from_text(const std::string& text, const Signature& sig) {
  std::istringstream in(text);
  std::string word, name;
  int size = 0;
  if (!(in >> word >> name >> size) || word != "structure") throw EvalError("expected 'structure <name> <size>' header");
  if (name != sig.name) throw EvalError("structure signature " + name + " does not match " + sig.name);
  Structure M(sig, size);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string kind, sname;
    if (!(ls >> kind)) continue;
    if (!(ls >> sname)) throw EvalError("missing symbol name in line: " + line);
    if (kind == "const") {
      int idx = M.constant_index(intern(sname));
      if (idx < 0) throw EvalError("unknown constant " + sname);
      ls >> M.constants[idx];
    } else if (kind == "func") {
      int idx = M.function_index(intern(sname));
      if (idx < 0) throw EvalError("unknown function " + sname);
      for (auto& v : M.functions[idx])
        if (!(ls >> v)) throw EvalError("short table for " + sname);
    } else if (kind == "rel") {
      int idx = M.relation_index(intern(sname));
      if (idx < 0) throw EvalError("unknown relation " + sname);
      std::string bits;
      ls >> bits;
      if (bits.size() != M.relations[idx].size()) throw EvalError("wrong table length for " + sname);
      for (std::size_t i = 0; i < bits.size(); ++i) M.relations[idx][i] = bits[i] == '1' ? 1 : bits[i] == '0' ? 0 : -2;
    } else {
      throw EvalError("unknown record kind " + kind);
    }
  }
  M.validate();
  return M;
}

// ----------------------------------------------------------------- search

namespace {

struct Cell {
  int table;  // 0 constants, then functions, then relations
  int index;
};

std::vector<Cell> all_cells(const Structure& M) {
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < M.constants.size(); ++i) cells.push_back({0, static_cast<int>(i)});
  for (std::size_t t = 0; t < M.functions.size(); ++t)
    for (std::size_t i = 0; i < M.functions[t].size(); ++i) cells.push_back({1 + static_cast<int>(t), static_cast<int>(i)});
  int base = 1 + static_cast<int>(M.functions.size());
  for (std::size_t t = 0; t < M.relations.size(); ++t)
    for (std::size_t i = 0; i < M.relations[t].size(); ++i) cells.push_back({base + static_cast<int>(t), static_cast<int>(i)});
  return cells;
}

int cell_get(const Structure& M, int table, int index) {
  if (table == 0) return M.constants[index];
  int nf = static_cast<int>(M.functions.size());
  if (table <= nf) return M.functions[table - 1][index];
  return M.relations[table - 1 - nf][index];
}

void cell_set(Structure& M, int table, int index, int v) {
  if (table == 0) {
    M.constants[index] = v;
    return;
  }
  int nf = static_cast<int>(M.functions.size());
  if (table <= nf) {
    M.functions[table - 1][index] = v;
    return;
  }
  M.relations[table - 1 - nf][index] = static_cast<std::int8_t>(v);
}

int cell_range(const Structure& M, int table) {
  int nf = static_cast<int>(M.functions.size());
  return table <= nf ? M.size : 2;
}

Truth all_filters(const Structure& M, const std::vector<Formula>& filters, const Assignment& a,
                  std::pair<int, int>* need) {
  Truth acc = Truth::True;
  for (auto& f : filters) {
    std::pair<int, int> nd{-1, -1};
    Truth t = evaluate_partial(M, f, a, &nd);
    if (t == Truth::False) return t;
    if (t == Truth::Unknown && acc == Truth::True) {
      acc = Truth::Unknown;
      if (need) *need = nd;
    }
  }
  return acc;
}

void check_filters(const Signature& sig, const std::vector<Formula>& filters, const Assignment& a) {
  for (auto& f : filters) {
    if (!in_signature(f, sig)) throw EvalError("filter sentence is not over signature " + sig.name);
    for (Var x : free_vars(f))
      if (!a.count(x)) throw EvalError("filter has unassigned free variable " + var_name(x));
  }
}

}  // namespace

std::size_t enumerate_structures(const Signature& sig, int size, const std::vector<Formula>& filters,
                                 const std::function<bool(const Structure&)>& yield, const SearchOptions& opt) {
  check_filters(sig, filters, opt.assignment);
  Structure M(sig, size);
  auto cells = all_cells(M);
  double space = 1;
  for (auto& c : cells) space *= cell_range(M, c.table);
  if (space > opt.exhaustive_budget)
    throw EvalError("structure space of size " + std::to_string(size) + " exceeds the enumeration budget");
  for (auto& c : cells) cell_set(M, c.table, c.index, 0);
  std::size_t count = 0;
  for (;;) {
    bool ok = true;
    for (auto& f : filters)
      if (!evaluate(M, f, opt.assignment)) {
        ok = false;
        break;
      }
    if (ok) {
      ++count;
      if (!yield(M)) return count;
    }
    // odometer, last cell fastest
    std::size_t i = cells.size();
    while (i > 0) {
      --i;
      int v = cell_get(M, cells[i].table, cells[i].index) + 1;
      if (v < cell_range(M, cells[i].table)) {
        cell_set(M, cells[i].table, cells[i].index, v);
        break;
      }
      cell_set(M, cells[i].table, cells[i].index, 0);
      if (i == 0) return count;
    }
    if (cells.empty()) return count;
  }
}

std::size_t search_models(const Signature& sig, int size, const std::vector<Formula>& filters,
                          const std::function<bool(const Structure&)>& yield, const SearchOptions& opt) {
  check_filters(sig, filters, opt.assignment);
  Structure M(sig, size);
  if (opt.fix_first_constant && !M.constants.empty()) M.constants[0] = 0;
  std::size_t count = 0;
  bool stop = false;
  std::function<void()> dfs = [&]() {
    std::pair<int, int> need{-1, -1};
    Truth t = all_filters(M, filters, opt.assignment, &need);
    if (t == Truth::False) return;
    if (t == Truth::True) {
      Structure full = M;
      for (auto& c : all_cells(full))
        if (cell_get(full, c.table, c.index) < 0) cell_set(full, c.table, c.index, 0);
      ++count;
      if (!yield(full)) stop = true;
      return;
    }
    if (need.first < 0) throw EvalError("search stalled without an undetermined cell");
    int range = cell_range(M, need.first);
    for (int v = 0; v < range && !stop; ++v) {
      cell_set(M, need.first, need.second, v);
      dfs();
    }
    cell_set(M, need.first, need.second, -1);
  };
  dfs();
  return count;
}

std::optional<Structure> find_model(const Signature& sig, int size, const std::vector<Formula>& filters,
                                    const SearchOptions& opt) {
  std::optional<Structure> out;
  search_models(sig, size, filters, [&](const Structure& M) {
    out = M;
    return false;
  }, opt);
  return out;
}

// ----------------------------------------------------------------- dagger

Formula dagger_formula(Var v, int k) {
  std::vector<Formula> parts{cert_formula(v)};
  for (int m = 0; m < k; ++m) parts.push_back(neg(eq(numeral(std::uint64_t(m)), var(v))));
  return conj_list(parts);
}

bool check_dagger(const Structure& M, int v, int k) {
  Var x = var_named("v");
  if (!evaluate(M, cert_formula(x), {{x, v}})) return false;
  for (int m = 0; m < k; ++m)
    if (M.numeral_value(Nat(m)) == v) return false;
  return true;
}

}  // namespace wa
