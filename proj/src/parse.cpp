#include "wa/parse.hpp"

#include <cctype>
#include <sstream>

namespace wa {

namespace {

enum class Tok { Ident, Number, LParen, RParen, Comma, Not, And, Or, Imp, Iff, Le, Eq, Plus, Times, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' || s[i] == '\'')) ++i;
      out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back({Tok::Number, std::string(s.substr(start, i - start)), start});
      continue;
    }
    auto two = s.substr(i, 2);
    auto three = s.substr(i, 3);
    if (three == "<->") {
      out.push_back({Tok::Iff, "<->", start});
      i += 3;
    } else if (two == "->") {
      out.push_back({Tok::Imp, "->", start});
      i += 2;
    } else if (two == "<=") {
      out.push_back({Tok::Le, "<=", start});
      i += 2;
    } else {
      Tok k;
      switch (c) {
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        case ',': k = Tok::Comma; break;
        case '~': k = Tok::Not; break;
        case '&': k = Tok::And; break;
        case '|': k = Tok::Or; break;
        case '=': k = Tok::Eq; break;
        case '+': k = Tok::Plus; break;
        case '*': k = Tok::Times; break;
        default: throw SyntaxError(std::string("unexpected character '") + c + "'", i);
      }
      out.push_back({k, std::string(1, c), start});
      ++i;
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, const Signature& sig) : toks_(lex(text)), sig_(sig) {}

  Formula formula_eof() {
    Formula f = parse_iff();
    expect(Tok::End, "end of input");
    return f;
  }

  Term term_eof() {
    Term t = parse_sum();
    expect(Tok::End, "end of input");
    return t;
  }

 private:
  std::vector<Token> toks_;
  const Signature& sig_;
  bool in_bound_ = false;
  std::size_t p_ = 0;

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(p_ + k, toks_.size() - 1)]; }
  bool at(Tok k) const { return peek().kind == k; }
  const Token& next() { return toks_[p_ < toks_.size() - 1 ? p_++ : p_]; }
  void expect(Tok k, const char* what) {
    if (!at(k)) {
      const Token& t = peek();
      throw SyntaxError(std::string("expected ") + what + (t.kind == Tok::End ? " but input ended" : " near '" + t.text + "'"),
                        t.pos);
    }
    next();
  }

  Formula parse_iff() {
    Formula f = parse_imp();
    if (at(Tok::Iff)) {
      next();
      return iff(f, parse_iff());
    }
    return f;
  }
  Formula parse_imp() {
    Formula f = parse_or();
    if (at(Tok::Imp)) {
      next();
      return imp(f, parse_imp());
    }
    return f;
  }
  Formula parse_or() {
    Formula f = parse_and();
    if (at(Tok::Or)) {
      next();
      return disj(f, parse_or());
    }
    return f;
  }
  Formula parse_and() {
    Formula f = parse_unary();
    if (at(Tok::And)) {
      next();
      return conj(f, parse_and());
    }
    return f;
  }

  Var binder_name() {
    const Token& t = peek();
    if (t.kind != Tok::Ident) throw SyntaxError("expected variable after quantifier", t.pos);
    if (sig_.has_symbol(t.text)) throw SyntaxError("signature symbol '" + t.text + "' used as variable", t.pos);
    try {
      Var v = var_named(t.text);
      next();
      return v;
    } catch (const std::invalid_argument& e) {
      throw SyntaxError(e.what(), t.pos);
    }
  }

  Formula parse_unary() {
    const Token& t = peek();
    if (t.kind == Tok::Not) {
      next();
      return neg(parse_unary());
    }
    if (t.kind == Tok::Ident && (t.text == "forall" || t.text == "exists")) {
      bool universal = t.text == "forall";
      next();
      Var x = binder_name();
      if (at(Tok::Le)) {
        next();
        in_bound_ = true;
        Term bound = parse_sum();
        in_bound_ = false;
        Formula body = parse_unary();
        return universal ? ball(x, bound, body) : bex(x, bound, body);
      }
      Formula body = parse_unary();
      return universal ? all(x, body) : ex(x, body);
    }
    if (t.kind == Tok::LParen) {
      std::size_t save = p_;
      try {
        return parse_atom();
      } catch (const SyntaxError&) {
        p_ = save;
      }
      next();
      Formula f = parse_iff();
      expect(Tok::RParen, "')'");
      return f;
    }
    return parse_atom();
  }

  Formula parse_atom() {
    const Token& t = peek();
    if (t.kind == Tok::Ident) {
      if (auto ar = sig_.relation_arity(t.text)) {
        std::size_t pos = t.pos;
        Sym r = intern(t.text);
        next();
        std::vector<Term> args;
        if (*ar > 0 || at(Tok::LParen)) args = parse_args();
        if (static_cast<int>(args.size()) != *ar)
          throw SyntaxError("arity mismatch for relation " + sym_name(r), pos);
        return rel(r, std::move(args));
      }
    }
    Term l = parse_sum();
    const Token& op = peek();
    if (op.kind == Tok::Eq) {
      next();
      return eq(l, parse_sum());
    }
    if (op.kind == Tok::Le) {
      next();
      return le(l, parse_sum());
    }
    throw SyntaxError(op.kind == Tok::End ? "a term is not a formula" : "expected '=' or '<=' near '" + op.text + "'",
                      op.pos);
  }

  std::vector<Term> parse_args() {
    expect(Tok::LParen, "'('");
    std::vector<Term> args;
    if (!at(Tok::RParen)) {
      args.push_back(parse_sum());
      while (at(Tok::Comma)) {
        next();
        args.push_back(parse_sum());
      }
    }
    expect(Tok::RParen, "')'");
    return args;
  }

  Term parse_sum() {
    Term t = parse_prod();
    while (at(Tok::Plus)) {
      next();
      t = add(t, parse_prod());
    }
    return t;
  }

  Term parse_prod() {
    Term t = parse_pre();
    while (at(Tok::Times)) {
      next();
      t = mul(t, parse_pre());
    }
    return t;
  }

  Term parse_pre() {
    const Token& t = peek();
    if (t.kind == Tok::Ident && t.text == "S") {
      next();
      return succ(parse_pre());
    }
    return parse_primary();
  }

  Term parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number: {
        next();
        if (t.text == "0") return zero();
        if (!sig_.has_constant("0") || !sig_.function_arity("S"))
          throw SyntaxError("numeral outside arithmetic signature", t.pos);
        return num(Nat(t.text));
      }
      case Tok::LParen: {
        next();
        Term u = parse_sum();
        expect(Tok::RParen, "')'");
        return u;
      }
      case Tok::Ident: {
        std::size_t pos = t.pos;
        std::string name = t.text;
        next();
        if (auto ar = sig_.function_arity(name)) {
          auto args = parse_args();
          if (static_cast<int>(args.size()) != *ar) throw SyntaxError("arity mismatch for function " + name, pos);
          return app(intern(name), std::move(args));
        }
        if (sig_.has_constant(name)) return constant(intern(name));
        // in "forall x <= y (...)" the parenthesis opens the body
        if (at(Tok::LParen) && !in_bound_) throw SyntaxError("unknown symbol '" + name + "'", pos);
        if (sig_.relation_arity(name)) throw SyntaxError("relation symbol '" + name + "' used as a term", pos);
        try {
          return var(var_named(name));
        } catch (const std::invalid_argument& e) {
          throw SyntaxError(e.what(), pos);
        }
      }
      default:
        throw SyntaxError(t.kind == Tok::End ? "unexpected end of input" : "unexpected '" + t.text + "'", t.pos);
    }
  }
};

enum Prec { kSum = 0, kProd = 1, kPre = 2 };

void render_term(const Term& t, int ctx, std::string& out) {
  switch (t->kind) {
    case TermKind::Var: out += var_name(t->var); return;
    case TermKind::Num:
      if (t->is_small() && t->small <= kMaxUnaryNumeral) {
        for (std::uint64_t i = 0; i < t->small; ++i) out += "S ";
        out += "0";
      } else {
        out += t->value().str();
      }
      return;
    case TermKind::App: {
      if (t->fn == sym::S) {
        out += "S ";
        render_term(t->args[0], kPre, out);
        return;
      }
      if (t->fn == sym::Add || t->fn == sym::Mul) {
        int mine = t->fn == sym::Add ? kSum : kProd;
        bool paren = ctx > mine;
        if (paren) out += "(";
        render_term(t->args[0], mine, out);
        out += t->fn == sym::Add ? " + " : " * ";
        render_term(t->args[1], mine + 1, out);
        if (paren) out += ")";
        return;
      }
      out += sym_name(t->fn);
      if (!t->args.empty()) {
        out += "(";
        for (std::size_t i = 0; i < t->args.size(); ++i) {
          if (i) out += ", ";
          render_term(t->args[i], kSum, out);
        }
        out += ")";
      }
      return;
    }
  }
}

const char* op_text(FKind k) {
  switch (k) {
    case FKind::And: return " & ";
    case FKind::Or: return " | ";
    case FKind::Imp: return " -> ";
    default: return " <-> ";
  }
}

void render_formula(const Formula& f, bool top, std::string& out) {
  switch (f->kind) {
    case FKind::Eq:
      render_term(f->args[0], kSum, out);
      out += " = ";
      render_term(f->args[1], kSum, out);
      return;
    case FKind::Rel:
      if (f->rel == sym::Le && f->args.size() == 2) {
        render_term(f->args[0], kSum, out);
        out += " <= ";
        render_term(f->args[1], kSum, out);
        return;
      }
      out += sym_name(f->rel);
      if (!f->args.empty()) {
        out += "(";
        for (std::size_t i = 0; i < f->args.size(); ++i) {
          if (i) out += ", ";
          render_term(f->args[i], kSum, out);
        }
        out += ")";
      }
      return;
    case FKind::Not:
      out += "~";
      if (is_atomic(f->a->kind)) {
        out += "(";
        render_formula(f->a, true, out);
        out += ")";
      } else {
        render_formula(f->a, false, out);
      }
      return;
    case FKind::And:
    case FKind::Or:
    case FKind::Imp:
    case FKind::Iff:
      if (!top) out += "(";
      render_formula(f->a, false, out);
      out += op_text(f->kind);
      render_formula(f->b, false, out);
      if (!top) out += ")";
      return;
    default:
      out += (f->kind == FKind::All || f->kind == FKind::BAll) ? "forall " : "exists ";
      out += var_name(f->var);
      if (f->bound) {
        out += " <= ";
        render_term(f->bound, kSum, out);
      }
      out += " ";
      render_formula(f->a, false, out);
      return;
  }
}

// ------------------------------------------------------------------- trees

void tree_term(const Term& t, std::string& out) {
  switch (t->kind) {
    case TermKind::Var: out += "(var " + var_name(t->var) + ")"; return;
    case TermKind::Num: out += "(num " + t->value().str() + ")"; return;
    case TermKind::App:
      out += "(app " + sym_name(t->fn);
      for (auto& a : t->args) {
        out += " ";
        tree_term(a, out);
      }
      out += ")";
      return;
  }
}

void tree_formula(const Formula& f, std::string& out) {
  switch (f->kind) {
    case FKind::Eq:
      out += "(eq ";
      tree_term(f->args[0], out);
      out += " ";
      tree_term(f->args[1], out);
      out += ")";
      return;
    case FKind::Rel:
      out += "(rel " + sym_name(f->rel);
      for (auto& a : f->args) {
        out += " ";
        tree_term(a, out);
      }
      out += ")";
      return;
    case FKind::Not:
      out += "(not ";
      tree_formula(f->a, out);
      out += ")";
      return;
    case FKind::And:
    case FKind::Or:
    case FKind::Imp:
    case FKind::Iff: {
      const char* n = f->kind == FKind::And ? "and" : f->kind == FKind::Or ? "or" : f->kind == FKind::Imp ? "imp" : "iff";
      out += std::string("(") + n + " ";
      tree_formula(f->a, out);
      out += " ";
      tree_formula(f->b, out);
      out += ")";
      return;
    }
    default: {
      const char* n = f->kind == FKind::All ? "forall" : f->kind == FKind::Ex ? "exists" : f->kind == FKind::BAll ? "ball" : "bex";
      out += std::string("(") + n + " " + var_name(f->var) + " ";
      if (f->bound) {
        tree_term(f->bound, out);
        out += " ";
      }
      tree_formula(f->a, out);
      out += ")";
      return;
    }
  }
}

struct SExpr {
  std::string atom;
  std::vector<SExpr> items;
  bool is_list = false;
  std::size_t pos = 0;
};

class SExprReader {
 public:
  explicit SExprReader(std::string_view s) : s_(s) {}
  SExpr read_all() {
    SExpr e = read();
    skip();
    if (i_ != s_.size()) throw SyntaxError("trailing input in tree", i_);
    return e;
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  SExpr read() {
    skip();
    if (i_ >= s_.size()) throw SyntaxError("unexpected end of tree", i_);
    SExpr e;
    e.pos = i_;
    if (s_[i_] == '(') {
      ++i_;
      e.is_list = true;
      for (;;) {
        skip();
        if (i_ >= s_.size()) throw SyntaxError("unterminated list", e.pos);
        if (s_[i_] == ')') {
          ++i_;
          break;
        }
        e.items.push_back(read());
      }
      return e;
    }
    if (s_[i_] == ')') throw SyntaxError("unexpected ')'", i_);
    std::size_t start = i_;
    while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) && s_[i_] != '(' && s_[i_] != ')') ++i_;
    e.atom = std::string(s_.substr(start, i_ - start));
    return e;
  }
};

const std::string& head(const SExpr& e) {
  if (!e.is_list || e.items.empty() || e.items[0].is_list) throw SyntaxError("expected constructor list", e.pos);
  return e.items[0].atom;
}

Var tree_var(const SExpr& e) {
  if (e.is_list) throw SyntaxError("expected variable name", e.pos);
  try {
    return var_named(e.atom);
  } catch (const std::invalid_argument& ex) {
    throw SyntaxError(ex.what(), e.pos);
  }
}

Term term_of(const SExpr& e) {
  const std::string& h = head(e);
  if (h == "var" && e.items.size() == 2) return var(tree_var(e.items[1]));
  if (h == "num" && e.items.size() == 2 && !e.items[1].is_list) {
    const std::string& d = e.items[1].atom;
    if (d.empty() || d.find_first_not_of("0123456789") != std::string::npos) throw SyntaxError("bad numeral", e.pos);
    return num(Nat(d));
  }
  if (h == "app" && e.items.size() >= 2 && !e.items[1].is_list) {
    std::vector<Term> args;
    for (std::size_t i = 2; i < e.items.size(); ++i) args.push_back(term_of(e.items[i]));
    Sym f = intern(e.items[1].atom);
    if ((f == sym::S && args.size() != 1) || ((f == sym::Add || f == sym::Mul) && args.size() != 2))
      throw SyntaxError("arity mismatch for " + e.items[1].atom, e.pos);
    return app(f, std::move(args));
  }
  throw SyntaxError("unknown term constructor '" + h + "'", e.pos);
}

Formula formula_of(const SExpr& e) {
  const std::string& h = head(e);
  auto n = e.items.size();
  if (h == "eq" && n == 3) return eq(term_of(e.items[1]), term_of(e.items[2]));
  if (h == "rel" && n >= 2 && !e.items[1].is_list) {
    std::vector<Term> args;
    for (std::size_t i = 2; i < n; ++i) args.push_back(term_of(e.items[i]));
    Sym r = intern(e.items[1].atom);
    if ((r == sym::Le && args.size() != 2) || (r == sym::P && args.size() != 1))
      throw SyntaxError("arity mismatch for " + e.items[1].atom, e.pos);
    return rel(r, std::move(args));
  }
  if (h == "not" && n == 2) return neg(formula_of(e.items[1]));
  if (h == "and" && n == 3) return conj(formula_of(e.items[1]), formula_of(e.items[2]));
  if (h == "or" && n == 3) return disj(formula_of(e.items[1]), formula_of(e.items[2]));
  if (h == "imp" && n == 3) return imp(formula_of(e.items[1]), formula_of(e.items[2]));
  if (h == "iff" && n == 3) return iff(formula_of(e.items[1]), formula_of(e.items[2]));
  if (h == "forall" && n == 3) return all(tree_var(e.items[1]), formula_of(e.items[2]));
  if (h == "exists" && n == 3) return ex(tree_var(e.items[1]), formula_of(e.items[2]));
  if (h == "ball" && n == 4) return ball(tree_var(e.items[1]), term_of(e.items[2]), formula_of(e.items[3]));
  if (h == "bex" && n == 4) return bex(tree_var(e.items[1]), term_of(e.items[2]), formula_of(e.items[3]));
  throw SyntaxError("unknown formula constructor '" + h + "'", e.pos);
}

}  // namespace

Formula parse_formula(std::string_view text, const Signature& sig) { return Parser(text, sig).formula_eof(); }
Term parse_term(std::string_view text, const Signature& sig) { return Parser(text, sig).term_eof(); }

std::string render(const Term& t) {
  std::string out;
  render_term(t, kSum, out);
  return out;
}

std::string render(const Formula& f) {
  std::string out;
  render_formula(f, true, out);
  return out;
}

std::string render_tree(const Term& t) {
  std::string out;
  tree_term(t, out);
  return out;
}

std::string render_tree(const Formula& f) {
  std::string out;
  tree_formula(f, out);
  return out;
}

Formula parse_tree_formula(std::string_view text) { return formula_of(SExprReader(text).read_all()); }
Term parse_tree_term(std::string_view text) { return term_of(SExprReader(text).read_all()); }

}  // namespace wa
