// Terms, formulas and signatures for first-order arithmetic and user signatures.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace wa {

using Nat = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
using Var = std::uint64_t;
using Sym = std::uint32_t;

// Interned symbol names. The first few ids are fixed.
namespace sym {
inline constexpr Sym S = 0;
inline constexpr Sym Add = 1;
inline constexpr Sym Mul = 2;
inline constexpr Sym Le = 3;
inline constexpr Sym P = 4;
}  // namespace sym

Sym intern(std::string_view name);
const std::string& sym_name(Sym s);

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at offset " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

struct Signature {
  std::string name;
  std::vector<std::pair<std::string, int>> constants;  // arity 0
  std::vector<std::pair<std::string, int>> functions;
  std::vector<std::pair<std::string, int>> relations;
  bool has_identity = true;

  static Signature La();
  static Signature Lap();
  static Signature identity_only();

  bool has_constant(std::string_view n) const;
  std::optional<int> function_arity(std::string_view n) const;
  std::optional<int> relation_arity(std::string_view n) const;
  bool has_symbol(std::string_view n) const;
  // Throws std::invalid_argument on duplicate names.
  void validate() const;
};

// ---------------------------------------------------------------- terms

enum class TermKind : std::uint8_t { Var, Num, App };

class TermNode;
using Term = std::shared_ptr<const TermNode>;

class TermNode {
 public:
  TermKind kind;
  Var var = 0;                          // Var
  std::uint64_t small = 0;              // Num, when big is null
  std::shared_ptr<const Nat> big;       // Num, values >= 2^63
  Sym fn = 0;                           // App
  std::vector<Term> args;               // App
  std::size_t hash = 0;
  std::vector<Var> fv;                  // sorted, unique

  Nat value() const { return big ? *big : Nat(small); }
  bool is_small() const { return !big; }
};

Term var(Var v);
Term num(const Nat& n);
Term num(std::uint64_t n);
Term zero();
// S applied to a numeral folds into the numeral, so numerals have one shape.
Term succ(const Term& t);
Term add(const Term& a, const Term& b);
Term mul(const Term& a, const Term& b);
Term app(Sym f, std::vector<Term> args);
Term constant(Sym c);

inline Term numeral(std::uint64_t n) { return num(n); }
inline Term numeral(const Nat& n) { return num(n); }

// Successor view: Num(n+1) is S Num(n).
bool is_succ(const Term& t, Term* arg = nullptr);
bool is_zero(const Term& t);
bool is_numeral(const Term& t);
// Nesting depth counting each S of a numeral.
Nat depth(const Term& t);

bool equal(const Term& a, const Term& b);
struct TermHash {
  std::size_t operator()(const Term& t) const { return t->hash; }
};
struct TermEq {
  bool operator()(const Term& a, const Term& b) const { return equal(a, b); }
};

// --------------------------------------------------------------- formulas

enum class FKind : std::uint8_t { Eq, Rel, Not, And, Or, Imp, Iff, All, Ex, BAll, BEx };

class FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

class FormulaNode {
 public:
  FKind kind;
  Sym rel = 0;              // Rel
  std::vector<Term> args;   // Eq (2), Rel
  Formula a, b;             // connectives; a is the body of quantifiers
  Var var = 0;              // quantifiers
  Term bound;               // bounded quantifiers
  std::size_t hash = 0;
  std::vector<Var> fv;
  std::size_t size = 1;     // node count, saturating
};

Formula eq(const Term& s, const Term& t);
Formula le(const Term& s, const Term& t);
Formula rel(Sym r, std::vector<Term> args);
Formula neg(const Formula& f);
Formula conj(const Formula& f, const Formula& g);
Formula disj(const Formula& f, const Formula& g);
Formula imp(const Formula& f, const Formula& g);
Formula iff(const Formula& f, const Formula& g);
Formula all(Var x, const Formula& f);
Formula ex(Var x, const Formula& f);
Formula ball(Var x, const Term& t, const Formula& f);
Formula bex(Var x, const Term& t, const Formula& f);
// x < t as x <= t & ~x = t
Formula lt(const Term& s, const Term& t);
Formula ball_lt(Var x, const Term& t, const Formula& f);  // forall x <= t (~x = t -> f)

// Right-nested; the list must be non-empty.
Formula conj_list(const std::vector<Formula>& fs);
Formula disj_list(const std::vector<Formula>& fs);
Formula all_list(const std::vector<Var>& xs, const Formula& f);
Formula ex_list(const std::vector<Var>& xs, const Formula& f);

// The canonical truth 0 = 0.
Formula truth();

bool equal(const Formula& a, const Formula& b);
struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f->hash; }
};
struct FormulaEq {
  bool operator()(const Formula& a, const Formula& b) const { return equal(a, b); }
};

bool is_quantifier(FKind k);
bool is_binary(FKind k);
bool is_atomic(FKind k);

// ---------------------------------------------------------------- variables

// v<digits> names the variable with that index; other identifiers map
// injectively above 2^32, so x, y, z round-trip.
Var var_named(std::string_view name);
std::string var_name(Var v);
bool valid_identifier(std::string_view name);
// Lowest index not in `used` (sorted or unsorted).
Var fresh_var(const std::vector<Var>& used);
Var fresh_var(std::initializer_list<const std::vector<Var>*> used);

const std::vector<Var>& free_vars(const Term& t);
const std::vector<Var>& free_vars(const Formula& f);
bool occurs_free(Var x, const Term& t);
bool occurs_free(Var x, const Formula& f);
bool is_closed(const Formula& f);
// All variables, bound or free.
std::vector<Var> all_vars(const Formula& f);

// ------------------------------------------------------------ substitution

using Subst = std::map<Var, Term>;

Term substitute(const Term& t, const Subst& s);
Formula substitute(const Formula& f, const Subst& s);
Term substitute(const Term& t, Var x, const Term& u);
Formula substitute(const Formula& f, Var x, const Term& u);
// Renames the bound variable of a quantifier node to y (y must be fresh for the body).
Formula rename_bound(const Formula& q, Var y);

bool alpha_equal(const Formula& a, const Formula& b);
// Bound variables renamed by binding depth; alpha-equal formulas map to equal results.
Formula alpha_canonical(const Formula& f);

// Bounded quantifiers rewritten to forall x (x <= t -> f) / exists x (x <= t & f).
Formula desugar_top(const Formula& f);
Formula desugar(const Formula& f);

// ---------------------------------------------------------- classification

enum class SyntacticClass { PureDelta0, Delta0, PureSigma1, PureOneSigma1, Sigma1, Other };
std::string to_string(SyntacticClass c);

SyntacticClass classify(const Formula& f);
bool is_pure_atom(const Formula& f);
bool is_pure_delta0(const Formula& f);
bool is_delta0(const Formula& f);
// Generated from Delta0 by &, |, exists and bounded exists.
bool is_sigma1(const Formula& f);
bool is_pure_sigma1(const Formula& f);
bool is_pure_one_sigma1(const Formula& f);
// Membership along the chains PureOneSigma1 <= PureSigma1 <= Sigma1, PureDelta0 <= Delta0 <= Sigma1.
bool in_class(const Formula& f, SyntacticClass c);

bool in_signature(const Formula& f, const Signature& sig);
bool in_signature(const Term& t, const Signature& sig);

// Reflexivity, symmetry, transitivity and one congruence axiom per function and relation symbol.
std::vector<Formula> id_axioms(const Signature& sig);

}  // namespace wa
