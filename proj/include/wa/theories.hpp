// Axiom generators, translations and theory combinators.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wa/models.hpp"
#include "wa/syntax.hpp"

namespace wa {

// --------------------------------------------------------------- schemata

// One instance of a named schema: R1 m n, R2 m n, R3 m n, R4 n, R5 n, R5p m n, P m, VS n.
struct AxiomRef {
  std::string schema;
  std::vector<std::uint64_t> params;
};
std::string to_string(const AxiomRef& r);
// Parses "R1 2 3"; throws std::invalid_argument.
AxiomRef parse_axiom_ref(const std::string& text);

// The instance itself; throws std::invalid_argument on unknown schemata or
// side conditions (R3 needs m != n, R5p needs m <= n).
Formula axiom_instance(const AxiomRef& r);

// Whether the instance belongs to the theory's axioms at the given cutoff.
bool axiom_in_theory(const AxiomRef& r, const std::string& theory, std::uint64_t cutoff);

std::vector<Formula> axioms_R(std::uint64_t n);
std::vector<Formula> axioms_R0(std::uint64_t n);
std::vector<Formula> axioms_R0p(std::uint64_t n);
std::vector<Formula> axioms_VS(std::uint64_t n);
std::vector<AxiomRef> axiom_refs(const std::string& theory, std::uint64_t n);

// The binary membership relation of VS.
Sym vs_in();
Signature vs_signature();

struct TheorySpec {
  std::string name;
  Signature signature;
  std::function<std::vector<Formula>(std::uint64_t)> generator;
};

TheorySpec theory_R();
TheorySpec theory_R0();
TheorySpec theory_R0p();
TheorySpec theory_VS();
// A fixed axiom list, the same at every cutoff.
TheorySpec finite_theory(std::string name, Signature sig, std::vector<Formula> axioms);
TheorySpec theory_by_name(const std::string& name);

// ----------------------------------------------------------- translations

class TranslationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One-dimensional, parameter-free. Relations get formulas in v0..v(n-1);
// functions and constants get their graphs in v0..vn with the value in vn.
struct Translation {
  std::string name;
  Signature source;
  Signature target;
  Formula domain;                            // in v0
  std::map<std::string, Formula> symbols;
  std::optional<Formula> identity;           // in v0, v1; default v0 = v1
  // Atoms are copied unchanged; only quantifiers are relativized.
  bool keep_atoms = false;

  static Translation identity_on(const Signature& sig);
  static Translation relativization(const Signature& sig, const Formula& domain, std::string name = "rel");
};

// Throws TranslationError when phi uses a symbol the translation does not map.
Formula translate(const Translation& tau, const Formula& phi);

// The structure that tau carves out of M, over tau.source. Throws
// TranslationError on an empty domain, or when the identity formula is not a
// congruence, or a function graph is not functional on the domain.
Structure internal_structure(const Structure& M, const Translation& tau);

// Translation read from a map file:
//   source La|Lap|VS
//   target La|Lap|VS
//   domain <formula in v0>
//   symbol <name> <formula>
//   identity <formula in v0, v1>
//   keep-atoms
Translation translation_from_text(const std::string& text);

// ------------------------------------------------------------- parameters

struct ParamAxiom {
  Formula chi;
  std::vector<Var> vars;  // the free variables of chi, in argument order
  std::function<bool(const std::vector<std::uint64_t>&)> oracle;
};

// Translated R0 axioms at cutoff n, then chi_i at the tau0-images of every
// tuple with entries <= n that the oracle accepts. Oracle exceptions propagate.
std::vector<Formula> axioms_param(const Translation& tau0, const std::vector<ParamAxiom>& params, std::uint64_t n);

// ------------------------------------------------------------ combinators

struct Combined {
  TheorySpec theory;
  std::map<std::string, std::string> left_names, right_names;  // operand symbol -> combined symbol
  Sym switch_symbol = 0;                                       // sw (ovee) or tri (owedge)
};

// P -> phi for U's axioms and ~P -> psi for V's, over disjoint copies of the signatures.
Combined ovee(const TheorySpec& U, const TheorySpec& V);
// U relativized to tri, V to ~tri, both parts inhabited and closed under their functions.
Combined owedge(const TheorySpec& U, const TheorySpec& V);

// Symbol renaming; bounded quantifiers are expanded since <= may be renamed.
Formula rename_symbols(const Formula& f, const std::map<std::string, std::string>& names);
Signature rename_signature(const Signature& sig, const std::map<std::string, std::string>& names);
// The part of M over sig, where names maps sig's symbols to M's.
Structure reduct(const Structure& M, const Signature& sig, const std::map<std::string, std::string>& names);

}  // namespace wa
