// Finite structures, Tarskian evaluation, clipped models and structure search.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "wa/syntax.hpp"

namespace wa {

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Domain {0, ..., size-1}. Function tables are row-major over the argument
// tuple; -1 marks an undetermined cell in partial structures built by search.
struct Structure {
  Signature sig;
  int size = 0;
  std::vector<int> constants;
  std::vector<std::vector<int>> functions;
  std::vector<std::vector<std::int8_t>> relations;

  Structure() = default;
  Structure(Signature s, int n);  // all cells undetermined

  bool complete() const;
  // Throws EvalError when a table has the wrong shape or an out-of-range entry.
  void validate() const;

  int function_index(Sym f) const;  // -1 when absent
  int relation_index(Sym r) const;
  int constant_index(Sym c) const;

  // Value of S^n 0, or -1 if the walk meets an undetermined cell.
  int numeral_value(const Nat& n) const;

 private:
  mutable std::vector<int> fn_by_sym_, rel_by_sym_, const_by_sym_;
  void build_index() const;
};

bool operator==(const Structure& a, const Structure& b);

using Assignment = std::map<Var, int>;

enum class Truth : std::uint8_t { False = 0, True = 1, Unknown = 2 };
std::string to_string(Truth t);

// Throws EvalError on an unassigned free variable or a symbol outside M's signature.
bool evaluate(const Structure& M, const Formula& f, const Assignment& a = {});
int evaluate(const Structure& M, const Term& t, const Assignment& a = {});

// Kleene evaluation over a partial structure. When the result is Unknown,
// *need receives (table id, cell) of an undetermined cell the result depends on;
// table ids number constants, then functions, then relations.
Truth evaluate_partial(const Structure& M, const Formula& f, const Assignment& a,
                       std::pair<int, int>* need = nullptr);

// {0..K} with S, + and * truncated at K.
Structure clipped_model(int K);
// {0..K} with arithmetic modulo K+1 and the standard order; for negative tests.
Structure wraparound_model(int K);

// Text record: "structure <name> <size>" then one line per symbol.
std::string to_text(const Structure& M);
Structure structure_from_text(const std::string& text, const Signature& sig);

struct SearchOptions {
  // Upper bound on the raw table space for exhaustive enumeration.
  double exhaustive_budget = 5e7;
  // Map the first constant to element 0 (sound up to isomorphism).
  bool fix_first_constant = true;
  Assignment assignment;
};

// Every structure of the given size satisfying all filters, in lexicographic
// order of the flattened tables. Throws EvalError when the size exceeds the budget.
// The callback returns false to stop; the return value counts yielded structures.
std::size_t enumerate_structures(const Signature& sig, int size, const std::vector<Formula>& filters,
                                 const std::function<bool(const Structure&)>& yield,
                                 const SearchOptions& opt = {});

// Lazy search: cells are filled only when evaluation needs them, and each
// family of structures agreeing on the decided cells is yielded once (undecided
// cells completed with 0). A model of the filters exists iff one is yielded.
std::size_t search_models(const Signature& sig, int size, const std::vector<Formula>& filters,
                          const std::function<bool(const Structure&)>& yield, const SearchOptions& opt = {});

std::optional<Structure> find_model(const Signature& sig, int size, const std::vector<Formula>& filters,
                                    const SearchOptions& opt = {});

// M |= cert(v) and no numeral below k denotes v.
bool check_dagger(const Structure& M, int v, int k);
// The formula cert(v) & ~0 = v & ... & ~(k-1) = v.
Formula dagger_formula(Var v, int k);

}  // namespace wa
