#include "wa/suite.hpp"

#include <chrono>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "wa/certificates.hpp"
#include "wa/corpus.hpp"
#include "wa/goedel.hpp"
#include "wa/models.hpp"
#include "wa/natural.hpp"
#include "wa/parse.hpp"
#include "wa/prover.hpp"
#include "wa/purify.hpp"
#include "wa/theories.hpp"

namespace wa {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool passed = true;
  std::ostringstream detail;
  int failures = 0;
  void fail(const std::string& what) {
    passed = false;
    if (failures++ < 3) detail << (failures > 1 ? "; " : "") << what;
  }
};

struct Parsed {
  std::string text;
  Formula f;
  bool truth;
};

std::vector<Parsed> sigma1_parsed() {
  std::vector<Parsed> out;
  for (auto& s : sigma1_corpus()) out.push_back({s.text, parse_formula(s.text, Signature::La()), s.truth});
  return out;
}

// Least witness of the certified sentence exists x (cert(x) & ...).
std::optional<Nat> bracket_witness(const Formula& certified, std::uint64_t limit = 10000) {
  return nat_least_witness(certified->var, certified->a, {}, limit);
}

// Structures of size 1 and 2 over L_a satisfying every filter, checked one by one.
std::size_t count_small_models(const std::vector<Formula>& filters) {
  std::size_t n = 0;
  for (int size = 1; size <= 2; ++size)
    n += enumerate_structures(Signature::La(), size, filters, [](const Structure&) { return true; });
  return n;
}

NatOptions exact_options() {
  NatOptions o;
  o.exact = true;
  return o;
}

// ------------------------------------------------------------------ 1
void c1(Outcome& o) {
  auto t0 = Clock::now();
  Var v = var_named("v");
  Formula cert = cert_formula(v);
  int bad = 0;
  for (std::uint64_t n = 0; n <= 200; ++n)
    if (nat_evaluate(cert, {{v, Nat(n)}}) != Truth::True) {
      ++bad;
      o.fail("cert(" + std::to_string(n) + ") not true");
    }
  double dt = since(t0);
  if (dt >= 5) o.fail("runtime " + std::to_string(dt) + " s");
  if (o.passed) o.detail << "cert(v) true for v = 0..200";
}

// ------------------------------------------------------------------ 2
void c2(Outcome& o) {
  auto t0 = Clock::now();
  std::size_t checked = 0;
  for (auto& s : sigma1_parsed()) {
    Formula b = bracket(s.f).certified;
    ++checked;
    if (std::size_t n = count_small_models({neg(s.f), b}))
      o.fail(std::to_string(n) + " counterexamples for " + s.text);
  }
  double dt = since(t0);
  if (dt >= 120) o.fail("runtime " + std::to_string(dt) + " s");
  if (o.passed) o.detail << "no structure of size <= 2 satisfies [s] & ~s, " << checked << " sentences";
}

// ------------------------------------------------------------------ 3
void c3(Outcome& o) {
  auto t0 = Clock::now();
  int proved = 0;
  std::size_t largest = 0;
  for (auto& s : sigma1_parsed()) {
    if (!s.truth) continue;
    Formula b = bracket(s.f).certified;
    auto w = bracket_witness(b);
    if (!w) {
      o.fail("no witness for [" + s.text + "]");
      continue;
    }
    if (*w > 50) continue;
    try {
      ProofResult r = prove_sigma1(b);
      CheckResult c = check(r);
      std::uint64_t n = static_cast<std::uint64_t>(*w);
      if (!c.ok) o.fail(s.text + ": step " + std::to_string(c.step) + ": " + c.message);
      else if (!equal(r.goal.conclusion, b)) o.fail(s.text + ": proved a different sentence");
      else if (r.goal.theory != "R0") o.fail(s.text + ": theory " + r.goal.theory);
      else if (r.goal.cutoff > n * n + n + 2) o.fail(s.text + ": cutoff " + std::to_string(r.goal.cutoff));
      else if (r.proof.size() > kMaxProofSteps) o.fail(s.text + ": too many steps");
      else {
        ++proved;
        largest = std::max(largest, r.proof.size());
      }
    } catch (const ProofError& e) {
      o.fail(s.text + ": " + e.what());
    }
  }
  double dt = since(t0);
  if (dt >= 300) o.fail("runtime " + std::to_string(dt) + " s");
  if (o.passed) o.detail << proved << " proofs of [s] checked from R0, largest " << largest << " steps";
}

// ------------------------------------------------------------------ 4
void c4(Outcome& o) {
  int n = 0;
  for (auto& s : sigma1_parsed()) {
    if (s.truth) continue;
    ++n;
    Formula b = bracket(s.f).certified;
    if (std::size_t m = count_small_models({b})) o.fail(std::to_string(m) + " models of [" + s.text + "]");
  }
  if (o.passed) o.detail << n << " false sentences, no model of [s] at size <= 2";
}

// ------------------------------------------------------------------ 5
void c5(Outcome& o) {
  int n = 0;
  for (auto& s : sigma1_parsed()) {
    if (!s.truth) continue;
    Formula b = bracket(s.f).certified;
    auto w = bracket_witness(b);
    if (!w) {
      o.fail("no witness for [" + s.text + "]");
      continue;
    }
    if (*w > 12) continue;
    int k = static_cast<int>(*w);
    ++n;
    if (!evaluate(clipped_model(k * k + k + 1), b))
      o.fail("clipped model " + std::to_string(k * k + k + 1) + " refutes [" + s.text + "]");
  }
  if (o.passed) o.detail << n << " sentences with witness <= 12 hold in their clipped model";
}

// ------------------------------------------------------------------ 6
struct LemmaCounts {
  std::size_t witnesses = 0, instances = 0;
};

// Truth in N of the pure corpus, by formula and argument tuple; the same for every M.
struct PureTruths {
  std::vector<Formula> pure;
  std::vector<std::map<std::vector<int>, Truth>> memo;

  Truth at(std::size_t i, const std::vector<int>& args) {
    auto [it, fresh] = memo[i].try_emplace(args, Truth::Unknown);
    if (fresh) {
      const auto& fv = free_vars(pure[i]);
      NatAssignment na;
      for (std::size_t j = 0; j < fv.size(); ++j) na[fv[j]] = args[j];
      it->second = nat_evaluate(pure[i], na);
    }
    return it->second;
  }
};

void check_lemmas(const Structure& M, int v, int k, PureTruths& pure, Outcome& o,
                  LemmaCounts& counts, const std::string& where) {
  ++counts.witnesses;
  Var x = var_named("v"), y = var_named("y");
  Assignment a{{x, v}};
  auto expect = [&](bool ok, const std::string& what) {
    ++counts.instances;
    if (!ok) o.fail(where + " v=" + std::to_string(v) + " k=" + std::to_string(k) + ": " + what);
  };
  auto n = [](std::uint64_t m) { return num(m); };
  for (int m = 0; m <= k; ++m) {
    expect(evaluate(M, le(n(m), var(x)), a), "Lem1 m=" + std::to_string(m));
    std::vector<Formula> ds;
    for (int l = 0; l <= m; ++l) ds.push_back(eq(var(y), n(l)));
    expect(evaluate(M, all(y, iff(le(var(y), n(m)), disj_list(ds)))), "LemL m=" + std::to_string(m));
  }
  for (int m = 0; m <= k; ++m)
    for (int j = 0; j <= k; ++j)
      for (int p = 0; p <= k; ++p)
        expect(evaluate(M, eq(add(mul(n(m), n(j)), n(p)), n(std::uint64_t(m * j + p)))),
               "LemAM " + std::to_string(m) + "," + std::to_string(j) + "," + std::to_string(p));
  for (int m = 0; m <= k * k + k; ++m)
    for (int l = 0; l <= k; ++l)
      if (m != l) expect(evaluate(M, neg(eq(n(m), n(l)))), "LemN " + std::to_string(m) + "," + std::to_string(l));
  // M |= phi(numerals) is read with the numerals' denotations assigned
  std::vector<int> denot(k + 1);
  for (int m = 0; m <= k; ++m) denot[m] = M.numeral_value(m);
  for (std::size_t f = 0; f < pure.pure.size(); ++f) {
    const Formula& phi = pure.pure[f];
    const auto& fv = free_vars(phi);
    std::vector<int> args(fv.size(), 0);
    while (true) {
      Assignment ma;
      for (std::size_t i = 0; i < fv.size(); ++i) ma[fv[i]] = denot[args[i]];
      Truth t = pure.at(f, args);
      bool in_m = evaluate(M, phi, ma);
      expect(t != Truth::Unknown && (t == Truth::True) == in_m, "pure formula " + render(phi));
      std::size_t i = 0;
      while (i < args.size() && args[i] == k) args[i++] = 0;
      if (i == args.size()) break;
      ++args[i];
    }
  }
}

void c6(Outcome& o) {
  PureTruths pure;
  for (auto& s : pure_delta0_corpus()) pure.pure.push_back(parse_formula(s, Signature::La()));
  pure.memo.resize(pure.pure.size());
  LemmaCounts counts;
  std::set<std::string> seen;
  Var vv = var_named("v");
  constexpr std::size_t kPerSearch = 400;
  for (int size = 1; size <= 3; ++size) {
    for (int k = 0; k <= size; ++k) {
      std::vector<Structure> found;
      search_models(Signature::La(), size, {ex(vv, dagger_formula(vv, k))}, [&](const Structure& M) {
        if (seen.insert(to_text(M)).second) found.push_back(M);
        return found.size() < kPerSearch;
      });
      for (auto& M : found)
        for (int v = 0; v < M.size; ++v) {
          int kmax = -1;
          for (int j = 0; j <= size && check_dagger(M, v, j); ++j) kmax = j;
          if (kmax >= 0) check_lemmas(M, v, kmax, pure, o, counts, "size " + std::to_string(size));
        }
    }
  }
  for (int K = 1; K <= 30; ++K) {
    Structure M = clipped_model(K);
    for (int v = 0; v <= K; ++v) {
      int kmax = -1;
      for (int j = 0; j <= K + 1 && check_dagger(M, v, j); ++j) kmax = j;
      if (kmax >= 0) check_lemmas(M, v, kmax, pure, o, counts, "clipped " + std::to_string(K));
    }
  }
  if (counts.witnesses == 0) o.fail("no dagger witnesses harvested");
  if (o.passed) o.detail << counts.witnesses << " witnesses (maximal k), " << counts.instances << " lemma instances";
}

// ------------------------------------------------------------------ 7
void c7(Outcome& o) {
  int proofs = 0;
  for (auto& p : comparison_pairs()) {
    std::vector<ComparisonMode> modes{ComparisonMode::LeBlocksLt};
    if (p.a < p.b) modes.push_back(ComparisonMode::LtBlocksLe);
    for (auto mode : modes) {
      bool strict = mode == ComparisonMode::LeBlocksLt;
      Formula want = neg(comparison_formula(strict ? wc_lt(p.sigma_p, p.sigma) : wc_le(p.sigma_p, p.sigma)));
      std::string tag = "pair " + std::to_string(p.a) + "," + std::to_string(p.b);
      try {
        ProofResult r = prove_not_comparison(p.sigma, p.sigma_p, mode);
        CheckResult c = check(r);
        if (!c.ok) o.fail(tag + ": step " + std::to_string(c.step) + ": " + c.message);
        else if (!equal(r.goal.conclusion, want)) o.fail(tag + ": proved a different sentence");
        else if (r.goal.theory != "R0" || !r.goal.hypotheses.empty()) o.fail(tag + ": not a proof from R0");
        else ++proofs;
      } catch (const ProofError& e) {
        o.fail(tag + ": " + e.what());
      }
    }
  }
  if (o.passed) o.detail << proofs << " comparison refutations checked";
}

// ------------------------------------------------------------------ 8
void c8(Outcome& o) {
  Var x = var_named("x");
  int self = 0, ord = 0;
  for (auto& t : self_ref_templates()) {
    Formula phi = parse_formula(t, Signature::La());
    FixedPointResult r = fixed_point(phi, {Numbering::SelfReferential});
    auto s = sgn(r.eta);
    if (!s) o.fail("no sgn for " + t);
    else if (!equal(r.eta, substitute(phi, x, num(*s)))) o.fail("not a syntactic fixed point: " + t);
    else ++self;
  }
  NatOptions ex = exact_options();
  for (auto& t : ordinary_templates()) {
    Formula sigma = parse_formula(t, Signature::La());
    FixedPointResult r = fixed_point(sigma);
    Truth a = nat_evaluate(r.eta, {}, ex);
    Truth b = nat_evaluate(substitute(sigma, x, num(encode(r.eta))), {}, ex);
    if (a == Truth::Unknown || a != b) o.fail(t + ": eta " + to_string(a) + ", sigma(code) " + to_string(b));
    else ++ord;
  }
  if (o.passed) o.detail << self << " exact self-referential fixed points, " << ord << " ordinary ones agree";
}

// ------------------------------------------------------------------ 9
void c9(Outcome& o) {
  NatOptions opt = exact_options();
  opt.cap = 10000;
  int agree = 0, decided = 0;
  for (auto& t : purification_corpus()) {
    Formula l = parse_formula(t, Signature::La());
    Formula p = purify(l);
    Truth a = nat_evaluate(l, {}, opt), b = nat_evaluate(p, {}, opt);
    if (a != b) o.fail(t + ": " + to_string(a) + " vs purified " + to_string(b));
    else ++agree;
    if (a != Truth::Unknown) ++decided;
    if (std::size_t n = count_small_models({neg(l), p}))
      o.fail(t + ": " + std::to_string(n) + " small models of the purified form refute it");
  }
  if (o.passed) o.detail << agree << " agree (" << decided << " decided), no finite counterexample at size <= 2";
}

// ----------------------------------------------------------------- 10
Signature small_sig(const std::string& name, std::vector<std::pair<std::string, int>> c,
                    std::vector<std::pair<std::string, int>> f, std::vector<std::pair<std::string, int>> r) {
  Signature s;
  s.name = name;
  s.constants = std::move(c);
  s.functions = std::move(f);
  s.relations = std::move(r);
  return s;
}

bool satisfies_all(const Structure& M, const std::vector<Formula>& fs) {
  for (auto& f : fs)
    if (!evaluate(M, f)) return false;
  return true;
}

void c10(Outcome& o) {
  Signature su = small_sig("U", {{"e", 0}}, {{"f", 2}}, {});
  Signature sv = small_sig("V", {}, {{"g", 1}}, {{"Q", 1}});
  Var x = var_named("x"), y = var_named("y");
  Sym f = intern("f"), g = intern("g"), Q = intern("Q"), e = intern("e");
  TheorySpec U = finite_theory("U", su, {all(x, all(y, eq(app(f, {var(x), var(y)}), app(f, {var(y), var(x)})))),
                                         all(x, eq(app(f, {constant(e), var(x)}), var(x)))});
  TheorySpec V = finite_theory("V", sv, {all(x, imp(rel(Q, {var(x)}), neg(rel(Q, {app(g, {var(x)})})))),
                                         ex(x, rel(Q, {var(x)}))});
  std::size_t structures = 0;
  for (auto [A, B] : {std::pair{U, V}, std::pair{V, U}}) {
    Combined c = ovee(A, B);
    auto axioms = c.theory.generator(0);
    auto left = A.generator(0), right = B.generator(0);
    SearchOptions so;
    so.fix_first_constant = false;
    enumerate_structures(c.theory.signature, 2, {}, [&](const Structure& M) {
      ++structures;
      bool lhs = satisfies_all(M, axioms);
      bool sw = evaluate(M, rel(c.switch_symbol, {}));
      bool rhs = sw ? satisfies_all(reduct(M, A.signature, c.left_names), left)
                    : satisfies_all(reduct(M, B.signature, c.right_names), right);
      if (lhs != rhs) o.fail("ovee characterization fails on a size-2 structure");
      return true;
    }, so);
  }
  // R0 at cutoff 1 needs two elements, so its partner has no axioms
  TheorySpec W = finite_theory("W", sv, {});
  std::size_t spot = 0;
  for (auto [A, B] : {std::pair{U, V}, std::pair{theory_R0(), W}}) {
    std::uint64_t cutoff = 1;
    Combined c = owedge(A, B);
    auto axioms = c.theory.generator(cutoff);
    auto left = A.generator(cutoff), right = B.generator(cutoff);
    Signature sl = rename_signature(A.signature, c.left_names), sr = rename_signature(B.signature, c.right_names);
    Formula tri = rel(c.switch_symbol, {var(0)});
    Translation tl = Translation::relativization(sl, tri, "tri");
    Translation tr = Translation::relativization(sr, neg(tri), "not-tri");
    std::vector<Formula> lren, rren;
    for (auto& a : left) lren.push_back(rename_symbols(a, c.left_names));
    for (auto& a : right) rren.push_back(rename_symbols(a, c.right_names));
    for (int size = 2; size <= 3; ++size) {
      std::size_t here = 0;
      search_models(c.theory.signature, size, axioms, [&](const Structure& M) {
        ++spot;
        if (!satisfies_all(internal_structure(M, tl), lren)) o.fail("tri part misses a U axiom");
        if (!satisfies_all(internal_structure(M, tr), rren)) o.fail("complement misses a V axiom");
        return ++here < 200;
      });
    }
  }
  if (spot == 0) o.fail("no owedge models found");
  if (o.passed) o.detail << structures << " size-2 structures for ovee, " << spot << " owedge models spot-checked";
}

// ----------------------------------------------------------------- 11
void c11(Outcome& o) {
  Translation wb = Translation::relativization(Signature::La(), wb_formula(0), "wb");
  int proved = 0;
  for (std::uint64_t n = 0; n <= 5; ++n) {
    Formula goal = translate(wb, axiom_instance({"R5", {n}}));
    ProofResult r = prove_wb_split(n, WbSplit::Dichotomy);
    CheckResult c = check(r);
    if (!c.ok) o.fail("n=" + std::to_string(n) + ": step " + std::to_string(c.step) + ": " + c.message);
    else if (!alpha_equal(r.goal.conclusion, goal)) o.fail("n=" + std::to_string(n) + ": conclusion is not the translated R5");
    else if (r.goal.theory != "R0") o.fail("n=" + std::to_string(n) + ": theory " + r.goal.theory);
    else ++proved;
  }
  if (o.passed) o.detail << proved << " translated R5 instances proved from R0";
}

using Runner = void (*)(Outcome&);

struct Entry {
  const char* name;
  Runner run;
};

const Entry kEntries[kCriteria] = {
    {"certificate totality", c1},
    {"[s] implies s in small structures", c2},
    {"R0 proves [s] for true s", c3},
    {"[s] has no small model for false s", c4},
    {"clipped models of [s]", c5},
    {"lemmas under the dagger assumption", c6},
    {"witness comparison refutations", c7},
    {"fixed points", c8},
    {"purification contracts", c9},
    {"theory combinators", c10},
    {"wb-translated dichotomy", c11},
};

}  // namespace

std::string criterion_name(int id) {
  if (id < 1 || id > kCriteria) throw std::out_of_range("no criterion " + std::to_string(id));
  return kEntries[id - 1].name;
}

CriterionResult run_criterion(int id) {
  CriterionResult r;
  r.id = id;
  r.name = criterion_name(id);
  auto t0 = Clock::now();
  Outcome o;
  try {
    kEntries[id - 1].run(o);
  } catch (const std::exception& e) {
    o.fail(std::string("internal error: ") + e.what());
  }
  r.seconds = since(t0);
  r.passed = o.passed;
  r.detail = o.detail.str();
  if (o.failures > 3) r.detail += "; " + std::to_string(o.failures - 3) + " more";
  return r;
}

std::vector<CriterionResult> run_suite(const std::vector<int>& ids,
                                       const std::function<void(const CriterionResult&)>& report) {
  std::vector<int> todo = ids;
  if (todo.empty())
    for (int i = 1; i <= kCriteria; ++i) todo.push_back(i);
  std::vector<CriterionResult> out;
  for (int id : todo) {
    out.push_back(run_criterion(id));
    if (report) report(out.back());
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  char t[32];
  std::snprintf(t, sizeof t, "%.2f", r.seconds);
  return std::string(r.passed ? "PASS" : "FAIL") + " " + std::to_string(r.id) + " " + r.name + " (" + t + " s): " +
         r.detail;
}

}  // namespace wa
