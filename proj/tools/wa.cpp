// Command-line front end.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or malformed input,
// 3 internal error. WA_CAP overrides the default witness search cap.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "wa/certificates.hpp"
#include "wa/goedel.hpp"
#include "wa/models.hpp"
#include "wa/natural.hpp"
#include "wa/parse.hpp"
#include "wa/proof.hpp"
#include "wa/prover.hpp"
#include "wa/purify.hpp"
#include "wa/suite.hpp"
#include "wa/theories.hpp"

using namespace wa;

namespace {

constexpr int kOk = 0, kFailed = 1, kUsage = 2, kInternal = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string format = "human";
  std::uint64_t cap = 10000;
} g;

std::string show(const Formula& f) { return g.format == "tree" ? render_tree(f) : render(f); }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Signature signature_named(const std::string& name) {
  if (name == "La") return Signature::La();
  if (name == "Lap") return Signature::Lap();
  if (name == "VS") return vs_signature();
  if (name == "Lac") return self_ref_signature();
  throw UsageError("unknown signature " + name);
}

Formula formula_arg(const std::string& text, const std::string& sig = "Lap") {
  return parse_formula(text, signature_named(sig));
}

// A formula given inline or, with a leading @, read from a file.
Formula formula_input(const std::string& text, const std::string& sig = "Lap") {
  if (!text.empty() && text[0] == '@') {
    std::string body = read_file(text.substr(1));
    while (!body.empty() && (body.back() == '\n' || body.back() == ' ')) body.pop_back();
    return formula_arg(body, sig);
  }
  return formula_arg(text, sig);
}

std::string classify_line(const Formula& f) { return "class: " + to_string(classify(f)); }

NatOptions nat_options(bool exact) {
  NatOptions o;
  o.cap = g.cap;
  o.exact = exact;
  return o;
}

// Proof files carry their goal in comment lines.
std::string proof_file(const ProofResult& r) {
  std::string s = "# theory " + r.goal.theory + "\n";
  s += "# cutoff " + std::to_string(r.goal.cutoff) + "\n";
  s += "# conclusion " + render(r.goal.conclusion) + "\n";
  return s + to_text(r.proof);
}

ProofGoal goal_from_comments(const std::string& text) {
  ProofGoal goal;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# theory ", 0) == 0) goal.theory = line.substr(9);
    else if (line.rfind("# cutoff ", 0) == 0) goal.cutoff = std::stoull(line.substr(9));
    else if (line.rfind("# conclusion ", 0) == 0) goal.conclusion = parse_formula(line.substr(13));
  }
  return goal;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* cap = std::getenv("WA_CAP")) {
    try {
      g.cap = std::stoull(cap);
    } catch (const std::exception&) {
      std::cerr << "WA_CAP is not a number: " << cap << "\n";
      return kUsage;
    }
  }

  CLI::App app{"Weak arithmetic workbench"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"human", "tree"}));
  app.add_option("--cap", g.cap, "Witness search cap");

  int status = kOk;
  std::string formula, formula2, file, theory = "R0", sig = "Lap", map_file, structure_file, only;
  std::uint64_t cutoff = 1;
  int size = 2;
  bool flag_a = false, flag_b = false, flag_c = false;
  std::vector<std::string> assigns, formulas;

  auto* parse = app.add_subcommand("parse", "Parse and classify a formula");
  parse->add_option("formula", formula)->required();
  parse->add_option("--signature", sig);
  parse->callback([&] {
    Formula f = formula_input(formula, sig);
    std::cout << show(f) << "\n" << classify_line(f) << "\n";
  });

  auto* purify_cmd = app.add_subcommand("purify", "Flatten a Sigma1 formula into pure form");
  purify_cmd->add_option("formula", formula)->required();
  purify_cmd->add_flag("--collapse", flag_a, "Collapse to a single unbounded existential");
  purify_cmd->callback([&] {
    Formula f = formula_input(formula);
    Formula p = flag_a ? collapse_to_one(f) : purify(f);
    std::cout << show(p) << "\n" << classify_line(p) << "\n";
  });

  auto* certify_cmd = app.add_subcommand("certify", "The certified sentence [s]");
  certify_cmd->add_option("--sentence,sentence", formula)->required();
  certify_cmd->add_flag("--with-p", flag_a, "The variant with the predicate P");
  certify_cmd->callback([&] {
    Formula f = formula_input(formula);
    CertifiedSentence c = bracket(f, flag_a ? Flavor::WithP : Flavor::Plain);
    std::cout << show(c.certified) << "\n" << classify_line(c.certified) << "\n";
    std::cout << "pure form: " << show(c.pure_form) << "\n";
    int i = 1;
    for (auto& a : cert_conjuncts(var_named("v")))
      std::cout << "A" << i++ << ": " << show(a) << "\n";
  });

  auto* compare = app.add_subcommand("compare", "Witness comparison of two existential sentences");
  compare->add_option("phi", formula)->required();
  compare->add_option("psi", formula2)->required();
  compare->add_flag("--strict", flag_a, "phi < psi instead of phi <= psi");
  compare->add_flag("--bot", flag_b, "The dual comparison");
  compare->add_flag("--eval", flag_c, "Also evaluate in the standard model");
  compare->callback([&] {
    Formula phi = formula_input(formula), psi = formula_input(formula2);
    Comparison c = flag_a ? wc_lt(phi, psi) : wc_le(phi, psi);
    if (flag_b) c = wc_bot(c);
    Formula f = comparison_formula(c);
    std::cout << show(f) << "\n";
    if (flag_c) std::cout << "value: " << to_string(nat_evaluate(f, {}, nat_options(true))) << "\n";
  });

  auto* axioms = app.add_subcommand("axioms", "List axiom instances");
  axioms->add_option("--theory", theory)->check(CLI::IsMember({"R", "R0", "R0p", "VS"}));
  axioms->add_option("--cutoff", cutoff);
  axioms->add_flag("--refs", flag_a, "Print schema references instead of formulas");
  axioms->callback([&] {
    if (flag_a) {
      for (auto& r : axiom_refs(theory, cutoff)) std::cout << to_string(r) << "\n";
    } else {
      for (auto& a : theory_by_name(theory).generator(cutoff)) std::cout << show(a) << "\n";
    }
  });

  auto* translate_cmd = app.add_subcommand("translate", "Apply a translation read from a map file");
  translate_cmd->add_option("--map", map_file)->required();
  translate_cmd->add_option("formula", formula)->required();
  translate_cmd->callback([&] {
    Translation t = translation_from_text(read_file(map_file));
    Formula f = parse_formula(formula, t.source);
    std::cout << show(translate(t, f)) << "\n";
  });

  auto* find = app.add_subcommand("find-model", "Search for a finite model");
  find->add_option("--theory", theory, "R, R0, R0p or VS");
  find->add_option("--cutoff", cutoff);
  find->add_option("--size", size)->check(CLI::Range(1, 8));
  find->add_option("--formula", formulas, "Extra sentences, repeatable");
  find->add_flag("--no-theory", flag_a, "Only the given formulas, over L_ap");
  find->callback([&] {
    TheorySpec t = flag_a ? finite_theory("none", Signature::Lap(), {}) : theory_by_name(theory);
    std::vector<Formula> filters = flag_a ? std::vector<Formula>{} : t.generator(cutoff);
    for (auto& f : formulas) filters.push_back(parse_formula(f, t.signature));
    auto m = find_model(t.signature, size, filters);
    if (!m) {
      std::cout << "no model of size " << size << "\n";
      status = kFailed;
      return;
    }
    std::cout << to_text(*m);
  });

  auto* eval = app.add_subcommand("eval", "Evaluate in the standard model or a finite structure");
  eval->add_option("formula", formula)->required();
  eval->add_option("--structure", structure_file, "Structure file; the standard model when absent");
  eval->add_option("--clipped", size, "Evaluate in the clipped model {0..K}");
  eval->add_option("--assign", assigns, "x=3, repeatable");
  eval->add_flag("--exact", flag_a, "Answer false when an unbounded search is exhausted");
  eval->callback([&] {
    Formula f = formula_input(formula);
    std::map<Var, std::string> values;
    for (auto& s : assigns) {
      auto eqpos = s.find('=');
      if (eqpos == std::string::npos) throw UsageError("assignment needs the form x=3: " + s);
      values[var_named(s.substr(0, eqpos))] = s.substr(eqpos + 1);
    }
    if (!structure_file.empty() || eval->count("--clipped")) {
      Structure M = structure_file.empty() ? clipped_model(size)
                                           : structure_from_text(read_file(structure_file), Signature::Lap());
      Assignment a;
      for (auto& [v, s] : values) a[v] = std::stoi(s);
      std::cout << (evaluate(M, f, a) ? "true" : "false") << "\n";
      return;
    }
    NatAssignment a;
    for (auto& [v, s] : values) a[v] = Nat(s);
    std::cout << to_string(nat_evaluate(f, a, nat_options(flag_a))) << "\n";
  });

  std::string out_file;
  auto* prove = app.add_subcommand("prove", "Generate a proof of a true Delta0 or Sigma1 sentence");
  prove->add_option("--goal", file, "File with the sentence")->required();
  prove->add_option("--from", theory)->check(CLI::IsMember({"R0", "R0p"}));
  prove->add_option("--cutoff", cutoff, "Largest admissible axiom cutoff");
  prove->add_option("--out", out_file, "Write the proof here instead of stdout");
  prove->callback([&] {
    Formula f = formula_input("@" + file);
    if (!is_closed(f)) throw UsageError("the goal must be a sentence");
    ProverOptions po;
    po.witness_cap = g.cap;
    ProofResult r;
    if (is_delta0(f)) {
      NatOptions no = nat_options(true);
      Truth t = nat_evaluate(f, {}, no);
      if (t != Truth::True) {
        std::cerr << "the goal is " << to_string(t) << " in the standard model\n";
        status = kFailed;
        return;
      }
      r = prove_delta0(f, true, po);
    } else {
      r = prove_sigma1(f, po);
    }
    if (r.goal.theory == "R0p" && theory == "R0") throw ProofError("the proof needs the P axioms; use --from R0p");
    if (prove->count("--cutoff") && r.goal.cutoff > cutoff)
      throw ProofError("the proof needs cutoff " + std::to_string(r.goal.cutoff));
    if (prove->count("--cutoff")) r.goal.cutoff = cutoff;
    if (prove->count("--from")) r.goal.theory = theory;
    CheckResult c = check(r);
    if (!c.ok) {
      std::cerr << "generated proof fails at step " << c.step << ": " << c.message << "\n";
      status = kInternal;
      return;
    }
    std::string text = proof_file(r);
    if (out_file.empty()) {
      std::cout << text;
    } else {
      std::ofstream(out_file) << text;
      std::cout << r.proof.size() << " steps, cutoff " << r.goal.cutoff << "\n";
    }
  });

  std::string goal_file;
  auto* check_cmd = app.add_subcommand("check-proof", "Check a proof file");
  check_cmd->add_option("file", file)->required();
  check_cmd->add_option("--goal", goal_file, "File with the expected conclusion");
  check_cmd->add_option("--from", theory)->check(CLI::IsMember({"R", "R0", "R0p", "VS"}));
  check_cmd->add_option("--cutoff", cutoff);
  check_cmd->callback([&] {
    std::string text = read_file(file);
    Proof p = proof_from_text(text);
    ProofGoal goal = goal_from_comments(text);
    if (!goal_file.empty()) goal.conclusion = formula_input("@" + goal_file);
    if (check_cmd->count("--from")) goal.theory = theory;
    if (check_cmd->count("--cutoff")) goal.cutoff = cutoff;
    if (!goal.conclusion && !p.steps.empty()) goal.conclusion = p.conclusion();
    CheckResult c = check(p, goal);
    if (c.ok) {
      std::cout << "ok: " << p.size() << " steps\n";
    } else {
      std::cout << "rejected at step " << c.step << ": " << c.message << "\n";
      status = kFailed;
    }
  });

  auto* fix = app.add_subcommand("fixpoint", "Diagonal fixed point of a formula in one variable");
  fix->add_option("formula", formula)->required();
  fix->add_flag("--self-referential", flag_a, "Use the self-referential numbering");
  fix->add_flag("--transcript", flag_b, "Print the construction steps");
  fix->add_flag("--eval", flag_c, "Compare eta with sigma(code eta) in the standard model");
  fix->callback([&] {
    Formula sigma = formula_input(formula);
    FixedPointOptions o;
    if (flag_a) o.numbering = Numbering::SelfReferential;
    FixedPointResult r = fixed_point(sigma, o);
    if (flag_b)
      for (auto& l : r.transcript) std::cout << l << "\n";
    std::cout << "eta: " << show(r.eta) << "\n";
    std::cout << "numbering version: " << kNumberingVersion << "\n";
    if (flag_a) {
      auto s = sgn(r.eta);
      std::cout << "sgn: " << (s ? s->str() : "none") << "\n";
    } else {
      std::cout << "code: " << encode(r.eta).str() << "\n";
    }
    if (flag_c && !flag_a) {
      NatOptions no = nat_options(true);
      Formula inst = sigma->fv.empty() ? sigma : substitute(sigma, sigma->fv[0], num(encode(r.eta)));
      Truth a = nat_evaluate(r.eta, {}, no), b = nat_evaluate(inst, {}, no);
      std::cout << "eta: " << to_string(a) << ", sigma(code eta): " << to_string(b) << "\n";
      if (a != b) status = kFailed;
    }
  });

  auto* suite = app.add_subcommand("suite", "Run the acceptance criteria");
  suite->add_option("--only", only, "Comma separated criterion ids");
  suite->callback([&] {
    std::vector<int> ids;
    std::stringstream ss(only);
    for (std::string item; std::getline(ss, item, ',');)
      if (!item.empty()) {
        int id = std::stoi(item);
        if (id < 1 || id > kCriteria) throw UsageError("no criterion " + item);
        ids.push_back(id);
      }
    auto results = run_suite(ids, [](const CriterionResult& r) { std::cout << format_result(r) << std::endl; });
    int passed = 0;
    for (auto& r : results) passed += r.passed;
    std::cout << passed << "/" << results.size() << " criteria passed\n";
    if (passed != static_cast<int>(results.size())) status = kFailed;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const SyntaxError& e) {
    std::cerr << "syntax error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const EvalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const TranslationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ProofError& e) {
    std::cerr << "cannot prove: " << e.what() << "\n";
    return kFailed;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return status;
}
