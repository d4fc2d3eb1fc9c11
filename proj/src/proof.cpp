#include "wa/proof.hpp"

#include <algorithm>
#include <sstream>

#include "wa/parse.hpp"

namespace wa {

namespace {

constexpr const char* kRuleNames[] = {"axiom", "hyp",   "assume", "refl",  "eqsub", "andi",  "ande1",
                                      "ande2", "ori1",  "ori2",   "ore",   "impi",  "impe",  "negi",
                                      "nege",  "dne",   "iffi",   "iffe1", "iffe2", "alli",  "alle",
                                      "exi",   "exe",   "unfold", "fold"};

bool same(const Formula& a, const Formula& b) { return equal(a, b) || alpha_equal(a, b); }

struct Failure {
  std::string msg;
};

[[noreturn]] void fail(const std::string& m) { throw Failure{m}; }

void need(bool c, const std::string& m) {
  if (!c) fail(m);
}

using Open = std::vector<std::uint32_t>;  // sorted ids of undischarged Assume steps

Open merge(const Open& a, const Open& b) {
  Open out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Open without(const Open& a, std::size_t h) {
  Open out;
  for (auto x : a)
    if (x != h) out.push_back(x);
  return out;
}

}  // namespace

std::string to_string(Rule r) { return kRuleNames[static_cast<int>(r)]; }

Rule rule_from_string(const std::string& s) {
  for (std::size_t i = 0; i < std::size(kRuleNames); ++i)
    if (s == kRuleNames[i]) return static_cast<Rule>(i);
  throw std::invalid_argument("unknown rule '" + s + "'");
}

CheckResult check(const Proof& p, const ProofGoal& g) {
  CheckResult res;
  if (p.steps.empty()) {
    res.message = "empty proof";
    return res;
  }
  if (p.steps.size() > kMaxProofSteps) {
    res.message = "proof exceeds " + std::to_string(kMaxProofSteps) + " steps";
    return res;
  }
  std::vector<Open> open(p.steps.size());
  std::size_t i = 0;
  try {
    for (; i < p.steps.size(); ++i) {
      const Step& s = p.steps[i];
      need(s.formula != nullptr, "missing formula");
      for (auto q : s.premises) need(q < i, "premise " + std::to_string(q) + " does not precede the step");
      auto prem = [&](std::size_t k) -> const Formula& {
        need(k < s.premises.size(), "missing premise");
        return p.steps[s.premises[k]].formula;
      };
      auto op = [&](std::size_t k) -> const Open& { return open[s.premises[k]]; };
      auto arity = [&](std::size_t n) { need(s.premises.size() == n, "rule " + to_string(s.rule) + " takes " + std::to_string(n) + " premises"); };
      auto assumption = [&](std::size_t k, const Formula& f) {
        const Step& h = p.steps[s.premises[k]];
        need(h.rule == Rule::Assume, "premise " + std::to_string(k) + " must be an assumption");
        need(same(h.formula, f), "assumption does not match");
      };
      auto no_free_in_open = [&](Var y, const Open& o) {
        for (auto h : o)
          need(!occurs_free(y, p.steps[h].formula), "eigenvariable " + var_name(y) + " free in an open assumption");
      };
      const Formula& F = s.formula;
      switch (s.rule) {
        case Rule::Axiom: {
          arity(0);
          need(axiom_in_theory(s.axiom, g.theory, g.cutoff),
               "axiom " + to_string(s.axiom) + " is not in " + g.theory + " at the goal's cutoff");
          need(equal(axiom_instance(s.axiom), F), "formula is not the instance " + to_string(s.axiom));
          break;
        }
        case Rule::Hyp: {
          arity(0);
          bool found = false;
          for (auto& h : g.hypotheses)
            if (same(h, F)) found = true;
          need(found, "not a hypothesis of the goal");
          break;
        }
        case Rule::Assume:
          arity(0);
          open[i] = {static_cast<std::uint32_t>(i)};
          break;
        case Rule::Refl:
          arity(0);
          need(F->kind == FKind::Eq && equal(F->args[0], F->args[1]), "refl needs t = t");
          break;
        case Rule::EqSub: {
          arity(2);
          const Formula& e = prem(0);
          need(e->kind == FKind::Eq, "first premise of eqsub must be an equation");
          need(s.motive != nullptr, "eqsub without motive");
          need(same(substitute(s.motive, s.var, e->args[0]), prem(1)), "second premise is not the motive at the left side");
          need(same(substitute(s.motive, s.var, e->args[1]), F), "conclusion is not the motive at the right side");
          open[i] = merge(op(0), op(1));
          break;
        }
        case Rule::AndI:
          arity(2);
          need(F->kind == FKind::And && same(F->a, prem(0)) && same(F->b, prem(1)), "andi mismatch");
          open[i] = merge(op(0), op(1));
          break;
        case Rule::AndE1:
        case Rule::AndE2: {
          arity(1);
          const Formula& c = prem(0);
          need(c->kind == FKind::And, "ande needs a conjunction");
          need(same(s.rule == Rule::AndE1 ? c->a : c->b, F), "ande mismatch");
          open[i] = op(0);
          break;
        }
        case Rule::OrI1:
        case Rule::OrI2:
          arity(1);
          need(F->kind == FKind::Or && same(s.rule == Rule::OrI1 ? F->a : F->b, prem(0)), "ori mismatch");
          open[i] = op(0);
          break;
        case Rule::OrE: {
          arity(5);
          const Formula& d = prem(0);
          need(d->kind == FKind::Or, "ore needs a disjunction");
          assumption(1, d->a);
          assumption(3, d->b);
          need(same(prem(2), F) && same(prem(4), F), "ore cases must both conclude the formula");
          open[i] = merge(op(0), merge(without(op(2), s.premises[1]), without(op(4), s.premises[3])));
          break;
        }
        case Rule::ImpI:
          arity(2);
          need(F->kind == FKind::Imp, "impi concludes an implication");
          assumption(0, F->a);
          need(same(prem(1), F->b), "impi body mismatch");
          open[i] = without(op(1), s.premises[0]);
          break;
        case Rule::ImpE: {
          arity(2);
          const Formula& m = prem(0);
          need(m->kind == FKind::Imp && same(m->a, prem(1)) && same(m->b, F), "impe mismatch");
          open[i] = merge(op(0), op(1));
          break;
        }
        case Rule::NegI:
          arity(3);
          need(F->kind == FKind::Not, "negi concludes a negation");
          assumption(0, F->a);
          need(prem(2)->kind == FKind::Not && same(prem(2)->a, prem(1)), "negi needs p and ~p");
          open[i] = without(merge(op(1), op(2)), s.premises[0]);
          break;
        case Rule::NegE:
          arity(2);
          need(prem(1)->kind == FKind::Not && same(prem(1)->a, prem(0)), "nege needs p and ~p");
          open[i] = merge(op(0), op(1));
          break;
        case Rule::Dne:
          arity(1);
          need(prem(0)->kind == FKind::Not && prem(0)->a->kind == FKind::Not && same(prem(0)->a->a, F), "dne mismatch");
          open[i] = op(0);
          break;
        case Rule::IffI:
          arity(2);
          need(F->kind == FKind::Iff, "iffi concludes a biconditional");
          need(same(prem(0), imp(F->a, F->b)) && same(prem(1), imp(F->b, F->a)), "iffi mismatch");
          open[i] = merge(op(0), op(1));
          break;
        case Rule::IffE1:
        case Rule::IffE2: {
          arity(2);
          const Formula& b = prem(0);
          need(b->kind == FKind::Iff, "iffe needs a biconditional");
          bool fwd = s.rule == Rule::IffE1;
          need(same(fwd ? b->a : b->b, prem(1)) && same(fwd ? b->b : b->a, F), "iffe mismatch");
          open[i] = merge(op(0), op(1));
          break;
        }
        case Rule::AllI: {
          arity(1);
          need(F->kind == FKind::All, "alli concludes a universal");
          need(s.var == F->var || !occurs_free(s.var, F), "eigenvariable free in the conclusion");
          need(same(substitute(F->a, F->var, var(s.var)), prem(0)), "alli premise mismatch");
          no_free_in_open(s.var, op(0));
          open[i] = op(0);
          break;
        }
        case Rule::AllE:
          arity(1);
          need(prem(0)->kind == FKind::All && s.term, "alle needs a universal and a term");
          need(same(substitute(prem(0)->a, prem(0)->var, s.term), F), "alle mismatch");
          open[i] = op(0);
          break;
        case Rule::ExI:
          arity(1);
          need(F->kind == FKind::Ex && s.term, "exi concludes an existential from a term");
          need(same(substitute(F->a, F->var, s.term), prem(0)), "exi mismatch");
          open[i] = op(0);
          break;
        case Rule::ExE: {
          arity(3);
          const Formula& e = prem(0);
          need(e->kind == FKind::Ex, "exe needs an existential");
          assumption(1, substitute(e->a, e->var, var(s.var)));
          need(same(prem(2), F), "exe conclusion mismatch");
          need(!occurs_free(s.var, F), "eigenvariable free in the conclusion");
          need(s.var == e->var || !occurs_free(s.var, e), "eigenvariable free in the existential");
          Open rest = without(op(2), s.premises[1]);
          no_free_in_open(s.var, rest);
          no_free_in_open(s.var, op(0));
          open[i] = merge(op(0), rest);
          break;
        }
        case Rule::Unfold:
          arity(1);
          need(prem(0)->kind == FKind::BAll || prem(0)->kind == FKind::BEx, "unfold needs a bounded quantifier");
          need(same(desugar_top(prem(0)), F), "unfold mismatch");
          open[i] = op(0);
          break;
        case Rule::Fold:
          arity(1);
          need(F->kind == FKind::BAll || F->kind == FKind::BEx, "fold concludes a bounded quantifier");
          need(same(desugar_top(F), prem(0)), "fold mismatch");
          open[i] = op(0);
          break;
      }
    }
  } catch (const Failure& f) {
    res.step = i;
    res.message = f.msg;
    return res;
  } catch (const std::exception& e) {
    res.step = i;
    res.message = e.what();
    return res;
  }
  const Step& last = p.steps.back();
  if (!open.back().empty()) {
    res.step = p.steps.size() - 1;
    res.message = "conclusion depends on undischarged assumption " + std::to_string(open.back().front());
    return res;
  }
  if (g.conclusion && !same(last.formula, g.conclusion)) {
    res.step = p.steps.size() - 1;
    res.message = "last step is not the goal";
    return res;
  }
  res.ok = true;
  return res;
}

std::vector<AxiomRef> axiom_leaves(const Proof& p) {
  std::vector<AxiomRef> out;
  for (auto& s : p.steps)
    if (s.rule == Rule::Axiom) out.push_back(s.axiom);
  return out;
}

// ----------------------------------------------------------------- format

std::string to_text(const Proof& p) {
  std::string out;
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    const Step& s = p.steps[i];
    out += std::to_string(i);
    out += '\t';
    out += to_string(s.rule);
    out += '\t';
    if (s.premises.empty()) out += '-';
    for (std::size_t k = 0; k < s.premises.size(); ++k) {
      if (k) out += ',';
      out += std::to_string(s.premises[k]);
    }
    out += '\t';
    switch (s.rule) {
      case Rule::Axiom: out += to_string(s.axiom); break;
      case Rule::AllE:
      case Rule::ExI: out += render(s.term); break;
      case Rule::AllI:
      case Rule::ExE: out += var_name(s.var); break;
      case Rule::EqSub: out += var_name(s.var) + "|" + render(s.motive); break;
      default: out += '-';
    }
    out += '\t';
    out += render(s.formula);
    out += '\n';
  }
  return out;
}

Proof proof_from_text(const std::string& text) {
  Proof p;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    try {
      std::vector<std::string> cols;
      std::size_t start = 0;
      for (int k = 0; k < 4; ++k) {
        auto tab = line.find('\t', start);
        if (tab == std::string::npos) throw std::invalid_argument("expected 5 tab-separated columns");
        cols.push_back(line.substr(start, tab - start));
        start = tab + 1;
      }
      cols.push_back(line.substr(start));
      if (std::stoull(cols[0]) != p.steps.size()) throw std::invalid_argument("step ids must be consecutive from 0");
      Step s;
      s.rule = rule_from_string(cols[1]);
      if (cols[2] != "-") {
        std::istringstream ps(cols[2]);
        std::string tok;
        while (std::getline(ps, tok, ',')) s.premises.push_back(std::stoull(tok));
      }
      const std::string& arg = cols[3];
      switch (s.rule) {
        case Rule::Axiom: s.axiom = parse_axiom_ref(arg); break;
        case Rule::AllE:
        case Rule::ExI: s.term = parse_term(arg); break;
        case Rule::AllI:
        case Rule::ExE: s.var = var_named(arg); break;
        case Rule::EqSub: {
          auto bar = arg.find('|');
          if (bar == std::string::npos) throw std::invalid_argument("eqsub argument needs var|motive");
          s.var = var_named(arg.substr(0, bar));
          s.motive = parse_formula(arg.substr(bar + 1));
          break;
        }
        default: break;
      }
      s.formula = parse_formula(cols[4]);
      p.steps.push_back(std::move(s));
    } catch (const std::exception& e) {
      throw std::invalid_argument("proof line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return p;
}

}  // namespace wa
