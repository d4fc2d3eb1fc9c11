#include "wa/certificates.hpp"

#include <stdexcept>

#include "wa/purify.hpp"

namespace wa {

namespace {

// Bound variables for cert(v): x, y, z, w, skipping v.
std::vector<Var> helpers(Var v, std::size_t n) {
  static const char* names[] = {"x", "y", "z", "w", "u", "t"};
  std::vector<Var> out;
  for (const char* nm : names) {
    Var x = var_named(nm);
    if (x != v) out.push_back(x);
    if (out.size() == n) break;
  }
  return out;
}

Formula ball_list(const std::vector<Var>& xs, const Term& bound, const Formula& body) {
  Formula f = body;
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) f = ball(*it, bound, f);
  return f;
}

}  // namespace

std::vector<Formula> cert_conjuncts(Var v, bool naive) {
  auto h = helpers(v, 4);
  Term V = var(v), x = var(h[0]), y = var(h[1]), z = var(h[2]), w = var(h[3]);
  Term xy = mul(x, y);
  Term xyz = add(xy, z);
  std::vector<Formula> a;
  a.push_back(le(zero(), V));                                                            // A1
  a.push_back(ball_lt(h[0], V, le(succ(x), V)));                                         // A2
  if (naive) {
    a.push_back(all(h[0], iff(le(x, zero()), eq(x, zero()))));                          // A3
    a.push_back(ball_lt(h[0], V, all(h[1], iff(le(y, succ(x)), disj(le(y, x), eq(y, succ(x)))))));  // A4
  } else {
    a.push_back(conj(ball(h[0], zero(), eq(x, zero())), le(zero(), zero())));
    a.push_back(ball_lt(h[0], V,
                        conj_list({ball(h[1], succ(x), disj(le(y, x), eq(y, succ(x)))),
                                   ball(h[1], x, le(y, succ(x))), le(succ(x), succ(x))})));
  }
  a.push_back(ball_list({h[0], h[1], h[2]}, V, neg(eq(succ(xyz), zero()))));              // A5
  a.push_back(ball_list({h[0], h[1], h[2], h[3]}, V, imp(eq(succ(xyz), succ(w)), eq(xyz, w))));  // A6
  a.push_back(ball_list({h[0], h[1]}, V, eq(add(xy, zero()), xy)));                      // A7
  a.push_back(ball_list({h[0], h[1], h[2]}, V, eq(add(xy, succ(z)), succ(xyz))));         // A8
  a.push_back(ball(h[0], V, eq(mul(x, zero()), zero())));                                 // A9
  a.push_back(ball_list({h[0], h[1]}, V, eq(mul(x, succ(y)), add(xy, x))));               // A10
  return a;
}

Formula cert_formula(Var v, bool naive) { return conj_list(cert_conjuncts(v, naive)); }

Formula wb_formula(Var x) {
  Var y = var_named(x == var_named("y") ? "z" : "y");
  return conj(le(zero(), var(x)), ball_lt(y, var(x), le(succ(var(y)), var(x))));
}

namespace {

void require_one_sigma1(const Formula& s, const char* who) {
  if (!is_closed(s) || !is_pure_one_sigma1(s))
    throw std::invalid_argument(std::string(who) + ": input is not a pure 1-Sigma1 sentence");
}

// sigma0 with its variable renamed to x, where x avoids the helper names of cert.
std::pair<Var, Formula> open_body(const Formula& sigma) {
  Var x = sigma->var;
  Formula body = sigma->a;
  // cert(x) binds x, y, z, w internally; those never clash with x itself
  return {x, body};
}

}  // namespace

Formula certify(const Formula& sigma) {
  require_one_sigma1(sigma, "certify");
  auto [x, body] = open_body(sigma);
  return ex(x, conj(cert_formula(x), body));
}

Formula certify_p(const Formula& sigma) {
  require_one_sigma1(sigma, "certify_p");
  auto [v, body] = open_body(sigma);
  Var y = v == var_named("x") ? var_named("y") : var_named("x");
  Formula guard = ball(y, var(v), rel(sym::P, {var(y)}));
  return conj(conj_list(id_axioms(Signature::Lap())), ex(v, conj_list({cert_formula(v), body, guard})));
}

CertifiedSentence bracket(const Formula& lambda, Flavor flavor) {
  if (!is_closed(lambda) || !is_sigma1(lambda)) throw std::invalid_argument("bracket: input is not a Sigma1 sentence");
  CertifiedSentence c;
  c.original = lambda;
  c.pure_form = collapse_to_one(lambda);
  c.certified = flavor == Flavor::Plain ? certify(c.pure_form) : certify_p(c.pure_form);
  c.flavor = flavor;
  return c;
}

namespace {

void require_shape(const Formula& f) {
  if (f->kind != FKind::Ex) throw std::invalid_argument("witness comparison needs a formula of shape exists x phi0(x)");
}

}  // namespace

Comparison wc_le(const Formula& phi, const Formula& psi) {
  require_shape(phi);
  require_shape(psi);
  return {false, phi, psi};
}

Comparison wc_lt(const Formula& phi, const Formula& psi) {
  require_shape(phi);
  require_shape(psi);
  return {true, phi, psi};
}

Comparison wc_bot(const Comparison& c) { return {!c.strict, c.psi, c.phi}; }

Formula comparison_formula(const Comparison& c) {
  Var x = c.phi->var;
  Formula phi0 = c.phi->a;
  // y must avoid x and everything free in phi0
  std::vector<Var> avoid = free_vars(c.phi->a);
  avoid.push_back(x);
  for (Var v : free_vars(c.psi)) avoid.push_back(v);
  Var y = c.psi->var;
  if (std::find(avoid.begin(), avoid.end(), y) != avoid.end()) y = fresh_var(avoid);
  Formula psi0 = substitute(c.psi->a, c.psi->var, var(y));
  Formula guard = c.strict ? ball(y, var(x), neg(psi0)) : ball_lt(y, var(x), neg(psi0));
  return ex(x, conj(phi0, guard));
}

}  // namespace wa
