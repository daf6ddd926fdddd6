// Reference proofs and bundles used by the corpus and the acceptance run.
#ifndef NSDIAL_FIXTURES_HPP
#define NSDIAL_FIXTURES_HPP

#include "nsdial/extract.hpp"

namespace nsdial::fixtures {

inline TypeP N() { return ty_nat(); }

// λa. R a (λn m. S m) a
inline TermP double_fn() {
  TermP a = mk_var("a", N());
  TermP step = mk_lams({{"n", N()}, {"m", N()}}, mk_succ(mk_var("m", N())));
  return mk_lam("a", N(), mk_apps(mk_const(ConstKind::NatRec, {N()}), {a, step, a}));
}
// x + x written with the recursor
inline TermP double_of(const TermP& x) {
  TermP step = mk_lams({{"n", N()}, {"m", N()}}, mk_succ(mk_var("m", N())));
  return mk_apps(mk_const(ConstKind::NatRec, {N()}), {x, step, x});
}

// forall-st x exists-st y (y = x + x)
inline ProofP doubling_proof(Flavor fl = Flavor::U) {
  derive::Builder b{fl};
  TermP x = mk_var("x", N()), f = double_fn(), fx = mk_app(f, x), tx = double_of(x);
  TypeP NN = ty_arrow(N(), N());
  FormulaP stf = f_st(NN, f), stx = f_st(N(), x), stfx = f_st(N(), fx);
  FormulaP eqy = f_eq(N(), mk_var("y", N()), tx);

  ProofP andi = pf_axiom("and-i", derive::ab(stf, stx));
  ProofP to_pair = pf_mp(andi, pf_axiom("st-closed", {{"a", bind_term(f)}}));  // st x -> st f & st x
  ProofP app = pf_axiom("st-app", {{"f", bind_term(f)}, {"a", bind_term(x)}});
  ProofP st_fx = b.compose(to_pair, app);  // st x -> st (f x)

  FormulaP eqfx = f_eq(N(), fx, tx);
  ProofP conv = pf_axiom("conv", {{"a", bind_term(fx)}, {"b", bind_term(tx)}});
  ProofP pair = b.s_mp(pf_axiom("and-i", derive::ab(stfx, eqfx)), b.weaken(stfx, conv));  // st (f x) -> st (f x) & f x = x + x

  FormulaP body = f_and(f_st(N(), mk_var("y", N())), eqy);
  ProofP intro = pf_axiom("ex-intro", {{"x", bind_var("y", N())}, {"A", bind_formula(body)}, {"b", bind_term(fx)}});
  ProofP exst = pf_axiom("exst-intro", {{"x", bind_var("y", N())}, {"A", bind_formula(eqy)}});
  ProofP chain = b.compose(b.compose(b.compose(st_fx, pair), intro), exst);  // st x -> exists-st y ...

  ProofP all = b.generalize({"x", N()}, chain);
  FormulaP goal = f_exists_st("y", N(), eqy);
  ProofP allst = pf_axiom("allst-intro", {{"x", bind_var("x", N())}, {"A", bind_formula(goal)}});
  return pf_mp(allst, all);
}

// forall-st n st n, by external induction
inline ProofP ir_st_proof(Flavor fl = Flavor::U) {
  derive::Builder b{fl};
  TermP n = mk_var("n", N()), succ = mk_const(ConstKind::Succ);
  TypeP NN = ty_arrow(N(), N());
  ProofP to_pair = pf_mp(pf_axiom("and-i", derive::ab(f_st(NN, succ), f_st(N(), n))), pf_axiom("st-closed", {{"a", bind_term(succ)}}));
  ProofP step0 = b.compose(to_pair, pf_axiom("st-app", {{"f", bind_term(succ)}, {"a", bind_term(n)}}));
  ProofP gen = b.generalize({"n", N()}, b.weaken(f_st(N(), n), step0));
  FormulaP phi = f_imp(f_st(N(), n), f_st(N(), mk_succ(n)));
  ProofP step = pf_mp(pf_axiom("allst-intro", {{"x", bind_var("n", N())}, {"A", bind_formula(phi)}}), gen);
  return pf_ind_st(pf_axiom("st-closed", {{"a", bind_term(mk_zero())}}), step);
}

// -- corrupted bundles; each must yield a counterexample

// sequence overspill, nonstandard flavour, challenge dropped
inline RealiserBundle bad_overspill() {
  TypeP NS = ty_star(N());
  FormulaP phi = f_eq(N(), mk_len(N(), mk_var("s", NS)), mk_zero());
  RealiserBundle b = extract(pf_axiom("os", {{"s", bind_var("s", NS)}, {"A", bind_formula(phi)}}), Flavor::Dst);
  b.terms = {mk_seqabs({"r", NS}, mk_nil(NS))};
  return b;
}

// doubling witness replaced by the identity
inline RealiserBundle bad_doubling() {
  RealiserBundle b = extract(doubling_proof(Flavor::U), Flavor::U);
  b.terms = {mk_lam("x", N(), mk_var("x", N()))};
  return b;
}

// sequence underspill, uniform flavour, empty witness
inline RealiserBundle bad_underspill() {
  TypeP NS = ty_star(N());
  FormulaP phi = f_in(N(), mk_zero(), mk_var("s", NS));
  RealiserBundle b = extract(pf_axiom("us", {{"s", bind_var("s", NS)}, {"A", bind_formula(phi)}}), Flavor::U);
  b.terms = {mk_lam("r", NS, mk_nil(N()))};
  return b;
}

}  // namespace nsdial::fixtures

#endif
