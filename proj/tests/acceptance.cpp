// Acceptance run: one PASS/FAIL line per criterion.
#include <chrono>
#include <iostream>

#include "nsdial/corpus.hpp"
#include "nsdial/nsdial.hpp"

using namespace nsdial;

namespace {

TypeP N() { return ty_nat(); }
TypeP NS() { return ty_star(ty_nat()); }

struct Outcome {
  bool pass = true;
  std::string detail;
  void need(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    detail += (detail.empty() ? "" : "; ") + what;
  }
};

Grid grid(std::uint64_t b, std::size_t l) {
  Grid g;
  g.nat_bound = b;
  g.len_bound = l;
  return g;
}

Outcome suites(const std::vector<SuiteResult>& rs) {
  Outcome o;
  std::size_t n = 0;
  for (const auto& r : rs) {
    n += r.checked;
    o.need(r.ok(), r.name + ": " + std::to_string(r.failures) + " failures, first " + r.first_failure);
  }
  if (o.pass) o.detail = std::to_string(rs.size()) + " groups, " + std::to_string(n) + " instances";
  return o;
}

Outcome c1() { return suites(defining_equations(grid(3, 2))); }
Outcome c2() { return suites(sequence_lemmas(grid(3, 2))); }

Outcome c3() {
  Outcome o;
  Gen g;
  std::size_t bad_star = 0, bad_internal = 0;
  for (int i = 0; i < 1000; ++i) {
    TranslatedFormula tf = dst_translate(g.formula(GenOptions{}));
    for (const auto& v : tf.exist)
      if (!is_star(v.ty)) ++bad_star;
    if (!is_internal(tf.matrix)) ++bad_internal;
  }
  o.need(bad_star == 0, std::to_string(bad_star) + " non-sequence existentials");
  o.need(bad_internal == 0, std::to_string(bad_internal) + " external matrices");
  // hand unfolding: exists-st y gives u:N* with y in u; forall-st x turns u into U:(N->N*)* read at x
  const std::string want =
      "(exists-st ((S (* (-> N (* N))))) (forall-st ((x N)) (exists-lt (i (len (seqapp (var S) (var x)))) "
      "(eq N (proj (seqapp (var S) (var x)) (var i)) (var x)))))";
  std::string got = translated_str(dst_translate(read_formula("(forall-st (x N) (exists-st (y N) (eq N (var y) (var x))))")));
  o.need(got == want, "worked example printed " + got);
  if (o.pass) o.detail = "1000 formulas, worked example exact";
  return o;
}

Outcome c4() {
  Outcome o;
  Gen g;
  GenOptions opt;
  opt.data_only = true;
  opt.any_imp = false;
  Grid gr = grid(2, 2);
  int accepted = 0, tries = 0, valid = 0;
  while (accepted < 200 && tries < 100000) {
    ++tries;
    TranslatedFormula tf = dst_translate(g.formula(opt));
    if (!closure_checkable(tf)) continue;
    ++accepted;
    Verdict v = check_upward_closed(tf, gr);
    if (v.is_valid()) ++valid;
    else if (v.is_counterexample()) o.need(false, "counterexample " + assignment_str(v.env) + " in " + translated_str(tf));
    else o.need(false, "undecided: " + v.reason);
  }
  o.need(accepted == 200, "only " + std::to_string(accepted) + " data-typed formulas generated");
  if (o.pass) o.detail = std::to_string(valid) + " GridValid of " + std::to_string(accepted);
  return o;
}

Outcome c5() {
  Outcome o;
  Gen g;
  int fail = 0;
  for (int i = 0; i < 500; ++i) {
    FormulaP f = g.sigma_st();
    TranslatedFormula want;
    want.flavor = Flavor::U;
    FormulaP b = f;
    while (b->kind == Formula::Kind::ExistsSt) {
      want.exist.push_back({b->var, b->ty});
      b = b->l;
    }
    while (b->kind == Formula::Kind::ForallSt) {
      want.univ.push_back({b->var, b->ty});
      b = b->l;
    }
    want.matrix = desugar(b);
    if (!tf_alpha_eq(u_translate(f), want) && fail++ == 0) o.need(false, "not idempotent on " + formula_str(f));
  }
  o.need(fail == 0, std::to_string(fail) + " idempotence failures");
  int bad = 0;
  for (int i = 0; i < 1000; ++i) {
    Classification c = classify(u_translate(g.formula(GenOptions{})).matrix);
    if (!c.internal || !c.or_free) ++bad;
  }
  o.need(bad == 0, std::to_string(bad) + " matrices external or with disjunction");
  if (o.pass) o.detail = "500 forms, 1000 matrices";
  return o;
}

// realiser terms per schema, written out from the printed formulas
Outcome c6() {
  Outcome o;
  int matched = 0;
  auto check = [&](const std::string& label, const ProofP& p, Flavor fl, const std::vector<TermP>& want) {
    RealiserBundle b;
    try {
      b = extract(p, fl);
    } catch (const std::exception& e) {
      o.need(false, label + ": " + e.what());
      return;
    }
    bool same = b.terms.size() == want.size();
    for (std::size_t i = 0; same && i < want.size(); ++i) same = alpha_eq(b.terms[i], normalize(want[i]));
    if (same) ++matched;
    std::string got, exp;
    for (auto& t : b.terms) got += " " + term_str(t);
    for (auto& t : want) exp += " " + term_str(normalize(t));
    o.need(same, label + " extracted" + got + " but the printed realiser is" + exp);
  };
  TermP u = mk_var("u", N()), w = mk_var("w", N());
  FormulaP A = f_exists_st("u", N(), f_forall_st("w", N(), f_eq(N(), u, w)));

  // forall z A -> A[1/z]: X' = \x.x, S = \x y'.<y'>
  check("all-inst", pf_axiom("all-inst", {{"x", bind_var("z", N())}, {"A", bind_formula(A)}, {"b", bind_term(mk_numeral(1))}}),
        Flavor::U,
        {mk_lam("x", N(), mk_var("x", N())),
         mk_lams({{"x", N()}, {"y", N()}}, mk_single(N(), mk_var("y", N())))});

  // A[1/z] -> exists z A: X' = \x.x, S = \x t.t
  check("ex-intro", pf_axiom("ex-intro", {{"x", bind_var("z", N())}, {"A", bind_formula(A)}, {"b", bind_term(mk_numeral(1))}}),
        Flavor::U,
        {mk_lam("x", N(), mk_var("x", N())), mk_lams({{"x", N()}, {"t", NS()}}, mk_var("t", NS()))});

  TermP f = mk_var("f", ty_arrow(N(), N())), x = mk_var("x", N());
  // st f & st x -> st (f x): Y = \f' x'. f' x'
  check("st-app", pf_axiom("st-app", {{"f", bind_term(f)}, {"a", bind_term(x)}}), Flavor::U,
        {mk_lams({{"f", ty_arrow(N(), N())}, {"x", N()}}, mk_app(f, x))});
  // st x & x = y -> st y: Y' = \x'.x'
  check("st-eq", pf_axiom("st-eq", {{"a", bind_term(x)}, {"b", bind_term(mk_var("y", N()))}}), Flavor::U,
        {mk_lam("x", N(), x)});

  // an internal or-free axiom carries no terms
  check("internal", pf_axiom("k", derive::ab(f_eq(N(), x, x), f_eq(N(), mk_zero(), mk_zero()))), Flavor::U, {});

  FormulaP phi = f_eq(N(), mk_len(N(), mk_var("s", NS())), mk_len(N(), mk_var("s", NS())));
  Binds sb = {{"s", bind_var("s", NS())}, {"A", bind_formula(phi)}};
  TermP s1 = mk_var("s", NS());
  check("os-or-free", pf_axiom("os", sb), Flavor::U, {mk_lam("s", NS(), mk_single(NS(), s1))});
  check("us-or-free", pf_axiom("us", sb), Flavor::U, {mk_lam("s", NS(), s1)});
  check("os-dst", pf_axiom("os", sb), Flavor::Dst, {mk_seqabs({"s", NS()}, mk_single(NS(), s1))});

  // \s''. s''_0 . ... . s''_(|s''|-1), read with s'' a sequence of sequences
  TypeP NSS = ty_star(NS());
  TermP s2 = mk_var("t", NSS);
  TermP flat = mk_apps(mk_const(ConstKind::ListRec, {NS(), NS()}),
                       {mk_nil(N()), mk_lams({{"acc", NS()}, {"z", NS()}}, mk_concat(N(), mk_var("z", NS()), mk_var("acc", NS()))), s2});
  try {
    TermP t = mk_seqabs({"t", NSS}, flat);
    Context ctx;
    type_check(t, ctx);
    check("us-dst", pf_axiom("us", sb), Flavor::Dst, {t});
  } catch (const TypeError& e) {
    o.need(false, std::string("us-dst: printed realiser is ill-typed (") + e.what() + ")");
  }
  if (o.pass) o.detail = std::to_string(matched) + " schemas exact";
  else o.detail = std::to_string(matched) + " exact; " + o.detail;
  return o;
}

Outcome c7() {
  Outcome o;
  ProofP p = fixtures::doubling_proof(Flavor::U);
  try {
    FormulaP concl = check_proof(p, Flavor::U);
    RealiserBundle b = extract(p, Flavor::U);
    o.need(b.terms.size() == 1, "expected one term");
    if (b.terms.size() != 1) return o;
    Context ctx;
    o.need(type_eq(type_check(b.terms[0], ctx), ty_arrow(N(), N())), "T is not of type N -> N");
    o.need(term_closed(b.terms[0]), "T is not closed");
    Verdict v = verify_bundle(b, grid(20, 2));
    o.need(v.is_valid(), std::string("verify at B=20: ") + verdict_name(v.kind));
    // doubling oracle, computed independently
    for (std::uint64_t k : {0u, 1u, 5u}) {
      std::uint64_t got = eval_nat(mk_app(b.terms[0], mk_numeral(k)));
      o.need(got == k + k, "T " + std::to_string(k) + " = " + std::to_string(got));
    }
    if (o.pass) o.detail = "T = " + term_str(b.terms[0]) + ", " + std::to_string(v.points) + " points";
  } catch (const std::exception& e) {
    o.need(false, e.what());
  }
  return o;
}

Outcome c8() {
  Outcome o;
  try {
    RealiserBundle b = extract(fixtures::ir_st_proof(Flavor::U), Flavor::U);
    o.need(b.terms.size() == 1, "expected one term");
    if (b.terms.size() != 1) return o;
    // \n. R t1 T2 n
    const TermP& t = b.terms[0];
    bool shape = t->kind == Term::Kind::Lam;
    if (shape) {
      auto [h, args] = spine(t->fun);
      shape = h->kind == Term::Kind::Const && h->ck == ConstKind::NatRec && args.size() == 3 &&
              args[2]->kind == Term::Kind::Var && args[2]->name == t->name;
    }
    o.need(shape, "head is not lambda n. R t1 T2 n: " + term_str(t));
    Verdict v = verify_bundle(b, grid(5, 2));
    o.need(v.is_valid(), std::string("verify at B=5: ") + verdict_name(v.kind));
    if (o.pass) o.detail = term_str(t);
  } catch (const std::exception& e) {
    o.need(false, e.what());
  }
  return o;
}

Outcome c9() {
  Outcome o;
  std::pair<const char*, RealiserBundle> bad[] = {{"overspill", fixtures::bad_overspill()},
                                                  {"doubling", fixtures::bad_doubling()},
                                                  {"underspill", fixtures::bad_underspill()}};
  Grid g;
  for (auto& [name, b] : bad) {
    Verdict v = verify_bundle(b, g);
    o.need(v.is_counterexample(), std::string(name) + ": " + verdict_name(v.kind));
    if (v.is_counterexample()) {
      o.need(replay(b, v.env, g) == Truth::False, std::string(name) + ": replay not false");
      o.detail += (o.detail.empty() ? "" : ", ") + std::string(name) + " " + assignment_str(v.env);
    }
  }
  return o;
}

Outcome c10() {
  Outcome o;
  std::filesystem::path dir = std::filesystem::path(NSDIAL_FIXTURES) / "corpus";
  CorpusReport a = run_corpus(dir, Grid{}), b = run_corpus(dir, Grid{});
  o.need(report_without_time(a.doc) == report_without_time(b.doc), "reports differ");
  o.need(a.failures == 0, std::to_string(a.failures) + " corpus failures");
  std::size_t rt = 0;
  for (const auto& it : a.doc["items"]) {
    if (it.contains("roundtrip") && it["roundtrip"].get<bool>()) ++rt;
    else if (!it.contains("error")) o.need(false, it["file"].get<std::string>() + " does not round-trip");
  }
  if (o.pass) o.detail = std::to_string(a.doc["items"].size()) + " fixtures, " + std::to_string(rt) + " round-trips";
  return o;
}

}  // namespace

int main() {
  std::vector<std::pair<const char*, Outcome (*)()>> all = {
      {"defining equations", c1}, {"sequence lemmas", c2},      {"dst invariants", c3},   {"upward closure", c4},
      {"u idempotence", c5},      {"extraction fidelity", c6}, {"doubling program", c7}, {"external induction", c8},
      {"negative controls", c9},  {"determinism", c10}};
  int failed = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = all[i].second();
    } catch (const std::exception& e) {
      o.need(false, std::string("exception: ") + e.what());
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << all[i].first << " (" << ms << " ms): " << o.detail << "\n";
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
