#include <gtest/gtest.h>

#include "nsdial/nsdial.hpp"

using namespace nsdial;

namespace {

TypeP N() { return ty_nat(); }
TermP v(const std::string& n) { return mk_var(n, N()); }
FormulaP eqn(TermP a, TermP b) { return f_eq(N(), std::move(a), std::move(b)); }

// components over a free variable, ranging from internal to external
std::vector<FormulaP> pool(const std::string& x) {
  return {eqn(v(x), mk_zero()), f_st(N(), v(x)), f_forall_st("w", N(), eqn(v(x), v("w"))),
          f_exists_st("w", N(), eqn(v("w"), v(x)))};
}

Grid small() {
  Grid g;
  g.nat_bound = 2;
  g.len_bound = 1;
  return g;
}

struct Tally {
  int valid = 0, unknown = 0;
};

void run(const ProofP& p, Flavor fl, Tally& t, const std::string& label) {
  RealiserBundle b;
  try {
    b = extract(p, fl);
  } catch (const std::exception& e) {
    ADD_FAILURE() << label << " [" << flavor_name(fl) << "]: " << e.what();
    return;
  }
  Verdict vd = verify_bundle(b, small());
  if (vd.is_counterexample()) {
    ADD_FAILURE() << label << " [" << flavor_name(fl) << "]: counterexample " << assignment_str(vd.env) << "\n"
                  << formula_str(b.target);
    return;
  }
  if (vd.is_valid()) ++t.valid;
  else ++t.unknown;
}

Binds fb(std::initializer_list<std::pair<std::string, FormulaP>> xs) {
  Binds b;
  for (auto& [k, f] : xs) b.emplace_back(k, bind_formula(f));
  return b;
}

}  // namespace

TEST(Extract, PropositionalSchemas) {
  for (Flavor fl : {Flavor::U, Flavor::Dst}) {
    Tally t;
    auto P = pool("x");
    for (auto& A : P)
      for (auto& B : P) {
        run(pf_axiom("k", fb({{"A", A}, {"B", B}})), fl, t, "k");
        for (const char* s : {"and-i", "and-l", "and-r", "or-l", "or-r"}) run(pf_axiom(s, fb({{"A", A}, {"B", B}})), fl, t, s);
        for (auto& C : P) {
          run(pf_axiom("s", fb({{"A", A}, {"B", B}, {"C", C}})), fl, t, "s");
          run(pf_axiom("or-e", fb({{"A", A}, {"B", B}, {"C", C}})), fl, t, "or-e");
        }
      }
    for (auto& A : P) run(pf_axiom("efq", fb({{"A", A}})), fl, t, "efq");
    EXPECT_GT(t.valid, 100) << flavor_name(fl);
  }
}

TEST(Extract, QuantifierSchemas) {
  for (Flavor fl : {Flavor::U, Flavor::Dst}) {
    Tally t;
    for (auto& A : pool("x")) {
      Binds b = {{"x", bind_var("x", N())}, {"A", bind_formula(A)}};
      for (const char* s : {"allst-elim", "allst-intro", "exst-elim", "exst-intro"}) run(pf_axiom(s, b), fl, t, s);
      Binds bi = b;
      bi.emplace_back("b", bind_term(mk_numeral(1)));
      run(pf_axiom("all-inst", bi), fl, t, "all-inst");
      run(pf_axiom("ex-intro", bi), fl, t, "ex-intro");
    }
    run(pf_axiom("st-eq", {{"a", bind_term(v("x"))}, {"b", bind_term(v("x"))}}), fl, t, "st-eq");
    run(pf_axiom("st-closed", {{"a", bind_term(mk_numeral(2))}}), fl, t, "st-closed");
    run(pf_axiom("st-app", {{"f", bind_term(mk_const(ConstKind::Succ))}, {"a", bind_term(v("x"))}}), fl, t, "st-app");
    TypeP NS = ty_star(N());
    for (auto& phi : {f_in(N(), mk_zero(), mk_var("s", NS)), eqn(mk_len(N(), mk_var("s", NS)), mk_zero())}) {
      Binds b = {{"s", bind_var("s", NS)}, {"A", bind_formula(phi)}};
      run(pf_axiom("os", b), fl, t, "os");
      run(pf_axiom("us", b), fl, t, "us");
    }
    EXPECT_GT(t.valid, 20) << flavor_name(fl);
  }
}

TEST(Extract, FlavourPrinciples) {
  for (Flavor fl : {Flavor::U, Flavor::Dst}) {
    Tally t;
    std::vector<FormulaP> bodies = {eqn(v("x"), v("y")), f_and(f_st(N(), v("x")), eqn(v("y"), v("y"))),
                                    f_forall_st("w", N(), eqn(v("x"), v("w")))};
    for (auto& A : bodies) {
      Binds b = {{"x", bind_var("x", N())}, {"y", bind_var("y", N())}, {"A", bind_formula(A)}};
      for (const char* s : fl == Flavor::U ? std::vector<const char*>{"nu", "ac-st"} : std::vector<const char*>{"ncr", "hac"})
        run(pf_axiom(s, b), fl, t, s);
    }
    for (auto& psi : {eqn(v("y"), mk_zero()), f_st(N(), v("y")), f_forall_st("w", N(), eqn(v("y"), v("w")))}) {
      Binds b = {{"x", bind_var("x", N())}, {"y", bind_var("y", N())}, {"A", bind_formula(eqn(v("x"), mk_zero()))},
                 {"B", bind_formula(psi)}};
      run(pf_axiom(fl == Flavor::U ? "ip-st" : "hip", b), fl, t, "ip");
    }
    EXPECT_GE(t.valid, 4) << flavor_name(fl);
  }
}

TEST(Extract, RulesAndInductionOnStandardness) {
  for (Flavor fl : {Flavor::U, Flavor::Dst}) {
    derive::Builder pb{fl};
    TermP n = v("n");
    // st n -> st (S n) from st-app with the closed successor
    ProofP sc = pf_axiom("st-closed", {{"a", bind_term(mk_const(ConstKind::Succ))}});
    ProofP app = pf_axiom("st-app", {{"f", bind_term(mk_const(ConstKind::Succ))}, {"a", bind_term(n)}});
    ProofP andi = pf_axiom("and-i", derive::ab(f_st(ty_arrow(N(), N()), mk_const(ConstKind::Succ)), f_st(N(), n)));
    ProofP step0 = pb.compose(pf_mp(andi, sc), app);  // st n -> st (S n)
    // forall n (st n -> (st n -> st (S n))) then allst-intro
    ProofP g2 = pb.generalize({"n", N()}, pb.weaken(f_st(N(), n), step0));
    ProofP intro = pf_axiom("allst-intro", {{"x", bind_var("n", N())}, {"A", bind_formula(f_imp(f_st(N(), n), f_st(N(), mk_succ(n))))}});
    ProofP step = pf_mp(intro, g2);
    ProofP base = pf_axiom("st-closed", {{"a", bind_term(mk_zero())}});
    ProofP ind = pf_ind_st(base, step);
    RealiserBundle b = extract(ind, fl);
    ASSERT_EQ(b.terms.size(), 1u);
    Grid g;
    g.nat_bound = 5;
    EXPECT_TRUE(verify_bundle(b, g).is_valid()) << term_str(b.terms[0]);
    if (fl == Flavor::U) {
      TermP expect = mk_lam("n", N(), mk_apps(mk_const(ConstKind::NatRec, {N()}),
                                              {mk_zero(), mk_lams({{"m", N()}, {"y", N()}}, mk_succ(v("y"))), n}));
      EXPECT_TRUE(alpha_eq(b.terms[0], expect)) << term_str(b.terms[0]);
      for (int k : {0, 3}) EXPECT_EQ(eval_nat(mk_app(b.terms[0], mk_numeral(k))), static_cast<std::uint64_t>(k));
    }
  }
}
