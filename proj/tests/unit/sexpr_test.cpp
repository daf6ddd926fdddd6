#include <gtest/gtest.h>

#include "nsdial/nsdial.hpp"

using namespace nsdial;

TEST(Sexpr, GoldenTranslationOfStandardness) {
  FormulaP f = read_formula("(st N (var x))");
  EXPECT_EQ(translated_str(u_translate(f)), "(exists-st ((y N)) (forall-st () (eq N (var y) (var x))))");
}

TEST(Sexpr, LengthOfEmptyNormalisesToZero) {
  EXPECT_EQ(term_str(normalize(read_term("(len (nil N))"))), "zero");
}

TEST(Sexpr, TermRoundTrip) {
  for (const char* src : {"(lam (x N) (app succ (var x)))", "3", "(seq N 1 2)", "(nil (* N))",
                          "(app (nrec N) zero (lam (n N) (lam (y N) (app succ (var y)))) (var n))",
                          "(seqabs (x N) (single (var x)))", "(seqapp (var f (* (-> N (* N)))) 2)",
                          "(proj (concat (var s (* N)) (seq N zero)) 1)", "(app (const cons N) 1 (var s (* N)))",
                          "(app (lrec N N) zero (lam (a N) (lam (b N) (var b))) (var s (* N)))", "(default (-> N N))",
                          "(const seqabs N N)", "(app (lam (f (-> N N)) (var f)) succ 4)"}) {
    TermP t = read_term(src);
    EXPECT_EQ(term_str(t), src);
    TermP t2 = read_term(term_str(t));
    EXPECT_TRUE(alpha_eq(t, t2)) << src;
  }
}

TEST(Sexpr, InfersFreeVariableTypes) {
  TermP t = read_term("(app (var f) (len (var s)))");
  Context ctx;
  EXPECT_EQ(type_str(type_check(t, ctx)), "N");
  FormulaP f = read_formula("(in N (var x) (var s))");
  auto fv = formula_free_vars(f);
  EXPECT_EQ(type_str(fv.at("s")), "(* N)");
}

TEST(Sexpr, FormulaRoundTrip) {
  for (const char* src : {"(forall-st (x N) (exists-st (y N) (eq N (var y) (var x))))", "(imp bot (not (st N zero)))",
                          "(forall-lt (i (len (var s (* N)))) (exists-lt (j 2) (eq N (var i) (var j))))",
                          "(or (hyper N (var s (* N))) (subseteq N (var s (* N)) (var t (* N))))",
                          "(and (in N zero (seq N zero)) (exists (f (-> N N)) (eq N (app (var f) zero) 1)))"}) {
    FormulaP f = read_formula(src);
    EXPECT_EQ(formula_str(f), src);
    EXPECT_TRUE(formula_alpha_eq(f, read_formula(formula_str(f))));
  }
}

TEST(Sexpr, TranslatedRoundTrip) {
  for (Flavor fl : {Flavor::U, Flavor::Dst}) {
    TranslatedFormula tf = translate(read_formula("(imp (forall-st (x N) (st N (var x))) (exists-st (y N) (eq N (var y) 0)))"), fl);
    std::string s = translated_str(tf);
    EXPECT_EQ(translated_str(read_translated(s, fl)), s);
    EXPECT_TRUE(tf_alpha_eq(tf, read_translated(s, fl)));
  }
}

TEST(Sexpr, ProofAndBundleRoundTrip) {
  const char* src = R"sx((proof u
  (mp
    (axiom allst-intro (binds (x (n N)) (A (imp (st N (var n)) (st N (app succ (var n)))))))
    (axiom k (binds (A (eq N 0 0)) (B bot))))))sx";
  ProofFile pf = read_proof(src);
  std::string printed = proof_str(pf.proof, pf.flavor);
  ProofFile again = read_proof(printed);
  EXPECT_EQ(proof_str(again.proof, again.flavor), printed);

  ProofP ax = pf_axiom("st-app", {{"f", bind_term(mk_const(ConstKind::Succ))}, {"a", bind_term(mk_var("x", ty_nat()))}});
  for (Flavor fl : {Flavor::U, Flavor::Dst}) {
    RealiserBundle b = extract(ax, fl);
    std::string s = bundle_str(b);
    RealiserBundle b2 = read_bundle(s);
    EXPECT_EQ(bundle_str(b2), s);
    EXPECT_FALSE(verify_bundle(b2, Grid{}).is_counterexample()) << s;
  }
}

TEST(Sexpr, ErrorsCarryLines) {
  try {
    read_formula("(and (eq N 0 0)\n (eq N 0 (nil N)))");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line, 2);
  }
  EXPECT_THROW(read_term("(lam (x N) (var x)"), SyntaxError);
  EXPECT_THROW(read_proof("(proof u (axiom nope))"), SyntaxError);
}
