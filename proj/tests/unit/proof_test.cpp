#include <gtest/gtest.h>

#include "nsdial/proof.hpp"

using namespace nsdial;

namespace {

FormulaP eqn(TermP a, TermP b) { return f_eq(ty_nat(), std::move(a), std::move(b)); }
TermP x() { return mk_var("x", ty_nat()); }

ProofError::Code code_of(const ProofP& p, Flavor fl) {
  try {
    check_proof(p, fl);
  } catch (const ProofError& e) {
    return e.code;
  }
  ADD_FAILURE() << "expected a proof error";
  return ProofError::Code::UnsupportedSchema;
}

}  // namespace

TEST(ProofKernel, IdentityViaCombinators) {
  derive::Builder b{Flavor::U};
  FormulaP A = eqn(x(), x());
  FormulaP c = b.concl(b.identity(A));
  EXPECT_TRUE(formula_alpha_eq(c, f_imp(A, A)));
}

TEST(ProofKernel, ModusPonensMismatch) {
  ProofP k = pf_axiom("k", derive::ab(eqn(x(), x()), eqn(mk_zero(), mk_zero())));
  ProofP bad = pf_mp(k, pf_axiom("refl", {{"a", bind_term(mk_zero())}}));
  EXPECT_EQ(code_of(bad, Flavor::U), ProofError::Code::BadInstantiation);
}

TEST(ProofKernel, EigenvariableCondition) {
  FormulaP A = eqn(x(), x());
  ProofP id = derive::Builder{Flavor::U}.identity(A);
  EXPECT_EQ(code_of(pf_forall_rule({"x", ty_nat()}, id), Flavor::U), ProofError::Code::EigenvariableViolation);
}

TEST(ProofKernel, FlavorRestrictions) {
  ProofP sa = pf_axiom("sa", {{"sigma", bind_type(ty_nat())}});
  EXPECT_EQ(code_of(sa, Flavor::U), ProofError::Code::FlavorViolation);
  EXPECT_NO_THROW(check_proof(sa, Flavor::Dst));
  ProofP nu = pf_axiom("nu", {{"x", bind_var("x", ty_nat())}, {"y", bind_var("y", ty_nat())},
                              {"A", bind_formula(eqn(x(), mk_var("y", ty_nat())))}});
  EXPECT_EQ(code_of(nu, Flavor::Dst), ProofError::Code::FlavorViolation);
  EXPECT_NO_THROW(check_proof(nu, Flavor::U));
  ProofP d = pf_axiom("delta", {{"A", bind_formula(f_or(eqn(mk_zero(), mk_zero()), bot_formula()))}});
  EXPECT_EQ(code_of(d, Flavor::U), ProofError::Code::FlavorViolation);
  EXPECT_EQ(code_of(pf_axiom("nope", {}), Flavor::U), ProofError::Code::UnsupportedSchema);
}

TEST(ProofKernel, InstantiationChecks) {
  ProofP conv = pf_axiom("conv", {{"a", bind_term(mk_numeral(1))}, {"b", bind_term(mk_zero())}});
  EXPECT_EQ(code_of(conv, Flavor::U), ProofError::Code::BadInstantiation);
  ProofP st = pf_axiom("st-closed", {{"a", bind_term(x())}});
  EXPECT_EQ(code_of(st, Flavor::U), ProofError::Code::BadInstantiation);
}

TEST(ProofKernel, InternalInduction) {
  // forall x (x + 0 = x) style: trivial instance with A = (x = x)
  FormulaP A = eqn(x(), x());
  ProofP base = pf_axiom("refl", {{"a", bind_term(mk_zero())}});
  ProofP step = pf_mp(pf_axiom("k", derive::ab(eqn(mk_succ(x()), mk_succ(x())), A)),
                      pf_axiom("refl", {{"a", bind_term(mk_succ(x()))}}));
  FormulaP c = check_proof(pf_ind({"", nullptr}, base, step), Flavor::U);
  EXPECT_TRUE(formula_alpha_eq(c, f_forall("x", ty_nat(), A)));
}

TEST(ProofKernel, GeneralizeDerivedRule) {
  derive::Builder b{Flavor::Dst};
  ProofP r = b.generalize({"x", ty_nat()}, pf_axiom("refl", {{"a", bind_term(x())}}));
  EXPECT_TRUE(formula_alpha_eq(b.concl(r), f_forall("x", ty_nat(), eqn(x(), x()))));
}
