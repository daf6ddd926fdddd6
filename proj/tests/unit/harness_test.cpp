#include <gtest/gtest.h>

#include "nsdial/corpus.hpp"
#include "nsdial/nsdial.hpp"

using namespace nsdial;

namespace {
Grid grid(std::uint64_t b, std::size_t l) {
  Grid g;
  g.nat_bound = b;
  g.len_bound = l;
  return g;
}
}  // namespace

TEST(Suites, EquationsAndLemmasHoldOnSmallGrid) {
  for (const auto& r : defining_equations(grid(2, 1))) EXPECT_TRUE(r.ok()) << r.name << ": " << r.first_failure;
  for (const auto& r : sequence_lemmas(grid(2, 1))) EXPECT_TRUE(r.ok()) << r.name << ": " << r.first_failure;
}

TEST(Gen, SameSeedSameFormulas) {
  Gen a(7), b(7), c(8);
  bool differs = false;
  for (int i = 0; i < 50; ++i) {
    FormulaP fa = a.formula(GenOptions{}), fb = b.formula(GenOptions{}), fc = c.formula(GenOptions{});
    EXPECT_EQ(formula_str(fa), formula_str(fb));
    differs = differs || formula_str(fa) != formula_str(fc);
    EXPECT_NO_THROW(check_formula(fa));
  }
  EXPECT_TRUE(differs);
}

TEST(Gen, SigmaFormsAreUTranslationFixedPoints) {
  Gen g(3);
  for (int i = 0; i < 50; ++i) {
    FormulaP f = g.sigma_st();
    TranslatedFormula tf = u_translate(f);
    EXPECT_TRUE(classify(tf.matrix).or_free);
    TranslatedFormula again = u_translate(tf_to_formula(tf));
    EXPECT_TRUE(tf_alpha_eq(tf, again)) << formula_str(f);
  }
}

TEST(Gen, RestrictedFormulasAreUpwardClosed) {
  Gen g(11);
  GenOptions o;
  o.data_only = true;
  o.any_imp = false;
  int seen = 0;
  for (int i = 0; i < 400 && seen < 30; ++i) {
    TranslatedFormula tf = dst_translate(g.formula(o));
    if (!closure_checkable(tf)) continue;
    ++seen;
    EXPECT_FALSE(check_upward_closed(tf, grid(2, 1)).is_counterexample()) << translated_str(tf);
  }
  EXPECT_EQ(seen, 30);
}

TEST(Fixtures, DoublingProgram) {
  RealiserBundle b = extract(fixtures::doubling_proof(), Flavor::U);
  ASSERT_EQ(b.terms.size(), 1u);
  for (std::uint64_t k : {0u, 1u, 5u, 7u}) EXPECT_EQ(eval_nat(mk_app(b.terms[0], mk_numeral(k))), 2 * k);
  EXPECT_TRUE(verify_bundle(b, grid(20, 1)).is_valid());
  RealiserBundle d = extract(fixtures::doubling_proof(Flavor::Dst), Flavor::Dst);
  EXPECT_TRUE(verify_bundle(d, grid(6, 1)).is_valid());
}

TEST(Fixtures, CorruptedBundlesReplayFalse) {
  for (const auto& b : {fixtures::bad_overspill(), fixtures::bad_doubling(), fixtures::bad_underspill()}) {
    Verdict v = verify_bundle(b, Grid{});
    ASSERT_TRUE(v.is_counterexample()) << bundle_str(b);
    EXPECT_EQ(replay(b, v.env, Grid{}), Truth::False);
  }
}

TEST(Corpus, ReportIsStableAndClean) {
  std::filesystem::path dir = std::filesystem::path(NSDIAL_FIXTURES) / "corpus";
  CorpusReport a = run_corpus(dir, Grid{}), b = run_corpus(dir, Grid{});
  EXPECT_EQ(a.failures, 0u) << a.doc.dump(2);
  EXPECT_EQ(report_without_time(a.doc), report_without_time(b.doc));
  EXPECT_TRUE(a.doc.contains("wall_ms"));
}
