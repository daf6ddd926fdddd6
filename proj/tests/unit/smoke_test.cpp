#include <gtest/gtest.h>

#include "nsdial/oracle.hpp"

using namespace nsdial;

TEST(Smoke, Enumerate) {
  Grid g{0, 1, 2};
  auto v = enumerate_values(ty_star(ty_star(ty_nat())), g);
  ASSERT_EQ(v.size(), 3u);
  EXPECT_EQ(cv_str(v[2]), "[[0]]");
}

TEST(Smoke, WorkedExamples) {
  auto x = mk_var("x", ty_nat()), y = mk_var("y", ty_nat());
  auto f = f_forall_st("x", ty_nat(), f_exists_st("y", ty_nat(), f_eq(ty_nat(), y, x)));
  auto u = u_translate(f);
  ASSERT_EQ(u.exist.size(), 1u);
  EXPECT_EQ(type_str(u.exist[0].ty), "(-> N N)");
  auto d = dst_translate(f);
  ASSERT_EQ(d.exist.size(), 1u);
  EXPECT_EQ(type_str(d.exist[0].ty), "(* (-> N (* N)))");
  EXPECT_EQ(tf_invariant_violation(d), "");
}
