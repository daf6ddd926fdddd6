// Grid-wide checks of the sequence equations and lemmas.
#ifndef NSDIAL_SUITES_HPP
#define NSDIAL_SUITES_HPP

#include "nsdial/oracle.hpp"
#include "nsdial/sexpr.hpp"

namespace nsdial {

struct SuiteResult {
  std::string name;
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool ok() const { return failures == 0 && checked > 0; }
  void record(bool pass, const std::function<std::string()>& what) {
    ++checked;
    if (pass) return;
    if (failures++ == 0) first_failure = what();
  }
};

namespace suite_detail {
inline TypeP N() { return ty_nat(); }
inline TypeP NS() { return ty_star(ty_nat()); }

inline void eq_nf(SuiteResult& r, const TermP& lhs, const TermP& rhs) {
  TermP a = normalize(lhs), b = normalize(rhs);
  r.record(alpha_eq(a, b), [&] { return term_str(lhs) + " ~> " + term_str(a) + " vs " + term_str(b); });
}

inline std::vector<TermP> terms_of(const TypeP& t, const Grid& g) {
  std::vector<TermP> out;
  for (const auto& v : enumerate_values(t, g)) out.push_back(cv_to_term(v));
  return out;
}

// small pool of closed N -> N* functions
inline std::vector<TermP> fn_pool() {
  TermP x = mk_var("x", N());
  return {mk_lam("x", N(), mk_nil(N())), mk_lam("x", N(), mk_seq(N(), {x})), mk_lam("x", N(), mk_seq(N(), {mk_zero(), x})),
          mk_lam("x", N(), mk_seq(N(), {mk_succ(x)}))};
}

inline bool contained(const std::vector<CanonicalValue>& a, const std::vector<CanonicalValue>& b) {
  for (const auto& x : a)
    if (std::find(b.begin(), b.end(), x) == b.end()) return false;
  return true;
}
}  // namespace suite_detail


// defining equations, compared as normal forms
inline std::vector<SuiteResult> defining_equations(const Grid& g) {
  using namespace suite_detail;
  std::vector<SuiteResult> out;
  auto nats = terms_of(N(), g), seqs = terms_of(NS(), g);
  TermP a = mk_var("a", N()), f = mk_var("f", ty_arrows({N(), N()}, N()));
  TermP fl = mk_var("f", ty_arrows({N(), N()}, N()));

  SuiteResult len{"length"};
  eq_nf(len, mk_len(N(), mk_nil(N())), mk_zero());
  for (auto& b : nats)
    for (auto& s : seqs) eq_nf(len, mk_len(N(), mk_cons(N(), b, s)), mk_succ(mk_len(N(), s)));
  out.push_back(len);

  SuiteResult proj{"projection"};
  for (auto& b : nats) {
    eq_nf(proj, mk_proj(N(), mk_nil(N()), b), mk_default(N()));
    for (auto& s : seqs) {
      eq_nf(proj, mk_proj(N(), mk_cons(N(), b, s), mk_zero()), b);
      for (auto& i : nats) eq_nf(proj, mk_proj(N(), mk_cons(N(), b, s), mk_succ(i)), mk_proj(N(), s, i));
    }
  }
  out.push_back(proj);

  SuiteResult cat{"concatenation"};
  for (auto& t : seqs) {
    eq_nf(cat, mk_concat(N(), mk_nil(N()), t), t);
    for (auto& b : nats)
      for (auto& s : seqs) eq_nf(cat, mk_concat(N(), mk_cons(N(), b, s), t), mk_cons(N(), b, mk_concat(N(), s, t)));
  }
  out.push_back(cat);

  SuiteResult lrec{"list recursion"};
  TermP L = mk_const(ConstKind::ListRec, {N(), N()});
  eq_nf(lrec, mk_apps(L, {a, fl, mk_nil(N())}), a);
  for (auto& b : nats)
    for (auto& s : seqs) eq_nf(lrec, mk_apps(L, {a, fl, mk_cons(N(), b, s)}), mk_apps(fl, {mk_apps(L, {a, fl, s}), b}));
  out.push_back(lrec);

  SuiteResult nrec{"recursion"};
  TermP R = mk_const(ConstKind::NatRec, {N()});
  eq_nf(nrec, mk_apps(R, {a, f, mk_zero()}), a);
  for (auto& n : nats) eq_nf(nrec, mk_apps(R, {a, f, mk_succ(n)}), mk_apps(f, {n, mk_apps(R, {a, f, n})}));
  out.push_back(nrec);

  SuiteResult sabs{"sequence abstraction"};
  TermP x = mk_var("x", N());
  std::vector<TermP> bodies = {mk_seq(N(), {x}), mk_seq(N(), {x, mk_succ(x)}), mk_nil(N()),
                               mk_seq(N(), {mk_len(N(), mk_seq(N(), {x, x}))})};
  for (auto& body : bodies) {
    TermP s = mk_seq(ty_arrow(N(), NS()), {mk_lam("x", N(), body)});
    for (auto& v : nats) {
      eq_nf(sabs, mk_seqapps(mk_seqabs({"x", N()}, body), {v}), substitute(body, "x", v));
      eq_nf(sabs, mk_seqapps(s, {v}), substitute(body, "x", v));
    }
  }
  out.push_back(sabs);
  return out;
}

inline std::vector<SuiteResult> sequence_lemmas(const Grid& g) {
  using namespace suite_detail;
  std::vector<SuiteResult> out;
  auto nseqs = enumerate_values(NS(), g);
  TermP s = mk_var("s", NS()), t = mk_var("t", NS());

  auto holds = [&](SuiteResult& r, const FormulaP& f, const Assignment& asg) {
    Truth v = eval_truth(f, asg, g);
    r.record(v == Truth::True, [&] { return formula_str(f) + " at " + assignment_str(asg); });
  };

  SuiteResult empty{"empty iff zero length"};
  FormulaP lz = f_eq(N(), mk_len(N(), s), mk_zero()), isnil = f_eq(NS(), s, mk_nil(N()));
  FormulaP iff = f_and(f_imp(lz, isnil), f_imp(isnil, lz));
  for (auto& v : nseqs) holds(empty, iff, {{"s", v}});
  out.push_back(empty);

  SuiteResult ext{"extensional equality"};
  FormulaP eqe = f_and(f_eq(N(), mk_len(N(), s), mk_len(N(), t)),
                       f_bforall("i", mk_len(N(), s), f_eq(N(), mk_proj(N(), s, mk_var("i", N())), mk_proj(N(), t, mk_var("i", N())))));
  FormulaP extf = f_imp(eqe, f_eq(NS(), s, t));
  for (auto& u : nseqs)
    for (auto& v : nseqs) holds(ext, extf, {{"s", u}, {"t", v}});
  out.push_back(ext);

  SuiteResult add{"length and concatenation"};
  for (auto& u : nseqs)
    for (auto& v : nseqs) {
      TermP cu = cv_to_term(u), cv = cv_to_term(v), c = mk_concat(N(), cu, cv);
      std::uint64_t lu = u.elems.size(), lv = v.elems.size();
      add.record(eval_nat(mk_len(N(), c)) == lu + lv, [&] { return term_str(c); });
      for (std::uint64_t i = 0; i < lu + lv; ++i) {
        std::uint64_t want = i < lu ? eval_nat(mk_proj(N(), cu, mk_numeral(i))) : eval_nat(mk_proj(N(), cv, mk_numeral(i - lu)));
        add.record(eval_nat(mk_proj(N(), c, mk_numeral(i))) == want, [&] { return term_str(c) + " at " + std::to_string(i); });
      }
    }
  out.push_back(add);

  // s a subsequence-as-set of s', both over the function pool
  SuiteResult mono{"monotone sequence application"};
  auto pool = fn_pool();
  TypeP FT = ty_arrow(N(), NS());
  std::vector<std::vector<int>> idx = {{}};
  for (std::size_t l = 1; l <= g.len_bound; ++l) {
    std::vector<std::vector<int>> next;
    for (auto& p : idx)
      if (p.size() == l - 1)
        for (int k = 0; k < static_cast<int>(pool.size()); ++k) {
          auto q = p;
          q.push_back(k);
          next.push_back(q);
        }
    idx.insert(idx.end(), next.begin(), next.end());
  }
  auto build = [&](const std::vector<int>& p) {
    std::vector<TermP> xs;
    for (int k : p) xs.push_back(pool[k]);
    return mk_seq(FT, xs);
  };
  for (auto& big : idx)
    for (auto& small : idx) {
      bool sub = std::all_of(small.begin(), small.end(), [&](int k) { return std::find(big.begin(), big.end(), k) != big.end(); });
      if (!sub) continue;
      for (std::uint64_t a = 0; a <= g.nat_bound; ++a) {
        auto lhs = eval_seq(mk_seqapps(build(small), {mk_numeral(a)}));
        auto rhs = eval_seq(mk_seqapps(build(big), {mk_numeral(a)}));
        mono.record(contained(lhs, rhs), [&] { return term_str(build(small)) + " in " + term_str(build(big)); });
      }
    }
  out.push_back(mono);
  return out;
}

}  // namespace nsdial

#endif
