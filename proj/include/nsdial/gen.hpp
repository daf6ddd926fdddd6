// Seeded random generators for types, terms and formulas.
#ifndef NSDIAL_GEN_HPP
#define NSDIAL_GEN_HPP

#include <cstdlib>
#include <random>

#include "nsdial/translate.hpp"

namespace nsdial {

inline std::uint64_t seed_from_env(std::uint64_t fallback = 20240601) {
  if (const char* s = std::getenv("NSDIAL_SEED"); s && *s) return std::strtoull(s, nullptr, 10);
  return fallback;
}

struct GenOptions {
  int depth = 3;
  bool allow_or = true;
  bool external = true;     // st, forall-st, exists-st
  bool data_only = false;   // quantify and test standardness only at N and N*
  bool any_imp = true;      // false: antecedents stay internal
};

struct Gen {
  std::mt19937_64 rng;
  int counter = 0;

  explicit Gen(std::uint64_t seed = seed_from_env()) : rng(seed) {}

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }
  bool coin(int pct) { return pick(100) < pct; }

  TypeP type(int depth, bool data_only) {
    if (depth <= 0 || coin(40)) return ty_nat();
    if (data_only || coin(60)) return ty_star(depth > 1 && coin(20) ? type(depth - 1, true) : ty_nat());
    return ty_arrow(type(depth - 1, false), type(depth - 1, false));
  }

  std::string fresh(const char* base) { return base + std::to_string(counter++); }

  // terms of type N or N* only; other types fall back to a variable or default
  TermP term(const TypeP& t, const std::vector<TypedVar>& scope, int depth) {
    std::vector<TermP> vars;
    for (const auto& v : scope)
      if (type_eq(v.ty, t)) vars.push_back(mk_var(v));
    if (!vars.empty() && coin(55)) return vars[pick(static_cast<int>(vars.size()))];
    if (t->kind == Type::Kind::Ground) {
      if (depth <= 0) return mk_numeral(pick(3));
      switch (pick(3)) {
        case 0: return mk_numeral(pick(3));
        case 1: return mk_succ(term(t, scope, depth - 1));
        default: return mk_len(ty_nat(), term(ty_star(ty_nat()), scope, depth - 1));
      }
    }
    if (t->kind == Type::Kind::Star) {
      if (depth <= 0 || coin(30)) return mk_nil(t->dom);
      if (coin(50)) return mk_seq(t->dom, {term(t->dom, scope, depth - 1)});
      return mk_concat(t->dom, term(t, scope, depth - 1), term(t, scope, depth - 1));
    }
    if (!vars.empty()) return vars[0];
    return mk_default(t);
  }

  FormulaP atom(const std::vector<TypedVar>& scope, const GenOptions& o) {
    TypeP NS = ty_star(ty_nat());
    int k = pick(o.external ? 4 : 3);
    if (k == 0) return f_eq(ty_nat(), term(ty_nat(), scope, 2), term(ty_nat(), scope, 2));
    if (k == 1) return f_in(ty_nat(), term(ty_nat(), scope, 1), term(NS, scope, 2));
    if (k == 2) return coin(20) ? f_bot() : f_eq(NS, term(NS, scope, 1), term(NS, scope, 1));
    std::vector<TypedVar> cand;
    for (const auto& v : scope)
      if (!o.data_only || is_data_type(v.ty)) cand.push_back(v);
    if (!cand.empty() && coin(70)) {
      const auto& v = cand[pick(static_cast<int>(cand.size()))];
      return f_st(v.ty, mk_var(v));
    }
    return f_st(ty_nat(), term(ty_nat(), scope, 1));
  }

  FormulaP formula(const GenOptions& o) {
    std::vector<TypedVar> scope = {{"x", ty_nat()}, {"s", ty_star(ty_nat())}};
    return formula(o.depth, scope, o);
  }

  FormulaP formula(int depth, std::vector<TypedVar> scope, const GenOptions& o) {
    if (depth <= 0 || coin(15)) return atom(scope, o);
    int k = pick(o.external ? 7 : 5);
    switch (k) {
      case 0: return f_and(formula(depth - 1, scope, o), formula(depth - 1, scope, o));
      case 1:
        if (o.allow_or) return f_or(formula(depth - 1, scope, o), formula(depth - 1, scope, o));
        return f_and(formula(depth - 1, scope, o), formula(depth - 1, scope, o));
      case 2: {
        GenOptions ant = o;
        if (!o.any_imp) ant.external = false;
        return f_imp(formula(depth - 1, scope, ant), formula(depth - 1, scope, o));
      }
      default: {
        TypeP t = type(o.data_only ? 1 : 2, o.data_only);
        std::string x = fresh("v");
        scope.push_back({x, t});
        FormulaP body = formula(depth - 1, scope, o);
        if (k == 3) return f_forall(x, t, body);
        if (k == 4) return f_exists(x, t, body);
        if (k == 5) return f_forall_st(x, t, body);
        return f_exists_st(x, t, body);
      }
    }
  }

  // exists-st xs forall-st ys phi with phi internal and or-free
  FormulaP sigma_st(int max_vars = 2) {
    std::vector<TypedVar> scope = {{"x", ty_nat()}, {"s", ty_star(ty_nat())}};
    std::vector<TypedVar> ex, un;
    int ne = pick(max_vars + 1), nu = pick(max_vars + 1);
    for (int i = 0; i < ne; ++i) ex.push_back({fresh("e"), type(2, false)});
    for (int i = 0; i < nu; ++i) un.push_back({fresh("a"), type(2, false)});
    scope.insert(scope.end(), ex.begin(), ex.end());
    scope.insert(scope.end(), un.begin(), un.end());
    GenOptions o;
    o.depth = 2;
    o.allow_or = false;
    o.external = false;
    FormulaP f = formula(o.depth, scope, o);
    for (auto it = un.rbegin(); it != un.rend(); ++it) f = f_forall_st(it->name, it->ty, f);
    for (auto it = ex.rbegin(); it != ex.rend(); ++it) f = f_exists_st(it->name, it->ty, f);
    return f;
  }
};

// tuples small enough for the upward-closure grid at the given bounds
inline bool closure_checkable(const TranslatedFormula& tf, std::size_t max_exist = 2, std::size_t max_univ = 3) {
  if (tf.exist.size() > max_exist || tf.univ.size() > max_univ) return false;
  for (const auto& v : tf.exist)
    if (!is_data_type(v.ty) || type_depth(v.ty) > 1) return false;
  for (const auto& v : tf.univ)
    if (!is_data_type(v.ty) || type_depth(v.ty) > 1) return false;
  for (auto& [n, t] : formula_free_vars(tf.matrix))
    if (!is_data_type(t)) return false;
  return true;
}

}  // namespace nsdial

#endif
