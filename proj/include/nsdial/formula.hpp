// Formulas with internal and external quantifiers.
#ifndef NSDIAL_FORMULA_HPP
#define NSDIAL_FORMULA_HPP

#include <functional>

#include "nsdial/term.hpp"

namespace nsdial {

struct Formula;
using FormulaP = std::shared_ptr<const Formula>;

struct Formula {
  enum class Kind {
    Eq, And, Or, Imp, Forall, Exists, St, ForallSt, ExistsSt, BForall, BExists,
    // sugar
    In, SubsetEq, Hyper, Not, Bot
  };
  Kind kind;
  TypeP ty;        // Eq/St/In/SubsetEq/Hyper type, binder type
  std::string var; // binder
  TermP t1, t2;    // Eq sides; St term; bound; In (elem, seq); SubsetEq (s, t); Hyper seq
  FormulaP l, r;   // children; quantifier body in l
};

using K = Formula::Kind;

inline FormulaP fm(Formula f) { return std::make_shared<const Formula>(std::move(f)); }
inline FormulaP f_eq(TypeP t, TermP a, TermP b) { return fm({K::Eq, std::move(t), "", std::move(a), std::move(b), nullptr, nullptr}); }
inline FormulaP f_and(FormulaP a, FormulaP b) { return fm({K::And, nullptr, "", nullptr, nullptr, std::move(a), std::move(b)}); }
inline FormulaP f_or(FormulaP a, FormulaP b) { return fm({K::Or, nullptr, "", nullptr, nullptr, std::move(a), std::move(b)}); }
inline FormulaP f_imp(FormulaP a, FormulaP b) { return fm({K::Imp, nullptr, "", nullptr, nullptr, std::move(a), std::move(b)}); }
inline FormulaP f_quant(K k, const std::string& x, TypeP t, FormulaP b) {
  return fm({k, std::move(t), x, nullptr, nullptr, std::move(b), nullptr});
}
inline FormulaP f_forall(const std::string& x, TypeP t, FormulaP b) { return f_quant(K::Forall, x, std::move(t), std::move(b)); }
inline FormulaP f_exists(const std::string& x, TypeP t, FormulaP b) { return f_quant(K::Exists, x, std::move(t), std::move(b)); }
inline FormulaP f_forall_st(const std::string& x, TypeP t, FormulaP b) { return f_quant(K::ForallSt, x, std::move(t), std::move(b)); }
inline FormulaP f_exists_st(const std::string& x, TypeP t, FormulaP b) { return f_quant(K::ExistsSt, x, std::move(t), std::move(b)); }
inline FormulaP f_st(TypeP t, TermP a) { return fm({K::St, std::move(t), "", std::move(a), nullptr, nullptr, nullptr}); }
inline FormulaP f_bforall(const std::string& i, TermP bound, FormulaP b) {
  return fm({K::BForall, ty_nat(), i, std::move(bound), nullptr, std::move(b), nullptr});
}
inline FormulaP f_bexists(const std::string& i, TermP bound, FormulaP b) {
  return fm({K::BExists, ty_nat(), i, std::move(bound), nullptr, std::move(b), nullptr});
}
inline FormulaP f_in(TypeP el, TermP a, TermP s) { return fm({K::In, std::move(el), "", std::move(a), std::move(s), nullptr, nullptr}); }
inline FormulaP f_subseteq(TypeP t, TermP s, TermP u) { return fm({K::SubsetEq, std::move(t), "", std::move(s), std::move(u), nullptr, nullptr}); }
inline FormulaP f_hyper(TypeP el, TermP s) { return fm({K::Hyper, std::move(el), "", std::move(s), nullptr, nullptr, nullptr}); }
inline FormulaP f_not(FormulaP a) { return fm({K::Not, nullptr, "", nullptr, nullptr, std::move(a), nullptr}); }
inline FormulaP f_bot() { return fm({K::Bot, nullptr, "", nullptr, nullptr, nullptr, nullptr}); }

inline bool is_binder(K k) {
  return k == K::Forall || k == K::Exists || k == K::ForallSt || k == K::ExistsSt || k == K::BForall || k == K::BExists;
}
inline bool is_binary(K k) { return k == K::And || k == K::Or || k == K::Imp; }

struct Classification {
  bool internal = true;
  bool or_free = true;
};

inline void classify_rec(const FormulaP& f, Classification& c) {
  switch (f->kind) {
    case K::St:
    case K::ForallSt:
    case K::ExistsSt:
    case K::Hyper: c.internal = false; break;
    case K::Or: c.or_free = false; break;
    default: break;
  }
  if (f->l) classify_rec(f->l, c);
  if (f->r) classify_rec(f->r, c);
}
inline Classification classify(const FormulaP& f) {
  Classification c;
  classify_rec(f, c);
  return c;
}
inline bool is_internal(const FormulaP& f) { return classify(f).internal; }

// -- free variables

inline void formula_fv(const FormulaP& f, std::map<std::string, TypeP>& out, std::set<std::string>& bound) {
  auto term = [&](const TermP& t) {
    if (!t) return;
    for (auto& [n, ty] : term_free_vars(t))
      if (!bound.count(n)) out.emplace(n, ty);
  };
  term(f->t1);
  term(f->t2);
  if (is_binder(f->kind)) {
    bool had = bound.count(f->var) > 0;
    bound.insert(f->var);
    formula_fv(f->l, out, bound);
    if (!had) bound.erase(f->var);
    return;
  }
  if (f->l) formula_fv(f->l, out, bound);
  if (f->r) formula_fv(f->r, out, bound);
}
inline std::map<std::string, TypeP> formula_free_vars(const FormulaP& f) {
  std::map<std::string, TypeP> out;
  std::set<std::string> b;
  formula_fv(f, out, b);
  return out;
}

// all names occurring anywhere (free or bound)
inline void formula_names(const FormulaP& f, std::set<std::string>& out) {
  std::function<void(const TermP&)> term = [&](const TermP& t) {
    if (!t) return;
    if (t->kind == Term::Kind::Var || t->kind == Term::Kind::Lam) out.insert(t->name);
    if (t->fun) term(t->fun);
    if (t->arg) term(t->arg);
  };
  term(f->t1);
  term(f->t2);
  if (is_binder(f->kind)) out.insert(f->var);
  if (f->l) formula_names(f->l, out);
  if (f->r) formula_names(f->r, out);
}

// -- substitution

inline FormulaP with_children(const FormulaP& f, TermP t1, TermP t2, FormulaP l, FormulaP r, std::string var) {
  if (t1 == f->t1 && t2 == f->t2 && l == f->l && r == f->r && var == f->var) return f;
  return fm({f->kind, f->ty, std::move(var), std::move(t1), std::move(t2), std::move(l), std::move(r)});
}

inline FormulaP subst_formula_unchecked(const FormulaP& f, const std::string& x, const TermP& r,
                                        const std::map<std::string, TypeP>& rfv) {
  auto st = [&](const TermP& t) { return t ? substitute_unchecked(t, x, r, rfv) : t; };
  TermP t1 = st(f->t1), t2 = st(f->t2);
  if (is_binder(f->kind)) {
    if (f->var == x) return with_children(f, t1, t2, f->l, nullptr, f->var);
    auto bfv = formula_free_vars(f->l);
    if (!bfv.count(x)) return with_children(f, t1, t2, f->l, nullptr, f->var);
    std::string v = f->var;
    FormulaP body = f->l;
    if (rfv.count(v)) {
      std::set<std::string> avoid;
      for (auto& [n, _] : rfv) avoid.insert(n);
      for (auto& [n, _] : bfv) avoid.insert(n);
      avoid.insert(x);
      std::string nv = fresh_prime(v, avoid);
      body = subst_formula_unchecked(body, v, mk_var(nv, f->ty), {{nv, f->ty}});
      v = nv;
    }
    return with_children(f, t1, t2, subst_formula_unchecked(body, x, r, rfv), nullptr, v);
  }
  FormulaP l = f->l ? subst_formula_unchecked(f->l, x, r, rfv) : nullptr;
  FormulaP rr = f->r ? subst_formula_unchecked(f->r, x, r, rfv) : nullptr;
  return with_children(f, t1, t2, l, rr, f->var);
}

inline FormulaP subst_formula(const FormulaP& f, const std::string& x, const TermP& r) {
  auto fv = formula_free_vars(f);
  auto it = fv.find(x);
  if (it != fv.end() && it->second) {
    TypeP rt = type_check(r);
    if (!type_eq(rt, it->second))
      throw TypeError(TypeError::Code::TypeMismatch,
                      "substitution for " + x + ": expected " + type_str(it->second) + ", found " + type_str(rt));
  }
  return subst_formula_unchecked(f, x, r, term_free_vars(r));
}

// -- alpha equality

namespace detail {
inline bool alpha_f(const FormulaP& a, const FormulaP& b, std::vector<std::pair<std::string, std::string>>& env) {
  if (a->kind != b->kind) return false;
  if ((a->ty == nullptr) != (b->ty == nullptr)) return false;
  if (a->ty && !type_eq(a->ty, b->ty)) return false;
  auto terms = [&](const TermP& x, const TermP& y) {
    if (!x || !y) return x == y;
    return alpha_rec(x, y, env);
  };
  if (!terms(a->t1, b->t1) || !terms(a->t2, b->t2)) return false;
  if (is_binder(a->kind)) {
    env.emplace_back(a->var, b->var);
    bool r = alpha_f(a->l, b->l, env);
    env.pop_back();
    return r;
  }
  if ((a->l == nullptr) != (b->l == nullptr) || (a->r == nullptr) != (b->r == nullptr)) return false;
  if (a->l && !alpha_f(a->l, b->l, env)) return false;
  if (a->r && !alpha_f(a->r, b->r, env)) return false;
  return true;
}
}  // namespace detail

inline bool formula_alpha_eq(const FormulaP& a, const FormulaP& b) {
  std::vector<std::pair<std::string, std::string>> env;
  return detail::alpha_f(a, b, env);
}

// -- typing

inline void check_formula(const FormulaP& f, Context ctx = {}) {
  auto expect = [&](const TermP& t, const TypeP& ty, const char* what) {
    TypeP got = type_check(t, ctx);
    if (!type_eq(got, ty))
      throw TypeError(TypeError::Code::IllTyped, std::string(what) + ": expected " + type_str(ty) + ", found " + type_str(got));
  };
  switch (f->kind) {
    case K::Eq:
      expect(f->t1, f->ty, "eq left");
      expect(f->t2, f->ty, "eq right");
      return;
    case K::St: expect(f->t1, f->ty, "st"); return;
    case K::In:
      expect(f->t1, f->ty, "in element");
      expect(f->t2, ty_star(f->ty), "in sequence");
      return;
    case K::SubsetEq: {
      const TypeP& t = f->ty;
      bool ok = is_star(t) || (is_arrow(t) && is_star(t->cod));
      if (!ok) throw TypeError(TypeError::Code::IllTyped, "subseteq: expected a sequence or sequence-valued type, found " + type_str(t));
      expect(f->t1, t, "subseteq left");
      expect(f->t2, t, "subseteq right");
      return;
    }
    case K::Hyper: expect(f->t1, ty_star(f->ty), "hyper"); return;
    case K::Bot: return;
    case K::Not: check_formula(f->l, ctx); return;
    case K::And:
    case K::Or:
    case K::Imp:
      check_formula(f->l, ctx);
      check_formula(f->r, ctx);
      return;
    case K::BForall:
    case K::BExists:
      expect(f->t1, ty_nat(), "bound");
      [[fallthrough]];
    case K::Forall:
    case K::Exists:
    case K::ForallSt:
    case K::ExistsSt: {
      ctx[f->var] = f->ty;
      check_formula(f->l, ctx);
      return;
    }
  }
}

// -- sugar

inline std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return base;
  for (int i = 0;; ++i) {
    std::string n = base + std::to_string(i);
    if (!avoid.count(n)) return n;
  }
}

inline FormulaP bot_formula() { return f_eq(ty_nat(), mk_zero(), mk_succ(mk_zero())); }

// a in s, with index avoiding names in avoid
inline FormulaP expand_in(const TypeP& el, const TermP& a, const TermP& s, std::set<std::string> avoid) {
  for (auto& [n, _] : term_free_vars(a)) avoid.insert(n);
  for (auto& [n, _] : term_free_vars(s)) avoid.insert(n);
  std::string i = fresh_name("i", avoid);
  return f_bexists(i, mk_len(el, s), f_eq(el, a, mk_proj(el, s, mk_var(i, ty_nat()))));
}

inline FormulaP expand_subseteq(const TypeP& t, const TermP& s, const TermP& u, std::set<std::string> avoid) {
  for (auto& [n, _] : term_free_vars(s)) avoid.insert(n);
  for (auto& [n, _] : term_free_vars(u)) avoid.insert(n);
  std::string x = fresh_name("x", avoid);
  avoid.insert(x);
  if (is_arrow(t)) {
    TermP xv = mk_var(x, t->dom);
    return f_forall(x, t->dom, expand_subseteq(t->cod, mk_app(s, xv), mk_app(u, xv), avoid));
  }
  TypeP el = t->dom;
  TermP xv = mk_var(x, el);
  return f_forall(x, el, f_imp(expand_in(el, xv, s, avoid), expand_in(el, xv, u, avoid)));
}

inline FormulaP desugar(const FormulaP& f) {
  switch (f->kind) {
    case K::In: return expand_in(f->ty, f->t1, f->t2, {});
    case K::SubsetEq: return expand_subseteq(f->ty, f->t1, f->t2, {});
    case K::Hyper: {
      std::set<std::string> avoid;
      for (auto& [n, _] : term_free_vars(f->t1)) avoid.insert(n);
      std::string x = fresh_name("x", avoid);
      avoid.insert(x);
      return f_forall_st(x, f->ty, expand_in(f->ty, mk_var(x, f->ty), f->t1, avoid));
    }
    case K::Not: return f_imp(desugar(f->l), bot_formula());
    case K::Bot: return bot_formula();
    default: break;
  }
  FormulaP l = f->l ? desugar(f->l) : nullptr;
  FormulaP r = f->r ? desugar(f->r) : nullptr;
  return with_children(f, f->t1, f->t2, l, r, f->var);
}

inline bool has_sugar(const FormulaP& f) {
  switch (f->kind) {
    case K::In:
    case K::SubsetEq:
    case K::Hyper:
    case K::Not:
    case K::Bot: return true;
    default: break;
  }
  return (f->l && has_sugar(f->l)) || (f->r && has_sugar(f->r));
}

inline std::size_t formula_size(const FormulaP& f) {
  std::size_t n = 1;
  if (f->l) n += formula_size(f->l);
  if (f->r) n += formula_size(f->r);
  return n;
}

}  // namespace nsdial

#endif
