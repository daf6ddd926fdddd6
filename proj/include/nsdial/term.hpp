// Typed lambda terms with recursors and sequence operators.
#ifndef NSDIAL_TERM_HPP
#define NSDIAL_TERM_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nsdial/type.hpp"

namespace nsdial {

enum class ConstKind {
  Zero, Succ, NatRec, ListRec, Nil, Cons, Default,
  Len, Proj, Concat, SeqApp, SeqAbs, Singleton
};

struct Term;
using TermP = std::shared_ptr<const Term>;

struct Term {
  enum class Kind { Var, Lam, App, Const };
  Kind kind;
  std::string name;          // var name, lam binder
  TypeP ty;                  // var type, lam binder type
  TermP fun;                 // app function, lam body
  TermP arg;                 // app argument
  ConstKind ck = ConstKind::Zero;
  std::vector<TypeP> tys;    // const type parameters
};

struct TypeError : std::runtime_error {
  enum class Code { IllTyped, UnboundVariable, TypeMismatch, NotClosed, NotGroundType, NotDataType };
  Code code;
  TypeError(Code c, const std::string& m) : std::runtime_error(m), code(c) {}
};

struct TypedVar {
  std::string name;
  TypeP ty;
};

// -- constructors

inline TermP mk_var(const std::string& n, TypeP t) {
  return std::make_shared<const Term>(Term{Term::Kind::Var, n, std::move(t), nullptr, nullptr});
}
inline TermP mk_var(const TypedVar& v) { return mk_var(v.name, v.ty); }
inline TermP mk_lam(const std::string& n, TypeP t, TermP body) {
  return std::make_shared<const Term>(Term{Term::Kind::Lam, n, std::move(t), std::move(body), nullptr});
}
inline TermP mk_app(TermP f, TermP a) {
  return std::make_shared<const Term>(Term{Term::Kind::App, "", nullptr, std::move(f), std::move(a)});
}
inline TermP mk_const(ConstKind k, std::vector<TypeP> tys = {}) {
  Term t{Term::Kind::Const, "", nullptr, nullptr, nullptr};
  t.ck = k;
  t.tys = std::move(tys);
  return std::make_shared<const Term>(std::move(t));
}

inline TermP mk_zero() { return mk_const(ConstKind::Zero); }
inline TermP mk_succ(TermP t) { return mk_app(mk_const(ConstKind::Succ), std::move(t)); }
inline TermP mk_numeral(std::uint64_t n) {
  TermP t = mk_zero();
  for (std::uint64_t i = 0; i < n; ++i) t = mk_succ(t);
  return t;
}
inline TermP mk_nil(TypeP s) { return mk_const(ConstKind::Nil, {std::move(s)}); }
inline TermP mk_cons(TypeP s, TermP a, TermP rest) {
  return mk_app(mk_app(mk_const(ConstKind::Cons, {std::move(s)}), std::move(a)), std::move(rest));
}
inline TermP mk_seq(TypeP s, const std::vector<TermP>& xs) {
  TermP r = mk_nil(s);
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) r = mk_cons(s, *it, r);
  return r;
}
inline TermP mk_default(TypeP s) { return mk_const(ConstKind::Default, {std::move(s)}); }
inline TermP mk_len(TypeP s, TermP t) { return mk_app(mk_const(ConstKind::Len, {std::move(s)}), std::move(t)); }
inline TermP mk_proj(TypeP s, TermP t, TermP i) {
  return mk_app(mk_app(mk_const(ConstKind::Proj, {std::move(s)}), std::move(t)), std::move(i));
}
inline TermP mk_concat(TypeP s, TermP a, TermP b) {
  return mk_app(mk_app(mk_const(ConstKind::Concat, {std::move(s)}), std::move(a)), std::move(b));
}
inline TermP mk_single(TypeP s, TermP a) {
  return mk_app(mk_const(ConstKind::Singleton, {std::move(s)}), std::move(a));
}

inline TermP mk_apps(TermP f, const std::vector<TermP>& args) {
  for (const auto& a : args) f = mk_app(f, a);
  return f;
}
inline TermP mk_lams(const std::vector<TypedVar>& vs, TermP body) {
  for (auto it = vs.rbegin(); it != vs.rend(); ++it) body = mk_lam(it->name, it->ty, body);
  return body;
}
inline std::vector<TermP> vars_as_terms(const std::vector<TypedVar>& vs) {
  std::vector<TermP> r;
  for (const auto& v : vs) r.push_back(mk_var(v));
  return r;
}
inline std::vector<TypeP> types_of(const std::vector<TypedVar>& vs) {
  std::vector<TypeP> r;
  for (const auto& v : vs) r.push_back(v.ty);
  return r;
}

// -- typing

inline TypeP const_type(ConstKind k, const std::vector<TypeP>& p) {
  auto need = [&](std::size_t n) {
    if (p.size() != n) throw TypeError(TypeError::Code::IllTyped, "constant expects " + std::to_string(n) + " type parameters");
  };
  const TypeP N = ty_nat();
  switch (k) {
    case ConstKind::Zero: need(0); return N;
    case ConstKind::Succ: need(0); return ty_arrow(N, N);
    case ConstKind::NatRec: need(1);
      return ty_arrows({p[0], ty_arrows({N, p[0]}, p[0]), N}, p[0]);
    case ConstKind::ListRec: need(2);
      return ty_arrows({p[0], ty_arrows({p[0], p[1]}, p[0]), ty_star(p[1])}, p[0]);
    case ConstKind::Nil: need(1); return ty_star(p[0]);
    case ConstKind::Cons: need(1); return ty_arrows({p[0], ty_star(p[0])}, ty_star(p[0]));
    case ConstKind::Default: need(1); return p[0];
    case ConstKind::Len: need(1); return ty_arrow(ty_star(p[0]), N);
    case ConstKind::Proj: need(1); return ty_arrows({ty_star(p[0]), N}, p[0]);
    case ConstKind::Concat: need(1); return ty_arrows({ty_star(p[0]), ty_star(p[0])}, ty_star(p[0]));
    case ConstKind::SeqApp: {
      need(2);
      TypeP f = ty_arrow(p[0], ty_star(p[1]));
      return ty_arrows({ty_star(f), p[0]}, ty_star(p[1]));
    }
    case ConstKind::SeqAbs: {
      need(2);
      TypeP f = ty_arrow(p[0], ty_star(p[1]));
      return ty_arrow(f, ty_star(f));
    }
    case ConstKind::Singleton: need(1); return ty_arrow(p[0], ty_star(p[0]));
  }
  throw TypeError(TypeError::Code::IllTyped, "unknown constant");
}

inline const char* const_name(ConstKind k) {
  switch (k) {
    case ConstKind::Zero: return "zero";
    case ConstKind::Succ: return "succ";
    case ConstKind::NatRec: return "nrec";
    case ConstKind::ListRec: return "lrec";
    case ConstKind::Nil: return "nil";
    case ConstKind::Cons: return "cons";
    case ConstKind::Default: return "default";
    case ConstKind::Len: return "len";
    case ConstKind::Proj: return "proj";
    case ConstKind::Concat: return "concat";
    case ConstKind::SeqApp: return "seqapp";
    case ConstKind::SeqAbs: return "seqabs";
    case ConstKind::Singleton: return "single";
  }
  return "?";
}

using Context = std::map<std::string, TypeP>;

inline TypeP type_check(const TermP& t, const Context& ctx = {}) {
  switch (t->kind) {
    case Term::Kind::Var: {
      auto it = ctx.find(t->name);
      if (!t->ty) {
        if (it == ctx.end()) throw TypeError(TypeError::Code::UnboundVariable, "unbound variable " + t->name);
        return it->second;
      }
      if (it != ctx.end() && !type_eq(it->second, t->ty))
        throw TypeError(TypeError::Code::IllTyped, "variable " + t->name + ": expected " + type_str(it->second) +
                                                       ", found " + type_str(t->ty));
      return t->ty;
    }
    case Term::Kind::Lam: {
      Context c2 = ctx;
      c2[t->name] = t->ty;
      return ty_arrow(t->ty, type_check(t->fun, c2));
    }
    case Term::Kind::App: {
      TypeP f = type_check(t->fun, ctx);
      TypeP a = type_check(t->arg, ctx);
      if (!is_arrow(f))
        throw TypeError(TypeError::Code::IllTyped, "application of non-function: expected arrow, found " + type_str(f));
      if (!type_eq(f->dom, a))
        throw TypeError(TypeError::Code::IllTyped,
                        "argument: expected " + type_str(f->dom) + ", found " + type_str(a));
      return f->cod;
    }
    case Term::Kind::Const: return const_type(t->ck, t->tys);
  }
  throw TypeError(TypeError::Code::IllTyped, "bad term");
}

// -- free variables, substitution, alpha equality

inline void term_free_vars(const TermP& t, std::map<std::string, TypeP>& out, std::set<std::string>& bound) {
  switch (t->kind) {
    case Term::Kind::Var:
      if (!bound.count(t->name)) out.emplace(t->name, t->ty);
      return;
    case Term::Kind::Lam: {
      bool had = bound.count(t->name) > 0;
      bound.insert(t->name);
      term_free_vars(t->fun, out, bound);
      if (!had) bound.erase(t->name);
      return;
    }
    case Term::Kind::App:
      term_free_vars(t->fun, out, bound);
      term_free_vars(t->arg, out, bound);
      return;
    case Term::Kind::Const: return;
  }
}
inline std::map<std::string, TypeP> term_free_vars(const TermP& t) {
  std::map<std::string, TypeP> out;
  std::set<std::string> b;
  term_free_vars(t, out, b);
  return out;
}
inline bool term_closed(const TermP& t) { return term_free_vars(t).empty(); }
inline bool term_has_free(const TermP& t, const std::string& x) { return term_free_vars(t).count(x) > 0; }

inline std::string fresh_prime(std::string base, const std::set<std::string>& avoid) {
  while (avoid.count(base)) base += "'";
  return base;
}

inline TermP substitute_unchecked(const TermP& t, const std::string& x, const TermP& r,
                                  const std::map<std::string, TypeP>& rfv) {
  switch (t->kind) {
    case Term::Kind::Var: return t->name == x ? r : t;
    case Term::Kind::Const: return t;
    case Term::Kind::App: {
      TermP f = substitute_unchecked(t->fun, x, r, rfv);
      TermP a = substitute_unchecked(t->arg, x, r, rfv);
      if (f == t->fun && a == t->arg) return t;
      return mk_app(f, a);
    }
    case Term::Kind::Lam: {
      if (t->name == x) return t;  // shadowed
      auto bodyfv = term_free_vars(t->fun);
      if (!bodyfv.count(x)) return t;
      if (rfv.count(t->name)) {
        std::set<std::string> avoid;
        for (auto& [n, _] : rfv) avoid.insert(n);
        for (auto& [n, _] : bodyfv) avoid.insert(n);
        std::string nn = fresh_prime(t->name, avoid);
        TermP body = substitute_unchecked(t->fun, t->name, mk_var(nn, t->ty), {{nn, t->ty}});
        return mk_lam(nn, t->ty, substitute_unchecked(body, x, r, rfv));
      }
      return mk_lam(t->name, t->ty, substitute_unchecked(t->fun, x, r, rfv));
    }
  }
  return t;
}

// capture-avoiding t[r/x]
inline TermP substitute(const TermP& t, const std::string& x, const TermP& r) {
  auto fv = term_free_vars(t);
  auto it = fv.find(x);
  if (it != fv.end() && it->second) {
    TypeP rt = type_check(r, {});
    if (!type_eq(rt, it->second))
      throw TypeError(TypeError::Code::TypeMismatch,
                      "substitution for " + x + ": expected " + type_str(it->second) + ", found " + type_str(rt));
  }
  return substitute_unchecked(t, x, r, term_free_vars(r));
}

namespace detail {
inline bool alpha_rec(const TermP& a, const TermP& b, std::vector<std::pair<std::string, std::string>>& env) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Term::Kind::Var: {
      for (auto it = env.rbegin(); it != env.rend(); ++it) {
        bool l = it->first == a->name, r = it->second == b->name;
        if (l || r) return l && r;
      }
      return a->name == b->name && (!a->ty || !b->ty || type_eq(a->ty, b->ty));
    }
    case Term::Kind::Lam: {
      if (!type_eq(a->ty, b->ty)) return false;
      env.emplace_back(a->name, b->name);
      bool r = alpha_rec(a->fun, b->fun, env);
      env.pop_back();
      return r;
    }
    case Term::Kind::App: return alpha_rec(a->fun, b->fun, env) && alpha_rec(a->arg, b->arg, env);
    case Term::Kind::Const: {
      if (a->ck != b->ck || a->tys.size() != b->tys.size()) return false;
      for (std::size_t i = 0; i < a->tys.size(); ++i)
        if (!type_eq(a->tys[i], b->tys[i])) return false;
      return true;
    }
  }
  return false;
}
}  // namespace detail

inline bool alpha_eq(const TermP& a, const TermP& b) {
  std::vector<std::pair<std::string, std::string>> env;
  return detail::alpha_rec(a, b, env);
}

inline std::size_t term_size(const TermP& t) {
  switch (t->kind) {
    case Term::Kind::Var:
    case Term::Kind::Const: return 1;
    case Term::Kind::Lam: return 1 + term_size(t->fun);
    case Term::Kind::App: return 1 + term_size(t->fun) + term_size(t->arg);
  }
  return 1;
}

// head constant and argument spine
inline std::pair<TermP, std::vector<TermP>> spine(const TermP& t) {
  std::vector<TermP> args;
  TermP h = t;
  while (h->kind == Term::Kind::App) {
    args.push_back(h->arg);
    h = h->fun;
  }
  std::reverse(args.begin(), args.end());
  return {h, args};
}

}  // namespace nsdial

#endif
