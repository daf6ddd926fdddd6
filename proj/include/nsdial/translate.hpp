// Nonstandard Dialectica (Dst) and uniform Diller-Nahm (U) translations.
#ifndef NSDIAL_TRANSLATE_HPP
#define NSDIAL_TRANSLATE_HPP

#include "nsdial/formula.hpp"

namespace nsdial {

enum class Flavor { Dst, U };

inline const char* flavor_name(Flavor f) { return f == Flavor::Dst ? "dst" : "u"; }

struct TranslatedFormula {
  std::vector<TypedVar> exist;
  std::vector<TypedVar> univ;
  FormulaP matrix;
  Flavor flavor = Flavor::U;
};

struct TranslateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fresh-name supply shared by one translation invocation.
struct NameSupply {
  std::set<std::string> reserved;  // every name in the source
  std::set<std::string> taken;     // source free vars and emitted tuple names

  explicit NameSupply(const FormulaP& src) {
    formula_names(src, reserved);
    for (auto& [n, _] : formula_free_vars(src)) taken.insert(n);
  }
  NameSupply() = default;

  void reserve(const FormulaP& f) {
    formula_names(f, reserved);
    for (auto& [n, _] : formula_free_vars(f)) taken.insert(n);
  }
  bool used(const std::string& n) const { return reserved.count(n) || taken.count(n); }
  std::string fresh(const std::string& base) {
    std::string n = base;
    for (int i = 0; used(n); ++i) n = base + std::to_string(i);
    taken.insert(n);
    return n;
  }
  // keep a binder's own name unless it is already a tuple or free name
  std::string claim(const std::string& x) {
    if (!taken.count(x)) {
      taken.insert(x);
      return x;
    }
    return fresh(x);
  }
};

// (s1 -> (s2 -> ... r)*)* ; r itself when no arguments
inline TypeP seqfun_type(const std::vector<TypeP>& args, TypeP r) {
  for (auto it = args.rbegin(); it != args.rend(); ++it) r = ty_star(ty_arrow(*it, r));
  return r;
}

// T[a1][a2]...
inline TermP mk_seqapps(TermP t, const std::vector<TermP>& args) {
  for (const auto& a : args) {
    TypeP tt = type_check(t);
    if (!is_star(tt) || !is_arrow(tt->dom) || !is_star(tt->dom->cod))
      throw TypeError(TypeError::Code::IllTyped, "sequence application of " + type_str(tt));
    t = mk_apps(mk_const(ConstKind::SeqApp, {tt->dom->dom, tt->dom->cod->dom}), {t, a});
  }
  return t;
}

// Λx.t := C(λx.t)⟨⟩
inline TermP mk_seqabs(const TypedVar& x, TermP body) {
  TypeP bt = type_check(body, {{x.name, x.ty}});
  if (!is_star(bt)) throw TypeError(TypeError::Code::IllTyped, "sequence abstraction body must be a sequence, found " + type_str(bt));
  return mk_app(mk_const(ConstKind::SeqAbs, {x.ty, bt->dom}), mk_lam(x.name, x.ty, body));
}
inline TermP mk_seqabss(const std::vector<TypedVar>& xs, TermP body) {
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) body = mk_seqabs(*it, body);
  return body;
}

// ∀ȳ∈S̄ φ, indices drawn from the supply
inline FormulaP bounded_forall_in(NameSupply& ns, const std::vector<TypedVar>& ys, const std::vector<TermP>& seqs,
                                  FormulaP body) {
  for (std::size_t k = ys.size(); k-- > 0;) {
    std::string i = ns.fresh("i");
    TermP iv = mk_var(i, ty_nat());
    body = subst_formula(body, ys[k].name, mk_proj(ys[k].ty, seqs[k], iv));
    body = f_bforall(i, mk_len(ys[k].ty, seqs[k]), body);
  }
  return body;
}
inline FormulaP bounded_exists_in(NameSupply& ns, const TypedVar& z, const TermP& seq, FormulaP body) {
  std::string i = ns.fresh("i");
  body = subst_formula(body, z.name, mk_proj(z.ty, seq, mk_var(i, ty_nat())));
  return f_bexists(i, mk_len(z.ty, seq), body);
}

inline FormulaP subst_tuple(FormulaP f, const std::vector<TypedVar>& xs, const std::vector<TermP>& ts) {
  for (std::size_t j = 0; j < xs.size(); ++j) f = subst_formula(f, xs[j].name, ts[j]);
  return f;
}

namespace detail {
inline FormulaP rename_bound(const FormulaP& body, const std::string& from, const std::string& to, const TypeP& ty) {
  return from == to ? body : subst_formula(body, from, mk_var(to, ty));
}
inline void append(std::vector<TypedVar>& a, const std::vector<TypedVar>& b) { a.insert(a.end(), b.begin(), b.end()); }
}  // namespace detail

// Clause builders, one per connective, shared by the translations and by extraction.
namespace clause {

inline TranslatedFormula conj(const TranslatedFormula& a, const TranslatedFormula& b, Flavor fl) {
  TranslatedFormula r;
  r.flavor = fl;
  r.exist = a.exist;
  detail::append(r.exist, b.exist);
  r.univ = a.univ;
  detail::append(r.univ, b.univ);
  r.matrix = f_and(a.matrix, b.matrix);
  return r;
}

inline TranslatedFormula disj(const TranslatedFormula& a, const TranslatedFormula& b, Flavor fl, NameSupply& ns) {
  TranslatedFormula r = conj(a, b, fl);
  if (fl == Flavor::Dst) {
    r.matrix = f_or(a.matrix, b.matrix);
    return r;
  }
  TypedVar z{ns.fresh("z"), ty_nat()};
  r.exist.insert(r.exist.begin(), z);
  FormulaP z0 = f_eq(ty_nat(), mk_var(z), mk_zero());
  r.matrix = f_and(f_imp(z0, a.matrix), f_imp(f_imp(z0, bot_formula()), b.matrix));
  return r;
}

inline TranslatedFormula imp(const TranslatedFormula& a, const TranslatedFormula& b, Flavor fl, NameSupply& ns) {
  TranslatedFormula r;
  r.flavor = fl;
  bool dst = fl == Flavor::Dst;
  std::vector<TermP> xs = vars_as_terms(a.exist);
  std::vector<TermP> xv = xs;
  for (const auto& v : b.univ) xv.push_back(mk_var(v));
  std::vector<TypeP> xt = types_of(a.exist);
  std::vector<TypeP> xvt = xt;
  for (const auto& v : b.univ) xvt.push_back(v.ty);
  std::vector<TermP> us;
  for (const auto& u : b.exist) {
    TypedVar U{ns.fresh(dst ? "T" : "U"), dst ? seqfun_type(xt, u.ty) : ty_arrows(xt, u.ty)};
    r.exist.push_back(U);
    us.push_back(dst ? mk_seqapps(mk_var(U), xs) : mk_apps(mk_var(U), xs));
  }
  std::vector<TermP> ys;
  for (const auto& y : a.univ) {
    TypedVar Y{ns.fresh("Y"), dst ? seqfun_type(xvt, ty_star(y.ty)) : ty_arrows(xvt, ty_star(y.ty))};
    r.exist.push_back(Y);
    ys.push_back(dst ? mk_seqapps(mk_var(Y), xv) : mk_apps(mk_var(Y), xv));
  }
  r.univ = a.exist;
  detail::append(r.univ, b.univ);
  r.matrix = f_imp(bounded_forall_in(ns, a.univ, ys, a.matrix), subst_tuple(b.matrix, b.exist, us));
  return r;
}

// internal ∃z (with ∃st z when st is set: Dst needs the extra candidate sequence)
inline TranslatedFormula exists(const std::string& z, const TypeP& ty, const TranslatedFormula& a, Flavor fl, NameSupply& ns,
                                bool st = false) {
  TranslatedFormula r;
  r.flavor = fl;
  TypedVar u;
  if (st) {
    u = TypedVar{ns.fresh("u"), ty_star(ty)};
    r.exist.push_back(u);
  }
  detail::append(r.exist, a.exist);
  std::vector<TermP> seqs;
  for (const auto& y : a.univ) {
    TypedVar t{ns.fresh(fl == Flavor::Dst ? "t" : "y"), ty_star(y.ty)};
    r.univ.push_back(t);
    seqs.push_back(mk_var(t));
  }
  FormulaP inner = bounded_forall_in(ns, a.univ, seqs, a.matrix);
  r.matrix = st ? bounded_exists_in(ns, TypedVar{z, ty}, mk_var(u), inner) : f_exists(z, ty, inner);
  return r;
}

inline TranslatedFormula forall(const std::string& z, const TypeP& ty, const TranslatedFormula& a, Flavor fl) {
  TranslatedFormula r = a;
  r.flavor = fl;
  r.matrix = f_forall(z, ty, a.matrix);
  return r;
}

// U only: z joins the existential tuple; a is the body already renamed to z
inline TranslatedFormula exists_st_u(const TypedVar& z, const TranslatedFormula& a) {
  TranslatedFormula r = a;
  r.flavor = Flavor::U;
  r.exist.insert(r.exist.begin(), z);
  return r;
}

inline TranslatedFormula forall_st(const TypedVar& z, const TranslatedFormula& a, Flavor fl, NameSupply& ns) {
  TranslatedFormula r;
  r.flavor = fl;
  bool dst = fl == Flavor::Dst;
  std::vector<TermP> xz;
  for (const auto& x : a.exist) {
    TypedVar X{ns.fresh(dst ? "S" : "X"), dst ? ty_star(ty_arrow(z.ty, x.ty)) : ty_arrow(z.ty, x.ty)};
    r.exist.push_back(X);
    xz.push_back(dst ? mk_seqapps(mk_var(X), {mk_var(z)}) : mk_app(mk_var(X), mk_var(z)));
  }
  r.univ = {z};
  detail::append(r.univ, a.univ);
  r.matrix = subst_tuple(a.matrix, a.exist, xz);
  return r;
}

inline TranslatedFormula st(const TypeP& ty, const TermP& t, Flavor fl, NameSupply& ns) {
  TranslatedFormula r;
  r.flavor = fl;
  if (fl == Flavor::U) {
    TypedVar y{ns.fresh("y"), ty};
    r.exist = {y};
    r.matrix = f_eq(ty, mk_var(y), t);
    return r;
  }
  TypedVar s{ns.fresh("s"), ty_star(ty)};
  r.exist = {s};
  std::string i = ns.fresh("i");
  r.matrix = f_bexists(i, mk_len(ty, mk_var(s)), f_eq(ty, t, mk_proj(ty, mk_var(s), mk_var(i, ty_nat()))));
  return r;
}

inline TranslatedFormula atom(const FormulaP& f, Flavor fl) {
  TranslatedFormula r;
  r.flavor = fl;
  r.matrix = f;
  return r;
}

}  // namespace clause

namespace detail {

// input is desugared and type-checked; names are reserved in ns
inline TranslatedFormula tr(const FormulaP& f, Flavor fl, NameSupply& ns) {
  Classification c = classify(f);
  if (c.internal && (fl == Flavor::Dst || c.or_free)) return clause::atom(f, fl);
  switch (f->kind) {
    case K::St: return clause::st(f->ty, f->t1, fl, ns);
    case K::And: {
      TranslatedFormula a = tr(f->l, fl, ns);
      return clause::conj(a, tr(f->r, fl, ns), fl);
    }
    case K::Or: {
      TranslatedFormula a = tr(f->l, fl, ns);
      return clause::disj(a, tr(f->r, fl, ns), fl, ns);
    }
    case K::Imp: {
      TranslatedFormula a = tr(f->l, fl, ns);
      return clause::imp(a, tr(f->r, fl, ns), fl, ns);
    }
    case K::Exists: return clause::exists(f->var, f->ty, tr(f->l, fl, ns), fl, ns);
    case K::Forall: return clause::forall(f->var, f->ty, tr(f->l, fl, ns), fl);
    case K::ExistsSt: {
      if (fl == Flavor::Dst) return clause::exists(f->var, f->ty, tr(f->l, fl, ns), fl, ns, true);
      TypedVar z{ns.claim(f->var), f->ty};
      return clause::exists_st_u(z, tr(rename_bound(f->l, f->var, z.name, f->ty), fl, ns));
    }
    case K::ForallSt: {
      TypedVar z{ns.claim(f->var), f->ty};
      return clause::forall_st(z, tr(rename_bound(f->l, f->var, z.name, f->ty), fl, ns), fl, ns);
    }
    case K::BForall:
    case K::BExists:
      throw TranslateError(fl == Flavor::U ? "bounded quantifier over a formula that is not internal and disjunction-free"
                                           : "bounded quantifier over an external formula");
    default: break;
  }
  throw TranslateError("unexpected formula node in translation");
}

inline TranslatedFormula tr_u(const FormulaP& f, NameSupply& ns) { return tr(f, Flavor::U, ns); }
inline TranslatedFormula tr_dst(const FormulaP& f, NameSupply& ns) { return tr(f, Flavor::Dst, ns); }

}  // namespace detail

inline TranslatedFormula translate_with(const FormulaP& f, Flavor fl, NameSupply& ns) {
  FormulaP d = desugar(f);
  try {
    check_formula(d);
  } catch (const TypeError& e) {
    throw TranslateError(std::string("ill-typed input: ") + e.what());
  }
  ns.reserve(d);
  return fl == Flavor::Dst ? detail::tr_dst(d, ns) : detail::tr_u(d, ns);
}

inline TranslatedFormula dst_translate(const FormulaP& f) {
  NameSupply ns;
  return translate_with(f, Flavor::Dst, ns);
}
inline TranslatedFormula u_translate(const FormulaP& f) {
  NameSupply ns;
  return translate_with(f, Flavor::U, ns);
}
inline TranslatedFormula translate(const FormulaP& f, Flavor fl) {
  return fl == Flavor::Dst ? dst_translate(f) : u_translate(f);
}

// ∃st x̄ ∀st ȳ φ as a formula
inline FormulaP tf_to_formula(const TranslatedFormula& t) {
  FormulaP f = t.matrix;
  for (auto it = t.univ.rbegin(); it != t.univ.rend(); ++it) f = f_forall_st(it->name, it->ty, f);
  for (auto it = t.exist.rbegin(); it != t.exist.rend(); ++it) f = f_exists_st(it->name, it->ty, f);
  return f;
}

// empty string when all invariants hold
inline std::string tf_invariant_violation(const TranslatedFormula& t) {
  Classification c = classify(t.matrix);
  if (!c.internal) return "matrix is not internal";
  if (t.flavor == Flavor::U && !c.or_free) return "matrix contains a disjunction";
  if (t.flavor == Flavor::Dst)
    for (const auto& v : t.exist)
      if (!is_star(v.ty)) return "existential variable " + v.name + " is not sequence-typed";
  std::set<std::string> names;
  for (const auto& v : t.exist)
    if (!names.insert(v.name).second) return "duplicate tuple name " + v.name;
  for (const auto& v : t.univ)
    if (!names.insert(v.name).second) return "duplicate tuple name " + v.name;
  try {
    Context ctx;
    for (const auto& v : t.exist) ctx[v.name] = v.ty;
    for (const auto& v : t.univ) ctx[v.name] = v.ty;
    check_formula(t.matrix, ctx);
  } catch (const TypeError& e) {
    return std::string("matrix ill-typed: ") + e.what();
  }
  return "";
}

// equal up to a consistent renaming of tuple variables
inline bool tf_alpha_eq(const TranslatedFormula& a, const TranslatedFormula& b) {
  if (a.exist.size() != b.exist.size() || a.univ.size() != b.univ.size()) return false;
  return formula_alpha_eq(tf_to_formula(a), tf_to_formula(b));
}

}  // namespace nsdial

#endif
