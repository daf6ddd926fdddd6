// Hilbert-style proofs: axiom catalogue, rules, checker.
#ifndef NSDIAL_PROOF_HPP
#define NSDIAL_PROOF_HPP

#include <functional>

#include "nsdial/reduce.hpp"
#include "nsdial/translate.hpp"

namespace nsdial {

struct ProofError : std::runtime_error {
  enum class Code { BadInstantiation, EigenvariableViolation, FlavorViolation, UnsupportedSchema };
  Code code;
  std::string node;
  ProofError(Code c, std::string n, const std::string& m) : std::runtime_error(m), code(c), node(std::move(n)) {}
};

inline const char* proof_error_name(ProofError::Code c) {
  switch (c) {
    case ProofError::Code::BadInstantiation: return "BadInstantiation";
    case ProofError::Code::EigenvariableViolation: return "EigenvariableViolation";
    case ProofError::Code::FlavorViolation: return "FlavorViolation";
    case ProofError::Code::UnsupportedSchema: return "UnsupportedSchema";
  }
  return "?";
}

enum class ParamKind { Formula, Term, Type, Var };

struct Binding {
  ParamKind kind = ParamKind::Formula;
  FormulaP f;
  TermP t;
  TypeP ty;
  TypedVar v;
};
using Binds = std::vector<std::pair<std::string, Binding>>;

inline Binding bind_formula(FormulaP f) { Binding b; b.kind = ParamKind::Formula; b.f = std::move(f); return b; }
inline Binding bind_term(TermP t) { Binding b; b.kind = ParamKind::Term; b.t = std::move(t); return b; }
inline Binding bind_type(TypeP t) { Binding b; b.kind = ParamKind::Type; b.ty = std::move(t); return b; }
inline Binding bind_var(std::string n, TypeP t) { Binding b; b.kind = ParamKind::Var; b.v = {std::move(n), std::move(t)}; return b; }

struct Proof;
using ProofP = std::shared_ptr<const Proof>;

struct Proof {
  enum class Kind { Axiom, MP, ForallRule, ExistsRule, Ind, IndSt };
  Kind kind;
  std::string schema;  // axiom name
  Binds binds;
  TypedVar var;        // rule variable; empty name lets ind infer it
  ProofP p, q;         // mp: major, minor; ind: base, step; rules: premise
  int line = 0;
};

inline ProofP pf_axiom(std::string name, Binds b) {
  return std::make_shared<const Proof>(Proof{Proof::Kind::Axiom, std::move(name), std::move(b), {}, nullptr, nullptr});
}
inline ProofP pf_mp(ProofP major, ProofP minor) {
  return std::make_shared<const Proof>(Proof{Proof::Kind::MP, "", {}, {}, std::move(major), std::move(minor)});
}
inline ProofP pf_forall_rule(TypedVar x, ProofP p) {
  return std::make_shared<const Proof>(Proof{Proof::Kind::ForallRule, "", {}, std::move(x), std::move(p), nullptr});
}
inline ProofP pf_exists_rule(TypedVar x, ProofP p) {
  return std::make_shared<const Proof>(Proof{Proof::Kind::ExistsRule, "", {}, std::move(x), std::move(p), nullptr});
}
inline ProofP pf_ind(TypedVar n, ProofP base, ProofP step) {
  return std::make_shared<const Proof>(Proof{Proof::Kind::Ind, "", {}, std::move(n), std::move(base), std::move(step)});
}
inline ProofP pf_ind_st(ProofP base, ProofP step) {
  return std::make_shared<const Proof>(Proof{Proof::Kind::IndSt, "", {}, {}, std::move(base), std::move(step)});
}

// -- catalogue

struct Schema {
  std::string name;
  std::vector<std::pair<std::string, ParamKind>> params;
  bool in_u = true, in_dst = true;
  std::string group;
};

inline const std::vector<Schema>& catalogue() {
  using P = ParamKind;
  static const std::vector<Schema> c = {
      {"k", {{"A", P::Formula}, {"B", P::Formula}}, true, true, "logic"},
      {"s", {{"A", P::Formula}, {"B", P::Formula}, {"C", P::Formula}}, true, true, "logic"},
      {"and-i", {{"A", P::Formula}, {"B", P::Formula}}, true, true, "logic"},
      {"and-l", {{"A", P::Formula}, {"B", P::Formula}}, true, true, "logic"},
      {"and-r", {{"A", P::Formula}, {"B", P::Formula}}, true, true, "logic"},
      {"or-l", {{"A", P::Formula}, {"B", P::Formula}}, true, true, "logic"},
      {"or-r", {{"A", P::Formula}, {"B", P::Formula}}, true, true, "logic"},
      {"or-e", {{"A", P::Formula}, {"B", P::Formula}, {"C", P::Formula}}, true, true, "logic"},
      {"efq", {{"A", P::Formula}}, true, true, "logic"},
      {"all-inst", {{"x", P::Var}, {"A", P::Formula}, {"b", P::Term}}, true, true, "logic"},
      {"ex-intro", {{"x", P::Var}, {"A", P::Formula}, {"b", P::Term}}, true, true, "logic"},
      {"refl", {{"a", P::Term}}, true, true, "arith"},
      {"sym", {{"a", P::Term}, {"b", P::Term}}, true, true, "arith"},
      {"trans", {{"a", P::Term}, {"b", P::Term}, {"c", P::Term}}, true, true, "arith"},
      {"conv", {{"a", P::Term}, {"b", P::Term}}, true, true, "arith"},
      {"eq-sub", {{"x", P::Var}, {"A", P::Formula}, {"a", P::Term}, {"b", P::Term}}, true, true, "arith"},
      {"succ-inj", {{"a", P::Term}, {"b", P::Term}}, true, true, "arith"},
      {"zero-succ", {{"a", P::Term}}, true, true, "arith"},
      {"ext-l", {{"f", P::Term}, {"g", P::Term}}, true, true, "arith"},
      {"ext-r", {{"f", P::Term}, {"g", P::Term}}, true, true, "arith"},
      {"sa", {{"sigma", P::Type}}, false, true, "arith"},
      {"delta", {{"A", P::Formula}}, true, true, "arith"},
      {"allst-elim", {{"x", P::Var}, {"A", P::Formula}}, true, true, "external"},
      {"allst-intro", {{"x", P::Var}, {"A", P::Formula}}, true, true, "external"},
      {"exst-elim", {{"x", P::Var}, {"A", P::Formula}}, true, true, "external"},
      {"exst-intro", {{"x", P::Var}, {"A", P::Formula}}, true, true, "external"},
      {"st-eq", {{"a", P::Term}, {"b", P::Term}}, true, true, "standard"},
      {"st-closed", {{"a", P::Term}}, true, true, "standard"},
      {"st-app", {{"f", P::Term}, {"a", P::Term}}, true, true, "standard"},
      {"os", {{"s", P::Var}, {"A", P::Formula}}, true, true, "principle"},
      {"us", {{"s", P::Var}, {"A", P::Formula}}, true, true, "principle"},
      {"nu", {{"x", P::Var}, {"y", P::Var}, {"A", P::Formula}}, true, false, "principle"},
      {"ac-st", {{"x", P::Var}, {"y", P::Var}, {"A", P::Formula}}, true, false, "principle"},
      {"ip-st", {{"x", P::Var}, {"y", P::Var}, {"A", P::Formula}, {"B", P::Formula}}, true, false, "principle"},
      {"ncr", {{"x", P::Var}, {"y", P::Var}, {"A", P::Formula}}, false, true, "principle"},
      {"hac", {{"x", P::Var}, {"y", P::Var}, {"A", P::Formula}}, false, true, "principle"},
      {"hip", {{"x", P::Var}, {"y", P::Var}, {"A", P::Formula}, {"B", P::Formula}}, false, true, "principle"},
  };
  return c;
}

inline const Schema* find_schema(const std::string& n) {
  for (const auto& s : catalogue())
    if (s.name == n) return &s;
  return nullptr;
}

// -- instantiation

struct Inst {
  const Schema* schema;
  const Binds& binds;
  Flavor fl;
  std::string node;

  [[noreturn]] void bad(const std::string& m) const { throw ProofError(ProofError::Code::BadInstantiation, node, m); }
  [[noreturn]] void flavor(const std::string& m) const { throw ProofError(ProofError::Code::FlavorViolation, node, m); }

  const Binding& get(const std::string& k, ParamKind pk) const {
    for (const auto& [n, b] : binds)
      if (n == k) {
        if (b.kind != pk) bad("parameter " + k + " has the wrong kind");
        return b;
      }
    bad("missing parameter " + k);
  }
  FormulaP formula(const std::string& k) const {
    FormulaP f = desugar(get(k, ParamKind::Formula).f);
    try {
      Context ctx;
      for (auto& [n, t] : formula_free_vars(f))
        if (t) ctx[n] = t;
      check_formula(f, ctx);
    } catch (const TypeError& e) {
      bad("parameter " + k + ": " + e.what());
    }
    return f;
  }
  // internal, and disjunction-free in the uniform system
  FormulaP internal(const std::string& k) const {
    FormulaP f = formula(k);
    Classification c = classify(f);
    if (!c.internal) bad("parameter " + k + " must be internal");
    if (fl == Flavor::U && !c.or_free) flavor("parameter " + k + " must be disjunction-free in the uniform system");
    return f;
  }
  TermP term(const std::string& k) const { return get(k, ParamKind::Term).t; }
  TypeP type_of(const std::string& k) const {
    try {
      TermP t = term(k);
      Context ctx;
      for (auto& [n, ty] : term_free_vars(t))
        if (ty) ctx[n] = ty;
      return type_check(t, ctx);
    } catch (const TypeError& e) {
      bad("parameter " + k + ": " + e.what());
    }
  }
  TypeP type(const std::string& k) const { return get(k, ParamKind::Type).ty; }
  TypedVar var(const std::string& k) const { return get(k, ParamKind::Var).v; }
  void same_type(const TypeP& a, const TypeP& b, const std::string& what) const {
    if (!type_eq(a, b)) bad(what + ": expected " + type_str(a) + ", found " + type_str(b));
  }
};

inline std::set<std::string> names_of(std::initializer_list<FormulaP> fs, std::initializer_list<std::string> extra = {}) {
  std::set<std::string> s(extra);
  for (const auto& f : fs)
    if (f) formula_names(f, s);
  return s;
}

inline FormulaP st_in(const TypeP& el, const std::string& x, const TermP& s) { return f_in(el, mk_var(x, el), s); }

// the formula an axiom instance asserts; sugar is expanded
inline FormulaP instantiate(const std::string& name, const Binds& binds, Flavor fl, const std::string& node = "axiom") {
  const Schema* sc = find_schema(name);
  if (!sc) throw ProofError(ProofError::Code::UnsupportedSchema, node, "unknown axiom schema " + name);
  if ((fl == Flavor::U && !sc->in_u) || (fl == Flavor::Dst && !sc->in_dst))
    throw ProofError(ProofError::Code::FlavorViolation, node,
                     "schema " + name + " is not part of the " + std::string(flavor_name(fl)) + " system");
  Inst in{sc, binds, fl, node};
  for (const auto& [k, b] : binds) {
    bool known = false;
    for (const auto& [pk, _] : sc->params) known = known || pk == k;
    if (!known) in.bad("unexpected parameter " + k);
  }
  const TypeP N = ty_nat();
  auto eq = [](const TypeP& t, TermP a, TermP b) { return f_eq(t, std::move(a), std::move(b)); };
  FormulaP r;
  if (name == "k") {
    auto A = in.formula("A"), B = in.formula("B");
    r = f_imp(A, f_imp(B, A));
  } else if (name == "s") {
    auto A = in.formula("A"), B = in.formula("B"), C = in.formula("C");
    r = f_imp(f_imp(A, f_imp(B, C)), f_imp(f_imp(A, B), f_imp(A, C)));
  } else if (name == "and-i") {
    auto A = in.formula("A"), B = in.formula("B");
    r = f_imp(A, f_imp(B, f_and(A, B)));
  } else if (name == "and-l" || name == "and-r") {
    auto A = in.formula("A"), B = in.formula("B");
    r = f_imp(f_and(A, B), name == "and-l" ? A : B);
  } else if (name == "or-l" || name == "or-r") {
    auto A = in.formula("A"), B = in.formula("B");
    r = f_imp(name == "or-l" ? A : B, f_or(A, B));
  } else if (name == "or-e") {
    auto A = in.formula("A"), B = in.formula("B"), C = in.formula("C");
    r = f_imp(f_imp(A, C), f_imp(f_imp(B, C), f_imp(f_or(A, B), C)));
  } else if (name == "efq") {
    r = f_imp(bot_formula(), in.formula("A"));
  } else if (name == "all-inst" || name == "ex-intro") {
    TypedVar x = in.var("x");
    auto A = in.formula("A");
    in.same_type(x.ty, in.type_of("b"), "term b");
    FormulaP Ab = subst_formula(A, x.name, in.term("b"));
    r = name == "all-inst" ? f_imp(f_forall(x.name, x.ty, A), Ab) : f_imp(Ab, f_exists(x.name, x.ty, A));
  } else if (name == "refl") {
    r = eq(in.type_of("a"), in.term("a"), in.term("a"));
  } else if (name == "sym" || name == "trans" || name == "conv") {
    TypeP t = in.type_of("a");
    in.same_type(t, in.type_of("b"), "term b");
    TermP a = in.term("a"), b = in.term("b");
    if (name == "sym") {
      r = f_imp(eq(t, a, b), eq(t, b, a));
    } else if (name == "trans") {
      in.same_type(t, in.type_of("c"), "term c");
      TermP c = in.term("c");
      r = f_imp(eq(t, a, b), f_imp(eq(t, b, c), eq(t, a, c)));
    } else {
      if (!alpha_eq(normalize(a), normalize(b))) in.bad("terms a and b have different normal forms");
      r = eq(t, a, b);
    }
  } else if (name == "eq-sub") {
    TypedVar x = in.var("x");
    auto A = in.internal("A");
    in.same_type(x.ty, in.type_of("a"), "term a");
    in.same_type(x.ty, in.type_of("b"), "term b");
    TermP a = in.term("a"), b = in.term("b");
    r = f_imp(eq(x.ty, a, b), f_imp(subst_formula(A, x.name, a), subst_formula(A, x.name, b)));
  } else if (name == "succ-inj") {
    in.same_type(N, in.type_of("a"), "term a");
    in.same_type(N, in.type_of("b"), "term b");
    r = f_imp(eq(N, mk_succ(in.term("a")), mk_succ(in.term("b"))), eq(N, in.term("a"), in.term("b")));
  } else if (name == "zero-succ") {
    in.same_type(N, in.type_of("a"), "term a");
    r = f_imp(eq(N, mk_succ(in.term("a")), mk_zero()), bot_formula());
  } else if (name == "ext-l" || name == "ext-r") {
    TypeP t = in.type_of("f");
    if (!is_arrow(t)) in.bad("extensionality needs functions, found " + type_str(t));
    in.same_type(t, in.type_of("g"), "term g");
    TermP f = in.term("f"), g = in.term("g");
    std::set<std::string> avoid;
    for (auto& [n, _] : term_free_vars(f)) avoid.insert(n);
    for (auto& [n, _] : term_free_vars(g)) avoid.insert(n);
    std::string x = fresh_name("x", avoid);
    TermP xv = mk_var(x, t->dom);
    FormulaP pw = f_forall(x, t->dom, eq(t->cod, mk_app(f, xv), mk_app(g, xv)));
    r = name == "ext-l" ? f_imp(eq(t, f, g), pw) : f_imp(pw, eq(t, f, g));
  } else if (name == "sa") {
    TypeP s = in.type("sigma");
    TypeP ss = ty_star(s);
    TermP sv = mk_var("s", ss);
    r = f_forall("s", ss,
                 f_or(eq(ss, sv, mk_nil(s)),
                      f_exists("x", s, f_exists("s'", ss, eq(ss, sv, mk_cons(s, mk_var("x", s), mk_var("s'", ss)))))));
  } else if (name == "delta") {
    auto A = in.internal("A");
    if (!formula_free_vars(A).empty()) in.bad("hypothesis must be a sentence");
    r = A;
  } else if (name == "allst-elim" || name == "allst-intro" || name == "exst-elim" || name == "exst-intro") {
    TypedVar x = in.var("x");
    auto A = in.formula("A");
    FormulaP stx = f_st(x.ty, mk_var(x));
    if (name == "allst-elim") r = f_imp(f_forall_st(x.name, x.ty, A), f_forall(x.name, x.ty, f_imp(stx, A)));
    if (name == "allst-intro") r = f_imp(f_forall(x.name, x.ty, f_imp(stx, A)), f_forall_st(x.name, x.ty, A));
    if (name == "exst-elim") r = f_imp(f_exists_st(x.name, x.ty, A), f_exists(x.name, x.ty, f_and(stx, A)));
    if (name == "exst-intro") r = f_imp(f_exists(x.name, x.ty, f_and(stx, A)), f_exists_st(x.name, x.ty, A));
  } else if (name == "st-eq") {
    TypeP t = in.type_of("a");
    in.same_type(t, in.type_of("b"), "term b");
    r = f_imp(f_and(f_st(t, in.term("a")), eq(t, in.term("a"), in.term("b"))), f_st(t, in.term("b")));
  } else if (name == "st-closed") {
    TypeP t = in.type_of("a");
    if (!term_closed(in.term("a"))) in.bad("standardness axiom needs a closed term");
    r = f_st(t, in.term("a"));
  } else if (name == "st-app") {
    TypeP ft = in.type_of("f");
    if (!is_arrow(ft)) in.bad("term f must be a function, found " + type_str(ft));
    in.same_type(ft->dom, in.type_of("a"), "term a");
    TermP f = in.term("f"), a = in.term("a");
    r = f_imp(f_and(f_st(ft, f), f_st(ft->dom, a)), f_st(ft->cod, mk_app(f, a)));
  } else if (name == "os" || name == "us") {
    TypedVar s = in.var("s");
    if (!is_star(s.ty)) in.bad("sequence variable expected, found " + type_str(s.ty));
    auto phi = in.internal("A");
    std::string x = fresh_name("x", names_of({phi}, {s.name}));
    FormulaP hyper = desugar(f_forall_st(x, s.ty->dom, st_in(s.ty->dom, x, mk_var(s))));
    if (name == "os")
      r = f_imp(f_forall_st(s.name, s.ty, phi), f_exists(s.name, s.ty, f_and(hyper, phi)));
    else
      r = f_imp(f_forall(s.name, s.ty, f_imp(hyper, phi)), f_exists_st(s.name, s.ty, phi));
  } else if (name == "nu" || name == "ncr") {
    TypedVar x = in.var("x"), y = in.var("y");
    auto A = in.formula("A");
    FormulaP prem = f_forall(y.name, y.ty, f_exists_st(x.name, x.ty, A));
    if (name == "nu") {
      r = f_imp(prem, f_exists_st(x.name, x.ty, f_forall(y.name, y.ty, A)));
    } else {
      std::string s = fresh_name("s", names_of({A}, {x.name, y.name}));
      TypeP st = ty_star(x.ty);
      FormulaP body = f_exists(x.name, x.ty, f_and(desugar(st_in(x.ty, x.name, mk_var(s, st))), A));
      r = f_imp(prem, f_exists_st(s, st, f_forall(y.name, y.ty, body)));
    }
  } else if (name == "ac-st" || name == "hac") {
    TypedVar x = in.var("x"), y = in.var("y");
    auto A = in.formula("A");
    FormulaP prem = f_forall_st(x.name, x.ty, f_exists_st(y.name, y.ty, A));
    std::string f = fresh_name("f", names_of({A}, {x.name, y.name}));
    if (name == "ac-st") {
      TypeP ft = ty_arrow(x.ty, y.ty);
      FormulaP body = subst_formula(A, y.name, mk_app(mk_var(f, ft), mk_var(x)));
      r = f_imp(prem, f_exists_st(f, ft, f_forall_st(x.name, x.ty, body)));
    } else {
      TypeP ft = ty_star(ty_arrow(x.ty, ty_star(y.ty)));
      TermP fx = mk_seqapps(mk_var(f, ft), {mk_var(x)});
      FormulaP body = f_exists(y.name, y.ty, f_and(desugar(st_in(y.ty, y.name, fx)), A));
      r = f_imp(prem, f_exists_st(f, ft, f_forall_st(x.name, x.ty, body)));
    }
  } else if (name == "ip-st" || name == "hip") {
    TypedVar x = in.var("x"), y = in.var("y");
    auto phi = in.internal("A");
    auto Psi = in.formula("B");
    if (formula_free_vars(phi).count(y.name)) in.bad("variable " + y.name + " must not be free in the premise");
    if (formula_free_vars(Psi).count(x.name)) in.bad("variable " + x.name + " must not be free in the conclusion");
    FormulaP all = f_forall_st(x.name, x.ty, phi);
    FormulaP prem = f_imp(all, f_exists_st(y.name, y.ty, Psi));
    if (name == "ip-st") {
      r = f_imp(prem, f_exists_st(y.name, y.ty, f_imp(all, Psi)));
    } else {
      std::string t = fresh_name("t", names_of({phi, Psi}, {x.name, y.name}));
      TypeP tt = ty_star(y.ty);
      FormulaP body = f_exists(y.name, y.ty, f_and(desugar(st_in(y.ty, y.name, mk_var(t, tt))), Psi));
      r = f_imp(prem, f_exists_st(t, tt, f_imp(all, body)));
    }
  } else {
    throw ProofError(ProofError::Code::UnsupportedSchema, node, "schema " + name + " has no instantiation rule");
  }
  return r;
}

// -- checking

struct ProofChecker {
  Flavor fl;
  std::map<const Proof*, FormulaP> memo;
  std::vector<FormulaP> delta;

  static std::string where(const Proof& p, const std::string& path) {
    return p.line > 0 ? path + " (line " + std::to_string(p.line) + ")" : path;
  }

  void well_formed(const FormulaP& f, const std::string& node) {
    try {
      Context ctx;
      for (auto& [n, t] : formula_free_vars(f))
        if (t) ctx[n] = t;
      check_formula(f, ctx);
    } catch (const TypeError& e) {
      throw ProofError(ProofError::Code::BadInstantiation, node, std::string("ill-typed conclusion: ") + e.what());
    }
  }

  FormulaP check(const ProofP& p, const std::string& path = "proof") {
    if (auto it = memo.find(p.get()); it != memo.end()) return it->second;
    std::string node = where(*p, path);
    FormulaP r;
    switch (p->kind) {
      case Proof::Kind::Axiom:
        r = instantiate(p->schema, p->binds, fl, node + " axiom " + p->schema);
        if (p->schema == "delta") delta.push_back(r);
        break;
      case Proof::Kind::MP: {
        FormulaP maj = check(p->p, path + ".mp.1");
        FormulaP min = check(p->q, path + ".mp.2");
        if (maj->kind != K::Imp)
          throw ProofError(ProofError::Code::BadInstantiation, node, "major premise of modus ponens is not an implication");
        if (!formula_alpha_eq(maj->l, min))
          throw ProofError(ProofError::Code::BadInstantiation, node, "minor premise does not match the antecedent");
        r = maj->r;
        break;
      }
      case Proof::Kind::ForallRule:
      case Proof::Kind::ExistsRule: {
        bool all = p->kind == Proof::Kind::ForallRule;
        FormulaP f = check(p->p, path + (all ? ".forall-rule" : ".exists-rule"));
        if (f->kind != K::Imp)
          throw ProofError(ProofError::Code::BadInstantiation, node, "premise of a quantifier rule is not an implication");
        const FormulaP& side = all ? f->l : f->r;
        if (formula_free_vars(side).count(p->var.name))
          throw ProofError(ProofError::Code::EigenvariableViolation, node,
                           "variable " + p->var.name + " is free in " + (all ? "the antecedent" : "the consequent"));
        r = all ? f_imp(f->l, f_forall(p->var.name, p->var.ty, f->r)) : f_imp(f_exists(p->var.name, p->var.ty, f->l), f->r);
        break;
      }
      case Proof::Kind::Ind: r = check_ind(*p, path, node); break;
      case Proof::Kind::IndSt: {
        FormulaP base = check(p->p, path + ".ind-st.base");
        FormulaP step = check(p->q, path + ".ind-st.step");
        if (step->kind != K::ForallSt || !is_ground(step->ty) || step->l->kind != K::Imp)
          throw ProofError(ProofError::Code::BadInstantiation, node, "induction step must have the form forall-st n:N (P -> P')");
        const std::string& n = step->var;
        FormulaP phi = step->l->l;
        if (!formula_alpha_eq(subst_formula(phi, n, mk_succ(mk_var(n, ty_nat()))), step->l->r))
          throw ProofError(ProofError::Code::BadInstantiation, node, "induction step does not conclude the successor case");
        if (!formula_alpha_eq(subst_formula(phi, n, mk_zero()), base))
          throw ProofError(ProofError::Code::BadInstantiation, node, "base case does not match the induction formula");
        r = f_forall_st(n, ty_nat(), phi);
        break;
      }
    }
    well_formed(r, node);
    memo[p.get()] = r;
    return r;
  }

  FormulaP check_ind(const Proof& p, const std::string& path, const std::string& node) {
    FormulaP base = check(p.p, path + ".ind.base");
    FormulaP step = check(p.q, path + ".ind.step");
    if (step->kind != K::Imp) throw ProofError(ProofError::Code::BadInstantiation, node, "induction step must be an implication");
    FormulaP A = step->l;
    Classification c = classify(A);
    if (!c.internal) throw ProofError(ProofError::Code::BadInstantiation, node, "internal induction needs an internal formula");
    if (fl == Flavor::U && !c.or_free)
      throw ProofError(ProofError::Code::FlavorViolation, node, "induction formula must be disjunction-free in the uniform system");
    std::vector<std::string> cands;
    if (!p.var.name.empty()) {
      if (!is_ground(p.var.ty)) throw ProofError(ProofError::Code::BadInstantiation, node, "induction variable must have type N");
      cands.push_back(p.var.name);
    } else {
      for (auto& [n, t] : formula_free_vars(A))
        if (t && is_ground(t)) cands.push_back(n);
      if (cands.empty()) cands.push_back(fresh_name("n", names_of({A})));
    }
    for (const auto& n : cands) {
      TermP nv = mk_var(n, ty_nat());
      if (formula_alpha_eq(subst_formula(A, n, mk_succ(nv)), step->r) && formula_alpha_eq(subst_formula(A, n, mk_zero()), base))
        return f_forall(n, ty_nat(), A);
    }
    throw ProofError(ProofError::Code::BadInstantiation, node, "premises do not form an induction on the given variable");
  }
};

inline FormulaP check_proof(const ProofP& p, Flavor fl) {
  ProofChecker c{fl, {}, {}};
  return c.check(p);
}

// -- derived rules used to build proofs

namespace derive {

inline Binds ab(const FormulaP& A, const FormulaP& B) { return {{"A", bind_formula(A)}, {"B", bind_formula(B)}}; }
inline Binds abc(const FormulaP& A, const FormulaP& B, const FormulaP& C) {
  return {{"A", bind_formula(A)}, {"B", bind_formula(B)}, {"C", bind_formula(C)}};
}

struct Builder {
  Flavor fl;
  ProofChecker chk{fl, {}, {}};

  FormulaP concl(const ProofP& p) { return chk.check(p); }

  // from |- B infer |- A -> B
  ProofP weaken(const FormulaP& A, const ProofP& pb) {
    FormulaP B = concl(pb);
    return pf_mp(pf_axiom("k", ab(B, A)), pb);
  }
  // |- A -> A
  ProofP identity(const FormulaP& A) {
    FormulaP AA = f_imp(A, A);
    ProofP s = pf_axiom("s", abc(A, AA, A));
    ProofP k1 = pf_axiom("k", ab(A, AA));
    ProofP k2 = pf_axiom("k", ab(A, A));
    return pf_mp(pf_mp(s, k1), k2);
  }
  // from |- A -> (B -> C) and |- A -> B infer |- A -> C
  ProofP s_mp(const ProofP& abc_p, const ProofP& ab_p) {
    FormulaP f = concl(abc_p);
    FormulaP A = f->l, B = f->r->l, C = f->r->r;
    return pf_mp(pf_mp(pf_axiom("s", abc(A, B, C)), abc_p), ab_p);
  }
  // from |- A -> B and |- B -> C infer |- A -> C
  ProofP compose(const ProofP& p, const ProofP& q) {
    FormulaP f = concl(p);
    ProofP qa = weaken(f->l, q);  // A -> (B -> C)
    return s_mp(qa, p);
  }
  // from |- A -> B and |- A -> C infer |- A -> B & C
  ProofP pair(const ProofP& p, const ProofP& q) {
    FormulaP f = concl(p), g = concl(q);
    ProofP andi = weaken(f->l, pf_axiom("and-i", ab(f->r, g->r)));  // A -> (B -> (C -> B&C))
    return s_mp(s_mp(andi, p), q);
  }
  // from |- A infer |- forall x A, via a closed true antecedent
  ProofP generalize(const TypedVar& x, const ProofP& p) {
    ProofP r = pf_axiom("refl", {{"a", bind_term(mk_zero())}});
    FormulaP top = concl(r);
    return pf_mp(pf_forall_rule(x, weaken(top, p)), r);
  }
};

}  // namespace derive

}  // namespace nsdial

#endif
