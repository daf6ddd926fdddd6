// Concrete s-expression syntax: reader, elaborator, printer.
#ifndef NSDIAL_SEXPR_HPP
#define NSDIAL_SEXPR_HPP

#include <cctype>
#include <optional>
#include <sstream>

#include "nsdial/oracle.hpp"
#include "nsdial/proof.hpp"

namespace nsdial {

struct SyntaxError : std::runtime_error {
  int line;
  std::string node;
  SyntaxError(int l, std::string n, const std::string& m) : std::runtime_error(m), line(l), node(std::move(n)) {}
};

namespace sx {

struct Sexp {
  bool atom = false;
  std::string text;
  std::vector<Sexp> items;
  int line = 0;

  bool is(const char* s) const { return atom && text == s; }
  std::string head() const { return !atom && !items.empty() && items[0].atom ? items[0].text : std::string(); }
  std::string label() const { return atom ? text : "(" + head() + " ...)"; }
};

inline std::vector<Sexp> read_all(const std::string& src) {
  std::vector<Sexp> stack(1);
  int line = 1;
  std::size_t i = 0;
  while (i < src.size()) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == ';') {
      while (i < src.size() && src[i] != '\n') ++i;
    } else if (c == '(') {
      Sexp s;
      s.line = line;
      stack.push_back(s);
      ++i;
    } else if (c == ')') {
      if (stack.size() < 2) throw SyntaxError(line, ")", "unbalanced closing parenthesis");
      Sexp s = std::move(stack.back());
      stack.pop_back();
      stack.back().items.push_back(std::move(s));
      ++i;
    } else {
      std::size_t j = i;
      while (j < src.size() && !std::isspace(static_cast<unsigned char>(src[j])) && src[j] != '(' && src[j] != ')' && src[j] != ';')
        ++j;
      Sexp a;
      a.atom = true;
      a.text = src.substr(i, j - i);
      a.line = line;
      stack.back().items.push_back(std::move(a));
      i = j;
    }
  }
  if (stack.size() != 1) throw SyntaxError(stack.back().line, "(", "unclosed parenthesis");
  return std::move(stack[0].items);
}

inline Sexp read_one(const std::string& src) {
  auto all = read_all(src);
  if (all.size() != 1)
    throw SyntaxError(all.empty() ? 1 : all[1].line, "", "expected exactly one top-level form, found " + std::to_string(all.size()));
  return all[0];
}

// -- inference types with metavariables

struct MT;
using MTp = std::shared_ptr<MT>;
struct MT {
  enum class K { Meta, Nat, Arrow, Star } k = K::Meta;
  int id = -1;
  MTp a, b;
};

struct Unifier {
  int next = 0;
  std::map<int, MTp> sol;

  MTp meta() {
    auto m = std::make_shared<MT>();
    m->id = next++;
    return m;
  }
  static MTp mk(MT::K k, MTp a = nullptr, MTp b = nullptr) {
    auto m = std::make_shared<MT>();
    m->k = k;
    m->a = std::move(a);
    m->b = std::move(b);
    return m;
  }
  MTp find(MTp t) const {
    while (t->k == MT::K::Meta) {
      auto it = sol.find(t->id);
      if (it == sol.end()) break;
      t = it->second;
    }
    return t;
  }
  bool occurs(int id, const MTp& t0) const {
    MTp t = find(t0);
    if (t->k == MT::K::Meta) return t->id == id;
    return (t->a && occurs(id, t->a)) || (t->b && occurs(id, t->b));
  }
  MTp from(const TypeP& t) const {
    switch (t->kind) {
      case Type::Kind::Ground: return mk(MT::K::Nat);
      case Type::Kind::Arrow: return mk(MT::K::Arrow, from(t->dom), from(t->cod));
      case Type::Kind::Star: return mk(MT::K::Star, from(t->dom));
    }
    return mk(MT::K::Nat);
  }
  // unsolved variables default to N
  TypeP zonk(const MTp& t0) const {
    MTp t = find(t0);
    switch (t->k) {
      case MT::K::Meta:
      case MT::K::Nat: return ty_nat();
      case MT::K::Arrow: return ty_arrow(zonk(t->a), zonk(t->b));
      case MT::K::Star: return ty_star(zonk(t->a));
    }
    return ty_nat();
  }
  std::string show(const MTp& t0) const {
    MTp t = find(t0);
    switch (t->k) {
      case MT::K::Meta: return "?" + std::to_string(t->id);
      case MT::K::Nat: return "N";
      case MT::K::Arrow: return "(-> " + show(t->a) + " " + show(t->b) + ")";
      case MT::K::Star: return "(* " + show(t->a) + ")";
    }
    return "?";
  }
  void unify(const MTp& x, const MTp& y, const Sexp& at) {
    MTp a = find(x), b = find(y);
    if (a == b) return;
    if (a->k == MT::K::Meta && b->k == MT::K::Meta && a->id == b->id) return;
    if (a->k == MT::K::Meta || b->k == MT::K::Meta) {
      if (a->k != MT::K::Meta) std::swap(a, b);
      if (occurs(a->id, b)) throw SyntaxError(at.line, at.label(), "cyclic type " + show(b));
      sol[a->id] = b;
      return;
    }
    if (a->k != b->k) throw SyntaxError(at.line, at.label(), "type mismatch: expected " + show(x) + ", found " + show(y));
    if (a->a) unify(a->a, b->a, at);
    if (a->b) unify(a->b, b->b, at);
  }
};

// -- pre-terms

struct PT;
using PTp = std::shared_ptr<PT>;
struct PT {
  Term::Kind kind = Term::Kind::Var;
  std::string name;
  MTp ty;
  PTp f, a;
  ConstKind ck = ConstKind::Zero;
  std::vector<MTp> tys;
};

struct PF;
using PFp = std::shared_ptr<PF>;
struct PF {
  Formula::Kind kind = Formula::Kind::Eq;
  MTp ty;
  std::string var;
  PTp t1, t2;
  PFp l, r;
};

struct PBind {
  ParamKind kind = ParamKind::Formula;
  PFp f;
  PTp t;
  TypeP ty;
  TypedVar v;
};
struct PP;
using PPp = std::shared_ptr<PP>;
struct PP {
  Proof::Kind kind = Proof::Kind::Axiom;
  std::string schema;
  std::vector<std::pair<std::string, PBind>> binds;
  TypedVar var;
  PPp p, q;
  int line = 0;
};

inline const std::vector<std::pair<std::string, ConstKind>>& const_names() {
  static const std::vector<std::pair<std::string, ConstKind>> v = {
      {"zero", ConstKind::Zero},     {"succ", ConstKind::Succ},       {"nrec", ConstKind::NatRec},
      {"lrec", ConstKind::ListRec},  {"nil", ConstKind::Nil},         {"cons", ConstKind::Cons},
      {"default", ConstKind::Default}, {"len", ConstKind::Len},       {"proj", ConstKind::Proj},
      {"concat", ConstKind::Concat}, {"seqapp", ConstKind::SeqApp},   {"seqabs", ConstKind::SeqAbs},
      {"single", ConstKind::Singleton}};
  return v;
}
inline std::size_t const_arity(ConstKind k) {
  switch (k) {
    case ConstKind::Zero:
    case ConstKind::Succ: return 0;
    case ConstKind::ListRec:
    case ConstKind::SeqApp:
    case ConstKind::SeqAbs: return 2;
    default: return 1;
  }
}

using Scope = std::vector<std::pair<std::string, MTp>>;

struct Elab {
  Unifier u;
  std::map<std::string, MTp> free;

  [[noreturn]] static void fail(const Sexp& s, const std::string& m) { throw SyntaxError(s.line, s.label(), m); }

  static void arity(const Sexp& s, std::size_t n) {
    if (s.atom || s.items.size() != n) fail(s, "form " + s.head() + " expects " + std::to_string(n - 1) + " arguments");
  }
  static std::string ident(const Sexp& s) {
    if (!s.atom || s.text.empty() || std::isdigit(static_cast<unsigned char>(s.text[0]))) fail(s, "identifier expected");
    return s.text;
  }

  static TypeP type(const Sexp& s) {
    if (s.atom) {
      if (s.text == "N" || s.text == "0") return ty_nat();
      fail(s, "unknown type " + s.text);
    }
    std::string h = s.head();
    if (h == "->") {
      if (s.items.size() < 3) fail(s, "arrow type needs at least two components");
      TypeP r = type(s.items.back());
      for (std::size_t i = s.items.size() - 1; i-- > 1;) r = ty_arrow(type(s.items[i]), r);
      return r;
    }
    if (h == "*") {
      arity(s, 2);
      return ty_star(type(s.items[1]));
    }
    fail(s, "malformed type");
  }

  MTp mconst(ConstKind k, const std::vector<MTp>& p) {
    auto N = Unifier::mk(MT::K::Nat);
    auto ar = [](MTp a, MTp b) { return Unifier::mk(MT::K::Arrow, std::move(a), std::move(b)); };
    auto st = [](MTp a) { return Unifier::mk(MT::K::Star, std::move(a)); };
    switch (k) {
      case ConstKind::Zero: return N;
      case ConstKind::Succ: return ar(N, N);
      case ConstKind::NatRec: return ar(p[0], ar(ar(N, ar(p[0], p[0])), ar(N, p[0])));
      case ConstKind::ListRec: return ar(p[0], ar(ar(p[0], ar(p[1], p[0])), ar(st(p[1]), p[0])));
      case ConstKind::Nil: return st(p[0]);
      case ConstKind::Cons: return ar(p[0], ar(st(p[0]), st(p[0])));
      case ConstKind::Default: return p[0];
      case ConstKind::Len: return ar(st(p[0]), N);
      case ConstKind::Proj: return ar(st(p[0]), ar(N, p[0]));
      case ConstKind::Concat: return ar(st(p[0]), ar(st(p[0]), st(p[0])));
      case ConstKind::SeqApp: {
        MTp f = ar(p[0], st(p[1]));
        return ar(st(f), ar(p[0], st(p[1])));
      }
      case ConstKind::SeqAbs: {
        MTp f = ar(p[0], st(p[1]));
        return ar(f, st(f));
      }
      case ConstKind::Singleton: return ar(p[0], st(p[0]));
    }
    return N;
  }

  PTp cnst(ConstKind k, std::vector<MTp> tys, MTp& ty) {
    while (tys.size() < const_arity(k)) tys.push_back(u.meta());
    auto t = std::make_shared<PT>();
    t->kind = Term::Kind::Const;
    t->ck = k;
    t->tys = std::move(tys);
    ty = mconst(k, t->tys);
    return t;
  }
  static PTp app(PTp f, PTp a) {
    auto t = std::make_shared<PT>();
    t->kind = Term::Kind::App;
    t->f = std::move(f);
    t->a = std::move(a);
    return t;
  }
  PTp apply(const Sexp& at, PTp f, MTp fty, const PTp& a, const MTp& aty, MTp& out) {
    out = u.meta();
    u.unify(fty, Unifier::mk(MT::K::Arrow, aty, out), at);
    return app(std::move(f), a);
  }
  // applies a sugar head to argument forms
  PTp sugar(const Sexp& s, ConstKind k, std::size_t nargs, Scope& sc, MTp& ty) {
    arity(s, nargs + 1);
    MTp fty;
    PTp f = cnst(k, {}, fty);
    for (std::size_t i = 1; i <= nargs; ++i) {
      MTp aty;
      PTp a = term(s.items[i], sc, aty);
      f = apply(s.items[i], f, fty, a, aty, fty);
    }
    ty = fty;
    return f;
  }
  PTp binder_lam(const Sexp& b, const Sexp& body, Scope& sc, MTp& ty) {
    if (b.atom || b.items.empty() || b.items.size() > 2) fail(b, "binder (x A) expected");
    auto t = std::make_shared<PT>();
    t->kind = Term::Kind::Lam;
    t->name = ident(b.items[0]);
    t->ty = b.items.size() == 2 ? u.from(type(b.items[1])) : u.meta();
    sc.emplace_back(t->name, t->ty);
    MTp bt;
    t->f = term(body, sc, bt);
    sc.pop_back();
    ty = Unifier::mk(MT::K::Arrow, t->ty, bt);
    return t;
  }

  PTp term(const Sexp& s, Scope& sc, MTp& ty) {
    if (s.atom) {
      if (!s.text.empty() && std::all_of(s.text.begin(), s.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        MTp dummy;
        PTp t = cnst(ConstKind::Zero, {}, dummy);
        unsigned long n = std::stoul(s.text);
        for (unsigned long i = 0; i < n; ++i) t = app(cnst(ConstKind::Succ, {}, dummy), t);
        ty = Unifier::mk(MT::K::Nat);
        return t;
      }
      for (const auto& [n, k] : const_names())
        if (s.text == n && const_arity(k) == 0) return cnst(k, {}, ty);
      if (s.text == "cons") return cnst(ConstKind::Cons, {}, ty);
      fail(s, "unknown term " + s.text);
    }
    std::string h = s.head();
    if (h == "var") {
      if (s.items.size() != 2 && s.items.size() != 3) fail(s, "(var x) or (var x A) expected");
      auto t = std::make_shared<PT>();
      t->name = ident(s.items[1]);
      MTp vt;
      for (auto it = sc.rbegin(); it != sc.rend(); ++it)
        if (it->first == t->name) {
          vt = it->second;
          break;
        }
      if (!vt) {
        auto [it, fresh] = free.emplace(t->name, nullptr);
        if (fresh) it->second = u.meta();
        vt = it->second;
      }
      if (s.items.size() == 3) u.unify(vt, u.from(type(s.items[2])), s);
      t->ty = vt;
      ty = vt;
      return t;
    }
    if (h == "lam") {
      arity(s, 3);
      return binder_lam(s.items[1], s.items[2], sc, ty);
    }
    if (h == "app") {
      if (s.items.size() < 3) fail(s, "application needs a function and an argument");
      MTp fty;
      PTp f = term(s.items[1], sc, fty);
      for (std::size_t i = 2; i < s.items.size(); ++i) {
        MTp aty;
        PTp a = term(s.items[i], sc, aty);
        f = apply(s.items[i], f, fty, a, aty, fty);
      }
      ty = fty;
      return f;
    }
    if (h == "nrec" || h == "nil" || h == "default") {
      arity(s, 2);
      ConstKind k = h == "nrec" ? ConstKind::NatRec : h == "nil" ? ConstKind::Nil : ConstKind::Default;
      return cnst(k, {u.from(type(s.items[1]))}, ty);
    }
    if (h == "lrec") {
      arity(s, 3);
      return cnst(ConstKind::ListRec, {u.from(type(s.items[1])), u.from(type(s.items[2]))}, ty);
    }
    if (h == "const") {
      if (s.items.size() < 2) fail(s, "(const NAME types...) expected");
      for (const auto& [n, k] : const_names())
        if (s.items[1].is(n.c_str())) {
          if (s.items.size() - 2 > const_arity(k)) fail(s, "too many type parameters for " + n);
          std::vector<MTp> ps;
          for (std::size_t i = 2; i < s.items.size(); ++i) ps.push_back(u.from(type(s.items[i])));
          return cnst(k, ps, ty);
        }
      fail(s, "unknown constant");
    }
    if (h == "seq") {
      if (s.items.size() < 2) fail(s, "(seq A t...) expected");
      TypeP el = type(s.items[1]);
      MTp elm = u.from(el), dummy;
      PTp r = cnst(ConstKind::Nil, {elm}, dummy);
      for (std::size_t i = s.items.size(); i-- > 2;) {
        MTp at;
        PTp a = term(s.items[i], sc, at);
        u.unify(elm, at, s.items[i]);
        r = app(app(cnst(ConstKind::Cons, {elm}, dummy), a), r);
      }
      ty = Unifier::mk(MT::K::Star, elm);
      return r;
    }
    if (h == "len") return sugar(s, ConstKind::Len, 1, sc, ty);
    if (h == "single") return sugar(s, ConstKind::Singleton, 1, sc, ty);
    if (h == "proj") return sugar(s, ConstKind::Proj, 2, sc, ty);
    if (h == "concat") return sugar(s, ConstKind::Concat, 2, sc, ty);
    if (h == "seqapp") return sugar(s, ConstKind::SeqApp, 2, sc, ty);
    if (h == "seqabs") {
      arity(s, 3);
      MTp fty, lty;
      PTp f = cnst(ConstKind::SeqAbs, {}, fty);
      PTp l = binder_lam(s.items[1], s.items[2], sc, lty);
      return apply(s, f, fty, l, lty, ty);
    }
    fail(s, "unknown term form " + h);
  }

  // -- formulas

  std::vector<std::pair<std::string, TypeP>> binders(const Sexp& b) {
    if (b.atom) fail(b, "binder expected");
    if (!b.items.empty() && b.items[0].atom) {
      if (b.items.size() != 2) fail(b, "binder (x A) expected");
      return {{ident(b.items[0]), type(b.items[1])}};
    }
    std::vector<std::pair<std::string, TypeP>> r;
    for (const auto& x : b.items) {
      if (x.atom || x.items.size() != 2) fail(x, "binder (x A) expected");
      r.emplace_back(ident(x.items[0]), type(x.items[1]));
    }
    return r;
  }

  static PFp node(K k) {
    auto f = std::make_shared<PF>();
    f->kind = k;
    return f;
  }

  PTp checked(const Sexp& s, Scope& sc, const MTp& want) {
    MTp got;
    PTp t = term(s, sc, got);
    u.unify(want, got, s);
    return t;
  }

  PFp quant(K k, const std::vector<std::pair<std::string, TypeP>>& bs, std::size_t i, const Sexp& body, Scope& sc) {
    if (i == bs.size()) return formula(body, sc);
    auto f = node(k);
    f->var = bs[i].first;
    f->ty = u.from(bs[i].second);
    sc.emplace_back(f->var, f->ty);
    f->l = quant(k, bs, i + 1, body, sc);
    sc.pop_back();
    return f;
  }

  PFp formula(const Sexp& s, Scope& sc) {
    if (s.is("bot")) return node(K::Bot);
    if (s.atom) fail(s, "unknown formula " + s.text);
    std::string h = s.head();
    static const std::map<std::string, K> quants = {{"forall", K::Forall},
                                                    {"exists", K::Exists},
                                                    {"forall-st", K::ForallSt},
                                                    {"exists-st", K::ExistsSt}};
    if (auto it = quants.find(h); it != quants.end()) {
      arity(s, 3);
      return quant(it->second, binders(s.items[1]), 0, s.items[2], sc);
    }
    if (h == "forall-lt" || h == "exists-lt") {
      arity(s, 3);
      const Sexp& b = s.items[1];
      if (b.atom || b.items.size() != 2) fail(b, "bound (i t) expected");
      auto f = node(h == "forall-lt" ? K::BForall : K::BExists);
      f->var = ident(b.items[0]);
      f->ty = Unifier::mk(MT::K::Nat);
      f->t1 = checked(b.items[1], sc, f->ty);
      sc.emplace_back(f->var, f->ty);
      f->l = formula(s.items[2], sc);
      sc.pop_back();
      return f;
    }
    if (h == "and" || h == "or" || h == "imp") {
      if (s.items.size() < 3) fail(s, h + " needs at least two operands");
      K k = h == "and" ? K::And : h == "or" ? K::Or : K::Imp;
      PFp r = formula(s.items.back(), sc);
      for (std::size_t i = s.items.size() - 1; i-- > 1;) {
        auto f = node(k);
        f->l = formula(s.items[i], sc);
        f->r = r;
        r = f;
      }
      return r;
    }
    if (h == "not") {
      arity(s, 2);
      auto f = node(K::Not);
      f->l = formula(s.items[1], sc);
      return f;
    }
    if (h == "eq" || h == "st" || h == "in" || h == "subseteq" || h == "hyper") {
      static const std::map<std::string, std::pair<K, std::size_t>> atoms = {
          {"eq", {K::Eq, 4}}, {"st", {K::St, 3}}, {"in", {K::In, 4}}, {"subseteq", {K::SubsetEq, 4}}, {"hyper", {K::Hyper, 3}}};
      auto [k, n] = atoms.at(h);
      arity(s, n);
      auto f = node(k);
      f->ty = u.from(type(s.items[1]));
      MTp sq = Unifier::mk(MT::K::Star, f->ty);
      switch (k) {
        case K::Eq:
          f->t1 = checked(s.items[2], sc, f->ty);
          f->t2 = checked(s.items[3], sc, f->ty);
          break;
        case K::St: f->t1 = checked(s.items[2], sc, f->ty); break;
        case K::In:
          f->t1 = checked(s.items[2], sc, f->ty);
          f->t2 = checked(s.items[3], sc, sq);
          break;
        case K::SubsetEq:
          f->t1 = checked(s.items[2], sc, sq);
          f->t2 = checked(s.items[3], sc, sq);
          break;
        default: f->t1 = checked(s.items[2], sc, sq); break;
      }
      return f;
    }
    fail(s, "unknown formula form " + h);
  }

  // -- proofs

  PPp proof(const Sexp& s) {
    if (s.atom) fail(s, "proof expected");
    std::string h = s.head();
    auto p = std::make_shared<PP>();
    p->line = s.line;
    if (h == "axiom") {
      if (s.items.size() != 3 && s.items.size() != 2) fail(s, "(axiom NAME (binds ...)) expected");
      p->kind = Proof::Kind::Axiom;
      p->schema = ident(s.items[1]);
      const Schema* sc = find_schema(p->schema);
      if (!sc) fail(s.items[1], "unknown axiom schema " + p->schema);
      if (s.items.size() == 2) return p;
      const Sexp& bs = s.items[2];
      if (bs.head() != "binds") fail(bs, "(binds ...) expected");
      Scope local;
      // variables first so the other parameters see their types
      for (int pass = 0; pass < 2; ++pass)
        for (std::size_t i = 1; i < bs.items.size(); ++i) {
          const Sexp& b = bs.items[i];
          if (b.atom || b.items.size() != 2) fail(b, "binding (KEY VALUE) expected");
          std::string key = ident(b.items[0]);
          const std::pair<std::string, ParamKind>* param = nullptr;
          for (const auto& pk : sc->params)
            if (pk.first == key) param = &pk;
          if (!param) fail(b, "schema " + p->schema + " has no parameter " + key);
          bool is_var = param->second == ParamKind::Var;
          if ((pass == 0) != is_var) continue;
          PBind pb;
          pb.kind = param->second;
          const Sexp& v = b.items[1];
          switch (pb.kind) {
            case ParamKind::Var: {
              auto bb = binders(v);
              if (bb.size() != 1) fail(v, "one variable expected");
              pb.v = {bb[0].first, bb[0].second};
              local.emplace_back(pb.v.name, u.from(pb.v.ty));
              break;
            }
            case ParamKind::Type: pb.ty = type(v); break;
            case ParamKind::Term: {
              MTp ty;
              pb.t = term(v, local, ty);
              break;
            }
            case ParamKind::Formula: pb.f = formula(v, local); break;
          }
          p->binds.emplace_back(key, std::move(pb));
        }
      // keep source order of keys as given in the schema
      std::stable_sort(p->binds.begin(), p->binds.end(), [&](const auto& a, const auto& b) {
        auto pos = [&](const std::string& k) {
          for (std::size_t i = 0; i < sc->params.size(); ++i)
            if (sc->params[i].first == k) return i;
          return sc->params.size();
        };
        return pos(a.first) < pos(b.first);
      });
      return p;
    }
    if (h == "mp") {
      arity(s, 3);
      p->kind = Proof::Kind::MP;
      p->p = proof(s.items[1]);
      p->q = proof(s.items[2]);
      return p;
    }
    if (h == "forall-rule" || h == "exists-rule") {
      arity(s, 3);
      p->kind = h == "forall-rule" ? Proof::Kind::ForallRule : Proof::Kind::ExistsRule;
      auto bb = binders(s.items[1]);
      if (bb.size() != 1) fail(s.items[1], "one variable expected");
      p->var = {bb[0].first, bb[0].second};
      p->p = proof(s.items[2]);
      return p;
    }
    if (h == "ind") {
      if (s.items.size() != 3 && s.items.size() != 4) fail(s, "(ind [(n N)] base step) expected");
      p->kind = Proof::Kind::Ind;
      std::size_t o = 1;
      if (s.items.size() == 4) {
        auto bb = binders(s.items[1]);
        if (bb.size() != 1) fail(s.items[1], "one variable expected");
        p->var = {bb[0].first, bb[0].second};
        o = 2;
      }
      p->p = proof(s.items[o]);
      p->q = proof(s.items[o + 1]);
      return p;
    }
    if (h == "ind-st") {
      arity(s, 3);
      p->kind = Proof::Kind::IndSt;
      p->p = proof(s.items[1]);
      p->q = proof(s.items[2]);
      return p;
    }
    fail(s, "unknown proof form " + h);
  }

  // -- zonking

  TermP zt(const PTp& t) const {
    switch (t->kind) {
      case Term::Kind::Var: return mk_var(t->name, u.zonk(t->ty));
      case Term::Kind::Lam: return mk_lam(t->name, u.zonk(t->ty), zt(t->f));
      case Term::Kind::App: return mk_app(zt(t->f), zt(t->a));
      case Term::Kind::Const: {
        std::vector<TypeP> ps;
        for (const auto& m : t->tys) ps.push_back(u.zonk(m));
        return mk_const(t->ck, ps);
      }
    }
    return nullptr;
  }
  FormulaP zf(const PFp& f) const {
    Formula r{f->kind, f->ty ? u.zonk(f->ty) : nullptr, f->var, f->t1 ? zt(f->t1) : nullptr, f->t2 ? zt(f->t2) : nullptr,
              f->l ? zf(f->l) : nullptr, f->r ? zf(f->r) : nullptr};
    return fm(std::move(r));
  }
  ProofP zp(const PPp& p) const {
    Proof r{p->kind, p->schema, {}, p->var, p->p ? zp(p->p) : nullptr, p->q ? zp(p->q) : nullptr, p->line};
    for (const auto& [k, b] : p->binds) {
      Binding z;
      z.kind = b.kind;
      if (b.f) z.f = zf(b.f);
      if (b.t) z.t = zt(b.t);
      z.ty = b.ty;
      z.v = b.v;
      r.binds.emplace_back(k, z);
    }
    return std::make_shared<const Proof>(std::move(r));
  }
};

inline Flavor flavor_of(const Sexp& s) {
  if (s.is("u")) return Flavor::U;
  if (s.is("dst")) return Flavor::Dst;
  throw SyntaxError(s.line, s.label(), "flavour u or dst expected");
}

}  // namespace sx

// -- reading

inline TypeP read_type(const std::string& src) { return sx::Elab::type(sx::read_one(src)); }

inline TermP read_term(const std::string& src) {
  sx::Elab e;
  sx::Scope sc;
  sx::MTp ty;
  auto p = e.term(sx::read_one(src), sc, ty);
  return e.zt(p);
}

inline FormulaP read_formula(const std::string& src) {
  sx::Elab e;
  sx::Scope sc;
  auto p = e.formula(sx::read_one(src), sc);
  return e.zf(p);
}

// (exists-st (binders) (forall-st (binders) M))
inline TranslatedFormula read_translated(const std::string& src, Flavor fl) {
  sx::Sexp s = sx::read_one(src);
  sx::Elab e;
  auto expect = [&](const sx::Sexp& x, const char* h) {
    if (x.head() != h || x.items.size() != 3) throw SyntaxError(x.line, x.label(), std::string("(") + h + " (binders) ...) expected");
  };
  expect(s, "exists-st");
  const sx::Sexp& inner = s.items[2];
  expect(inner, "forall-st");
  auto bl = [&](const sx::Sexp& b) {
    std::vector<std::pair<std::string, TypeP>> r;
    for (const auto& x : b.items) {
      if (x.atom || x.items.size() != 2) throw SyntaxError(x.line, x.label(), "binder (x A) expected");
      r.emplace_back(sx::Elab::ident(x.items[0]), sx::Elab::type(x.items[1]));
    }
    return r;
  };
  if (s.items[1].atom || inner.items[1].atom) throw SyntaxError(s.line, s.label(), "binder lists expected");
  TranslatedFormula tf;
  tf.flavor = fl;
  sx::Scope sc;
  for (auto& [n, t] : bl(s.items[1])) {
    tf.exist.push_back({n, t});
    sc.emplace_back(n, e.u.from(t));
  }
  for (auto& [n, t] : bl(inner.items[1])) {
    tf.univ.push_back({n, t});
    sc.emplace_back(n, e.u.from(t));
  }
  tf.matrix = e.zf(e.formula(inner.items[2], sc));
  return tf;
}

struct ProofFile {
  Flavor flavor = Flavor::U;
  ProofP proof;
};

inline ProofFile read_proof(const std::string& src) {
  sx::Sexp s = sx::read_one(src);
  if (s.head() != "proof" || s.items.size() != 3) throw SyntaxError(s.line, s.label(), "(proof u|dst P) expected");
  sx::Elab e;
  ProofFile pf;
  pf.flavor = sx::flavor_of(s.items[1]);
  pf.proof = e.zp(e.proof(s.items[2]));
  return pf;
}

// (bundle u|dst TARGET (terms t...))
inline RealiserBundle read_bundle(const std::string& src) {
  sx::Sexp s = sx::read_one(src);
  if (s.head() != "bundle" || s.items.size() != 4 || s.items[3].head() != "terms")
    throw SyntaxError(s.line, s.label(), "(bundle u|dst FORMULA (terms ...)) expected");
  RealiserBundle b;
  b.flavor = sx::flavor_of(s.items[1]);
  sx::Elab e;
  sx::Scope sc;
  auto pf = e.formula(s.items[2], sc);
  std::vector<sx::PTp> ts;
  for (std::size_t i = 1; i < s.items[3].items.size(); ++i) {
    sx::Elab te;  // realisers are closed; their variables are unrelated to the target's
    sx::MTp ty;
    b.terms.push_back(te.zt(te.term(s.items[3].items[i], sc, ty)));
  }
  b.target = e.zf(pf);
  try {
    b.translated = translate(b.target, b.flavor);
  } catch (const TranslateError& x) {
    throw SyntaxError(s.items[2].line, s.items[2].label(), x.what());
  }
  return b;
}

// -- printing

namespace sx {

inline void print_term(std::ostream& o, const TermP& t, std::vector<std::string>& bound);

inline bool is_bound(const std::vector<std::string>& b, const std::string& n) {
  return std::find(b.begin(), b.end(), n) != b.end();
}

inline void print_const(std::ostream& o, const Term& c) {
  switch (c.ck) {
    case ConstKind::Zero: o << "zero"; return;
    case ConstKind::Succ: o << "succ"; return;
    case ConstKind::NatRec: o << "(nrec " << type_str(c.tys.at(0)) << ")"; return;
    case ConstKind::ListRec: o << "(lrec " << type_str(c.tys.at(0)) << " " << type_str(c.tys.at(1)) << ")"; return;
    case ConstKind::Nil: o << "(nil " << type_str(c.tys.at(0)) << ")"; return;
    case ConstKind::Default: o << "(default " << type_str(c.tys.at(0)) << ")"; return;
    default: break;
  }
  o << "(const " << const_name(c.ck);
  for (const auto& t : c.tys) o << " " << type_str(t);
  o << ")";
}

inline bool is_const(const TermP& t, ConstKind k) { return t->kind == Term::Kind::Const && t->ck == k; }

inline std::optional<std::uint64_t> numeral(const TermP& t) {
  std::uint64_t n = 0;
  TermP c = t;
  while (c->kind == Term::Kind::App && is_const(c->fun, ConstKind::Succ)) {
    ++n;
    c = c->arg;
  }
  if (is_const(c, ConstKind::Zero)) return n;
  return std::nullopt;
}

// cons chain ending in nil with one element type
inline std::optional<std::pair<TypeP, std::vector<TermP>>> seq_literal(const TermP& t) {
  std::vector<TermP> xs;
  TermP c = t;
  TypeP el;
  while (c->kind == Term::Kind::App && c->fun->kind == Term::Kind::App && is_const(c->fun->fun, ConstKind::Cons)) {
    TypeP p = c->fun->fun->tys.at(0);
    if (el && !type_eq(el, p)) return std::nullopt;
    el = p;
    xs.push_back(c->fun->arg);
    c = c->arg;
  }
  if (xs.empty() || !is_const(c, ConstKind::Nil) || !type_eq(el, c->tys.at(0))) return std::nullopt;
  return std::make_pair(el, xs);
}

inline void print_term(std::ostream& o, const TermP& t, std::vector<std::string>& bound) {
  switch (t->kind) {
    case Term::Kind::Var:
      o << "(var " << t->name;
      if (!is_bound(bound, t->name) && t->ty && !is_ground(t->ty)) o << " " << type_str(t->ty);
      o << ")";
      return;
    case Term::Kind::Lam:
      o << "(lam (" << t->name << " " << type_str(t->ty) << ") ";
      bound.push_back(t->name);
      print_term(o, t->fun, bound);
      bound.pop_back();
      o << ")";
      return;
    case Term::Kind::Const: print_const(o, *t); return;
    case Term::Kind::App: break;
  }
  if (auto n = numeral(t)) {
    o << *n;
    return;
  }
  if (auto s = seq_literal(t)) {
    o << "(seq " << type_str(s->first);
    for (const auto& x : s->second) {
      o << " ";
      print_term(o, x, bound);
    }
    o << ")";
    return;
  }
  std::vector<TermP> args;
  TermP h = t;
  while (h->kind == Term::Kind::App) {
    args.push_back(h->arg);
    h = h->fun;
  }
  std::reverse(args.begin(), args.end());
  std::size_t used = 0;
  std::ostringstream head;
  auto sugar = [&](const char* name, std::size_t n) {
    head << "(" << name;
    for (std::size_t i = 0; i < n; ++i) {
      head << " ";
      print_term(head, args[i], bound);
    }
    head << ")";
    used = n;
  };
  if (h->kind == Term::Kind::Const) {
    switch (h->ck) {
      case ConstKind::Len:
        if (args.size() >= 1) sugar("len", 1);
        break;
      case ConstKind::Singleton:
        if (args.size() >= 1) sugar("single", 1);
        break;
      case ConstKind::Proj:
        if (args.size() >= 2) sugar("proj", 2);
        break;
      case ConstKind::Concat:
        if (args.size() >= 2) sugar("concat", 2);
        break;
      case ConstKind::SeqApp:
        if (args.size() >= 2) sugar("seqapp", 2);
        break;
      case ConstKind::SeqAbs:
        if (!args.empty() && args[0]->kind == Term::Kind::Lam && type_eq(args[0]->ty, h->tys.at(0))) {
          const TermP& l = args[0];
          head << "(seqabs (" << l->name << " " << type_str(l->ty) << ") ";
          bound.push_back(l->name);
          print_term(head, l->fun, bound);
          bound.pop_back();
          head << ")";
          used = 1;
        }
        break;
      default: break;
    }
  }
  if (used == 0) print_term(head, h, bound);
  if (used == args.size()) {
    o << head.str();
    return;
  }
  o << "(app " << head.str();
  for (std::size_t i = used; i < args.size(); ++i) {
    o << " ";
    print_term(o, args[i], bound);
  }
  o << ")";
}

inline void print_formula(std::ostream& o, const FormulaP& f, std::vector<std::string>& bound) {
  auto term = [&](const TermP& t) {
    o << " ";
    print_term(o, t, bound);
  };
  switch (f->kind) {
    case K::Eq: o << "(eq " << type_str(f->ty); term(f->t1); term(f->t2); o << ")"; return;
    case K::St: o << "(st " << type_str(f->ty); term(f->t1); o << ")"; return;
    case K::In: o << "(in " << type_str(f->ty); term(f->t1); term(f->t2); o << ")"; return;
    case K::SubsetEq: o << "(subseteq " << type_str(f->ty); term(f->t1); term(f->t2); o << ")"; return;
    case K::Hyper: o << "(hyper " << type_str(f->ty); term(f->t1); o << ")"; return;
    case K::Bot: o << "bot"; return;
    case K::Not: o << "(not "; print_formula(o, f->l, bound); o << ")"; return;
    case K::And:
    case K::Or:
    case K::Imp:
      o << "(" << (f->kind == K::And ? "and" : f->kind == K::Or ? "or" : "imp") << " ";
      print_formula(o, f->l, bound);
      o << " ";
      print_formula(o, f->r, bound);
      o << ")";
      return;
    case K::BForall:
    case K::BExists:
      o << "(" << (f->kind == K::BForall ? "forall-lt" : "exists-lt") << " (" << f->var;
      term(f->t1);
      o << ") ";
      break;
    default: {
      const char* n = f->kind == K::Forall ? "forall" : f->kind == K::Exists ? "exists" : f->kind == K::ForallSt ? "forall-st" : "exists-st";
      o << "(" << n << " (" << f->var << " " << type_str(f->ty) << ") ";
      break;
    }
  }
  bound.push_back(f->var);
  print_formula(o, f->l, bound);
  bound.pop_back();
  o << ")";
}

}  // namespace sx

inline std::string term_str(const TermP& t) {
  std::ostringstream o;
  std::vector<std::string> b;
  sx::print_term(o, t, b);
  return o.str();
}
inline std::string formula_str(const FormulaP& f) {
  std::ostringstream o;
  std::vector<std::string> b;
  sx::print_formula(o, f, b);
  return o.str();
}
inline std::string translated_str(const TranslatedFormula& tf) {
  std::ostringstream o;
  std::vector<std::string> b;
  auto list = [&](const std::vector<TypedVar>& vs) {
    o << "(";
    for (std::size_t i = 0; i < vs.size(); ++i) {
      o << (i ? " " : "") << "(" << vs[i].name << " " << type_str(vs[i].ty) << ")";
      b.push_back(vs[i].name);
    }
    o << ")";
  };
  o << "(exists-st ";
  list(tf.exist);
  o << " (forall-st ";
  list(tf.univ);
  o << " ";
  sx::print_formula(o, tf.matrix, b);
  o << "))";
  return o.str();
}

namespace sx {
inline void print_proof(std::ostream& o, const ProofP& p, int ind) {
  std::string pad(static_cast<std::size_t>(ind), ' ');
  o << pad;
  switch (p->kind) {
    case Proof::Kind::Axiom: {
      o << "(axiom " << p->schema << " (binds";
      for (const auto& [k, b] : p->binds) {
        o << " (" << k << " ";
        switch (b.kind) {
          case ParamKind::Formula: o << formula_str(b.f); break;
          case ParamKind::Term: o << term_str(b.t); break;
          case ParamKind::Type: o << type_str(b.ty); break;
          case ParamKind::Var: o << "(" << b.v.name << " " << type_str(b.v.ty) << ")"; break;
        }
        o << ")";
      }
      o << "))";
      return;
    }
    case Proof::Kind::MP: o << "(mp\n"; break;
    case Proof::Kind::ForallRule: o << "(forall-rule (" << p->var.name << " " << type_str(p->var.ty) << ")\n"; break;
    case Proof::Kind::ExistsRule: o << "(exists-rule (" << p->var.name << " " << type_str(p->var.ty) << ")\n"; break;
    case Proof::Kind::Ind:
      o << "(ind";
      if (!p->var.name.empty()) o << " (" << p->var.name << " " << type_str(p->var.ty) << ")";
      o << "\n";
      break;
    case Proof::Kind::IndSt: o << "(ind-st\n"; break;
  }
  print_proof(o, p->p, ind + 2);
  if (p->q) {
    o << "\n";
    print_proof(o, p->q, ind + 2);
  }
  o << ")";
}
}  // namespace sx

inline std::string proof_str(const ProofP& p, Flavor fl) {
  std::ostringstream o;
  o << "(proof " << flavor_name(fl) << "\n";
  sx::print_proof(o, p, 2);
  o << ")";
  return o.str();
}

inline std::string bundle_str(const RealiserBundle& b) {
  std::ostringstream o;
  o << "(bundle " << flavor_name(b.flavor) << "\n  " << formula_str(b.target) << "\n  (terms";
  for (const auto& t : b.terms) o << "\n    " << term_str(t);
  o << "))";
  return o.str();
}

}  // namespace nsdial

#endif
