// Normalisation by evaluation plus a small-step reducer used for confluence checks.
#ifndef NSDIAL_REDUCE_HPP
#define NSDIAL_REDUCE_HPP

#include <functional>
#include <optional>

#include "nsdial/term.hpp"

namespace nsdial {

struct Value;
using ValueP = std::shared_ptr<const Value>;

struct EnvNode;
using Env = std::shared_ptr<const EnvNode>;
struct EnvNode {
  std::string name;
  ValueP val;
  Env next;
};

struct Value {
  enum class Kind { Nat, Seq, Closure, Prim, Neutral };
  Kind kind;
  // Nat: k successors over base (null means zero)
  std::uint64_t k = 0;
  ValueP base;
  // Seq: elements then optional neutral tail
  TypeP ty;  // Seq element type, closure binder type, neutral type
  std::vector<ValueP> elems;
  ValueP tail;
  // Closure
  Env env;
  std::string name;
  TermP body;
  // Prim partial application / neutral op
  ConstKind ck = ConstKind::Zero;
  std::vector<TypeP> tys;
  std::vector<ValueP> args;
  // Neutral: Var (name), App (head + args[0]), Op (ck, tys, args)
  enum class NKind { Var, App, Op } nk = NKind::Var;
  ValueP head;
};

namespace nbe {

inline ValueP nat(std::uint64_t k, ValueP base = nullptr) {
  auto v = std::make_shared<Value>();
  v->kind = Value::Kind::Nat;
  v->k = k;
  v->base = std::move(base);
  return v;
}
inline ValueP seq(TypeP el, std::vector<ValueP> xs, ValueP tail = nullptr) {
  auto v = std::make_shared<Value>();
  v->kind = Value::Kind::Seq;
  v->ty = std::move(el);
  v->elems = std::move(xs);
  v->tail = std::move(tail);
  return v;
}
inline ValueP closure(Env env, std::string name, TypeP ty, TermP body) {
  auto v = std::make_shared<Value>();
  v->kind = Value::Kind::Closure;
  v->env = std::move(env);
  v->name = std::move(name);
  v->ty = std::move(ty);
  v->body = std::move(body);
  return v;
}
inline ValueP prim(ConstKind ck, std::vector<TypeP> tys, std::vector<ValueP> args) {
  auto v = std::make_shared<Value>();
  v->kind = Value::Kind::Prim;
  v->ck = ck;
  v->tys = std::move(tys);
  v->args = std::move(args);
  return v;
}
inline ValueP nvar(std::string name, TypeP ty) {
  auto v = std::make_shared<Value>();
  v->kind = Value::Kind::Neutral;
  v->nk = Value::NKind::Var;
  v->name = std::move(name);
  v->ty = std::move(ty);
  return v;
}
inline ValueP napp(ValueP h, ValueP a) {
  auto v = std::make_shared<Value>();
  v->kind = Value::Kind::Neutral;
  v->nk = Value::NKind::App;
  v->head = std::move(h);
  v->args = {std::move(a)};
  return v;
}
inline ValueP nop(ConstKind ck, std::vector<TypeP> tys, std::vector<ValueP> args) {
  auto v = std::make_shared<Value>();
  v->kind = Value::Kind::Neutral;
  v->nk = Value::NKind::Op;
  v->ck = ck;
  v->tys = std::move(tys);
  v->args = std::move(args);
  return v;
}

inline int arity(ConstKind k) {
  switch (k) {
    case ConstKind::Zero:
    case ConstKind::Nil:
    case ConstKind::Default: return 0;
    case ConstKind::Succ:
    case ConstKind::Len:
    case ConstKind::SeqAbs:
    case ConstKind::Singleton: return 1;
    case ConstKind::Cons:
    case ConstKind::Proj:
    case ConstKind::Concat:
    case ConstKind::SeqApp: return 2;
    case ConstKind::NatRec:
    case ConstKind::ListRec: return 3;
  }
  return 0;
}

inline ValueP eval(const TermP& t, const Env& env);
inline ValueP apply(const ValueP& f, const ValueP& a);

inline ValueP default_value(const TypeP& t) {
  switch (t->kind) {
    case Type::Kind::Ground: return nat(0);
    case Type::Kind::Star: return seq(t->dom, {});
    case Type::Kind::Arrow: return closure(nullptr, "x", t->dom, mk_default(t->cod));
  }
  return nat(0);
}

inline std::pair<std::uint64_t, ValueP> as_nat(const ValueP& v) {
  if (v->kind == Value::Kind::Nat) return {v->k, v->base};
  if (v->kind == Value::Kind::Neutral) return {0, v};
  throw std::logic_error("expected a natural number value");
}
inline std::pair<const std::vector<ValueP>*, ValueP> as_seq(const ValueP& v) {
  static const std::vector<ValueP> empty;
  if (v->kind == Value::Kind::Seq) return {&v->elems, v->tail};
  if (v->kind == Value::Kind::Neutral) return {&empty, v};
  throw std::logic_error("expected a sequence value");
}

inline ValueP concat(const TypeP& el, const ValueP& a, const ValueP& b) {
  auto [ea, ta] = as_seq(a);
  auto [eb, tb] = as_seq(b);
  if (eb->empty() && !tb) return a;  // right unit
  if (!ta) {
    std::vector<ValueP> xs = *ea;
    xs.insert(xs.end(), eb->begin(), eb->end());
    return seq(el, std::move(xs), tb);
  }
  return seq(el, *ea, nop(ConstKind::Concat, {el}, {ta, b}));
}

inline ValueP fire(ConstKind ck, const std::vector<TypeP>& tys, const std::vector<ValueP>& a) {
  switch (ck) {
    case ConstKind::Succ: {
      auto [k, base] = as_nat(a[0]);
      return nat(k + 1, base);
    }
    case ConstKind::NatRec: {
      auto [k, base] = as_nat(a[2]);
      ValueP acc = base ? nop(ck, tys, {a[0], a[1], base}) : a[0];
      for (std::uint64_t i = 0; i < k; ++i) acc = nbe::apply(nbe::apply(a[1], nat(i, base)), acc);
      return acc;
    }
    case ConstKind::ListRec: {
      auto [xs, tail] = as_seq(a[2]);
      ValueP acc = tail ? nop(ck, tys, {a[0], a[1], tail}) : a[0];
      for (auto it = xs->rbegin(); it != xs->rend(); ++it) acc = nbe::apply(nbe::apply(a[1], acc), *it);
      return acc;
    }
    case ConstKind::Cons: {
      auto [xs, tail] = as_seq(a[1]);
      std::vector<ValueP> ys;
      ys.reserve(xs->size() + 1);
      ys.push_back(a[0]);
      ys.insert(ys.end(), xs->begin(), xs->end());
      return seq(tys[0], std::move(ys), tail);
    }
    case ConstKind::Len: {
      auto [xs, tail] = as_seq(a[0]);
      return nat(xs->size(), tail ? nop(ck, tys, {tail}) : nullptr);
    }
    case ConstKind::Proj: {
      auto [xs, tail] = as_seq(a[0]);
      auto [k, base] = as_nat(a[1]);
      std::uint64_t n = xs->size();
      if (!base) {
        if (k < n) return (*xs)[k];
        if (tail) return nop(ck, tys, {tail, nat(k - n)});
        return default_value(tys[0]);
      }
      if (k >= n) {
        if (!tail) return default_value(tys[0]);
        return nop(ck, tys, {tail, nat(k - n, base)});
      }
      std::vector<ValueP> rest(xs->begin() + static_cast<long>(k), xs->end());
      return nop(ck, tys, {seq(tys[0], std::move(rest), tail), base});
    }
    case ConstKind::Concat: return concat(tys[0], a[0], a[1]);
    case ConstKind::SeqApp: {
      auto [xs, tail] = as_seq(a[0]);
      ValueP acc = seq(tys[1], {});
      for (const auto& f : *xs) acc = concat(tys[1], acc, nbe::apply(f, a[1]));
      if (tail) acc = concat(tys[1], acc, nop(ck, tys, {tail, a[1]}));
      return acc;
    }
    case ConstKind::SeqAbs: return seq(ty_arrow(tys[0], ty_star(tys[1])), {a[0]});
    case ConstKind::Singleton: return seq(tys[0], {a[0]});
    default: break;
  }
  throw std::logic_error("fire: not an operator");
}

inline ValueP apply(const ValueP& f, const ValueP& a) {
  switch (f->kind) {
    case Value::Kind::Closure:
      return eval(f->body, std::make_shared<const EnvNode>(EnvNode{f->name, a, f->env}));
    case Value::Kind::Prim: {
      std::vector<ValueP> args = f->args;
      args.push_back(a);
      if (static_cast<int>(args.size()) == arity(f->ck)) return fire(f->ck, f->tys, args);
      return prim(f->ck, f->tys, std::move(args));
    }
    case Value::Kind::Neutral: return napp(f, a);
    default: break;
  }
  throw std::logic_error("apply: not a function value");
}

inline ValueP eval(const TermP& t, const Env& env) {
  switch (t->kind) {
    case Term::Kind::Var: {
      for (const EnvNode* e = env.get(); e; e = e->next.get())
        if (e->name == t->name) return e->val;
      return nvar(t->name, t->ty);
    }
    case Term::Kind::Lam: return closure(env, t->name, t->ty, t->fun);
    case Term::Kind::App: return nbe::apply(eval(t->fun, env), eval(t->arg, env));
    case Term::Kind::Const:
      switch (t->ck) {
        case ConstKind::Zero: return nat(0);
        case ConstKind::Nil: return seq(t->tys[0], {});
        case ConstKind::Default: return default_value(t->tys[0]);
        default: return prim(t->ck, t->tys, {});
      }
  }
  throw std::logic_error("eval: bad term");
}

inline TermP readback(const ValueP& v, std::set<std::string>& scope) {
  switch (v->kind) {
    case Value::Kind::Nat: {
      TermP r = v->base ? readback(v->base, scope) : mk_zero();
      for (std::uint64_t i = 0; i < v->k; ++i) r = mk_succ(r);
      return r;
    }
    case Value::Kind::Seq: {
      TermP r = v->tail ? readback(v->tail, scope) : mk_nil(v->ty);
      for (auto it = v->elems.rbegin(); it != v->elems.rend(); ++it) r = mk_cons(v->ty, readback(*it, scope), r);
      return r;
    }
    case Value::Kind::Closure: {
      std::string n = v->name;
      for (int i = 1; scope.count(n); ++i) n = v->name + std::to_string(i);
      scope.insert(n);
      TermP body = readback(nbe::apply(v, nvar(n, v->ty)), scope);
      scope.erase(n);
      return mk_lam(n, v->ty, body);
    }
    case Value::Kind::Prim: {
      TermP r = mk_const(v->ck, v->tys);
      for (const auto& a : v->args) r = mk_app(r, readback(a, scope));
      return r;
    }
    case Value::Kind::Neutral:
      switch (v->nk) {
        case Value::NKind::Var: return mk_var(v->name, v->ty);
        case Value::NKind::App: return mk_app(readback(v->head, scope), readback(v->args[0], scope));
        case Value::NKind::Op: {
          TermP r = mk_const(v->ck, v->tys);
          for (const auto& a : v->args) r = mk_app(r, readback(a, scope));
          return r;
        }
      }
  }
  throw std::logic_error("readback: bad value");
}

}  // namespace nbe

// Normal form under beta and the defining equations.
inline TermP normalize(const TermP& t) {
  std::set<std::string> scope;
  for (auto& [n, _] : term_free_vars(t)) scope.insert(n);
  return nbe::readback(nbe::eval(t, nullptr), scope);
}

// -- canonical values

struct CanonicalValue {
  enum class Kind { Nat, Seq, Closure };
  Kind kind = Kind::Nat;
  std::uint64_t n = 0;
  TypeP elem;
  std::vector<CanonicalValue> elems;
  TermP closure;

  static CanonicalValue of_nat(std::uint64_t v) { CanonicalValue c; c.n = v; return c; }
  static CanonicalValue of_seq(TypeP el, std::vector<CanonicalValue> xs) {
    CanonicalValue c;
    c.kind = Kind::Seq;
    c.elem = std::move(el);
    c.elems = std::move(xs);
    return c;
  }
  bool operator==(const CanonicalValue& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
      case Kind::Nat: return n == o.n;
      case Kind::Seq: return elems == o.elems;
      case Kind::Closure: return alpha_eq(closure, o.closure);
    }
    return false;
  }
  bool operator!=(const CanonicalValue& o) const { return !(*this == o); }
};

inline std::string cv_str(const CanonicalValue& v) {
  switch (v.kind) {
    case CanonicalValue::Kind::Nat: return std::to_string(v.n);
    case CanonicalValue::Kind::Seq: {
      std::string s = "[";
      for (std::size_t i = 0; i < v.elems.size(); ++i) s += (i ? "," : "") + cv_str(v.elems[i]);
      return s + "]";
    }
    case CanonicalValue::Kind::Closure: return "<fn>";
  }
  return "?";
}

inline TermP cv_to_term(const CanonicalValue& v) {
  switch (v.kind) {
    case CanonicalValue::Kind::Nat: return mk_numeral(v.n);
    case CanonicalValue::Kind::Seq: {
      std::vector<TermP> xs;
      for (const auto& e : v.elems) xs.push_back(cv_to_term(e));
      return mk_seq(v.elem, xs);
    }
    case CanonicalValue::Kind::Closure: return v.closure;
  }
  return mk_zero();
}

inline ValueP cv_to_value(const CanonicalValue& v) {
  switch (v.kind) {
    case CanonicalValue::Kind::Nat: return nbe::nat(v.n);
    case CanonicalValue::Kind::Seq: {
      std::vector<ValueP> xs;
      for (const auto& e : v.elems) xs.push_back(cv_to_value(e));
      return nbe::seq(v.elem, std::move(xs));
    }
    case CanonicalValue::Kind::Closure: return nbe::eval(v.closure, nullptr);
  }
  return nbe::nat(0);
}

// nullopt when the value is not canonical (open)
inline std::optional<CanonicalValue> value_to_cv(const ValueP& v) {
  switch (v->kind) {
    case Value::Kind::Nat:
      if (v->base) return std::nullopt;
      return CanonicalValue::of_nat(v->k);
    case Value::Kind::Seq: {
      if (v->tail) return std::nullopt;
      std::vector<CanonicalValue> xs;
      for (const auto& e : v->elems) {
        auto c = value_to_cv(e);
        if (!c) return std::nullopt;
        xs.push_back(*c);
      }
      return CanonicalValue::of_seq(v->ty, std::move(xs));
    }
    case Value::Kind::Closure:
    case Value::Kind::Prim: {
      std::set<std::string> scope;
      CanonicalValue c;
      c.kind = CanonicalValue::Kind::Closure;
      c.closure = nbe::readback(v, scope);
      if (!term_closed(c.closure)) return std::nullopt;
      return c;
    }
    case Value::Kind::Neutral: return std::nullopt;
  }
  return std::nullopt;
}

inline std::uint64_t eval_nat(const TermP& t) {
  if (!term_closed(t)) throw TypeError(TypeError::Code::NotClosed, "eval_nat: term is not closed");
  if (!is_ground(type_check(t))) throw TypeError(TypeError::Code::NotGroundType, "eval_nat: term is not of type N");
  ValueP v = nbe::eval(t, nullptr);
  return v->k;
}

inline std::vector<CanonicalValue> eval_seq(const TermP& t) {
  if (!term_closed(t)) throw TypeError(TypeError::Code::NotClosed, "eval_seq: term is not closed");
  TypeP ty = type_check(t);
  if (!is_star(ty) || !is_data_type(ty)) throw TypeError(TypeError::Code::NotDataType, "eval_seq: not a data sequence type");
  auto c = value_to_cv(nbe::eval(t, nullptr));
  return c->elems;
}

// -- small-step reduction (any redex order)

namespace step {

inline bool is_nil(const TermP& t) { return t->kind == Term::Kind::Const && t->ck == ConstKind::Nil; }
inline bool is_cons_cell(const TermP& t, TermP* a = nullptr, TermP* s = nullptr) {
  auto [h, args] = spine(t);
  if (h->kind != Term::Kind::Const || h->ck != ConstKind::Cons || args.size() != 2) return false;
  if (a) *a = args[0];
  if (s) *s = args[1];
  return true;
}
inline bool is_zero(const TermP& t) { return t->kind == Term::Kind::Const && t->ck == ConstKind::Zero; }
inline bool is_succ_of(const TermP& t, TermP* n = nullptr) {
  if (t->kind != Term::Kind::App) return false;
  const TermP& f = t->fun;
  if (f->kind != Term::Kind::Const || f->ck != ConstKind::Succ) return false;
  if (n) *n = t->arg;
  return true;
}

inline TermP default_term(const TypeP& t) {
  switch (t->kind) {
    case Type::Kind::Ground: return mk_zero();
    case Type::Kind::Star: return mk_nil(t->dom);
    case Type::Kind::Arrow: return mk_lam("x", t->dom, mk_default(t->cod));
  }
  return mk_zero();
}

// contract t if it is a redex at the root
inline std::optional<TermP> contract(const TermP& t) {
  if (t->kind == Term::Kind::Const && t->ck == ConstKind::Default) return default_term(t->tys[0]);
  if (t->kind != Term::Kind::App) return std::nullopt;
  if (t->fun->kind == Term::Kind::Lam) return substitute_unchecked(t->fun->fun, t->fun->name, t->arg, term_free_vars(t->arg));
  auto [h, a] = spine(t);
  if (h->kind != Term::Kind::Const || static_cast<int>(a.size()) != nbe::arity(h->ck)) return std::nullopt;
  const auto& p = h->tys;
  TermP x, s;
  switch (h->ck) {
    case ConstKind::NatRec:
      if (is_zero(a[2])) return a[0];
      if (is_succ_of(a[2], &x)) return mk_apps(a[1], {x, mk_apps(h, {a[0], a[1], x})});
      return std::nullopt;
    case ConstKind::ListRec:
      if (is_nil(a[2])) return a[0];
      if (is_cons_cell(a[2], &x, &s)) return mk_apps(a[1], {mk_apps(h, {a[0], a[1], s}), x});
      return std::nullopt;
    case ConstKind::Len:
      if (is_nil(a[0])) return mk_zero();
      if (is_cons_cell(a[0], &x, &s)) return mk_succ(mk_len(p[0], s));
      return std::nullopt;
    case ConstKind::Proj: {
      if (is_nil(a[0])) return mk_default(p[0]);
      TermP i;
      if (is_cons_cell(a[0], &x, &s)) {
        if (is_zero(a[1])) return x;
        if (is_succ_of(a[1], &i)) return mk_proj(p[0], s, i);
      }
      return std::nullopt;
    }
    case ConstKind::Concat:
      if (is_nil(a[0])) return a[1];
      if (is_cons_cell(a[0], &x, &s)) return mk_cons(p[0], x, mk_concat(p[0], s, a[1]));
      if (is_nil(a[1])) return a[0];
      return std::nullopt;
    case ConstKind::SeqApp:
      if (is_nil(a[0])) return mk_nil(p[1]);
      if (is_cons_cell(a[0], &x, &s))
        return mk_concat(p[1], mk_app(x, a[1]), mk_apps(h, {s, a[1]}));
      return std::nullopt;
    case ConstKind::SeqAbs: return mk_seq(ty_arrow(p[0], ty_star(p[1])), {a[0]});
    case ConstKind::Singleton: return mk_seq(p[0], {a[0]});
    default: return std::nullopt;
  }
}

inline void collect(const TermP& t, std::vector<const Term*>& out) {
  if (contract(t)) out.push_back(t.get());
  if (t->kind == Term::Kind::Lam) collect(t->fun, out);
  if (t->kind == Term::Kind::App) {
    collect(t->fun, out);
    collect(t->arg, out);
  }
}

inline TermP rewrite_at(const TermP& t, const Term* target, bool& done) {
  if (done) return t;
  if (t.get() == target) {
    done = true;
    return *contract(t);
  }
  if (t->kind == Term::Kind::Lam) {
    TermP b = rewrite_at(t->fun, target, done);
    return b == t->fun ? t : mk_lam(t->name, t->ty, b);
  }
  if (t->kind == Term::Kind::App) {
    TermP f = rewrite_at(t->fun, target, done);
    TermP a = rewrite_at(t->arg, target, done);
    return (f == t->fun && a == t->arg) ? t : mk_app(f, a);
  }
  return t;
}

}  // namespace step

// Reduce to normal form choosing redexes with pick(n) in [0,n); pick 0 is leftmost-outermost.
inline TermP normalize_stepwise(TermP t, const std::function<std::size_t(std::size_t)>& pick,
                                std::size_t max_steps = 1000000) {
  for (std::size_t i = 0; i < max_steps; ++i) {
    std::vector<const Term*> rs;
    step::collect(t, rs);
    if (rs.empty()) return t;
    bool done = false;
    t = step::rewrite_at(t, rs[pick(rs.size()) % rs.size()], done);
  }
  throw std::runtime_error("normalize_stepwise: step limit reached");
}

}  // namespace nsdial

#endif
