// Brute-force evaluation of internal formulas on finite grids.
#ifndef NSDIAL_ORACLE_HPP
#define NSDIAL_ORACLE_HPP

#include <map>
#include <optional>

#include "nsdial/reduce.hpp"
#include "nsdial/translate.hpp"

namespace nsdial {

struct Grid {
  std::uint64_t nat_bound = 3;
  std::size_t len_bound = 2;
  int depth_bound = 2;
};

using Assignment = std::vector<std::pair<std::string, CanonicalValue>>;

struct Verdict {
  enum class Kind { GridValid, Counterexample, Unknown };
  Kind kind = Kind::GridValid;
  Assignment env;      // counterexample
  std::string reason;  // unknown
  std::size_t points = 0;

  static Verdict valid(std::size_t n = 0) { Verdict v; v.points = n; return v; }
  bool is_valid() const { return kind == Kind::GridValid; }
  bool is_counterexample() const { return kind == Kind::Counterexample; }
  bool is_unknown() const { return kind == Kind::Unknown; }
  static Verdict unknown(std::string why) {
    Verdict v;
    v.kind = Kind::Unknown;
    v.reason = std::move(why);
    return v;
  }
  static Verdict counterexample(Assignment a) {
    Verdict v;
    v.kind = Kind::Counterexample;
    v.env = std::move(a);
    return v;
  }
};

inline const char* verdict_name(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::GridValid: return "GridValid";
    case Verdict::Kind::Counterexample: return "CounterexampleFound";
    case Verdict::Kind::Unknown: return "Unknown";
  }
  return "?";
}

struct RealiserBundle {
  FormulaP target;  // may be null when only the translation is known
  TranslatedFormula translated;
  std::vector<TermP> terms;
  Flavor flavor = Flavor::U;
  std::vector<FormulaP> delta;  // internal hypotheses used
};

// empty when closed and well typed
inline std::string bundle_problem(const RealiserBundle& b) {
  if (b.terms.size() != b.translated.exist.size())
    return "bundle has " + std::to_string(b.terms.size()) + " terms for " + std::to_string(b.translated.exist.size()) +
           " existential variables";
  for (std::size_t i = 0; i < b.terms.size(); ++i) {
    if (!term_closed(b.terms[i])) return "term " + std::to_string(i) + " is not closed";
    try {
      TypeP t = type_check(b.terms[i]);
      if (!type_eq(t, b.translated.exist[i].ty))
        return "term " + std::to_string(i) + ": expected " + type_str(b.translated.exist[i].ty) + ", found " + type_str(t);
    } catch (const TypeError& e) {
      return "term " + std::to_string(i) + ": " + e.what();
    }
  }
  return "";
}

// -- enumeration

namespace detail {
inline void enum_rec(const TypeP& t, const Grid& g, std::map<std::string, std::vector<CanonicalValue>>& memo,
                     std::vector<CanonicalValue>& out) {
  std::string key = type_str(t);
  if (auto it = memo.find(key); it != memo.end()) {
    out = it->second;
    return;
  }
  if (is_ground(t)) {
    for (std::uint64_t n = 0; n <= g.nat_bound; ++n) out.push_back(CanonicalValue::of_nat(n));
  } else {
    std::vector<CanonicalValue> el;
    enum_rec(t->dom, g, memo, el);
    std::vector<std::vector<CanonicalValue>> layer{{}};
    out.push_back(CanonicalValue::of_seq(t->dom, {}));
    for (std::size_t len = 1; len <= g.len_bound; ++len) {
      std::vector<std::vector<CanonicalValue>> next;
      for (const auto& pre : layer)
        for (const auto& e : el) {
          auto xs = pre;
          xs.push_back(e);
          next.push_back(std::move(xs));
        }
      for (const auto& xs : next) out.push_back(CanonicalValue::of_seq(t->dom, xs));
      layer = std::move(next);
    }
  }
  memo[key] = out;
}
}  // namespace detail

inline std::vector<CanonicalValue> enumerate_values(const TypeP& t, const Grid& g) {
  if (!is_data_type(t)) throw TypeError(TypeError::Code::NotDataType, "cannot enumerate " + type_str(t));
  if (type_depth(t) > g.depth_bound)
    throw TypeError(TypeError::Code::NotDataType, "type " + type_str(t) + " deeper than the grid depth bound");
  std::map<std::string, std::vector<CanonicalValue>> memo;
  std::vector<CanonicalValue> out;
  detail::enum_rec(t, g, memo, out);
  return out;
}

// -- three-valued evaluation

enum class Truth { True, False, Unknown };

inline Truth t_not(Truth a) { return a == Truth::True ? Truth::False : a == Truth::False ? Truth::True : a; }
inline Truth t_and(Truth a, Truth b) {
  if (a == Truth::False || b == Truth::False) return Truth::False;
  if (a == Truth::Unknown || b == Truth::Unknown) return Truth::Unknown;
  return Truth::True;
}
inline Truth t_or(Truth a, Truth b) { return t_not(t_and(t_not(a), t_not(b))); }

inline Env env_bind(Env e, const std::string& n, ValueP v) {
  return std::make_shared<const EnvNode>(EnvNode{n, std::move(v), std::move(e)});
}

struct Evaluator {
  Grid grid;
  std::map<std::string, std::vector<CanonicalValue>> memo;

  const std::vector<CanonicalValue>& values(const TypeP& t) {
    std::string k = type_str(t);
    auto it = memo.find(k);
    if (it != memo.end()) return it->second;
    return memo[k] = enumerate_values(t, grid);
  }

  // extensional at arrow types over data domains, sampled on the grid
  Truth equal(const TypeP& t, const ValueP& a, const ValueP& b) {
    if (is_data_type(t)) {
      auto x = value_to_cv(a), y = value_to_cv(b);
      if (!x || !y) return Truth::Unknown;
      return *x == *y ? Truth::True : Truth::False;
    }
    if (is_arrow(t)) {
      std::set<std::string> sc;
      if (alpha_eq(nbe::readback(a, sc), nbe::readback(b, sc))) return Truth::True;
      if (!is_data_type(t->dom) || type_depth(t->dom) > grid.depth_bound) return Truth::Unknown;
      Truth r = Truth::True;
      for (const auto& v : values(t->dom)) {
        ValueP x = cv_to_value(v);
        r = t_and(r, equal(t->cod, nbe::apply(a, x), nbe::apply(b, x)));
        if (r == Truth::False) return r;
      }
      return r;
    }
    // sequences of functions: lengths then pointwise
    auto [ea, ta] = nbe::as_seq(a);
    auto [eb, tb] = nbe::as_seq(b);
    if (ta || tb) return Truth::Unknown;
    if (ea->size() != eb->size()) return Truth::False;
    Truth r = Truth::True;
    for (std::size_t i = 0; i < ea->size() && r != Truth::False; ++i) r = t_and(r, equal(t->dom, (*ea)[i], (*eb)[i]));
    return r;
  }

  Truth eval(const FormulaP& f, const Env& env) {
    switch (f->kind) {
      case K::Eq: return equal(f->ty, nbe::eval(f->t1, env), nbe::eval(f->t2, env));
      case K::And: {
        Truth a = eval(f->l, env);
        if (a == Truth::False) return a;
        return t_and(a, eval(f->r, env));
      }
      case K::Or: {
        Truth a = eval(f->l, env);
        if (a == Truth::True) return a;
        return t_or(a, eval(f->r, env));
      }
      case K::Imp: {
        Truth a = eval(f->l, env);
        if (a == Truth::False) return Truth::True;
        return t_or(t_not(a), eval(f->r, env));
      }
      case K::Not: return t_not(eval(f->l, env));
      case K::Bot: return Truth::False;
      case K::Forall:
      case K::Exists: {
        if (!is_data_type(f->ty) || type_depth(f->ty) > grid.depth_bound) return Truth::Unknown;
        bool all = f->kind == K::Forall;
        Truth acc = all ? Truth::True : Truth::False;
        for (const auto& v : values(f->ty)) {
          Truth b = eval(f->l, env_bind(env, f->var, cv_to_value(v)));
          acc = all ? t_and(acc, b) : t_or(acc, b);
          if (acc == (all ? Truth::False : Truth::True)) return acc;
        }
        return acc;
      }
      case K::BForall:
      case K::BExists: {
        ValueP bv = nbe::eval(f->t1, env);
        if (bv->kind != Value::Kind::Nat || bv->base) return Truth::Unknown;
        bool all = f->kind == K::BForall;
        Truth acc = all ? Truth::True : Truth::False;
        for (std::uint64_t i = 0; i < bv->k; ++i) {
          Truth b = eval(f->l, env_bind(env, f->var, nbe::nat(i)));
          acc = all ? t_and(acc, b) : t_or(acc, b);
          if (acc == (all ? Truth::False : Truth::True)) return acc;
        }
        return acc;
      }
      case K::In:
      case K::SubsetEq: return eval(desugar(f), env);
      default: return Truth::Unknown;  // external
    }
  }
};

inline Env env_of(const Assignment& a, Env base = nullptr) {
  for (const auto& [n, v] : a) base = env_bind(base, n, cv_to_value(v));
  return base;
}

inline Truth eval_truth(const FormulaP& f, const Assignment& a, const Grid& g) {
  Evaluator ev{g, {}};
  return ev.eval(f, env_of(a));
}

inline Verdict eval_formula(const FormulaP& f, const Assignment& a, const Grid& g) {
  if (!is_internal(f)) return Verdict::unknown("formula is not internal");
  switch (eval_truth(f, a, g)) {
    case Truth::True: return Verdict::valid(1);
    case Truth::False: return Verdict::counterexample(a);
    case Truth::Unknown: break;
  }
  return Verdict::unknown("quantifier or equality outside the data types");
}

inline std::optional<CanonicalValue> brute_force_witness(const FormulaP& f, const Grid& g, const Assignment& a = {}) {
  if (f->kind != K::Exists) throw std::invalid_argument("brute_force_witness expects a leading internal existential");
  Evaluator ev{g, {}};
  Env env = env_of(a);
  for (const auto& v : ev.values(f->ty))
    if (ev.eval(f->l, env_bind(env, f->var, cv_to_value(v))) == Truth::True) return v;
  return std::nullopt;
}

// -- grid iteration

namespace detail {
// odometer over value lists; f returns false to stop
template <class F>
inline void for_each_assignment(const std::vector<TypedVar>& vs, const std::vector<const std::vector<CanonicalValue>*>& doms,
                                F&& f) {
  for (const auto* d : doms)
    if (d->empty()) return;
  std::vector<std::size_t> idx(vs.size(), 0);
  for (;;) {
    Assignment a;
    for (std::size_t i = 0; i < vs.size(); ++i) a.emplace_back(vs[i].name, (*doms[i])[idx[i]]);
    if (!f(a)) return;
    std::size_t k = vs.size();
    while (k > 0) {
      --k;
      if (++idx[k] < doms[k]->size()) break;
      idx[k] = 0;
      if (k == 0) return;
    }
    if (vs.empty()) return;
  }
}

// universal tuple, then remaining free variables sorted by name
inline std::vector<TypedVar> open_vars(const TranslatedFormula& tf) {
  std::vector<TypedVar> vs = tf.univ;
  std::set<std::string> skip;
  for (const auto& v : tf.exist) skip.insert(v.name);
  for (const auto& v : tf.univ) skip.insert(v.name);
  for (auto& [n, t] : formula_free_vars(tf.matrix))
    if (!skip.count(n)) vs.push_back({n, t});
  return vs;
}
}  // namespace detail

inline Env bundle_env(const RealiserBundle& b) {
  Env env;
  for (std::size_t i = 0; i < b.terms.size(); ++i) env = env_bind(env, b.translated.exist[i].name, nbe::eval(b.terms[i], nullptr));
  return env;
}

// re-evaluates the matrix at a reported assignment
inline Truth replay(const RealiserBundle& b, const Assignment& a, const Grid& g) {
  Evaluator ev{g, {}};
  return ev.eval(b.translated.matrix, env_of(a, bundle_env(b)));
}

inline Verdict verify_bundle(const RealiserBundle& b, const Grid& g) {
  if (std::string p = bundle_problem(b); !p.empty()) return Verdict::unknown(p);
  Evaluator ev{g, {}};
  std::vector<TypedVar> vs = detail::open_vars(b.translated);
  std::vector<const std::vector<CanonicalValue>*> doms;
  for (const auto& v : vs) {
    if (!is_data_type(v.ty) || type_depth(v.ty) > g.depth_bound)
      return Verdict::unknown("variable " + v.name + " of type " + type_str(v.ty) + " is not enumerable");
    doms.push_back(&ev.values(v.ty));
  }
  Env base = bundle_env(b);
  Verdict out = Verdict::valid();
  bool unknown = false;
  detail::for_each_assignment(vs, doms, [&](const Assignment& a) {
    ++out.points;
    Truth t = ev.eval(b.translated.matrix, env_of(a, base));
    if (t == Truth::False) {
      std::size_t n = out.points;
      out = Verdict::counterexample(a);
      out.points = n;
      return false;
    }
    if (t == Truth::Unknown) unknown = true;
    return true;
  });
  if (out.kind == Verdict::Kind::GridValid && unknown) {
    std::size_t n = out.points;
    out = Verdict::unknown("matrix undecided at some grid point");
    out.points = n;
  }
  return out;
}

// every element of a occurs in b
inline bool as_set_subset(const CanonicalValue& a, const CanonicalValue& b) {
  for (const auto& x : a.elems)
    if (std::find(b.elems.begin(), b.elems.end(), x) == b.elems.end()) return false;
  return true;
}

inline Verdict check_upward_closed(const TranslatedFormula& tf, const Grid& g) {
  Evaluator ev{g, {}};
  std::vector<TypedVar> vs = detail::open_vars(tf);
  std::vector<const std::vector<CanonicalValue>*> doms, sdoms;
  for (const auto& v : vs) {
    if (!is_data_type(v.ty) || type_depth(v.ty) > g.depth_bound)
      return Verdict::unknown("variable " + v.name + " is not enumerable");
    doms.push_back(&ev.values(v.ty));
  }
  for (const auto& v : tf.exist) {
    if (!is_star(v.ty) || !is_data_type(v.ty) || type_depth(v.ty) > g.depth_bound)
      return Verdict::unknown("existential " + v.name + " is not an enumerable sequence");
    sdoms.push_back(&ev.values(v.ty));
  }
  std::vector<Assignment> tuples;
  detail::for_each_assignment(tf.exist, sdoms, [&](const Assignment& a) {
    tuples.push_back(a);
    return true;
  });
  Verdict out = Verdict::valid();
  detail::for_each_assignment(vs, doms, [&](const Assignment& a) {
    Env base = env_of(a);
    std::vector<Truth> truth;
    truth.reserve(tuples.size());
    for (const auto& s : tuples) truth.push_back(ev.eval(tf.matrix, env_of(s, base)));
    for (std::size_t i = 0; i < tuples.size(); ++i) {
      if (truth[i] != Truth::True) continue;
      for (std::size_t j = 0; j < tuples.size(); ++j) {
        if (truth[j] == Truth::True) continue;
        bool sub = true;
        for (std::size_t k = 0; k < tuples[i].size() && sub; ++k) sub = as_set_subset(tuples[i][k].second, tuples[j][k].second);
        if (!sub) continue;
        ++out.points;
        if (truth[j] == Truth::False) {
          Assignment w = a;
          for (const auto& p : tuples[i]) w.emplace_back(p.first, p.second);
          for (const auto& p : tuples[j]) w.emplace_back(p.first + "'", p.second);
          out = Verdict::counterexample(std::move(w));
          return false;
        }
      }
    }
    out.points += tuples.size();
    return true;
  });
  return out;
}

inline std::string assignment_str(const Assignment& a) {
  std::string s;
  for (const auto& [n, v] : a) s += (s.empty() ? "" : ", ") + n + " = " + cv_str(v);
  return "{" + s + "}";
}

}  // namespace nsdial

#endif
