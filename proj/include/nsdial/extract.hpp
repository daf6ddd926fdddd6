// Realiser extraction from checked proofs.
#ifndef NSDIAL_EXTRACT_HPP
#define NSDIAL_EXTRACT_HPP

#include <functional>

#include "nsdial/oracle.hpp"
#include "nsdial/proof.hpp"

namespace nsdial {

struct ExtractError : std::runtime_error {
  std::string node;
  ExtractError(std::string n, const std::string& m) : std::runtime_error(m), node(std::move(n)) {}
};

namespace extract_detail {

using Terms = std::vector<TermP>;

struct Shape {
  std::vector<TypeP> x, y;
};

struct Kit {
  Flavor fl;
  int next = 0;

  bool dst() const { return fl == Flavor::Dst; }

  Shape shape(const FormulaP& f) const {
    TranslatedFormula t = translate(f, fl);
    return {types_of(t.exist), types_of(t.univ)};
  }
  TypedVar var(const TypeP& t) { return {"r" + std::to_string(next++), t}; }
  std::vector<TypedVar> vars(const std::vector<TypeP>& ts) {
    std::vector<TypedVar> r;
    for (const auto& t : ts) r.push_back(var(t));
    return r;
  }
  // λ / Λ
  TermP lam(const std::vector<TypedVar>& vs, const TermP& body) const {
    return dst() ? mk_seqabss(vs, body) : mk_lams(vs, body);
  }
  TermP app(const TermP& f, const Terms& args) const { return dst() ? mk_seqapps(f, args) : mk_apps(f, args); }

  static TypeP ty(const TermP& t) { return type_check(t); }
  static TermP single(const TermP& t) { return mk_single(ty(t), t); }
  static TermP concat(const TermP& a, const TermP& b) { return mk_concat(ty(a)->dom, a, b); }
  // elements of s mapped to sequences, joined in order
  TermP concat_map(const TermP& s, const std::function<TermP(const TermP&)>& f) {
    TypeP el = ty(s)->dom;
    TypedVar z = var(el);
    TermP body = f(mk_var(z));
    TypeP res = ty(body);
    TypedVar acc = var(res);
    TermP step = mk_lam(acc.name, res, mk_lam(z.name, el, concat(body, mk_var(acc))));
    return mk_apps(mk_const(ConstKind::ListRec, {res, el}), {mk_nil(res->dom), step, s});
  }
  TermP flatten(const TermP& s) {
    return concat_map(s, [](const TermP& z) { return z; });
  }
  // a when z = 0, else b
  TermP cond(const TermP& z, const TermP& a, const TermP& b) {
    TypeP t = ty(a);
    TypedVar n = var(ty_nat()), acc = var(t);
    return mk_apps(mk_const(ConstKind::NatRec, {t}), {a, mk_lam(n.name, n.ty, mk_lam(acc.name, t, b)), z});
  }
  // concatMap over the product of the given sequences
  TermP product_map(const Terms& seqs, const std::function<TermP(const Terms&)>& body, Terms acc = {}) {
    if (acc.size() == seqs.size()) return body(acc);
    return concat_map(seqs[acc.size()], [&](const TermP& z) {
      Terms a2 = acc;
      a2.push_back(z);
      return product_map(seqs, body, a2);
    });
  }

  using UxFn = std::function<Terms(const Terms&)>;
  using YcFn = std::function<Terms(const Terms&, const Terms&)>;

  // realiser of P -> Q: witnesses for Q.x from P.x, then challenges for P.y from P.x and Q.y
  Terms imp(const Shape& P, const Shape& Q, const UxFn& ux, const YcFn& yc) {
    Terms out;
    std::vector<TypedVar> p = vars(P.x);
    Terms pv = vars_as_terms(p);
    if (!Q.x.empty()) {
      Terms w = ux(pv);
      if (w.size() != Q.x.size()) throw std::logic_error("witness arity mismatch");
      for (const auto& t : w) out.push_back(lam(p, t));
    }
    if (!P.y.empty()) {
      std::vector<TypedVar> q = vars(Q.y);
      Terms qv = vars_as_terms(q);
      Terms c = yc(pv, qv);
      if (c.size() != P.y.size()) throw std::logic_error("challenge arity mismatch");
      std::vector<TypedVar> pq = p;
      pq.insert(pq.end(), q.begin(), q.end());
      for (const auto& t : c) out.push_back(lam(pq, t));
    }
    return out;
  }
};

inline Terms slice(const Terms& v, std::size_t from, std::size_t n) {
  return Terms(v.begin() + static_cast<std::ptrdiff_t>(from), v.begin() + static_cast<std::ptrdiff_t>(from + n));
}
inline Terms cat(Terms a, const Terms& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}
inline Terms defaults(const std::vector<TypeP>& ts) {
  Terms r;
  for (const auto& t : ts) r.push_back(mk_default(t));
  return r;
}
inline Terms nils(const std::vector<TypeP>& ts) {
  Terms r;
  for (const auto& t : ts) r.push_back(mk_nil(t));
  return r;
}
inline Terms singles(const Terms& ts) {
  Terms r;
  for (const auto& t : ts) r.push_back(Kit::single(t));
  return r;
}

struct Extractor {
  Kit kit;
  ProofChecker chk;
  std::map<const Proof*, Terms> memo;

  explicit Extractor(Flavor fl) : kit{fl}, chk{fl, {}, {}} {}

  FormulaP f(const Binds& b, const std::string& k) {
    for (const auto& [n, v] : b)
      if (n == k) return desugar(v.f);
    throw std::logic_error("missing binding " + k);
  }
  const Binding& bind(const Binds& b, const std::string& k) {
    for (const auto& [n, v] : b)
      if (n == k) return v;
    throw std::logic_error("missing binding " + k);
  }

  Terms identity(const Shape& P, const Shape& Q) {
    return kit.imp(P, Q, [](const Terms& p) { return p; }, [](const Terms&, const Terms& q) { return singles(q); });
  }

  Terms axiom(const Proof& p, const FormulaP& concl) {
    const std::string& s = p.schema;
    const Binds& b = p.binds;
    Kit& K = kit;
    bool dst = K.dst();
    if (concl->kind != K::Imp) {
      if (s == "st-closed") return {dst ? Kit::single(bind(b, "a").t) : bind(b, "a").t};
      return {};  // internal axioms
    }
    Shape P = K.shape(concl->l), Q = K.shape(concl->r);
    if (P.x.empty() && P.y.empty() && Q.x.empty() && Q.y.empty()) return {};

    if (s == "k") {
      Shape A = K.shape(f(b, "A")), B = K.shape(f(b, "B"));
      return K.imp(A, Q,
                   [&](const Terms& x) {
                     return K.imp(B, A, [&](const Terms&) { return x; },
                                  [&](const Terms&, const Terms&) { return nils(B.y); });
                   },
                   [&](const Terms&, const Terms& q) { return singles(slice(q, B.x.size(), A.y.size())); });
    }
    if (s == "s") {
      Shape A = K.shape(f(b, "A")), B = K.shape(f(b, "B")), C = K.shape(f(b, "C"));
      Shape G = K.shape(f_imp(f(b, "A"), f(b, "B"))), H = K.shape(f_imp(f(b, "A"), f(b, "C")));
      std::size_t nCx = C.x.size(), nBy = B.y.size(), nBx = B.x.size();
      return K.imp(P, Q,
                   [&](const Terms& F) {
                     return K.imp(G, H,
                                  [&](const Terms& g) {
                                    auto gu = [&](const Terms& x) {
                                      Terms r;
                                      for (std::size_t k = 0; k < nBx; ++k) r.push_back(K.app(g[k], x));
                                      return r;
                                    };
                                    return K.imp(A, C,
                                                 [&](const Terms& x) {
                                                   Terms w, gx = gu(x);
                                                   for (std::size_t j = 0; j < nCx; ++j) w.push_back(K.app(F[j], cat(x, gx)));
                                                   return w;
                                                 },
                                                 [&](const Terms& x, const Terms& r) {
                                                   Terms gx = gu(x), fk, out;
                                                   Terms xgr = cat(cat(x, gx), r);
                                                   for (std::size_t i = 0; i < nBy; ++i) fk.push_back(K.app(F[nCx + i], xgr));
                                                   for (std::size_t m = 0; m < A.y.size(); ++m) {
                                                     TermP own = K.app(F[nCx + nBy + m], xgr);
                                                     TermP more = K.product_map(fk, [&](const Terms& v) {
                                                       return K.app(g[nBx + m], cat(x, v));
                                                     });
                                                     out.push_back(Kit::concat(own, more));
                                                   }
                                                   return out;
                                                 });
                                  },
                                  [&](const Terms& g, const Terms& hy) {
                                    // challenges for G: A.x then B.y
                                    Terms x = slice(hy, 0, A.x.size()), r = slice(hy, A.x.size(), C.y.size());
                                    Terms gx;
                                    for (std::size_t k = 0; k < nBx; ++k) gx.push_back(K.app(g[k], x));
                                    Terms out = singles(x);
                                    Terms xgr = cat(cat(x, gx), r);
                                    for (std::size_t i = 0; i < nBy; ++i) out.push_back(K.app(F[nCx + i], xgr));
                                    return out;
                                  });
                   },
                   [&](const Terms&, const Terms& q) {
                     // q = G.x ++ A.x ++ C.y ; challenges for F: A.x, B.x, C.y
                     std::size_t nG = G.x.size();
                     Terms g = slice(q, 0, nG), x = slice(q, nG, A.x.size()), r = slice(q, nG + A.x.size(), C.y.size());
                     Terms gx;
                     for (std::size_t k = 0; k < nBx; ++k) gx.push_back(K.app(g[k], x));
                     return singles(cat(cat(x, gx), r));
                   });
    }
    if (s == "and-i") {
      Shape A = K.shape(f(b, "A")), B = K.shape(f(b, "B"));
      Shape AB = K.shape(f_and(f(b, "A"), f(b, "B")));
      return K.imp(A, Q,
                   [&](const Terms& x) {
                     return K.imp(B, AB, [&](const Terms& u) { return cat(x, u); },
                                  [&](const Terms&, const Terms& q) { return singles(slice(q, A.y.size(), B.y.size())); });
                   },
                   [&](const Terms&, const Terms& q) { return singles(slice(q, B.x.size(), A.y.size())); });
    }
    if (s == "and-l" || s == "and-r") {
      Shape A = K.shape(f(b, "A")), B = K.shape(f(b, "B"));
      bool left = s == "and-l";
      return K.imp(P, Q,
                   [&](const Terms& xu) { return left ? slice(xu, 0, A.x.size()) : slice(xu, A.x.size(), B.x.size()); },
                   [&](const Terms&, const Terms& q) {
                     return left ? cat(singles(q), singles(defaults(B.y))) : cat(singles(defaults(A.y)), singles(q));
                   });
    }
    if (s == "or-l" || s == "or-r") {
      Shape A = K.shape(f(b, "A")), B = K.shape(f(b, "B"));
      bool left = s == "or-l";
      return K.imp(P, Q,
                   [&](const Terms& p) {
                     Terms w = left ? cat(p, defaults(B.x)) : cat(defaults(A.x), p);
                     if (!dst) w.insert(w.begin(), left ? mk_zero() : mk_numeral(1));
                     return w;
                   },
                   [&](const Terms&, const Terms& q) {
                     return singles(left ? slice(q, 0, A.y.size()) : slice(q, A.y.size(), B.y.size()));
                   });
    }
    if (s == "or-e") {
      FormulaP fa = f(b, "A"), fb = f(b, "B"), fc = f(b, "C");
      Shape A = K.shape(fa), B = K.shape(fb), C = K.shape(fc);
      Shape F2 = K.shape(f_imp(fb, fc)), F3 = K.shape(f_imp(f_or(fa, fb), fc)), AB = K.shape(f_or(fa, fb));
      std::size_t nCx = C.x.size();
      return K.imp(P, Q,
                   [&](const Terms& Fa) {
                     return K.imp(F2, F3,
                                  [&](const Terms& Fb) {
                                    return K.imp(AB, C,
                                                 [&](const Terms& p) {
                                                   std::size_t o = dst ? 0 : 1;
                                                   Terms x = slice(p, o, A.x.size()), u = slice(p, o + A.x.size(), B.x.size());
                                                   Terms w;
                                                   for (std::size_t j = 0; j < nCx; ++j) {
                                                     TermP wa = K.app(Fa[j], x), wb = K.app(Fb[j], u);
                                                     w.push_back(dst ? Kit::concat(wa, wb) : K.cond(p[0], wa, wb));
                                                   }
                                                   return w;
                                                 },
                                                 [&](const Terms& p, const Terms& r) {
                                                   std::size_t o = dst ? 0 : 1;
                                                   Terms x = slice(p, o, A.x.size()), u = slice(p, o + A.x.size(), B.x.size());
                                                   Terms out;
                                                   for (std::size_t m = 0; m < A.y.size(); ++m) {
                                                     TermP c = K.app(Fa[nCx + m], cat(x, r));
                                                     out.push_back(dst ? c : K.cond(p[0], c, Kit::single(mk_default(A.y[m]))));
                                                   }
                                                   for (std::size_t l = 0; l < B.y.size(); ++l) {
                                                     TermP c = K.app(Fb[nCx + l], cat(u, r));
                                                     out.push_back(dst ? c : K.cond(p[0], Kit::single(mk_default(B.y[l])), c));
                                                   }
                                                   return out;
                                                 });
                                  },
                                  [&](const Terms&, const Terms& q) {
                                    std::size_t o = dst ? 0 : 1;
                                    Terms u = slice(q, o + A.x.size(), B.x.size()), r = slice(q, o + A.x.size() + B.x.size(), C.y.size());
                                    return singles(cat(u, r));
                                  });
                   },
                   [&](const Terms&, const Terms& q) {
                     std::size_t o = F2.x.size() + (dst ? 0 : 1);
                     Terms x = slice(q, o, A.x.size()), r = slice(q, o + A.x.size() + B.x.size(), C.y.size());
                     return singles(cat(x, r));
                   });
    }
    if (s == "efq") {
      return K.imp(P, Q, [&](const Terms&) { return defaults(Q.x); }, [](const Terms&, const Terms&) { return Terms{}; });
    }
    if (s == "all-inst") return identity(P, Q);
    if (s == "ex-intro") {
      return K.imp(P, Q, [](const Terms& x) { return x; }, [](const Terms&, const Terms& t) { return t; });
    }
    if (s == "allst-elim" || s == "allst-intro") {
      TypeP sigma = bind(b, "x").v.ty;
      bool elim = s == "allst-elim";
      return K.imp(P, Q,
                   [&](const Terms& X) {
                     Terms w;
                     for (const auto& Xj : X) {
                       if (!dst) {
                         TypedVar y = K.var(sigma);
                         w.push_back(K.lam({y}, K.app(Xj, {mk_var(y)})));
                       } else if (elim) {
                         TypedVar sv = K.var(ty_star(sigma));
                         w.push_back(K.lam({sv}, K.concat_map(mk_var(sv), [&](const TermP& z) { return K.app(Xj, {z}); })));
                       } else {
                         TypedVar x = K.var(sigma);
                         w.push_back(K.lam({x}, K.app(Xj, {Kit::single(mk_var(x))})));
                       }
                     }
                     return w;
                   },
                   [&](const Terms&, const Terms& q) {
                     Terms out = {dst ? (elim ? q[0] : Kit::single(Kit::single(q[0]))) : Kit::single(q[0])};
                     return cat(out, singles(slice(q, 1, q.size() - 1)));
                   });
    }
    if (s == "exst-elim" || s == "exst-intro") {
      bool elim = s == "exst-elim";
      return K.imp(P, Q, [](const Terms& p) { return p; },
                   [&](const Terms&, const Terms& q) {
                     Terms out;
                     for (const auto& t : q) {
                       if (elim) out.push_back(dst ? Kit::single(t) : t);
                       else if (!dst) out.push_back(Kit::single(Kit::single(t)));
                       else out.push_back(Kit::single(Kit::concat(t, Kit::single(mk_default(Kit::ty(t)->dom)))));
                     }
                     return out;
                   });
    }
    if (s == "st-eq") return K.imp(P, Q, [](const Terms& p) { return p; }, [](const Terms&, const Terms&) { return Terms{}; });
    if (s == "st-app") {
      return K.imp(P, Q,
                   [&](const Terms& p) {
                     if (!dst) return Terms{mk_app(p[0], p[1])};
                     return Terms{K.concat_map(p[0], [&](const TermP& g) {
                       return K.concat_map(p[1], [&](const TermP& a) { return Kit::single(mk_app(g, a)); });
                     })};
                   },
                   [](const Terms&, const Terms&) { return Terms{}; });
    }
    if (s == "os") {
      return K.imp(P, Q, [](const Terms&) { return Terms{}; }, [](const Terms&, const Terms& q) { return singles(q); });
    }
    if (s == "us") {
      return K.imp(P, Q, [&](const Terms& p) { return dst ? singles(p) : p; }, [](const Terms&, const Terms&) { return Terms{}; });
    }
    if (s == "nu" || s == "ac-st" || s == "ip-st") return identity(P, Q);
    if (s == "ncr" || s == "hac" || s == "hip") {
      return K.imp(P, Q,
                   [](const Terms& p) {
                     Terms w = p;
                     w[0] = Kit::single(p[0]);
                     return w;
                   },
                   [&](const Terms&, const Terms& q) {
                     Terms out;
                     for (std::size_t i = 0; i < q.size(); ++i) {
                       if (s == "hip" || (s == "hac" && i == 0)) out.push_back(q[i]);
                       else out.push_back(Kit::single(K.flatten(q[i])));
                     }
                     return out;
                   });
    }
    throw ExtractError(p.schema, "no realiser for schema " + s);
  }

  Terms ind_st(const Proof& p, const FormulaP& concl) {
    Shape phi = kit.shape(concl->l);
    std::size_t k = phi.x.size();
    if (k == 0) return {};
    Terms base = run(p.p), step = run(p.q);
    const TypeP N = ty_nat();
    Terms out;
    if (k == 1) {
      TypeP s0 = phi.x[0];
      TypedVar n = kit.var(N), m = kit.var(N), acc = kit.var(s0);
      TermP f = mk_lam(m.name, N, mk_lam(acc.name, s0, kit.app(step[0], {mk_var(m), mk_var(acc)})));
      out.push_back(kit.lam({n}, mk_apps(mk_const(ConstKind::NatRec, {s0}), {base[0], f, mk_var(n)})));
      return out;
    }
    // simultaneous recursion through continuations
    for (std::size_t j = 0; j < k; ++j) {
      TypeP kont = ty_arrows(phi.x, phi.x[j]);
      TypeP Pj = ty_arrow(kont, phi.x[j]);
      TypedVar f0 = kit.var(kont);
      TermP bj = mk_lam(f0.name, kont, mk_apps(mk_var(f0), base));
      TypedVar m = kit.var(N), v = kit.var(Pj), f1 = kit.var(kont);
      std::vector<TypedVar> xs = kit.vars(phi.x);
      Terms mx = cat({mk_var(m)}, vars_as_terms(xs)), nexts;
      for (std::size_t i = 0; i < k; ++i) nexts.push_back(kit.app(step[i], mx));
      TermP sj = mk_lam(m.name, N,
                        mk_lam(v.name, Pj, mk_lam(f1.name, kont, mk_app(mk_var(v), mk_lams(xs, mk_apps(mk_var(f1), nexts))))));
      std::vector<TypedVar> ys = kit.vars(phi.x);
      TermP proj = mk_lams(ys, mk_var(ys[j]));
      TypedVar n = kit.var(N);
      TermP rec = mk_apps(mk_const(ConstKind::NatRec, {Pj}), {bj, sj, mk_var(n), proj});
      out.push_back(kit.lam({n}, rec));
    }
    return out;
  }

  Terms run(const ProofP& pp) {
    if (auto it = memo.find(pp.get()); it != memo.end()) return it->second;
    const Proof& p = *pp;
    FormulaP concl = chk.memo.at(pp.get());
    Terms r;
    switch (p.kind) {
      case Proof::Kind::Axiom: r = axiom(p, concl); break;
      case Proof::Kind::MP: {
        Terms maj = run(p.p), min = run(p.q);
        std::size_t nb = kit.shape(concl).x.size();
        for (std::size_t j = 0; j < nb; ++j) r.push_back(kit.app(maj[j], min));
        break;
      }
      case Proof::Kind::ForallRule: r = run(p.p); break;
      case Proof::Kind::ExistsRule: {
        Terms prem = run(p.p);
        FormulaP A = concl->l->l;
        Shape SA = kit.shape(A), SB = kit.shape(concl->r);
        r = slice(prem, 0, SB.x.size());
        for (std::size_t i = 0; i < SA.y.size(); ++i) {
          std::vector<TypedVar> xs = kit.vars(SA.x), vs = kit.vars(SB.y);
          Terms args = cat(vars_as_terms(xs), vars_as_terms(vs));
          std::vector<TypedVar> all = xs;
          all.insert(all.end(), vs.begin(), vs.end());
          r.push_back(kit.lam(all, Kit::single(kit.app(prem[SB.x.size() + i], args))));
        }
        break;
      }
      case Proof::Kind::Ind: break;
      case Proof::Kind::IndSt: r = ind_st(p, concl); break;
    }
    memo[pp.get()] = r;
    return r;
  }
};

}  // namespace extract_detail

// proof must check; terms are normalised and match translate(conclusion)
inline RealiserBundle extract(const ProofP& p, Flavor fl) {
  extract_detail::Extractor ex(fl);
  FormulaP concl = ex.chk.check(p);
  std::vector<TermP> terms;
  try {
    terms = ex.run(p);
  } catch (const TypeError& e) {
    throw ExtractError("proof", std::string("realiser construction failed: ") + e.what());
  } catch (const std::logic_error& e) {
    throw ExtractError("proof", std::string("realiser construction failed: ") + e.what());
  }
  RealiserBundle b;
  b.target = concl;
  b.translated = translate(concl, fl);
  b.flavor = fl;
  b.delta = ex.chk.delta;
  for (const auto& t : terms) b.terms.push_back(normalize(t));
  if (std::string prob = bundle_problem(b); !prob.empty()) throw ExtractError("proof", "extracted bundle rejected: " + prob);
  return b;
}
inline RealiserBundle extract_u(const ProofP& p) { return extract(p, Flavor::U); }
inline RealiserBundle extract_dst(const ProofP& p) { return extract(p, Flavor::Dst); }

}  // namespace nsdial

#endif
