// Finite types over the ground type of naturals.
#ifndef NSDIAL_TYPE_HPP
#define NSDIAL_TYPE_HPP

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace nsdial {

struct Type;
using TypeP = std::shared_ptr<const Type>;

struct Type {
  enum class Kind { Ground, Arrow, Star };
  Kind kind;
  TypeP dom;  // arrow domain or star element
  TypeP cod;  // arrow codomain
};

inline TypeP ty_nat() {
  static const TypeP g = std::make_shared<const Type>(Type{Type::Kind::Ground, nullptr, nullptr});
  return g;
}
inline TypeP ty_arrow(TypeP a, TypeP b) {
  return std::make_shared<const Type>(Type{Type::Kind::Arrow, std::move(a), std::move(b)});
}
inline TypeP ty_star(TypeP a) {
  return std::make_shared<const Type>(Type{Type::Kind::Star, std::move(a), nullptr});
}
// a1 -> a2 -> ... -> r
inline TypeP ty_arrows(const std::vector<TypeP>& args, TypeP r) {
  for (auto it = args.rbegin(); it != args.rend(); ++it) r = ty_arrow(*it, r);
  return r;
}

inline bool is_ground(const TypeP& t) { return t->kind == Type::Kind::Ground; }
inline bool is_arrow(const TypeP& t) { return t->kind == Type::Kind::Arrow; }
inline bool is_star(const TypeP& t) { return t->kind == Type::Kind::Star; }

inline bool type_eq(const TypeP& a, const TypeP& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case Type::Kind::Ground: return true;
    case Type::Kind::Star: return type_eq(a->dom, b->dom);
    case Type::Kind::Arrow: return type_eq(a->dom, b->dom) && type_eq(a->cod, b->cod);
  }
  return false;
}

// built from ground and star only
inline bool is_data_type(const TypeP& t) {
  switch (t->kind) {
    case Type::Kind::Ground: return true;
    case Type::Kind::Star: return is_data_type(t->dom);
    case Type::Kind::Arrow: return false;
  }
  return false;
}

inline int type_depth(const TypeP& t) {
  switch (t->kind) {
    case Type::Kind::Ground: return 0;
    case Type::Kind::Star: return 1 + type_depth(t->dom);
    case Type::Kind::Arrow: return 1 + std::max(type_depth(t->dom), type_depth(t->cod));
  }
  return 0;
}

inline std::string type_str(const TypeP& t) {
  switch (t->kind) {
    case Type::Kind::Ground: return "N";
    case Type::Kind::Star: return "(* " + type_str(t->dom) + ")";
    case Type::Kind::Arrow: return "(-> " + type_str(t->dom) + " " + type_str(t->cod) + ")";
  }
  return "?";
}

}  // namespace nsdial

#endif
