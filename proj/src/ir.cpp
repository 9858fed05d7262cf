#include "garrow/ir.hpp"

#include "garrow/error.hpp"
#include "node_pool.hpp"

namespace garrow {

using Kind = GaTerm::Kind;
using SK = ShapeTree::Kind;

std::string_view head_name(Kind k) {
  switch (k) {
    case Kind::Id: return "id";
    case Kind::Comp: return "comp";
    case Kind::First: return "first";
    case Kind::Second: return "second";
    case Kind::CancelL: return "cancell";
    case Kind::CancelR: return "cancelr";
    case Kind::UncancelL: return "uncancell";
    case Kind::UncancelR: return "uncancelr";
    case Kind::Assoc: return "assoc";
    case Kind::Unassoc: return "unassoc";
    case Kind::Copy: return "copy";
    case Kind::Drop: return "drop";
    case Kind::Swap: return "swap";
    case Kind::Constant: return "constant";
    case Kind::Prim: return "prim";
    case Kind::CurryR: return "curryr";
    case Kind::ApplyR: return "applyr";
    case Kind::LoopR: return "loopr";
    case Kind::Merge: return "merge";
    case Kind::Never: return "never";
    case Kind::InjL: return "inl";
    case Kind::InjR: return "inr";
  }
  return "?";
}

bool operator==(const GaTerm& a, const GaTerm& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.kids == y.kids && x.shapes == y.shapes &&
         x.types == y.types && x.lit == y.lit && x.name == y.name;
}

std::size_t node_count(const GaTerm& t) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < t.kid_count(); ++i) n += node_count(t.kid(i));
  return n;
}

namespace ga {

GaTerm finish(GaTerm::Node node);

namespace {

GaTerm make(Kind k, std::vector<GaTerm> kids = {}, std::vector<ShapeTree> shapes = {},
            std::vector<GuestType> types = {}) {
  return finish(GaTerm::Node{k, std::move(kids), std::move(shapes), std::move(types), Literal::Unit(), {}, std::nullopt, false});
}

}  // namespace

GaTerm id(ShapeTree s) { return make(Kind::Id, {}, {std::move(s)}); }
GaTerm comp(GaTerm f, GaTerm g) { return make(Kind::Comp, {std::move(f), std::move(g)}); }
GaTerm first(GaTerm f, ShapeTree z) { return make(Kind::First, {std::move(f)}, {std::move(z)}); }
GaTerm second(GaTerm f, ShapeTree z) { return make(Kind::Second, {std::move(f)}, {std::move(z)}); }
GaTerm cancel_l(ShapeTree x) { return make(Kind::CancelL, {}, {std::move(x)}); }
GaTerm cancel_r(ShapeTree x) { return make(Kind::CancelR, {}, {std::move(x)}); }
GaTerm uncancel_l(ShapeTree x) { return make(Kind::UncancelL, {}, {std::move(x)}); }
GaTerm uncancel_r(ShapeTree x) { return make(Kind::UncancelR, {}, {std::move(x)}); }
GaTerm assoc(ShapeTree x, ShapeTree y, ShapeTree z) {
  return make(Kind::Assoc, {}, {std::move(x), std::move(y), std::move(z)});
}
GaTerm unassoc(ShapeTree x, ShapeTree y, ShapeTree z) {
  return make(Kind::Unassoc, {}, {std::move(x), std::move(y), std::move(z)});
}
GaTerm copy(ShapeTree x) { return make(Kind::Copy, {}, {std::move(x)}); }
GaTerm drop(ShapeTree x) { return make(Kind::Drop, {}, {std::move(x)}); }
GaTerm swap(ShapeTree x, ShapeTree y) { return make(Kind::Swap, {}, {std::move(x), std::move(y)}); }

GaTerm constant(Literal lit, GuestType t) {
  return finish(GaTerm::Node{Kind::Constant, {}, {}, {std::move(t)}, lit, {}, std::nullopt, false});
}

GaTerm prim(std::string name, ShapeTree ins, ShapeTree out) {
  return finish(GaTerm::Node{Kind::Prim, {}, {std::move(ins), std::move(out)}, {}, Literal::Unit(), std::move(name),
                             std::nullopt, false});
}

GaTerm curry_r(GaTerm f) { return make(Kind::CurryR, {std::move(f)}); }
GaTerm apply_r(GuestType x, GuestType y) { return make(Kind::ApplyR, {}, {}, {std::move(x), std::move(y)}); }
GaTerm loop_r(GaTerm f, ShapeTree z) { return make(Kind::LoopR, {std::move(f)}, {std::move(z)}); }
GaTerm merge(GuestType x) { return make(Kind::Merge, {}, {}, {std::move(x)}); }
GaTerm never(GuestType x) { return make(Kind::Never, {}, {}, {std::move(x)}); }
GaTerm inj_l(GuestType x, GuestType y) { return make(Kind::InjL, {}, {}, {std::move(x), std::move(y)}); }
GaTerm inj_r(GuestType x, GuestType y) { return make(Kind::InjR, {}, {}, {std::move(x), std::move(y)}); }

GaTerm chain(const std::vector<GaTerm>& steps, const ShapeTree& dom) {
  if (steps.empty()) return id(dom);
  GaTerm acc = steps.back();
  for (std::size_t i = steps.size() - 1; i-- > 0;) acc = comp(steps[i], acc);
  return acc;
}

}  // namespace ga

namespace {

using Path = std::vector<const char*>;

std::string render_path(const Path& path) {
  std::string out = "root";
  for (const char* p : path) out += std::string("/") + p;
  return out;
}

[[noreturn]] void ill_typed(const Path& path, const std::string& what, const ShapeTree& expected,
                            const ShapeTree& actual) {
  fail(ErrorCode::IllTyped, "at " + render_path(path) + ": " + what + ": expected " +
                                expected.to_string() + ", actual " + actual.to_string());
}

ShapeTree B(ShapeTree l, ShapeTree r) { return ShapeTree::Branch(std::move(l), std::move(r)); }
ShapeTree L(GuestType t) { return ShapeTree::Leaf(std::move(t)); }

Signature type_of(const GaTerm& t, Path& path) {
  const ShapeTree E = ShapeTree::Empty();
  auto sub = [&](std::size_t i, const char* tag) {
    if (const auto& cached = t.kid(i).signature()) return *cached;
    path.push_back(tag);
    Signature s = type_of(t.kid(i), path);
    path.pop_back();
    return s;
  };
  switch (t.kind()) {
    case Kind::Id: return {t.shape(0), t.shape(0)};
    case Kind::Comp: {
      Signature f = sub(0, "comp.0");
      Signature g = sub(1, "comp.1");
      if (f.cod != g.dom) ill_typed(path, "composition", f.cod, g.dom);
      return {f.dom, g.cod};
    }
    case Kind::First: {
      Signature f = sub(0, "first");
      return {B(f.dom, t.shape(0)), B(f.cod, t.shape(0))};
    }
    case Kind::Second: {
      Signature f = sub(0, "second");
      return {B(t.shape(0), f.dom), B(t.shape(0), f.cod)};
    }
    case Kind::CancelL: return {B(E, t.shape(0)), t.shape(0)};
    case Kind::CancelR: return {B(t.shape(0), E), t.shape(0)};
    case Kind::UncancelL: return {t.shape(0), B(E, t.shape(0))};
    case Kind::UncancelR: return {t.shape(0), B(t.shape(0), E)};
    case Kind::Assoc:
      return {B(B(t.shape(0), t.shape(1)), t.shape(2)), B(t.shape(0), B(t.shape(1), t.shape(2)))};
    case Kind::Unassoc:
      return {B(t.shape(0), B(t.shape(1), t.shape(2))), B(B(t.shape(0), t.shape(1)), t.shape(2))};
    case Kind::Copy: return {t.shape(0), B(t.shape(0), t.shape(0))};
    case Kind::Drop: return {t.shape(0), E};
    case Kind::Swap: return {B(t.shape(0), t.shape(1)), B(t.shape(1), t.shape(0))};
    case Kind::Constant:
      if (t.literal().type() != t.guest(0)) {
        ill_typed(path, "constant literal", L(t.guest(0)), L(t.literal().type()));
      }
      return {E, L(t.guest(0))};
    case Kind::Prim: return {t.shape(0), t.shape(1)};
    case Kind::CurryR: {
      Signature f = sub(0, "curryr");
      if (!f.dom.is_branch() || !f.dom.right().is_leaf()) {
        ill_typed(path, "curryr body domain", B(f.dom.is_branch() ? f.dom.left() : E,
                                                 L(GuestType::Unit())), f.dom);
      }
      if (!f.cod.is_leaf()) ill_typed(path, "curryr body codomain", L(GuestType::Unit()), f.cod);
      return {f.dom.left(), L(GuestType::Exp(f.dom.right().type(), f.cod.type()))};
    }
    case Kind::ApplyR:
      return {B(L(t.guest(0)), L(GuestType::Exp(t.guest(0), t.guest(1)))), L(t.guest(1))};
    case Kind::LoopR: {
      Signature f = sub(0, "loopr");
      const ShapeTree& z = t.shape(0);
      if (!f.dom.is_branch() || f.dom.right() != z) {
        ill_typed(path, "loopr body domain", B(f.dom.is_branch() ? f.dom.left() : E, z), f.dom);
      }
      if (!f.cod.is_branch() || f.cod.right() != z) {
        ill_typed(path, "loopr body codomain", B(f.cod.is_branch() ? f.cod.left() : E, z), f.cod);
      }
      return {f.dom.left(), f.cod.left()};
    }
    case Kind::Merge: return {L(GuestType::Sum(t.guest(0), t.guest(0))), L(t.guest(0))};
    case Kind::Never: return {E, L(t.guest(0))};
    case Kind::InjL: return {L(t.guest(0)), L(GuestType::Sum(t.guest(0), t.guest(1)))};
    case Kind::InjR: return {L(t.guest(1)), L(GuestType::Sum(t.guest(0), t.guest(1)))};
  }
  fail(ErrorCode::Internal, "unknown combinator");
}

}  // namespace

Signature ga_type_of(const GaTerm& t) {
  if (const auto& cached = t.signature()) return *cached;
  Path path;
  return type_of(t, path);
}

namespace ga {

// Kids are finished before their parents, so this costs one rule per node.
GaTerm finish(GaTerm::Node node) {
  auto owned = detail::make_pooled<GaTerm::Node>(std::move(node));
  switch (owned->kind) {
    case Kind::Prim: case Kind::CurryR: case Kind::ApplyR: case Kind::LoopR: case Kind::Merge: case Kind::Never:
      owned->wiring = false;
      break;
    default:
      owned->wiring = true;
      for (const auto& k : owned->kids) owned->wiring = owned->wiring && k.is_wiring();
  }
  GaTerm term(owned);
  try {
    Path path;
    owned->sig = type_of(term, path);
  } catch (const Error&) {
    // Left unset; ga_type_of reports the failure with its path.
  }
  return term;
}

}  // namespace ga

namespace {

void flatten_comp(const GaTerm& t, std::vector<GaTerm>& out) {
  if (t.is(Kind::Comp)) {
    flatten_comp(t.kid(0), out);
    flatten_comp(t.kid(1), out);
  } else {
    out.push_back(t);
  }
}

bool inverse_pair(const GaTerm& a, const GaTerm& b) {
  auto same3 = [&] {
    return a.shape(0) == b.shape(0) && a.shape(1) == b.shape(1) && a.shape(2) == b.shape(2);
  };
  switch (a.kind()) {
    case Kind::CancelL: return b.is(Kind::UncancelL) && a.shape(0) == b.shape(0);
    case Kind::UncancelL: return b.is(Kind::CancelL) && a.shape(0) == b.shape(0);
    case Kind::CancelR: return b.is(Kind::UncancelR) && a.shape(0) == b.shape(0);
    case Kind::UncancelR: return b.is(Kind::CancelR) && a.shape(0) == b.shape(0);
    case Kind::Assoc: return b.is(Kind::Unassoc) && same3();
    case Kind::Unassoc: return b.is(Kind::Assoc) && same3();
    case Kind::Swap:
      return b.is(Kind::Swap) && a.shape(0) == b.shape(1) && a.shape(1) == b.shape(0);
    default: return false;
  }
}

GaTerm norm(const GaTerm& t, const NormalizeOptions& opts) {
  switch (t.kind()) {
    case Kind::Comp: {
      std::vector<GaTerm> raw;
      flatten_comp(t, raw);
      const ShapeTree dom = ga_type_of(raw.front()).dom;
      std::vector<GaTerm> items;
      for (const auto& r : raw) flatten_comp(norm(r, opts), items);
      std::vector<GaTerm> stack;
      for (auto& item : items) {
        if (item.is(Kind::Id)) continue;
        if (!stack.empty() && inverse_pair(stack.back(), item)) {
          stack.pop_back();
          continue;
        }
        stack.push_back(std::move(item));
      }
      return ga::chain(stack, dom);
    }
    case Kind::First:
    case Kind::Second: {
      GaTerm f = norm(t.kid(0), opts);
      const bool is_first = t.is(Kind::First);
      if (opts.collapse_framed_identity && f.is(Kind::Id)) {
        return ga::id(is_first ? ShapeTree::Branch(f.shape(0), t.shape(0))
                               : ShapeTree::Branch(t.shape(0), f.shape(0)));
      }
      if (f.same_node(t.kid(0))) return t;
      return is_first ? ga::first(std::move(f), t.shape(0)) : ga::second(std::move(f), t.shape(0));
    }
    case Kind::CurryR: {
      GaTerm f = norm(t.kid(0), opts);
      return f.same_node(t.kid(0)) ? t : ga::curry_r(std::move(f));
    }
    case Kind::LoopR: {
      GaTerm f = norm(t.kid(0), opts);
      return f.same_node(t.kid(0)) ? t : ga::loop_r(std::move(f), t.shape(0));
    }
    default: return t;
  }
}

}  // namespace

GaTerm normalize(const GaTerm& t, NormalizeOptions opts) {
  ga_type_of(t);
  return norm(t, opts);
}

}  // namespace garrow
