#include "garrow/bi.hpp"

#include "garrow/error.hpp"
#include "garrow/eval.hpp"
#include "garrow/prims.hpp"

namespace garrow {

namespace {

using Kind = GaTerm::Kind;
using Fn = std::function<Value(const Value&)>;

Value pair_of(const Value& v, std::string_view who) {
  Value w = deep_force(v);
  if (!w.is(Value::Kind::Pair)) {
    fail(ErrorCode::ShapeMismatch, std::string(who) + " expects a pair, got " + w.to_string());
  }
  return w;
}

Fn missing(const GaTerm& t) {
  std::string who(head_name(t.kind()));
  if (t.is(Kind::Prim)) who += " " + t.name();
  return [who](const Value&) -> Value {
    fail(ErrorCode::NonInvertible, who + " has no backward direction");
  };
}

Fn forward_by_eval(const GaTerm& t) {
  return [t](const Value& v) { return eval_interpret(t, v); };
}

BiMorphism both(Fn f, Fn b) { return {std::move(f), std::move(b)}; }

Fn swap_fn() {
  return [](const Value& v) {
    Value p = pair_of(v, "swap");
    return Value::Pair(p.right(), p.left());
  };
}

Fn assoc_fn() {
  return [](const Value& v) {
    Value p = pair_of(v, "assoc");
    Value l = pair_of(p.left(), "assoc");
    return Value::Pair(l.left(), Value::Pair(l.right(), p.right()));
  };
}

Fn unassoc_fn() {
  return [](const Value& v) {
    Value p = pair_of(v, "unassoc");
    Value r = pair_of(p.right(), "unassoc");
    return Value::Pair(Value::Pair(p.left(), r.left()), r.right());
  };
}

Fn cancel_l_fn() {
  return [](const Value& v) { return pair_of(v, "cancell").right(); };
}
Fn cancel_r_fn() {
  return [](const Value& v) { return pair_of(v, "cancelr").left(); };
}
Fn uncancel_l_fn() {
  return [](const Value& v) { return Value::Pair(Value::Unit(), deep_force(v)); };
}
Fn uncancel_r_fn() {
  return [](const Value& v) { return Value::Pair(deep_force(v), Value::Unit()); };
}

Fn on_first(Fn f) {
  return [f](const Value& v) {
    Value p = pair_of(v, "first");
    return Value::Pair(f(p.left()), p.right());
  };
}

Fn on_second(Fn f) {
  return [f](const Value& v) {
    Value p = pair_of(v, "second");
    return Value::Pair(p.left(), f(p.right()));
  };
}

Fn then(Fn f, Fn g) {
  return [f, g](const Value& v) { return g(f(v)); };
}

}  // namespace

BiMorphism bi_interpret(const GaTerm& t) {
  switch (t.kind()) {
    case Kind::Id: {
      Fn same = [](const Value& v) { return deep_force(v); };
      return both(same, same);
    }
    case Kind::Comp: {
      BiMorphism f = bi_interpret(t.kid(0));
      BiMorphism g = bi_interpret(t.kid(1));
      return both(then(f.fwd, g.fwd), then(g.bwd, f.bwd));
    }
    case Kind::First: {
      BiMorphism f = bi_interpret(t.kid(0));
      return both(on_first(f.fwd), on_first(f.bwd));
    }
    case Kind::Second: {
      BiMorphism f = bi_interpret(t.kid(0));
      return both(on_second(f.fwd), on_second(f.bwd));
    }
    case Kind::CancelL: return both(cancel_l_fn(), uncancel_l_fn());
    case Kind::CancelR: return both(cancel_r_fn(), uncancel_r_fn());
    case Kind::UncancelL: return both(uncancel_l_fn(), cancel_l_fn());
    case Kind::UncancelR: return both(uncancel_r_fn(), cancel_r_fn());
    case Kind::Assoc: return both(assoc_fn(), unassoc_fn());
    case Kind::Unassoc: return both(unassoc_fn(), assoc_fn());
    case Kind::Swap: return both(swap_fn(), swap_fn());
    case Kind::Copy:
      return both(
          [](const Value& v) {
            Value w = deep_force(v);
            return Value::Pair(w, w);
          },
          [](const Value& v) {
            Value p = pair_of(v, "copy");
            if (!structurally_equal(p.left(), p.right())) {
              fail(ErrorCode::NonInvertible, "copy backward on unequal components " + p.to_string());
            }
            return p.left();
          });
    case Kind::Prim: {
      std::string name = t.name();
      Fn fwd = [name](const Value& v) { return deep_force(apply_prim(name, v)); };
      const PrimInfo* info = find_prim(name);
      if (info && info->inverse) {
        std::string inv = *info->inverse;
        return both(fwd, [inv](const Value& v) { return deep_force(apply_prim(inv, v)); });
      }
      return both(fwd, missing(t));
    }
    default: return both(forward_by_eval(t), missing(t));
  }
}

BiMorphism bi_inv(const BiMorphism& m) { return {m.bwd, m.fwd}; }

bool in_invertible_fragment(const GaTerm& t) {
  switch (t.kind()) {
    case Kind::Id:
    case Kind::CancelL:
    case Kind::CancelR:
    case Kind::UncancelL:
    case Kind::UncancelR:
    case Kind::Assoc:
    case Kind::Unassoc:
    case Kind::Swap:
    case Kind::Copy: return true;
    case Kind::Comp: return in_invertible_fragment(t.kid(0)) && in_invertible_fragment(t.kid(1));
    case Kind::First:
    case Kind::Second: return in_invertible_fragment(t.kid(0));
    case Kind::Prim: {
      const PrimInfo* info = find_prim(t.name());
      return info && info->inverse.has_value();
    }
    default: return false;
  }
}

}  // namespace garrow
