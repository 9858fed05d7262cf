#include "garrow/sample.hpp"

#include "garrow/error.hpp"
#include "garrow/eval.hpp"

namespace garrow {

namespace {

ShapeTree L(GuestType t) { return ShapeTree::Leaf(std::move(t)); }

GaTerm closure_body(const GuestType& x, const GuestType& y, Rng& rng, const SampleOptions& opts) {
  ShapeTree dom = ShapeTree::Branch(ShapeTree::Empty(), L(x));
  if (x == y) return ga::cancel_l(L(x));
  return ga::comp(ga::drop(dom), random_constant_term(y, rng, opts));
}

}  // namespace

GaTerm random_constant_term(const GuestType& t, Rng& rng, const SampleOptions& opts) {
  switch (t.kind()) {
    case GuestType::Kind::Int:
    case GuestType::Kind::Bool:
    case GuestType::Kind::Unit: {
      Value v = random_value(t, rng, opts);
      Literal lit = t.is(GuestType::Kind::Int)    ? Literal::Int(v.as_int())
                    : t.is(GuestType::Kind::Bool) ? Literal::Bool(v.as_bool())
                                                  : Literal::Unit();
      return ga::constant(lit, t);
    }
    case GuestType::Kind::Prod: {
      ShapeTree e = ShapeTree::Empty();
      GaTerm l = random_constant_term(t.left(), rng, opts);
      GaTerm r = random_constant_term(t.right(), rng, opts);
      return ga::chain({ga::copy(e), ga::first(l, e), ga::second(r, L(t.left())),
                        ga::prim("pair", ShapeTree::Branch(L(t.left()), L(t.right())), L(t))},
                       e);
    }
    case GuestType::Kind::Sum: {
      if (rng() & 1) return ga::comp(random_constant_term(t.left(), rng, opts), ga::inj_l(t.left(), t.right()));
      return ga::comp(random_constant_term(t.right(), rng, opts), ga::inj_r(t.left(), t.right()));
    }
    case GuestType::Kind::Exp:
      return ga::curry_r(closure_body(t.left(), t.right(), rng, opts));
  }
  fail(ErrorCode::Internal, "unhandled guest type");
}

Value random_value(const GuestType& t, Rng& rng, const SampleOptions& opts) {
  switch (t.kind()) {
    case GuestType::Kind::Int:
      return Value::Int(std::uniform_int_distribution<std::int64_t>(opts.int_min, opts.int_max)(rng));
    case GuestType::Kind::Bool: return Value::Bool(rng() & 1);
    case GuestType::Kind::Unit: return Value::Unit();
    case GuestType::Kind::Prod: {
      Value l = random_value(t.left(), rng, opts);
      return Value::Pair(l, random_value(t.right(), rng, opts));
    }
    case GuestType::Kind::Sum:
      if (rng() & 1) return Value::Inl(random_value(t.left(), rng, opts));
      return Value::Inr(random_value(t.right(), rng, opts));
    case GuestType::Kind::Exp:
      return Value::Clos(closure_body(t.left(), t.right(), rng, opts), Value::Unit());
  }
  fail(ErrorCode::Internal, "unhandled guest type");
}

Value random_value(const ShapeTree& s, Rng& rng, const SampleOptions& opts) {
  switch (s.kind()) {
    case ShapeTree::Kind::Empty: return Value::Unit();
    case ShapeTree::Kind::Leaf: return random_value(s.type(), rng, opts);
    case ShapeTree::Kind::Branch: {
      Value l = random_value(s.left(), rng, opts);
      return Value::Pair(l, random_value(s.right(), rng, opts));
    }
  }
  fail(ErrorCode::Internal, "unhandled shape");
}

bool equal_at(const GuestType& t, const Value& a0, const Value& b0, Rng& rng, const SampleOptions& opts) {
  Value a = a0.force();
  Value b = b0.force();
  switch (t.kind()) {
    case GuestType::Kind::Prod:
      return a.is(Value::Kind::Pair) && b.is(Value::Kind::Pair) &&
             equal_at(t.left(), a.left(), b.left(), rng, opts) &&
             equal_at(t.right(), a.right(), b.right(), rng, opts);
    case GuestType::Kind::Sum:
      if (a.kind() != b.kind()) return false;
      if (a.is(Value::Kind::Inl)) return equal_at(t.left(), a.payload(), b.payload(), rng, opts);
      if (a.is(Value::Kind::Inr)) return equal_at(t.right(), a.payload(), b.payload(), rng, opts);
      return false;
    case GuestType::Kind::Exp: {
      if (!a.is(Value::Kind::Clos) || !b.is(Value::Kind::Clos)) return structurally_equal(a, b);
      for (int i = 0; i < opts.closure_samples; ++i) {
        Value arg = random_value(t.left(), rng, opts);
        if (!equal_at(t.right(), apply_guest_closure(a, arg), apply_guest_closure(b, arg), rng, opts)) {
          return false;
        }
      }
      return true;
    }
    default: return structurally_equal(a, b);
  }
}

bool equal_at(const ShapeTree& s, const Value& a0, const Value& b0, Rng& rng, const SampleOptions& opts) {
  switch (s.kind()) {
    case ShapeTree::Kind::Empty: return structurally_equal(a0, b0);
    case ShapeTree::Kind::Leaf: return equal_at(s.type(), a0, b0, rng, opts);
    case ShapeTree::Kind::Branch: {
      Value a = a0.force();
      Value b = b0.force();
      return a.is(Value::Kind::Pair) && b.is(Value::Kind::Pair) &&
             equal_at(s.left(), a.left(), b.left(), rng, opts) &&
             equal_at(s.right(), a.right(), b.right(), rng, opts);
    }
  }
  return false;
}

}  // namespace garrow
