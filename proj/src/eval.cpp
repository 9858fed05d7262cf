#include "garrow/eval.hpp"

#include <memory>

#include "garrow/error.hpp"
#include "garrow/prims.hpp"
#include "garrow/stack.hpp"

namespace garrow {

namespace {

using Kind = GaTerm::Kind;

struct Budget {
  std::int64_t fuel;
  std::int64_t max_depth;
  std::int64_t depth = 0;
  // Frames run their kid immediately instead of suspending it.
  bool strict = false;

  void tick() {
    if (--fuel < 0) fail(ErrorCode::FuelExhausted, "evaluation fuel exhausted");
  }
};

class DepthGuard {
 public:
  explicit DepthGuard(Budget& b) : b_(b) {
    if (++b_.depth > b_.max_depth) {
      --b_.depth;
      fail(ErrorCode::FuelExhausted, "evaluation nesting exceeds " + std::to_string(b_.max_depth));
    }
  }
  ~DepthGuard() { --b_.depth; }
  DepthGuard(const DepthGuard&) = delete;
  DepthGuard& operator=(const DepthGuard&) = delete;

 private:
  Budget& b_;
};

const Value& expect_pair(const Value& v, const GaTerm& at) {
  const Value& w = v.whnf();
  if (!w.is(Value::Kind::Pair)) {
    fail(ErrorCode::ShapeMismatch, std::string(head_name(at.kind())) + " expects a pair, got " + w.to_string());
  }
  return w;
}

Value run(const std::shared_ptr<Budget>& b, const GaTerm& t, const Value& v);

Value suspend(const std::shared_ptr<Budget>& b, const GaTerm& t, const Value& v) {
  return Value::Thunk([b, t, v] { return run(b, t, v); });
}

Value apply_clos(const std::shared_ptr<Budget>& b, const Value& f, const Value& arg) {
  Value clos = f.force();
  if (!clos.is(Value::Kind::Clos)) {
    fail(ErrorCode::ShapeMismatch, "applyr expects a guest closure, got " + clos.to_string());
  }
  b->tick();
  return run(b, clos.clos_body(), Value::Pair(clos.clos_env(), arg));
}

Value run(const std::shared_ptr<Budget>& b, const GaTerm& t, const Value& v) {
  DepthGuard guard(*b);
  switch (t.kind()) {
    case Kind::Id: return v;
    case Kind::Comp: return run(b, t.kid(1), run(b, t.kid(0), v));
    case Kind::First: {
      const Value& p = expect_pair(v, t);
      Value l = b->strict ? run(b, t.kid(0), p.left()) : suspend(b, t.kid(0), p.left());
      return Value::Pair(l, p.right());
    }
    case Kind::Second: {
      const Value& p = expect_pair(v, t);
      Value r = b->strict ? run(b, t.kid(0), p.right()) : suspend(b, t.kid(0), p.right());
      return Value::Pair(p.left(), r);
    }
    case Kind::CancelL: return expect_pair(v, t).right();
    case Kind::CancelR: return expect_pair(v, t).left();
    case Kind::UncancelL: return Value::Pair(Value::Unit(), v);
    case Kind::UncancelR: return Value::Pair(v, Value::Unit());
    case Kind::Assoc: {
      const Value& p = expect_pair(v, t);
      const Value& l = expect_pair(p.left(), t);
      return Value::Pair(l.left(), Value::Pair(l.right(), p.right()));
    }
    case Kind::Unassoc: {
      const Value& p = expect_pair(v, t);
      const Value& r = expect_pair(p.right(), t);
      return Value::Pair(Value::Pair(p.left(), r.left()), r.right());
    }
    case Kind::Copy: return Value::Pair(v, v);
    case Kind::Drop: return Value::Unit();
    case Kind::Swap: {
      const Value& p = expect_pair(v, t);
      return Value::Pair(p.right(), p.left());
    }
    case Kind::Constant: return Value::FromLiteral(t.literal());
    case Kind::Prim: return apply_prim(t.name(), v);
    case Kind::CurryR: return Value::Clos(t.kid(0), v);
    case Kind::ApplyR: {
      const Value& p = expect_pair(v, t);
      return apply_clos(b, p.right(), p.left());
    }
    case Kind::LoopR: {
      // The fed-back component is read from the body's own output. A read
      // that needs itself to make progress has no fixpoint above bottom and
      // is reported as fuel exhaustion.
      // TODO: the knot is a reference cycle, so a loop's values are never
      // reclaimed. Needs a cycle-aware release.
      auto knot = std::make_shared<Value>(Value::Unit());
      Value feedback = Value::Thunk([b, knot] {
        b->tick();
        Value out = knot->force();
        if (!out.is(Value::Kind::Pair)) {
          fail(ErrorCode::ShapeMismatch, "loopr body must produce a pair, got " + out.to_string());
        }
        return out.right();
      });
      GaTerm body = t.kid(0);
      Value a = v;
      *knot = Value::Thunk([b, body, a, feedback] { return run(b, body, Value::Pair(a, feedback)); });
      Value out = Value::Thunk([knot] { return knot->force().left(); });
      return out;
    }
    case Kind::Merge: {
      Value w = v.force();
      if (!w.is(Value::Kind::Inl) && !w.is(Value::Kind::Inr)) {
        fail(ErrorCode::ShapeMismatch, "merge expects an injection, got " + w.to_string());
      }
      return w.payload();
    }
    case Kind::Never: fail(ErrorCode::Unreachable, "never evaluated");
    case Kind::InjL: return Value::Inl(v);
    case Kind::InjR: return Value::Inr(v);
  }
  fail(ErrorCode::Internal, "unhandled combinator in eval");
}

}  // namespace

Value eval_interpret(const GaTerm& t, const Value& input, const EvalOptions& opts) {
  Signature sig = ga_type_of(t);
  if (!conforms(input, sig.dom)) {
    fail(ErrorCode::ShapeMismatch, "input " + input.to_string() + " does not conform to " + sig.dom.to_string());
  }
  auto b = std::make_shared<Budget>(Budget{opts.fuel, opts.max_depth});
  // conforms() has forced the whole input, so a wiring term cannot observe
  // the difference between lazy and strict frames.
  b->strict = t.is_wiring();
  Value out = Value::Unit();
  with_large_stack([&] { out = deep_force(run(b, t, input)); });
  return out;
}

Value apply_guest_closure(const Value& clos, const Value& arg, const EvalOptions& opts) {
  auto b = std::make_shared<Budget>(Budget{opts.fuel, opts.max_depth});
  Value out = Value::Unit();
  with_large_stack([&] { out = deep_force(apply_clos(b, clos, arg)); });
  return out;
}

}  // namespace garrow
