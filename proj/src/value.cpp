#include "garrow/value.hpp"

#include <optional>

#include "garrow/error.hpp"
#include "node_pool.hpp"

namespace garrow {

struct Value::ThunkCell {
  enum class State { Pending, Forcing, Done };
  State state = State::Pending;
  Suspension compute;
  std::optional<Value> result;
};

// Payload of the rarer kinds, kept out of line so pairs and scalars stay small.
struct Value::Extra {
  std::optional<GaTerm> body;
  std::shared_ptr<const CodeObject> code;
  Value::HostFunction fn;
  std::string label;
};

namespace {

using RepBlocks = detail::FreeList<detail::size_class(sizeof(Value::Rep))>;

Value::Rep* rep(Value::Kind k) {
  auto* r = new (RepBlocks::take()) Value::Rep();
  r->kind = k;
  return r;
}

}  // namespace

void Value::destroy(Rep* r) {
  r->~Rep();
  RepBlocks::give(r);
}

void Value::wrong_kind(const char* want) const {
  fail(ErrorCode::ShapeMismatch, std::string("expected ") + want + ", got " + to_string());
}

Value Value::Int(std::int64_t v) {
  auto r = rep(Kind::Int);
  r->i = v;
  return Value(r);
}

Value Value::Bool(bool v) {
  auto make = [](bool b) {
    auto r = rep(Kind::Bool);
    r->b = b;
    return Value(r);
  };
  static const Value yes = make(true);
  static const Value no = make(false);
  return v ? yes : no;
}

Value Value::Unit() {
  static const Value unit(rep(Kind::Unit));
  return unit;
}

Value Value::Pair(Value l, Value r) {
  auto p = rep(Kind::Pair);
  p->k0 = std::move(l);
  p->k1 = std::move(r);
  return Value(p);
}

Value Value::Inl(Value v) {
  auto p = rep(Kind::Inl);
  p->k0 = std::move(v);
  return Value(p);
}

Value Value::Inr(Value v) {
  auto p = rep(Kind::Inr);
  p->k0 = std::move(v);
  return Value(p);
}

Value Value::Clos(GaTerm body, Value env) {
  auto p = rep(Kind::Clos);
  p->extra = std::make_unique<Value::Extra>();
  p->extra->body = std::move(body);
  p->k0 = std::move(env);
  return Value(p);
}

Value Value::Code(std::shared_ptr<const CodeObject> code) {
  auto p = rep(Kind::Code);
  p->extra = std::make_unique<Value::Extra>();
  p->extra->code = std::move(code);
  return Value(p);
}

Value Value::HostFn(HostFunction fn, std::string label) {
  auto p = rep(Kind::HostFn);
  p->extra = std::make_unique<Value::Extra>();
  p->extra->fn = std::move(fn);
  p->extra->label = std::move(label);
  return Value(p);
}

Value Value::Thunk(Suspension compute) {
  auto p = rep(Kind::Thunk);
  p->thunk = std::make_unique<ThunkCell>();
  p->thunk->compute = std::move(compute);
  return Value(p);
}

Value Value::FromLiteral(const Literal& lit) {
  switch (lit.kind()) {
    case Literal::Kind::Int: return Int(lit.as_int());
    case Literal::Kind::Bool: return Bool(lit.as_bool());
    case Literal::Kind::Unit: return Unit();
  }
  return Unit();
}

std::int64_t Value::as_int() const {
  const Value& v = whnf();
  if (!v.is(Kind::Int)) v.wrong_kind("an integer");
  return v.rep_->i;
}

bool Value::as_bool() const {
  const Value& v = whnf();
  if (!v.is(Kind::Bool)) v.wrong_kind("a boolean");
  return v.rep_->b;
}

const Value& Value::payload() const {
  if (!is(Kind::Inl) && !is(Kind::Inr)) wrong_kind("an injection");
  return rep_->k0;
}

const GaTerm& Value::clos_body() const {
  if (!is(Kind::Clos)) wrong_kind("a guest closure");
  return *rep_->extra->body;
}

const Value& Value::clos_env() const {
  if (!is(Kind::Clos)) wrong_kind("a guest closure");
  return rep_->k0;
}

const std::shared_ptr<const CodeObject>& Value::code() const {
  if (!is(Kind::Code)) fail(ErrorCode::SpliceNotCode, "expected a code value, got " + to_string());
  return rep_->extra->code;
}

Value Value::call(const Value& arg) const {
  Value f = force();
  if (!f.is(Kind::HostFn)) fail(ErrorCode::RuntimeError, "applying a non-function " + f.to_string());
  return f.rep_->extra->fn(arg);
}

Value Value::force() const {
  if (!is(Kind::Thunk)) return *this;
  ThunkCell& cell = *rep_->thunk;
  switch (cell.state) {
    case ThunkCell::State::Done: return cell.result->force();
    case ThunkCell::State::Forcing:
      fail(ErrorCode::FuelExhausted, "recursive value depends on itself (no fixpoint above bottom)");
    case ThunkCell::State::Pending: break;
  }
  cell.state = ThunkCell::State::Forcing;
  try {
    Value out = cell.compute().force();
    cell.result = out;
    cell.state = ThunkCell::State::Done;
    cell.compute = nullptr;
    return out;
  } catch (...) {
    cell.state = ThunkCell::State::Pending;
    throw;
  }
}

const Value& Value::whnf_thunk() const {
  const ThunkCell& cell = *rep_->thunk;
  if (cell.state != ThunkCell::State::Done) force();
  return cell.result->whnf();
}

std::string Value::to_string() const {
  switch (kind()) {
    case Kind::Int: return std::to_string(rep_->i);
    case Kind::Bool: return rep_->b ? "true" : "false";
    case Kind::Unit: return "()";
    case Kind::Pair: return "(" + left().to_string() + ", " + right().to_string() + ")";
    case Kind::Inl: return "inl " + payload().to_string();
    case Kind::Inr: return "inr " + payload().to_string();
    case Kind::Clos: return "<closure>";
    case Kind::Code: return "<code " + rep_->extra->code->describe() + ">";
    case Kind::HostFn: return rep_->extra->label;
    case Kind::Thunk:
      if (rep_->thunk->state == ThunkCell::State::Done) return rep_->thunk->result->to_string();
      return "<thunk>";
  }
  return "?";
}

Value deep_force(const Value& v) {
  const Value& w = v.whnf();
  switch (w.kind()) {
    case Value::Kind::Pair: {
      Value l = deep_force(w.left());
      Value r = deep_force(w.right());
      if (l.same_rep(w.left()) && r.same_rep(w.right())) return w;
      return Value::Pair(std::move(l), std::move(r));
    }
    case Value::Kind::Inl: return Value::Inl(deep_force(w.payload()));
    case Value::Kind::Inr: return Value::Inr(deep_force(w.payload()));
    default: return w;
  }
}

bool structurally_equal(const Value& a0, const Value& b0) {
  const Value& a = a0.whnf();
  const Value& b = b0.whnf();
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Value::Kind::Int: return a.as_int() == b.as_int();
    case Value::Kind::Bool: return a.as_bool() == b.as_bool();
    case Value::Kind::Unit: return true;
    case Value::Kind::Pair:
      return structurally_equal(a.left(), b.left()) && structurally_equal(a.right(), b.right());
    case Value::Kind::Inl:
    case Value::Kind::Inr: return structurally_equal(a.payload(), b.payload());
    case Value::Kind::Clos:
      return a.clos_body() == b.clos_body() && structurally_equal(a.clos_env(), b.clos_env());
    case Value::Kind::Code: return a.code() == b.code();
    case Value::Kind::HostFn:
    case Value::Kind::Thunk: return false;
  }
  return false;
}

bool conforms(const Value& v0, const GuestType& t) {
  const Value& v = v0.whnf();
  switch (t.kind()) {
    case GuestType::Kind::Int: return v.is(Value::Kind::Int);
    case GuestType::Kind::Bool: return v.is(Value::Kind::Bool);
    case GuestType::Kind::Unit: return v.is(Value::Kind::Unit);
    case GuestType::Kind::Prod:
      return v.is(Value::Kind::Pair) && conforms(v.left(), t.left()) && conforms(v.right(), t.right());
    case GuestType::Kind::Sum:
      if (v.is(Value::Kind::Inl)) return conforms(v.payload(), t.left());
      if (v.is(Value::Kind::Inr)) return conforms(v.payload(), t.right());
      return false;
    case GuestType::Kind::Exp: {
      if (!v.is(Value::Kind::Clos)) return false;
      Signature sig = ga_type_of(v.clos_body());
      if (!sig.dom.is_branch()) return false;
      return sig.dom.right() == ShapeTree::Leaf(t.left()) &&
             sig.cod == ShapeTree::Leaf(t.right()) && conforms(v.clos_env(), sig.dom.left());
    }
  }
  return false;
}

bool conforms(const Value& v0, const ShapeTree& s) {
  switch (s.kind()) {
    case ShapeTree::Kind::Empty: return v0.whnf().is(Value::Kind::Unit);
    case ShapeTree::Kind::Leaf: return conforms(v0, s.type());
    case ShapeTree::Kind::Branch: {
      const Value& v = v0.whnf();
      return v.is(Value::Kind::Pair) && conforms(v.left(), s.left()) && conforms(v.right(), s.right());
    }
  }
  return false;
}

}  // namespace garrow
