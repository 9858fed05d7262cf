#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>

#include "garrow/ir.hpp"
#include "garrow/shape.hpp"

namespace garrow {

/// A level-0 code value. The flattening module supplies the implementation;
/// backends only ever see the combinator term.
class CodeObject {
 public:
  virtual ~CodeObject() = default;
  virtual const GaTerm& term() const = 0;
  virtual std::string describe() const = 0;
};

/// Runtime value shared by the combinator backends and the level-0 staging
/// evaluator. Thunks are forced on inspection; every other value is
/// immutable.
///
/// Reference counts are not atomic. A value may be handed from one thread to
/// another, but two threads must not hold copies of it at the same time.
class Value {
 public:
  enum class Kind { Int, Bool, Unit, Pair, Inl, Inr, Clos, Code, HostFn, Thunk };

  Value(const Value& other) noexcept;
  Value(Value&& other) noexcept : rep_(other.rep_) { other.rep_ = nullptr; }
  Value& operator=(const Value& other) noexcept;
  Value& operator=(Value&& other) noexcept;
  ~Value();

  using HostFunction = std::function<Value(const Value&)>;
  using Suspension = std::function<Value()>;

  static Value Int(std::int64_t v);
  static Value Bool(bool v);
  static Value Unit();
  static Value Pair(Value l, Value r);
  static Value Inl(Value v);
  static Value Inr(Value v);
  /// Guest closure: a body of shape (a ** x) -> y together with its
  /// captured environment of shape a.
  static Value Clos(GaTerm body, Value env);
  static Value Code(std::shared_ptr<const CodeObject> code);
  static Value HostFn(HostFunction fn, std::string label = "<fun>");
  /// Deferred computation, memoized on first force. Forcing a thunk from
  /// inside its own computation raises FuelExhausted.
  static Value Thunk(Suspension compute);
  static Value FromLiteral(const Literal& lit);

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }

  std::int64_t as_int() const;
  bool as_bool() const;
  const Value& left() const;
  const Value& right() const;
  const Value& payload() const;  // Inl / Inr
  const GaTerm& clos_body() const;
  const Value& clos_env() const;
  const std::shared_ptr<const CodeObject>& code() const;
  Value call(const Value& arg) const;  // HostFn

  /// Weak head normal form: strips thunks at the root only.
  Value force() const;
  /// As force(), but refers into this value's memo cell instead of copying.
  /// Valid while this value is alive.
  const Value& whnf() const;
  /// Identity of the underlying node, not structural equality.
  bool same_rep(const Value& other) const { return rep_ == other.rep_; }

  std::string to_string() const;

  struct ThunkCell;
  struct Extra;
  struct Rep;

 private:
  Value() = default;
  // Takes over the single reference a fresh node starts with.
  explicit Value(Rep* rep) : rep_(rep) {}
  static void destroy(Rep* rep);
  const Value& whnf_thunk() const;
  [[noreturn]] void wrong_kind(const char* want) const;

  Rep* rep_ = nullptr;
};

// Defined here so the accessors on the evaluators' hot paths inline.
struct Value::Rep {
  std::size_t refs = 1;
  Kind kind = Kind::Unit;
  std::int64_t i = 0;
  bool b = false;
  Value k0;
  Value k1;
  std::unique_ptr<Extra> extra;
  std::unique_ptr<ThunkCell> thunk;
};

inline Value::Value(const Value& other) noexcept : rep_(other.rep_) {
  if (rep_) ++rep_->refs;
}

inline Value& Value::operator=(const Value& other) noexcept {
  Value copy(other);
  std::swap(rep_, copy.rep_);
  return *this;
}

inline Value& Value::operator=(Value&& other) noexcept {
  Value taken(std::move(other));
  std::swap(rep_, taken.rep_);
  return *this;
}

inline Value::~Value() {
  if (rep_ && --rep_->refs == 0) destroy(rep_);
}

inline Value::Kind Value::kind() const { return rep_->kind; }

inline const Value& Value::whnf() const { return rep_->kind == Kind::Thunk ? whnf_thunk() : *this; }

inline const Value& Value::left() const {
  if (rep_->kind != Kind::Pair) wrong_kind("a pair");
  return rep_->k0;
}

inline const Value& Value::right() const {
  if (rep_->kind != Kind::Pair) wrong_kind("a pair");
  return rep_->k1;
}

/// Forces every thunk reachable through pairs and injections. Closure
/// environments are left alone.
Value deep_force(const Value& v);

/// Structural equality after deep forcing. Guest closures compare
/// intensionally (same body term, equal environments); host functions and
/// code objects compare by identity.
bool structurally_equal(const Value& a, const Value& b);

/// Membership in values_of_shape(s).
bool conforms(const Value& v, const ShapeTree& s);
bool conforms(const Value& v, const GuestType& t);

}  // namespace garrow
