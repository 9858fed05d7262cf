#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "garrow/derivation.hpp"
#include "garrow/ir.hpp"
#include "garrow/typecheck.hpp"
#include "garrow/value.hpp"

namespace garrow {

/// Wiring for an arrangement, from its target context to its source.
GaTerm interp_arrangement(const Arrangement& a);

/// Supplies the combinator term of the code value spliced at an Esc node,
/// at the node's resolved type.
using SpliceResolver = std::function<GaTerm(const Derivation& esc)>;

/// Combinator term of a derivation: domain is its context, codomain its
/// succedent type.
GaTerm flatten_derivation(const Derivation& d, const SpliceResolver& splices);

/// Flattens the derivation of a whole bracket body whose type is `body_type`.
/// Arguments the leading lambdas did not absorb are absorbed afterwards, so
/// the result always has domain absorbed_shape(arguments of body_type).
GaTerm flatten_bracket(const Derivation& root, const GuestType& body_type, const SpliceResolver& splices);

struct StageOptions {
  /// Level-0 evaluation steps before FuelExhausted.
  std::int64_t steps = 50'000'000;
  /// Nesting bound for level-0 recursion.
  std::int64_t max_depth = 200'000;
};

/// Code value produced by evaluating a bracket at level zero: the bracket
/// body together with the code values its escapes evaluated to. Its
/// combinator term is produced on demand for each requested guest type, so
/// a polymorphic bracket can be spliced at several types.
class StagedCode : public CodeObject {
 public:
  StagedCode(TypedPtr body, std::map<const TypedTerm*, Value> splices);

  /// Term at the most general type with leftover type variables read as Int.
  const GaTerm& term() const override;
  std::string describe() const override;

  /// Most general inner type (fresh copy each call).
  MLType principal_type() const;
  GuestType default_type() const;

  /// Term whose domain absorbs the arguments of `t` and whose codomain is
  /// its final result. Throws TypeMismatch if t is not an instance of the
  /// principal type.
  GaTerm materialize(const GuestType& t) const;

  /// Derivation used for type `t` (for dumps).
  DerivPtr derivation(const GuestType& t) const;

 private:
  struct Instance {
    TypedPtr body;
    std::map<const TypedTerm*, Value> splices;  // keyed by the copy's Esc nodes
  };
  Instance instantiate(const std::optional<GuestType>& want) const;

  TypedPtr body_;
  std::map<const TypedTerm*, Value> splices_;
  MLType principal_ = MLType::Unit();
  mutable std::map<std::string, GaTerm> cache_;
  mutable std::optional<GaTerm> default_term_;
};

std::shared_ptr<const StagedCode> as_staged(const Value& v);

/// Level-0 environment: the definitions of a program, evaluated on first use.
class StageEnv {
 public:
  explicit StageEnv(TypedProgram prog, StageOptions opts = {});
  ~StageEnv();
  StageEnv(const StageEnv&) = delete;
  StageEnv& operator=(const StageEnv&) = delete;

  const TypedProgram& program() const;
  /// Value of a definition. Throws UnboundVar for unknown names.
  Value global(const std::string& name) const;
  /// Applies a level-0 function value.
  Value apply(const Value& f, const Value& arg) const;
  /// Evaluates a closed level-0 term under this environment.
  Value eval(const TypedTerm& t) const;

  struct State;

 private:
  std::shared_ptr<State> state_;
};

/// Evaluation of a closed level-0 term: arguments by value, pair components and
/// letrec-bound names deferred. Brackets evaluate to StagedCode values.
/// Throws Overflow, FuelExhausted, RuntimeError, SpliceNotCode and
/// LevelMismatch for code that mentions variables bound outside it.
Value stage_eval(const TypedTerm& t, const StageEnv& env);

/// Evaluates `entry` applied to `args` and returns its code value.
/// Throws SpliceNotCode when the result is not code.
std::shared_ptr<const StagedCode> stage_entry(const StageEnv& env, const std::string& entry,
                                              const std::vector<Value>& args);

}  // namespace garrow
