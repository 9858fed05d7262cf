#pragma once

#include <cstdint>

#include "garrow/ir.hpp"
#include "garrow/value.hpp"

namespace garrow {

struct EvalOptions {
  /// Budget shared by closure applications and loop feedback reads.
  std::int64_t fuel = 10000;
  /// Guard against host stack exhaustion on deep guest recursion.
  std::int64_t max_depth = 20000;
};

/// Reference interpretation with the cartesian pair as tensor. Evaluation is
/// call-by-need: components of pairs are computed when first inspected, so
/// ite only runs the selected branch and loopr ties a lazy knot. The result
/// is forced through pairs and injections before it is returned.
///
/// Throws ShapeMismatch when `input` does not conform to the domain,
/// Unreachable, PrimUndefined, FuelExhausted, or Overflow.
Value eval_interpret(const GaTerm& t, const Value& input, const EvalOptions& opts = {});

/// Applies a guest closure (as produced by curryr) to an argument.
Value apply_guest_closure(const Value& clos, const Value& arg, const EvalOptions& opts = {});

}  // namespace garrow
