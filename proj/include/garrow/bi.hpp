#pragma once

#include <functional>
#include <string>

#include "garrow/ir.hpp"
#include "garrow/value.hpp"

namespace garrow {

/// A pair of partial maps. Applying a direction that does not exist throws
/// NonInvertible naming the combinator responsible.
struct BiMorphism {
  std::function<Value(const Value&)> fwd;
  std::function<Value(const Value&)> bwd;
};

/// Structural combinators are total bijections; copy inverts only on equal
/// components; primitives invert through the registered inverse table;
/// everything else runs forward only.
BiMorphism bi_interpret(const GaTerm& t);

BiMorphism bi_inv(const BiMorphism& m);

/// True when every node of t has a backward direction (copy counts).
bool in_invertible_fragment(const GaTerm& t);

}  // namespace garrow
