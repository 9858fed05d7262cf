#pragma once

#include <optional>
#include <string>
#include <vector>

#include "garrow/ir.hpp"
#include "garrow/value.hpp"

namespace garrow {

/// Guest type with numbered placeholders, used to state primitive schemas
/// such as ite : <Bool, <a, a>> -> a.
struct TypePattern {
  enum class Kind { Var, Int, Bool, Unit, Prod };
  Kind kind = Kind::Int;
  int var = 0;
  std::vector<TypePattern> kids;
};

struct ShapePattern {
  bool leaf = true;
  TypePattern type;
  std::vector<ShapePattern> kids;
};

struct PrimInfo {
  std::string name;
  ShapePattern dom;
  TypePattern cod;
  /// One-level lambda text over the input, used by the residualizer.
  std::string residual;
  /// Registered inverse for the invertible backend, if any.
  std::optional<std::string> inverse;
};

const std::vector<PrimInfo>& prim_table();
const PrimInfo* find_prim(const std::string& name);

/// Instantiates the schema of `name` at a concrete domain. Throws
/// PrimUndefined for unknown names and IllTyped when dom does not match.
ShapeTree prim_codomain(const std::string& name, const ShapeTree& dom);

/// Applies a primitive to an input value. Forces only what the primitive
/// needs; ite leaves the unselected branch untouched.
Value apply_prim(const std::string& name, const Value& input);

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_sub(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

}  // namespace garrow
