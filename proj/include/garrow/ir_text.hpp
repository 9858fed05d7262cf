#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "garrow/ir.hpp"

namespace garrow {

/// Single-line s-expression, shapes omitted: "(comp (drop) (constant 1))".
std::string render_ir(const GaTerm& t);

/// render_ir preceded by a ";; dom: S ;; cod: S" header so the text can be
/// parsed back without supplying a domain.
std::string render_ir_with_header(const GaTerm& t);

/// Parses IR text and reconstructs every shape annotation by unification,
/// starting from `dom` (or the header's domain when dom is absent). Types the
/// text leaves unconstrained default to Int. Throws SyntaxError, IllTyped,
/// or PrimUndefined.
GaTerm parse_ir(std::string_view text, std::optional<ShapeTree> dom = std::nullopt);

/// "<>", "<Int>", "<<Int>, <(Int -> Bool)>>".
ShapeTree parse_shape(std::string_view text);

/// "Int", "Bool", "()", "(Int -> Int)", "(Int + Bool)", "(Int * Int)";
/// binary operators associate to the right when parentheses are omitted.
GuestType parse_guest_type(std::string_view text);

}  // namespace garrow
