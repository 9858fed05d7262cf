#pragma once

#include <string>

#include "garrow/ir.hpp"
#include "garrow/shape.hpp"

namespace garrow {

/// Prints a sum-free term as a closed one-level lambda in the surface
/// language, one closed lambda per combinator. Composition reads left to
/// right: comp f g becomes \x -> (G) ((F) x). Throws Unresidualizable on
/// merge, never, inl, inr.
std::string residualize(const GaTerm& t);

/// Surface type for a shape: <> is (), branches are products.
std::string surface_type_of(const ShapeTree& s);
std::string surface_type_of(const GuestType& t);

}  // namespace garrow
