#pragma once

#include <string>

#include "garrow/ir.hpp"

namespace garrow {

/// Wiring diagram in Graphviz DOT. Structural combinators only reroute
/// wires; computing combinators become nodes; edges carry guest types.
/// Node names are numbered in traversal order, so equal terms give
/// byte-identical output.
std::string to_dot(const GaTerm& t);

}  // namespace garrow
