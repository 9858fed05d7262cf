#pragma once

#include <cstdint>
#include <random>

#include "garrow/ir.hpp"
#include "garrow/value.hpp"

namespace garrow {

using Rng = std::mt19937_64;

struct SampleOptions {
  std::int64_t int_min = -100;
  std::int64_t int_max = 100;
  /// Arguments drawn when comparing closures extensionally.
  int closure_samples = 8;
};

/// A random member of values_of_shape(s). Closures are flattened identity
/// bodies when argument and result types agree, constant bodies otherwise.
Value random_value(const ShapeTree& s, Rng& rng, const SampleOptions& opts = {});
Value random_value(const GuestType& t, Rng& rng, const SampleOptions& opts = {});

/// A closed term <> -> <t> producing a random inhabitant of t.
GaTerm random_constant_term(const GuestType& t, Rng& rng, const SampleOptions& opts = {});

/// Equality at a shape. Closures are compared by applying both to sampled
/// arguments, recursively at the result type.
bool equal_at(const ShapeTree& s, const Value& a, const Value& b, Rng& rng,
              const SampleOptions& opts = {});
bool equal_at(const GuestType& t, const Value& a, const Value& b, Rng& rng,
              const SampleOptions& opts = {});

}  // namespace garrow
