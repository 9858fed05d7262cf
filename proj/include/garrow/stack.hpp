#pragma once

#include <functional>

namespace garrow {

/// Runs fn on a thread with a large stack so deep guest recursion ends in
/// FuelExhausted rather than a host stack overflow. Exceptions propagate to
/// the caller. Nested calls run inline.
void with_large_stack(const std::function<void()>& fn);

}  // namespace garrow
