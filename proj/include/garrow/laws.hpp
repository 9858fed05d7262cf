#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "garrow/ir.hpp"
#include "garrow/value.hpp"

namespace garrow {

struct LawCase {
  std::string law;   // "L1" .. "L12"
  std::string name;  // unique, e.g. "L6.pentagon[<Int>,<Bool>,<Int>,<Int>]"
  GaTerm lhs;
  GaTerm rhs;
  ShapeTree shape;   // common domain
  bool cartesian_only = false;
};

/// Instances of the law catalog over a fixed set of small shapes plus a few
/// drawn from `shape_seed`. With `invertible_only`, the sample morphisms
/// plugged into L1-L3 come from the invertible fragment.
std::vector<LawCase> law_catalog(std::uint64_t shape_seed, bool invertible_only = false);

struct LawBackend {
  std::string name;
  bool cartesian = true;
  bool invertible_only = false;
  std::function<Value(const GaTerm&, const Value&)> run;
  /// Optional backward direction; compared only where both sides define it.
  std::function<Value(const GaTerm&, const Value&)> run_bwd;
};

LawBackend eval_law_backend();
LawBackend bi_law_backend();

struct LawResult {
  enum class Status { Pass, Fail, NotApplicable };
  std::string law;
  std::string name;
  Status status = Status::Pass;
  int cases = 0;
  std::string counterexample;
};

struct LawReport {
  std::string backend;
  std::uint64_t seed = 0;
  int cases_per_law = 0;
  std::vector<LawResult> results;

  int failures() const;
  /// "LAW <name> PASS|FAIL|N/A [counterexample]", one line per case.
  std::string text() const;
  std::string json() const;
};

LawReport run_law_suite(const LawBackend& backend, std::uint64_t seed, int cases_per_law);

}  // namespace garrow
