#include "garrow/laws.hpp"

#include <nlohmann/json.hpp>

#include "garrow/bi.hpp"
#include "garrow/error.hpp"
#include "garrow/eval.hpp"
#include "garrow/sample.hpp"
#include "garrow/stack.hpp"

namespace garrow {

namespace {

ShapeTree E() { return ShapeTree::Empty(); }
ShapeTree L(GuestType t) { return ShapeTree::Leaf(std::move(t)); }
ShapeTree B(ShapeTree l, ShapeTree r) { return ShapeTree::Branch(std::move(l), std::move(r)); }
GuestType Int() { return GuestType::Int(); }
GuestType Bool() { return GuestType::Bool(); }

GaTerm int_endo(Rng& rng, bool invertible_only) {
  ShapeTree i = L(Int());
  ShapeTree ii = B(i, i);
  switch (rng() % (invertible_only ? 3 : 4)) {
    case 0: return ga::prim("succ", i, i);
    case 1: return ga::prim("pred", i, i);
    case 2: return ga::prim("neg", i, i);
    default: return ga::comp(ga::copy(i), ga::prim("add", ii, i));
  }
}

GaTerm bool_not() {
  ShapeTree b = L(Bool());
  GaTerm branches = ga::chain({ga::copy(E()), ga::first(ga::constant(Literal::Bool(false), Bool()), E()),
                               ga::second(ga::constant(Literal::Bool(true), Bool()), b)},
                              E());
  return ga::chain({ga::uncancel_r(b), ga::second(branches, b), ga::prim("ite", B(b, B(b, b)), b)}, b);
}

/// A sample endomorphism on s.
GaTerm endo(const ShapeTree& s, Rng& rng, bool invertible_only) {
  switch (s.kind()) {
    case ShapeTree::Kind::Empty: return ga::id(s);
    case ShapeTree::Kind::Leaf:
      if (s.type().is(GuestType::Kind::Int)) return int_endo(rng, invertible_only);
      if (s.type().is(GuestType::Kind::Bool) && !invertible_only && (rng() & 1)) return bool_not();
      return ga::id(s);
    case ShapeTree::Kind::Branch: {
      GaTerm l = endo(s.left(), rng, invertible_only);
      GaTerm r = endo(s.right(), rng, invertible_only);
      GaTerm both = ga::comp(ga::first(l, s.right()), ga::second(r, s.left()));
      if (s.left() == s.right() && (rng() & 1)) return ga::comp(both, ga::swap(s.left(), s.right()));
      return both;
    }
  }
  return ga::id(s);
}

ShapeTree random_shape(Rng& rng, int leaves) {
  if (leaves == 0) return E();
  if (leaves == 1) {
    switch (rng() % 4) {
      case 0: return L(Bool());
      case 1: return L(GuestType::Exp(Int(), Int()));
      default: return L(Int());
    }
  }
  int l = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(leaves - 1));
  ShapeTree left = random_shape(rng, l);
  return B(left, random_shape(rng, leaves - l));
}

std::string tag(std::initializer_list<ShapeTree> shapes) {
  std::string out = "[";
  bool first = true;
  for (const auto& s : shapes) {
    if (!first) out += ",";
    first = false;
    out += s.to_string();
  }
  return out + "]";
}

}  // namespace

std::vector<LawCase> law_catalog(std::uint64_t shape_seed, bool invertible_only) {
  Rng rng(shape_seed);
  std::vector<ShapeTree> shapes = {L(Int()), L(Bool()), B(L(Int()), L(Bool())), B(E(), L(Int())),
                                   L(GuestType::Exp(Int(), Int())), B(L(Int()), L(Int()))};
  for (int i = 0; i < 2; ++i) shapes.push_back(random_shape(rng, 2 + static_cast<int>(rng() % 2)));

  std::vector<LawCase> out;
  auto add = [&](std::string law, std::string name, GaTerm lhs, GaTerm rhs, bool cart = false) {
    ShapeTree dom = ga_type_of(lhs).dom;
    out.push_back({std::move(law), std::move(name), std::move(lhs), std::move(rhs), dom, cart});
  };

  for (std::size_t i = 0; i < shapes.size(); ++i) {
    const ShapeTree& s = shapes[i];
    const ShapeTree& z = shapes[(i + 1) % shapes.size()];
    const ShapeTree& w = shapes[(i + 2) % shapes.size()];
    const ShapeTree& v = shapes[(i + 3) % shapes.size()];
    std::string at = tag({s});

    GaTerm f = endo(s, rng, invertible_only);
    GaTerm g = endo(s, rng, invertible_only);
    GaTerm h = endo(s, rng, invertible_only);

    add("L1", "L1.left-identity" + at, ga::comp(ga::id(s), f), f);
    add("L1", "L1.right-identity" + at, ga::comp(f, ga::id(s)), f);
    add("L2", "L2.associativity" + at, ga::comp(ga::comp(f, g), h), ga::comp(f, ga::comp(g, h)));

    std::string sz = tag({s, z});
    add("L3", "L3.first-comp" + sz, ga::first(ga::comp(f, g), z), ga::comp(ga::first(f, z), ga::first(g, z)));
    add("L3", "L3.first-id" + sz, ga::first(ga::id(s), z), ga::id(B(s, z)));
    add("L3", "L3.second-comp" + sz, ga::second(ga::comp(f, g), z),
        ga::comp(ga::second(f, z), ga::second(g, z)));
    add("L3", "L3.second-id" + sz, ga::second(ga::id(s), z), ga::id(B(z, s)));

    add("L4", "L4.uncancell-cancell" + at, ga::comp(ga::uncancel_l(s), ga::cancel_l(s)), ga::id(s));
    add("L4", "L4.uncancelr-cancelr" + at, ga::comp(ga::uncancel_r(s), ga::cancel_r(s)), ga::id(s));
    add("L4", "L4.cancell-uncancell" + at, ga::comp(ga::cancel_l(s), ga::uncancel_l(s)), ga::id(B(E(), s)));
    add("L4", "L4.cancelr-uncancelr" + at, ga::comp(ga::cancel_r(s), ga::uncancel_r(s)), ga::id(B(s, E())));

    std::string szw = tag({s, z, w});
    add("L5", "L5.assoc-unassoc" + szw, ga::comp(ga::assoc(s, z, w), ga::unassoc(s, z, w)),
        ga::id(B(B(s, z), w)));
    add("L5", "L5.unassoc-assoc" + szw, ga::comp(ga::unassoc(s, z, w), ga::assoc(s, z, w)),
        ga::id(B(s, B(z, w))));

    add("L6", "L6.triangle" + sz, ga::comp(ga::assoc(s, E(), z), ga::second(ga::cancel_l(z), s)),
        ga::first(ga::cancel_r(s), z));
    add("L6", "L6.pentagon" + tag({s, z, w, v}),
        ga::comp(ga::assoc(B(s, z), w, v), ga::assoc(s, z, B(w, v))),
        ga::chain({ga::first(ga::assoc(s, z, w), v), ga::assoc(s, B(z, w), v), ga::second(ga::assoc(z, w, v), s)},
                  B(B(B(s, z), w), v)));

    add("L7", "L7.swap-involution" + sz, ga::comp(ga::swap(s, z), ga::swap(z, s)), ga::id(B(s, z)));

    add("L8", "L8.copy-drop-left" + at,
        ga::chain({ga::copy(s), ga::first(ga::drop(s), s), ga::cancel_l(s)}, s), ga::id(s));
    add("L8", "L8.copy-drop-right" + at,
        ga::chain({ga::copy(s), ga::second(ga::drop(s), s), ga::cancel_r(s)}, s), ga::id(s));

    add("L9", "L9.copy-swap" + at, ga::comp(ga::copy(s), ga::swap(s, s)), ga::copy(s));

    add("L10", "L10.copy-assoc" + at,
        ga::chain({ga::copy(s), ga::first(ga::copy(s), s), ga::assoc(s, s, s)}, s),
        ga::comp(ga::copy(s), ga::second(ga::copy(s), s)));

    GaTerm fz = endo(z, rng, invertible_only);
    add("L11", "L11.sliding" + sz, ga::comp(ga::first(f, z), ga::second(fz, s)),
        ga::comp(ga::second(fz, s), ga::first(f, z)), true);

    add("L12", "L12.drop-naturality" + at, ga::chain({f, ga::copy(s), ga::drop(B(s, s))}, s), ga::drop(s), true);
  }
  return out;
}

LawBackend eval_law_backend() {
  LawBackend b;
  b.name = "eval";
  b.cartesian = true;
  b.run = [](const GaTerm& t, const Value& v) { return eval_interpret(t, v); };
  return b;
}

LawBackend bi_law_backend() {
  LawBackend b;
  b.name = "bi";
  b.cartesian = false;
  b.invertible_only = true;
  b.run = [](const GaTerm& t, const Value& v) { return bi_interpret(t).fwd(v); };
  b.run_bwd = [](const GaTerm& t, const Value& v) { return bi_interpret(t).bwd(v); };
  return b;
}

namespace {

struct Outcome {
  std::optional<Value> value;
  std::optional<ErrorCode> error;
  std::string message;
};

Outcome attempt(const std::function<Value(const GaTerm&, const Value&)>& run, const GaTerm& t, const Value& v) {
  try {
    return {run(t, v), std::nullopt, {}};
  } catch (const Error& e) {
    return {std::nullopt, e.code(), e.what()};
  }
}

std::string describe(const Outcome& o) {
  return o.value ? o.value->to_string() : std::string("error ") + std::string(to_string(*o.error));
}

bool agree(const Outcome& a, const Outcome& b, const ShapeTree& at, Rng& rng) {
  if (a.value && b.value) return equal_at(at, *a.value, *b.value, rng);
  return !a.value && !b.value && a.error == b.error;
}

}  // namespace

namespace {
LawReport run_cases(const LawBackend& backend, std::uint64_t seed, int cases_per_law);
}  // namespace

LawReport run_law_suite(const LawBackend& backend, std::uint64_t seed, int cases_per_law) {
  LawReport report;
  with_large_stack([&] { report = run_cases(backend, seed, cases_per_law); });
  return report;
}

namespace {

LawReport run_cases(const LawBackend& backend, std::uint64_t seed, int cases_per_law) {
  LawReport report;
  report.backend = backend.name;
  report.seed = seed;
  report.cases_per_law = cases_per_law;

  std::vector<LawCase> catalog = law_catalog(seed, backend.invertible_only);
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    const LawCase& c = catalog[i];
    LawResult r;
    r.law = c.law;
    r.name = c.name;
    if (c.cartesian_only && !backend.cartesian) {
      r.status = LawResult::Status::NotApplicable;
      report.results.push_back(std::move(r));
      continue;
    }
    Signature ls = ga_type_of(c.lhs);
    Signature rs = ga_type_of(c.rhs);
    if (!(ls == rs)) {
      r.status = LawResult::Status::Fail;
      r.counterexample = "sides disagree on type: " + ls.dom.to_string() + " -> " + ls.cod.to_string() +
                         " vs " + rs.dom.to_string() + " -> " + rs.cod.to_string();
      report.results.push_back(std::move(r));
      continue;
    }
    Rng rng(seed * 0x9E3779B97F4A7C15ULL + i);
    for (int k = 0; k < cases_per_law && r.status == LawResult::Status::Pass; ++k) {
      Value input = random_value(c.shape, rng);
      ++r.cases;
      Outcome lo = attempt(backend.run, c.lhs, input);
      Outcome ro = attempt(backend.run, c.rhs, input);
      if (!agree(lo, ro, ls.cod, rng)) {
        r.status = LawResult::Status::Fail;
        r.counterexample = "input " + input.to_string() + ": " + describe(lo) + " vs " + describe(ro);
        break;
      }
      if (!backend.run_bwd) continue;
      Value output = random_value(ls.cod, rng);
      Outcome lb = attempt(backend.run_bwd, c.lhs, output);
      Outcome rb = attempt(backend.run_bwd, c.rhs, output);
      if (lb.value && rb.value && !equal_at(ls.dom, *lb.value, *rb.value, rng)) {
        r.status = LawResult::Status::Fail;
        r.counterexample = "backward input " + output.to_string() + ": " + describe(lb) + " vs " + describe(rb);
      }
    }
    report.results.push_back(std::move(r));
  }
  return report;
}

}  // namespace

int LawReport::failures() const {
  int n = 0;
  for (const auto& r : results) n += r.status == LawResult::Status::Fail;
  return n;
}

namespace {

const char* status_text(LawResult::Status s) {
  switch (s) {
    case LawResult::Status::Pass: return "PASS";
    case LawResult::Status::Fail: return "FAIL";
    case LawResult::Status::NotApplicable: return "N/A";
  }
  return "?";
}

}  // namespace

std::string LawReport::text() const {
  std::string out;
  for (const auto& r : results) {
    out += "LAW ";
    out += r.name;
    out += ' ';
    out += status_text(r.status);
    if (!r.counterexample.empty()) out += " " + r.counterexample;
    out += '\n';
  }
  return out;
}

std::string LawReport::json() const {
  nlohmann::ordered_json j;
  j["backend"] = backend;
  j["seed"] = seed;
  j["cases_per_law"] = cases_per_law;
  j["failures"] = failures();
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    nlohmann::ordered_json row;
    row["law"] = r.law;
    row["name"] = r.name;
    row["status"] = status_text(r.status);
    row["cases"] = r.cases;
    if (!r.counterexample.empty()) row["counterexample"] = r.counterexample;
    rows.push_back(std::move(row));
  }
  j["results"] = std::move(rows);
  return j.dump(2);
}

}  // namespace garrow
