// Release checks: one "ACCEPTANCE <n> PASS|FAIL" line per criterion, with
// its tolerance and time budget pinned here. Exit status is nonzero when
// any criterion fails.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "arrange_oracle.hpp"
#include "cli.hpp"
#include "corpus.hpp"
#include "garrow/bi.hpp"
#include "garrow/ir_text.hpp"
#include "garrow/laws.hpp"
#include "garrow/sample.hpp"
#include "garrow/stack.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace garrow;

namespace {

struct Verdict {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& why) {
    if (!cond && ok) {
      ok = false;
      detail = why;
    }
  }
};

int failures = 0;

void criterion(int n, const std::string& title, double budget_s, const std::function<void(Verdict&)>& body) {
  Verdict v;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    v.require(false, std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (v.ok && secs >= budget_s) {
    std::ostringstream why;
    why << "over the " << budget_s << " s budget";
    v.require(false, why.str());
  }
  if (!v.ok) ++failures;
  std::cout << "ACCEPTANCE " << n << " " << (v.ok ? "PASS" : "FAIL") << "  " << title << "  (" << std::fixed
            << std::setprecision(3) << secs << " s)";
  if (!v.ok) std::cout << "  " << v.detail;
  std::cout << std::endl;
}

std::string garrowc(std::vector<std::string> args, int& code) {
  args.insert(args.begin(), "garrowc");
  std::ostringstream out, err;
  code = cli::run(args, out, err);
  return out.str();
}

// Pow exponent by repeated multiplication.
std::int64_t power(std::int64_t x, int n) {
  std::int64_t r = 1;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

// Random composite of invertible combinators starting at `dom`.
GaTerm invertible_term(const ShapeTree& dom, std::mt19937_64& rng, int steps) {
  const ShapeTree E = ShapeTree::Empty();
  std::vector<GaTerm> chain;
  ShapeTree cur = dom;
  std::function<GaTerm(const ShapeTree&, int)> step = [&](const ShapeTree& s, int depth) -> GaTerm {
    switch (s.kind()) {
      case ShapeTree::Kind::Empty: return rng() % 2 ? ga::uncancel_l(s) : ga::id(s);
      case ShapeTree::Kind::Leaf:
        if (s.type().is(GuestType::Kind::Int)) {
          switch (rng() % 5) {
            case 0: return ga::prim("succ", s, s);
            case 1: return ga::prim("pred", s, s);
            case 2: return ga::prim("neg", s, s);
            case 3: return ga::copy(s);
            default: return ga::uncancel_r(s);
          }
        }
        return rng() % 2 ? ga::copy(s) : ga::uncancel_l(s);
      case ShapeTree::Kind::Branch: {
        const ShapeTree& l = s.left();
        const ShapeTree& r = s.right();
        switch (rng() % 6) {
          case 0: return ga::swap(l, r);
          case 1: return ga::first(step(l, depth + 1), r);
          case 2: return ga::second(step(r, depth + 1), l);
          case 3:
            if (l.is_branch()) return ga::assoc(l.left(), l.right(), r);
            return ga::swap(l, r);
          case 4:
            if (r.is_branch()) return ga::unassoc(l, r.left(), r.right());
            return ga::swap(l, r);
          default:
            if (l == E) return ga::cancel_l(r);
            if (r == E) return ga::cancel_r(l);
            return ga::first(step(l, depth + 1), r);
        }
      }
    }
    return ga::id(s);
  };
  for (int i = 0; i < steps; ++i) {
    GaTerm g = step(cur, 0);
    chain.push_back(g);
    cur = ga_type_of(g).cod;
    if (cur.leaves().size() > 6) break;
  }
  return ga::chain(chain, dom);
}

}  // namespace

int main() {
  const ShapeTree I = ShapeTree::Leaf(GuestType::Int());
  const ShapeTree Bo = ShapeTree::Leaf(GuestType::Bool());

  criterion(1, "pow flattens to the drop/constant and copy/first/second/mult forms", 1.0, [&](Verdict& v) {
    int code = 0;
    std::string pow_ml = support::sample_path("pow.ml");
    std::string out = garrowc({"flatten", pow_ml, "--entry", "pow", "--args", "0"}, code);
    v.require(code == 0 && out == "(comp (drop) (constant 1))\n", "pow 0 printed " + out);
    for (int n = 1; n <= 3; ++n) {
      std::string golden = support::read_sample("golden/pow" + std::to_string(n) + ".ir");
      out = garrowc({"flatten", pow_ml, "--entry", "pow", "--args", std::to_string(n)}, code);
      v.require(code == 0 && out == golden, "pow " + std::to_string(n) + " differs from its golden file");
      std::string prefix = "(comp (copy) (comp (first (id)) (comp (second ";
      std::string suffix = ") (prim mult))))\n";
      v.require(out.rfind(prefix, 0) == 0 && out.size() > suffix.size() &&
                    out.compare(out.size() - suffix.size(), suffix.size(), suffix) == 0,
                "pow " + std::to_string(n) + " lacks the copy/first/second/mult skeleton");
    }
  });

  criterion(2, "pow n x equals x^n and the reference interpreter, n 0..6, x -3..3", 1.0, [&](Verdict& v) {
    std::string src = support::read_sample("pow.ml");
    garrow::Program prog = parse_program(src);
    for (int n = 0; n <= 6; ++n) {
      auto staged = support::stage(src, "pow", {Value::Int(n)});
      for (int x = -3; x <= 3; ++x) {
        std::int64_t got = eval_interpret(staged->term(), Value::Int(x)).as_int();
        std::int64_t ref = oracle::run(prog, "pow", {Value::Int(n)}, {Value::Int(x)}).as_int();
        std::ostringstream where;
        where << "n=" << n << " x=" << x << " got " << got << " reference " << ref;
        v.require(got == power(x, n) && ref == got, where.str());
      }
    }
  });

  criterion(3, "law suite: eval seed 42 x100 (L1-L12), bi invertible fragment (L1-L10)", 10.0, [&](Verdict& v) {
    LawReport ev = run_law_suite(eval_law_backend(), 42, 100);
    std::set<std::string> passed;
    for (const auto& r : ev.results) {
      v.require(r.status == LawResult::Status::Pass, "eval " + r.name + " " + r.counterexample);
      passed.insert(r.law);
    }
    for (int k = 1; k <= 12; ++k) v.require(passed.count("L" + std::to_string(k)) == 1, "eval never ran L" + std::to_string(k));
    LawReport bi = run_law_suite(bi_law_backend(), 42, 100);
    std::set<std::string> bi_passed;
    for (const auto& r : bi.results) {
      v.require(r.status != LawResult::Status::Fail, "bi " + r.name + " " + r.counterexample);
      if (r.status == LawResult::Status::Pass) bi_passed.insert(r.law);
    }
    for (int k = 1; k <= 10; ++k) v.require(bi_passed.count("L" + std::to_string(k)) == 1, "bi never passed L" + std::to_string(k));
  });

  criterion(4, "arrangements match leaf lookup on all tree pairs with <=5 leaves over Int, Bool", 60.0, [&](Verdict& v) {
    auto trees = arrange_oracle::all_trees(5, {I, Bo}, true);
    std::mt19937_64 rng(42);
    std::size_t pairs = 0;
    with_large_stack([&] {
      for (const auto& n : trees) {
        for (const auto& g : trees) {
          if (!arrange_oracle::reachable(n, g)) continue;
          ++pairs;
          Arrangement a = arrange(n, g);
          if (!(arr_src(a) == n) || !(arr_tgt(a) == g)) {
            v.require(false, "endpoints wrong for " + n.to_string() + " <~ " + g.to_string());
            return;
          }
          GaTerm t = interp_arrangement(a);
          for (int k = 0; k < 20; ++k) {
            Value in = random_value(g, rng);
            if (!structurally_equal(eval_interpret(t, in), arrange_oracle::expected(n, g, in))) {
              v.require(false, "mismatch for " + n.to_string() + " <~ " + g.to_string() + " on " + in.to_string());
              return;
            }
          }
        }
      }
    });
    v.require(pairs > 100'000, "only " + std::to_string(pairs) + " pairs enumerated");
  });

  criterion(5, "residual programs re-read at level 0 agree with the reference interpreter", 30.0, [&](Verdict& v) {
    auto cases = corpus::programs();
    v.require(cases.size() >= 10, "corpus too small");
    std::mt19937_64 rng(42);
    for (const auto& c : cases) {
      std::string src = support::read_sample(c.file);
      garrow::Program prog = parse_program(src);
      auto staged = support::stage(src, c.entry, c.stage_args);
      std::string text = residualize(staged->term());
      for (int i = 0; i < 20; ++i) {
        std::vector<Value> args;
        for (const auto& t : split_arrows(staged->default_type()).first) {
          args.push_back(support::random_data(t, rng, c.lo, c.hi));
        }
        Value want = oracle::run(prog, c.entry, c.stage_args, args);
        Value got = support::run_residual_text(text, support::absorbed_value(args));
        v.require(structurally_equal(got, want),
                  c.label() + ": residual gave " + got.to_string() + ", reference " + want.to_string());
      }
    }
  });

  criterion(6, "guest_comp's principal type and rejection of the ill-typed corpus", 1.0, [&](Verdict& v) {
    TypedProgram p = typecheck(parse_program(support::read_sample("guest.ml")));
    std::string got = print_type(p.find("guest_comp")->scheme.type);
    v.require(support::canonical(got) == support::canonical("forall c. <[y -> z]>@c -> <[x -> y]>@c -> <[x -> z]>@c"),
              "guest_comp : " + got);
    const std::vector<std::pair<std::string, ErrorCode>> bad = {
        {"escape", ErrorCode::EscapeAtLevelZero},     {"unbound", ErrorCode::UnboundVar},
        {"level", ErrorCode::LevelMismatch},          {"level1_in_level0", ErrorCode::LevelMismatch},
        {"classifier", ErrorCode::ClassifierMismatch}, {"classifier_letrec", ErrorCode::ClassifierMismatch},
        {"mismatch", ErrorCode::TypeMismatch},        {"occurs", ErrorCode::OccursCheck},
        {"branches", ErrorCode::TypeMismatch},        {"splice_int", ErrorCode::TypeMismatch},
    };
    for (const auto& [name, want] : bad) {
      std::string got_code = "accepted";
      try {
        typecheck(parse_program(support::read_sample("bad/" + name + ".ml")));
      } catch (const Error& e) {
        got_code = std::string(to_string(e.code()));
      }
      v.require(got_code == to_string(want), name + ".ml: " + got_code + ", expected " + std::string(to_string(want)));
    }
  });

  criterion(7, "bi: backward after forward is the identity; drop and constant refuse to run backward", 5.0,
            [&](Verdict& v) {
              std::mt19937_64 rng(42);
              const std::vector<ShapeTree> doms = {I, Bo, ShapeTree::Branch(I, Bo), ShapeTree::Branch(I, I),
                                                   ShapeTree::Branch(ShapeTree::Branch(I, Bo), I),
                                                   ShapeTree::Branch(ShapeTree::Empty(), I)};
              int terms = 0;
              with_large_stack([&] {
                for (int round = 0; round < 50; ++round) {
                  for (const auto& dom : doms) {
                    GaTerm t = invertible_term(dom, rng, 1 + static_cast<int>(rng() % 6));
                    ++terms;
                    v.require(in_invertible_fragment(t), "generator left the invertible fragment");
                    BiMorphism m = bi_interpret(t);
                    for (int k = 0; k < 10; ++k) {
                      Value x = random_value(dom, rng);
                      Value back = deep_force(m.bwd(m.fwd(x)));
                      v.require(structurally_equal(back, x), "round trip changed " + x.to_string() + " to " +
                                                                 back.to_string() + " through " + render_ir(t));
                    }
                  }
                }
              });
              auto refuses = [&](const GaTerm& t, const Value& y) {
                try {
                  bi_interpret(t).bwd(y);
                } catch (const Error& e) {
                  return e.code() == ErrorCode::NonInvertible;
                }
                return false;
              };
              v.require(refuses(ga::drop(I), Value::Unit()), "drop ran backward");
              v.require(refuses(ga::constant(Literal::Int(1), GuestType::Int()), Value::Int(1)), "constant ran backward");
              v.require(!in_invertible_fragment(ga::drop(I)), "drop counted as invertible");
              v.require(terms == 300, "wrong corpus size");
            });

  return failures == 0 ? 0 : 1;
}
