#pragma once

// Reference two-level interpreter by substitution over the surface AST.
// Level 0 is evaluated directly; a bracket evaluates to its body with every
// escape replaced by the body of the code it evaluated to. The resulting
// one-level term is then run by the same substitution evaluator. Nothing
// here touches combinators, contexts or the staged evaluator.

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "garrow/syntax.hpp"
#include "garrow/value.hpp"

namespace oracle {

using garrow::Expr;
using garrow::ExprPtr;
using K = garrow::Expr::Kind;

struct Diverged : std::runtime_error {
  Diverged() : std::runtime_error("oracle ran out of fuel") {}
};

struct Stuck : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline ExprPtr with_kids(const Expr& e, std::vector<ExprPtr> kids) {
  Expr c = e;
  c.kids = std::move(kids);
  return std::make_shared<const Expr>(std::move(c));
}

inline ExprPtr lit(garrow::Literal l) {
  Expr e;
  e.kind = K::Lit;
  e.lit = l;
  return std::make_shared<const Expr>(std::move(e));
}

inline ExprPtr pair(ExprPtr a, ExprPtr b) {
  Expr e;
  e.kind = K::PrimOp;
  e.name = "pair";
  e.kids = {std::move(a), std::move(b)};
  return std::make_shared<const Expr>(std::move(e));
}

inline ExprPtr app(ExprPtr f, ExprPtr a) {
  Expr e;
  e.kind = K::App;
  e.kids = {std::move(f), std::move(a)};
  return std::make_shared<const Expr>(std::move(e));
}

inline ExprPtr var(const std::string& n) {
  Expr e;
  e.kind = K::Var;
  e.name = n;
  return std::make_shared<const Expr>(std::move(e));
}

// Values substituted here are always closed, so no renaming is needed.
inline ExprPtr subst(const ExprPtr& e, const std::string& x, const ExprPtr& v) {
  switch (e->kind) {
    case K::Var: return e->name == x ? v : e;
    case K::Lit: return e;
    case K::Lam:
      if (e->name == x) return e;
      return with_kids(*e, {subst(e->kids[0], x, v)});
    case K::Let:
      return with_kids(*e, {subst(e->kids[0], x, v), e->name == x ? e->kids[1] : subst(e->kids[1], x, v)});
    case K::LetRec:
      if (e->name == x) return e;
      return with_kids(*e, {subst(e->kids[0], x, v), subst(e->kids[1], x, v)});
    default: {
      std::vector<ExprPtr> kids;
      for (const auto& k : e->kids) kids.push_back(subst(k, x, v));
      return with_kids(*e, kids);
    }
  }
}

class Interp {
 public:
  explicit Interp(const garrow::Program& prog, long fuel = 2'000'000) : fuel_(fuel) {
    for (const auto& d : prog) defs_[d.name] = d.body;
  }

  ExprPtr eval(const ExprPtr& e) {
    if (--fuel_ < 0) throw Diverged();
    switch (e->kind) {
      case K::Var: {
        auto it = defs_.find(e->name);
        if (it == defs_.end()) throw Stuck("free variable " + e->name);
        return eval(it->second);
      }
      case K::Lit:
      case K::Lam: return e;
      case K::App: {
        ExprPtr f = eval(e->kids[0]);
        ExprPtr a = eval(e->kids[1]);
        if (f->kind != K::Lam) throw Stuck("application of a non-function");
        return eval(subst(f->kids[0], f->name, a));
      }
      case K::Let: return eval(subst(e->kids[1], e->name, eval(e->kids[0])));
      case K::LetRec: {
        Expr self = *e;
        self.kids = {e->kids[0], var(e->name)};
        ExprPtr unfold = std::make_shared<const Expr>(self);
        ExprPtr bound = subst(e->kids[0], e->name, unfold);
        return eval(subst(e->kids[1], e->name, bound));
      }
      case K::If: {
        ExprPtr c = eval(e->kids[0]);
        return eval(c->lit.as_bool() ? e->kids[1] : e->kids[2]);
      }
      case K::PrimOp: {
        if (e->name == "pair") return pair(eval(e->kids[0]), eval(e->kids[1]));
        if (e->name == "fst" || e->name == "snd") {
          ExprPtr p = eval(e->kids[0]);
          return p->kids[e->name == "fst" ? 0 : 1];
        }
        std::int64_t a = eval(e->kids[0])->lit.as_int();
        std::int64_t b = eval(e->kids[1])->lit.as_int();
        if (e->name == "add") return lit(garrow::Literal::Int(a + b));
        if (e->name == "sub") return lit(garrow::Literal::Int(a - b));
        if (e->name == "mult") return lit(garrow::Literal::Int(a * b));
        if (e->name == "eq") return lit(garrow::Literal::Bool(a == b));
        throw Stuck("unknown primitive " + e->name);
      }
      case K::Brak: return with_kids(*e, {splice(e->kids[0], 1)});
      case K::Esc: throw Stuck("escape at level 0");
      case K::Note: return eval(e->kids[0]);
    }
    throw Stuck("unhandled node");
  }

  // Residual one-level program of a code-valued expression.
  ExprPtr residual(const ExprPtr& e) {
    ExprPtr v = eval(e);
    if (v->kind != K::Brak) throw Stuck("not a code value");
    return v->kids[0];
  }

 private:
  ExprPtr splice(const ExprPtr& e, int depth) {
    if (e->kind == K::Esc && depth == 1) return residual(e->kids[0]);
    int inner = e->kind == K::Brak ? depth + 1 : e->kind == K::Esc ? depth - 1 : depth;
    std::vector<ExprPtr> kids;
    for (const auto& k : e->kids) kids.push_back(splice(k, inner));
    return with_kids(*e, kids);
  }

  std::map<std::string, ExprPtr> defs_;
  long fuel_;
};

inline ExprPtr from_value(const garrow::Value& v0) {
  garrow::Value v = v0.force();
  switch (v.kind()) {
    case garrow::Value::Kind::Int: return lit(garrow::Literal::Int(v.as_int()));
    case garrow::Value::Kind::Bool: return lit(garrow::Literal::Bool(v.as_bool()));
    case garrow::Value::Kind::Unit: return lit(garrow::Literal::Unit());
    case garrow::Value::Kind::Pair: return pair(from_value(v.left()), from_value(v.right()));
    default: throw Stuck("value has no literal form");
  }
}

inline garrow::Value to_value(const ExprPtr& e) {
  if (e->kind == K::Lit) return garrow::Value::FromLiteral(e->lit);
  if (e->kind == K::PrimOp && e->name == "pair") return garrow::Value::Pair(to_value(e->kids[0]), to_value(e->kids[1]));
  throw Stuck("result is not first-order data");
}

// Runs a residual program on its arguments, one at a time.
inline garrow::Value run_residual(const garrow::Program& prog, const ExprPtr& residual,
                                  const std::vector<garrow::Value>& args) {
  ExprPtr e = residual;
  for (const auto& a : args) e = app(e, from_value(a));
  return to_value(Interp(prog).eval(e));
}

// Whole pipeline: entry applied to level-0 args, then to guest arguments.
inline garrow::Value run(const garrow::Program& prog, const std::string& entry,
                         const std::vector<garrow::Value>& stage_args, const std::vector<garrow::Value>& args) {
  ExprPtr e = var(entry);
  for (const auto& a : stage_args) e = app(e, from_value(a));
  Interp in(prog);
  return run_residual(prog, in.residual(e), args);
}

}  // namespace oracle
