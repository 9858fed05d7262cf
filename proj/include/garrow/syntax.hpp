#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "garrow/error.hpp"
#include "garrow/shape.hpp"
#include "garrow/value.hpp"

namespace garrow {

/// Type annotations as written. Lowercase names are type variables local to
/// the enclosing definition; names after '@' are rigid classifiers, also
/// local to the definition.
struct TypeExpr {
  enum class Kind { Int, Bool, Unit, Fun, Prod, Code, Var };
  Kind kind = Kind::Int;
  std::vector<TypeExpr> kids;
  std::string name;  // Var name or Code classifier
  SourcePos pos;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Surface AST. Binary operators, pairs and projections are PrimOp nodes
/// named after the guest primitive (mult, add, sub, eq, pair, fst, snd).
struct Expr {
  enum class Kind { Var, Lit, Lam, App, Let, LetRec, If, PrimOp, Brak, Esc, Note };
  Kind kind = Kind::Var;
  SourcePos pos;
  std::string name;  // Var, binder, PrimOp name, Note text
  Literal lit = Literal::Unit();
  std::optional<TypeExpr> annot;
  std::vector<ExprPtr> kids;
};

struct Definition {
  std::string name;
  ExprPtr body;  // parameters are desugared into Lam nodes
  SourcePos pos;
};

using Program = std::vector<Definition>;

/// Throws SyntaxError with the position of the offending token.
Program parse_program(const std::string& source);
ExprPtr parse_expr(const std::string& source);
TypeExpr parse_type(const std::string& source);

/// Literal values for command-line arguments and run inputs: integers
/// (optionally negative), true, false, () and pairs (v, v).
Value parse_value(const std::string& text);

/// Constructor-style dump, e.g. Brak(Lam(x, Var x)).
std::string show(const Expr& e);
std::string show(const TypeExpr& t);

}  // namespace garrow
