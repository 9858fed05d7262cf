#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "garrow/mltype.hpp"
#include "garrow/syntax.hpp"

namespace garrow {

struct TypedTerm;
using TypedPtr = std::shared_ptr<TypedTerm>;

/// A surface node with its inferred type and level. Types stay linked to the
/// unification store, so callers read them through prune()/zonk().
struct TypedTerm {
  Expr::Kind kind = Expr::Kind::Var;
  SourcePos pos;
  std::string name;
  Literal lit = Literal::Unit();
  std::vector<TypedPtr> kids;
  MLType type = MLType::Unit();
  Level level;
  /// Lam/Let/LetRec: id of the variable they bind. Var: id of its binder,
  /// or -1 for a reference to a top-level definition.
  int binder = -1;
  /// Type of the variable bound by Lam/Let/LetRec.
  std::optional<MLType> bound_type;
};

struct FreeVar {
  std::string name;
  int binder;
  MLType type;
  Level level;
};

/// Local variables referenced but not bound inside t, in first-use order.
std::vector<FreeVar> free_vars(const TypedTerm& t);

struct TypedDef {
  std::string name;
  TypedPtr body;
  Scheme scheme;
  SourcePos pos;
};

struct TypedProgram {
  std::vector<TypedDef> defs;
  const TypedDef* find(const std::string& name) const;
};

/// Definitions are checked in order; each may refer to itself and to the
/// ones before it. Every definition is generalized over its free type
/// variables and classifiers.
///
/// Throws UnboundVar, LevelMismatch, EscapeAtLevelZero, ClassifierMismatch,
/// TypeMismatch, OccursCheck, or SyntaxError for duplicate definitions.
TypedProgram typecheck(const Program& prog);

/// Checks a closed expression at level zero against the definitions of
/// `globals` (if any).
TypedPtr typecheck_expr(const ExprPtr& e, const TypedProgram* globals = nullptr);

/// Deep copy in which every unbound type variable is replaced by a fresh
/// one, so the copy can be specialized without touching the original.
TypedPtr freshen_term(const TypedPtr& t, std::map<const MLType::VarCell*, MLType>& renaming);

/// Constructor-style dump of the erased term (types omitted); binders keep
/// their source names.
std::string show(const TypedTerm& t);

}  // namespace garrow
