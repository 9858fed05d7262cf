#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "garrow/error.hpp"
#include "garrow/shape.hpp"

namespace garrow {

/// Environment classifier: a unification variable or a rigid name taken
/// from an annotation. Variables only ever link to other classifiers.
class Classifier {
 public:
  struct Cell {
    int id;
    std::string rigid;  // empty for a flexible variable
    std::shared_ptr<Cell> link;
  };

  static Classifier fresh();
  static Classifier rigid(const std::string& name);

  /// Representative after following links.
  std::shared_ptr<Cell> repr() const;
  bool is_rigid() const { return !repr()->rigid.empty(); }
  bool same(const Classifier& o) const { return repr() == o.repr(); }

  explicit Classifier(std::shared_ptr<Cell> c) : cell_(std::move(c)) {}

 private:
  std::shared_ptr<Cell> cell_;
};

/// Innermost classifier first; empty at level zero.
using Level = std::vector<Classifier>;

struct TyVarCell;

/// Multi-level types: Int, Bool, (), functions, products, code types
/// <[t]>@c and unification variables.
class MLType {
 public:
  enum class Kind { Int, Bool, Unit, Fun, Prod, Code, Var };

  using VarCell = TyVarCell;

  static MLType Int();
  static MLType Bool();
  static MLType Unit();
  static MLType Fun(MLType dom, MLType cod);
  static MLType Prod(MLType l, MLType r);
  static MLType Code(MLType inner, Classifier c);
  static MLType fresh();

  /// Follows variable links at the root.
  MLType prune() const;

  Kind kind() const;
  const MLType& left() const;   // Fun dom, Prod left, Code inner
  const MLType& right() const;  // Fun cod, Prod right
  const Classifier& classifier() const;
  const std::shared_ptr<VarCell>& var() const;

  struct Node;

 private:
  explicit MLType(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct MLType::Node {
  Kind kind;
  std::vector<MLType> kids;
  std::optional<Classifier> cls;
  std::shared_ptr<VarCell> var;
};

struct TyVarCell {
  int id;
  std::optional<MLType> link;
};

/// Throws TypeMismatch, OccursCheck, or ClassifierMismatch.
void unify(const MLType& expected, const MLType& actual, std::optional<SourcePos> pos = std::nullopt);
void unify_classifiers(const Classifier& a, const Classifier& b, std::optional<SourcePos> pos = std::nullopt);
bool levels_unify(const Level& a, const Level& b);

/// Generalized type of a top-level definition.
struct Scheme {
  MLType type;
  std::vector<std::shared_ptr<MLType::VarCell>> tvars;
  std::vector<std::shared_ptr<Classifier::Cell>> cvars;
};

Scheme generalize(const MLType& t);
Scheme mono(const MLType& t);
MLType instantiate(const Scheme& s);

/// Copies t, replacing every unbound type variable by a fresh one (shared
/// within one call through `renaming`).
MLType freshen(const MLType& t, std::map<const MLType::VarCell*, MLType>& renaming);

/// Type with all links followed.
MLType zonk(const MLType& t);

bool has_type_vars(const MLType& t);

/// Guest type of a zonked level-1 type; unbound variables become Int.
/// Code types have no guest counterpart and raise NestedBracketUnsupported.
GuestType to_guest(const MLType& t);
MLType from_guest(const GuestType& t);

/// Readable rendering: type variables are named x, y, z, w, v, u, ... and
/// classifiers c, c1, c2, ... in order of appearance; free classifiers are
/// listed under a leading forall.
std::string print_type(const MLType& t);

/// Rendering used in diagnostics (variables shown as 't<id>').
std::string debug_type(const MLType& t);

}  // namespace garrow
