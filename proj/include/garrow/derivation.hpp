#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "garrow/shape.hpp"
#include "garrow/typecheck.hpp"

namespace garrow {

/// Witness of a structural judgment needed ~> given: a proof in the needed
/// context can be reused in the given one. Its wiring runs the other way,
/// from given to needed (see interp_arrangement).
class Arrangement {
 public:
  enum class Kind { Id, CanL, CanR, UCanL, UCanR, Assoc, UAssoc, Left, Right, Exch, Cont, Weak, Comp };

  static Arrangement Id(ShapeTree s);
  /// <<>, s> ~> s
  static Arrangement CanL(ShapeTree s);
  /// <s, <>> ~> s
  static Arrangement CanR(ShapeTree s);
  static Arrangement UCanL(ShapeTree s);
  static Arrangement UCanR(ShapeTree s);
  /// <<a, b>, c> ~> <a, <b, c>>
  static Arrangement Assoc(ShapeTree a, ShapeTree b, ShapeTree c);
  static Arrangement UAssoc(ShapeTree a, ShapeTree b, ShapeTree c);
  /// <frame, src sub> ~> <frame, tgt sub>
  static Arrangement Left(Arrangement sub, ShapeTree frame);
  /// <src sub, frame> ~> <tgt sub, frame>
  static Arrangement Right(Arrangement sub, ShapeTree frame);
  /// <a, b> ~> <b, a>
  static Arrangement Exch(ShapeTree a, ShapeTree b);
  /// <s, s> ~> s
  static Arrangement Cont(ShapeTree s);
  /// <> ~> s
  static Arrangement Weak(ShapeTree s);
  /// first ; then, where tgt(first) = src(then)
  static Arrangement Comp(Arrangement first, Arrangement then);

  Kind kind() const { return node_->kind; }
  const ShapeTree& shape(std::size_t i) const { return node_->shapes.at(i); }
  const Arrangement& sub(std::size_t i) const { return node_->subs.at(i); }

  friend bool operator==(const Arrangement& a, const Arrangement& b);

  struct Node {
    Kind kind;
    std::vector<ShapeTree> shapes;
    std::vector<Arrangement> subs;
    // Endpoints, filled in on construction.
    ShapeTree src = ShapeTree::Empty();
    ShapeTree tgt = ShapeTree::Empty();
  };

 private:
  explicit Arrangement(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Arrangement build(Node n);
  friend ShapeTree arr_src(const Arrangement& a);
  friend ShapeTree arr_tgt(const Arrangement& a);
  std::shared_ptr<const Node> node_;
};

ShapeTree arr_src(const Arrangement& a);
ShapeTree arr_tgt(const Arrangement& a);
Arrangement invert(const Arrangement& a);
std::string to_string(const Arrangement& a);
/// Number of non-Comp, non-Id steps.
std::size_t step_count(const Arrangement& a);

/// Canonical arrangement with arr_src = needed and arr_tgt = given. Leaves
/// are matched by type: the k-th needed leaf of type t reads the k-th given
/// leaf of type t, or the last one when the given context has fewer.
/// Throws MissingLeaf when a needed type does not occur in given.
Arrangement arrange(const ShapeTree& needed, const ShapeTree& given);

struct Derivation;
using DerivPtr = std::shared_ptr<const Derivation>;

/// Typing derivation over binary-tree contexts. `ctx` is the conclusion
/// context, `type` and `level` the succedent.
struct Derivation {
  enum class Rule { Var, Lit, Note, Let, LetRec, Abs, App, Esc, Arrange, Prim };
  Rule rule = Rule::Var;
  ShapeTree ctx = ShapeTree::Empty();
  GuestType type = GuestType::Unit();
  std::size_t level = 1;
  std::vector<DerivPtr> kids;
  std::optional<Arrangement> arrangement;
  /// Var name, binder name, primitive name, or note text.
  std::string name;
  Literal lit = Literal::Unit();
  /// Lit: constant transported from level zero.
  bool transport = false;
  /// Abs at the root of a bracket body: the lambdas whose arguments form
  /// the domain directly (names in order). Empty for ordinary Abs.
  std::vector<std::string> absorbed;
  /// Esc: the spliced code's argument types and result type; kids are the
  /// level-1 arguments it is applied to.
  std::vector<GuestType> splice_args;
  GuestType splice_result = GuestType::Unit();
  const TypedTerm* source = nullptr;
};

/// Left-nested tensor of argument types: <> for none, <t> for one,
/// <absorbed(ts[0..n-1]), <ts[n-1]>> otherwise.
ShapeTree absorbed_shape(const std::vector<GuestType>& ts);

/// Splits t1 -> ... -> tk -> r (r not a function) into ([t1..tk], r).
std::pair<std::vector<GuestType>, GuestType> split_arrows(const GuestType& t);

/// Exact context a level-1 term demands, one leaf per variable occurrence.
/// Types must be resolved (unbound variables read as Int).
ShapeTree required_context(const TypedTerm& t);

/// Derivation of a bracket body. Leading lambdas are absorbed into the
/// domain; every other binder extends its context on the right and reaches
/// its body through an Arrange node when the shapes differ.
/// Throws NestedBracketUnsupported for brackets inside the body and
/// MissingLeaf for variables bound outside it.
DerivPtr elaborate(const TypedTerm& body);

/// One rule per line, indented by depth: "Rule ctx |- type".
std::string dump(const Derivation& d);

/// Surface term read back from a derivation, in the format of show().
std::string erase(const Derivation& d);

}  // namespace garrow
