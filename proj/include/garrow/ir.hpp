#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "garrow/shape.hpp"

namespace garrow {

struct Signature {
  ShapeTree dom;
  ShapeTree cod;

  friend bool operator==(const Signature& a, const Signature& b) {
    return a.dom == b.dom && a.cod == b.cod;
  }
};

/// A term of the generalized-arrow combinator language. Every node carries
/// the shapes needed to compute its domain and codomain without inference.
/// Terms are immutable and cheap to copy.
class GaTerm {
 public:
  enum class Kind {
    Id, Comp, First, Second,
    CancelL, CancelR, UncancelL, UncancelR, Assoc, Unassoc,
    Copy, Drop, Swap,
    Constant, Prim,
    CurryR, ApplyR, LoopR,
    Merge, Never, InjL, InjR,
  };

  struct Node {
    Kind kind;
    std::vector<GaTerm> kids;
    std::vector<ShapeTree> shapes;
    std::vector<GuestType> types;
    Literal lit = Literal::Unit();
    std::string name;
    /// Filled in at construction when the node is well typed.
    std::optional<Signature> sig;
    /// Built only from wiring and constants: total, and forces nothing
    /// beyond what it rearranges.
    bool wiring = false;
  };

  explicit GaTerm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return node_->kind == k; }

  const GaTerm& kid(std::size_t i) const { return node_->kids.at(i); }
  std::size_t kid_count() const { return node_->kids.size(); }
  const ShapeTree& shape(std::size_t i) const { return node_->shapes.at(i); }
  const GuestType& guest(std::size_t i) const { return node_->types.at(i); }
  const Literal& literal() const { return node_->lit; }
  const std::string& name() const { return node_->name; }

  /// Structural equality including shape annotations.
  friend bool operator==(const GaTerm& a, const GaTerm& b);
  friend bool operator!=(const GaTerm& a, const GaTerm& b) { return !(a == b); }

  bool same_node(const GaTerm& o) const { return node_ == o.node_; }
  /// Domain and codomain, when the node was well typed at construction.
  const std::optional<Signature>& signature() const { return node_->sig; }
  bool is_wiring() const { return node_->wiring; }

 private:
  std::shared_ptr<const Node> node_;
};

/// Rendering head for a combinator kind, e.g. "comp", "cancell".
std::string_view head_name(GaTerm::Kind k);

std::size_t node_count(const GaTerm& t);

namespace ga {

GaTerm id(ShapeTree s);
GaTerm comp(GaTerm f, GaTerm g);
GaTerm first(GaTerm f, ShapeTree z);
GaTerm second(GaTerm f, ShapeTree z);
GaTerm cancel_l(ShapeTree x);
GaTerm cancel_r(ShapeTree x);
GaTerm uncancel_l(ShapeTree x);
GaTerm uncancel_r(ShapeTree x);
GaTerm assoc(ShapeTree x, ShapeTree y, ShapeTree z);
GaTerm unassoc(ShapeTree x, ShapeTree y, ShapeTree z);
GaTerm copy(ShapeTree x);
GaTerm drop(ShapeTree x);
GaTerm swap(ShapeTree x, ShapeTree y);
GaTerm constant(Literal lit, GuestType t);
GaTerm prim(std::string name, ShapeTree ins, ShapeTree out);
GaTerm curry_r(GaTerm f);
GaTerm apply_r(GuestType x, GuestType y);
GaTerm loop_r(GaTerm f, ShapeTree z);
GaTerm merge(GuestType x);
GaTerm never(GuestType x);
GaTerm inj_l(GuestType x, GuestType y);
GaTerm inj_r(GuestType x, GuestType y);

/// Left-to-right composition of a sequence; an empty sequence is id(dom).
GaTerm chain(const std::vector<GaTerm>& steps, const ShapeTree& dom);

}  // namespace ga

/// Domain and codomain of a term. Throws IllTyped with the path to the
/// offending node when a composition, curry, or loop side condition fails.
Signature ga_type_of(const GaTerm& t);

struct NormalizeOptions {
  /// Also rewrite first(id) and second(id) to id. Off by default so that
  /// flattened terms keep the parallel-identity wire that pow's combinator
  /// form shows.
  bool collapse_framed_identity = false;
};

/// Peephole cleanup of arrangement noise: identity elimination, inverse
/// cancel/assoc/swap pairs, and right-nested composition. Preserves
/// ga_type_of and the semantics of every backend.
GaTerm normalize(const GaTerm& t, NormalizeOptions opts = {});

}  // namespace garrow
