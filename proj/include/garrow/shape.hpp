#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace garrow {

/// Guest-level types. ExpT is the exponential object introduced by curry
/// combinators; it has nothing to do with host-level functions.
class GuestType {
 public:
  enum class Kind { Int, Bool, Unit, Exp, Sum, Prod };

  static GuestType Int();
  static GuestType Bool();
  static GuestType Unit();
  static GuestType Exp(GuestType dom, GuestType cod);
  static GuestType Sum(GuestType l, GuestType r);
  static GuestType Prod(GuestType l, GuestType r);

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }
  /// Children of Exp/Sum/Prod. For Exp, left() is the domain.
  const GuestType& left() const;
  const GuestType& right() const;

  friend bool operator==(const GuestType& a, const GuestType& b);
  friend bool operator!=(const GuestType& a, const GuestType& b) { return !(a == b); }

  std::string to_string() const;

 private:
  struct Node;
  explicit GuestType(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct GuestType::Node {
  Kind kind;
  std::vector<GuestType> kids;
};

inline GuestType::Kind GuestType::kind() const { return node_->kind; }

/// Binary tree of guest types with empty leaves: Tree(S) = <> | <S> | <T, T>.
/// Used both as IR object and as typing context.
class ShapeTree {
 public:
  enum class Kind { Empty, Leaf, Branch };

  static ShapeTree Empty();
  static ShapeTree Leaf(GuestType t);
  static ShapeTree Branch(ShapeTree l, ShapeTree r);

  Kind kind() const;
  bool is_empty() const { return kind() == Kind::Empty; }
  bool is_leaf() const { return kind() == Kind::Leaf; }
  bool is_branch() const { return kind() == Kind::Branch; }

  const GuestType& type() const;  // Leaf only
  const ShapeTree& left() const;  // Branch only
  const ShapeTree& right() const;

  /// Left-to-right leaf types; Empty contributes nothing.
  std::vector<GuestType> leaves() const;
  std::size_t leaf_count() const;

  friend bool operator==(const ShapeTree& a, const ShapeTree& b);
  friend bool operator!=(const ShapeTree& a, const ShapeTree& b) { return !(a == b); }

  /// Angle-bracket rendering: <>, <Int>, <<Int>, <Bool>>.
  std::string to_string() const;

 private:
  struct Node;
  explicit ShapeTree(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct ShapeTree::Node {
  Kind kind;
  std::optional<GuestType> type;  // Leaf only
  ShapeTree l = ShapeTree(nullptr);  // Branch only
  ShapeTree r = ShapeTree(nullptr);
};

inline ShapeTree::Kind ShapeTree::kind() const { return node_->kind; }

/// Literal constants; integers are 64-bit signed with checked arithmetic.
class Literal {
 public:
  enum class Kind { Int, Bool, Unit };

  static Literal Int(std::int64_t v) { return Literal(Kind::Int, v, false); }
  static Literal Bool(bool v) { return Literal(Kind::Bool, 0, v); }
  static Literal Unit() { return Literal(Kind::Unit, 0, false); }

  Kind kind() const { return kind_; }
  std::int64_t as_int() const { return int_; }
  bool as_bool() const { return bool_; }
  GuestType type() const;

  friend bool operator==(const Literal& a, const Literal& b) {
    return a.kind_ == b.kind_ && a.int_ == b.int_ && a.bool_ == b.bool_;
  }

  std::string to_string() const;

 private:
  Literal(Kind k, std::int64_t i, bool b) : kind_(k), int_(i), bool_(b) {}
  Kind kind_;
  std::int64_t int_;
  bool bool_;
};

}  // namespace garrow
