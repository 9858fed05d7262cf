#include "garrow/shape.hpp"

#include "garrow/error.hpp"
#include "node_pool.hpp"

namespace garrow {

namespace {

const GuestType& int_type() {
  static const GuestType t = GuestType::Int();
  return t;
}

}  // namespace

GuestType GuestType::Int() {
  static const auto node = std::make_shared<const Node>(Node{Kind::Int, {}});
  return GuestType(node);
}

GuestType GuestType::Bool() {
  static const auto node = std::make_shared<const Node>(Node{Kind::Bool, {}});
  return GuestType(node);
}

GuestType GuestType::Unit() {
  static const auto node = std::make_shared<const Node>(Node{Kind::Unit, {}});
  return GuestType(node);
}

GuestType GuestType::Exp(GuestType dom, GuestType cod) {
  return GuestType(std::make_shared<const Node>(
      Node{Kind::Exp, {std::move(dom), std::move(cod)}}));
}

GuestType GuestType::Sum(GuestType l, GuestType r) {
  return GuestType(std::make_shared<const Node>(
      Node{Kind::Sum, {std::move(l), std::move(r)}}));
}

GuestType GuestType::Prod(GuestType l, GuestType r) {
  return GuestType(std::make_shared<const Node>(
      Node{Kind::Prod, {std::move(l), std::move(r)}}));
}

const GuestType& GuestType::left() const {
  if (node_->kids.size() != 2) fail(ErrorCode::Internal, "left() of atomic guest type");
  return node_->kids[0];
}

const GuestType& GuestType::right() const {
  if (node_->kids.size() != 2) fail(ErrorCode::Internal, "right() of atomic guest type");
  return node_->kids[1];
}

bool operator==(const GuestType& a, const GuestType& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->kind != b.node_->kind) return false;
  for (std::size_t i = 0; i < a.node_->kids.size(); ++i) {
    if (a.node_->kids[i] != b.node_->kids[i]) return false;
  }
  return true;
}

std::string GuestType::to_string() const {
  switch (kind()) {
    case Kind::Int: return "Int";
    case Kind::Bool: return "Bool";
    case Kind::Unit: return "()";
    case Kind::Exp: return "(" + left().to_string() + " -> " + right().to_string() + ")";
    case Kind::Sum: return "(" + left().to_string() + " + " + right().to_string() + ")";
    case Kind::Prod: return "(" + left().to_string() + " * " + right().to_string() + ")";
  }
  return "?";
}

ShapeTree ShapeTree::Empty() {
  static const auto node = std::make_shared<const Node>(Node{Kind::Empty, std::nullopt});
  return ShapeTree(node);
}

ShapeTree ShapeTree::Leaf(GuestType t) {
  return ShapeTree(detail::make_pooled<Node>(Node{Kind::Leaf, std::move(t)}));
}

ShapeTree ShapeTree::Branch(ShapeTree l, ShapeTree r) {
  return ShapeTree(detail::make_pooled<Node>(Node{Kind::Branch, std::nullopt, std::move(l), std::move(r)}));
}

const GuestType& ShapeTree::type() const {
  if (!is_leaf()) fail(ErrorCode::Internal, "type() of non-leaf shape " + to_string());
  return *node_->type;
}

const ShapeTree& ShapeTree::left() const {
  if (!is_branch()) fail(ErrorCode::Internal, "left() of non-branch shape " + to_string());
  return node_->l;
}

const ShapeTree& ShapeTree::right() const {
  if (!is_branch()) fail(ErrorCode::Internal, "right() of non-branch shape " + to_string());
  return node_->r;
}

namespace {

void collect_leaves(const ShapeTree& s, std::vector<GuestType>& out) {
  switch (s.kind()) {
    case ShapeTree::Kind::Empty: return;
    case ShapeTree::Kind::Leaf: out.push_back(s.type()); return;
    case ShapeTree::Kind::Branch:
      collect_leaves(s.left(), out);
      collect_leaves(s.right(), out);
      return;
  }
}

}  // namespace

std::vector<GuestType> ShapeTree::leaves() const {
  std::vector<GuestType> out;
  collect_leaves(*this, out);
  return out;
}

std::size_t ShapeTree::leaf_count() const {
  switch (kind()) {
    case Kind::Empty: return 0;
    case Kind::Leaf: return 1;
    case Kind::Branch: return left().leaf_count() + right().leaf_count();
  }
  return 0;
}

bool operator==(const ShapeTree& a, const ShapeTree& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case ShapeTree::Kind::Empty: return true;
    case ShapeTree::Kind::Leaf: return a.type() == b.type();
    case ShapeTree::Kind::Branch: return a.left() == b.left() && a.right() == b.right();
  }
  return false;
}

std::string ShapeTree::to_string() const {
  switch (kind()) {
    case Kind::Empty: return "<>";
    case Kind::Leaf: return "<" + type().to_string() + ">";
    case Kind::Branch: return "<" + left().to_string() + ", " + right().to_string() + ">";
  }
  return "?";
}

GuestType Literal::type() const {
  switch (kind_) {
    case Kind::Int: return int_type();
    case Kind::Bool: return GuestType::Bool();
    case Kind::Unit: return GuestType::Unit();
  }
  return int_type();
}

std::string Literal::to_string() const {
  switch (kind_) {
    case Kind::Int: return std::to_string(int_);
    case Kind::Bool: return bool_ ? "true" : "false";
    case Kind::Unit: return "()";
  }
  return "?";
}

}  // namespace garrow
