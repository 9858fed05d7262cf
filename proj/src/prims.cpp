#include "garrow/prims.hpp"

#include <map>

#include "garrow/error.hpp"

namespace garrow {

namespace {

TypePattern tint() { return {TypePattern::Kind::Int, 0, {}}; }
TypePattern tbool() { return {TypePattern::Kind::Bool, 0, {}}; }
TypePattern tvar(int v) { return {TypePattern::Kind::Var, v, {}}; }
TypePattern tprod(TypePattern a, TypePattern b) {
  return {TypePattern::Kind::Prod, 0, {std::move(a), std::move(b)}};
}

ShapePattern leaf(TypePattern t) { return {true, std::move(t), {}}; }
ShapePattern branch(ShapePattern l, ShapePattern r) {
  return {false, {}, {std::move(l), std::move(r)}};
}

ShapePattern int_pair() { return branch(leaf(tint()), leaf(tint())); }

std::vector<PrimInfo> build_table() {
  std::vector<PrimInfo> t;
  t.push_back({"mult", int_pair(), tint(), "\\p -> (fst p * snd p)", std::nullopt});
  t.push_back({"add", int_pair(), tint(), "\\p -> (fst p + snd p)", std::nullopt});
  t.push_back({"sub", int_pair(), tint(), "\\p -> (fst p - snd p)", std::nullopt});
  t.push_back({"eq", int_pair(), tbool(), "\\p -> (fst p == snd p)", std::nullopt});
  t.push_back({"ite", branch(leaf(tbool()), branch(leaf(tvar(0)), leaf(tvar(0)))), tvar(0),
               "\\p -> if fst p then fst (snd p) else snd (snd p)", std::nullopt});
  t.push_back({"succ", leaf(tint()), tint(), "\\n -> (n + 1)", "pred"});
  t.push_back({"pred", leaf(tint()), tint(), "\\n -> (n - 1)", "succ"});
  t.push_back({"neg", leaf(tint()), tint(), "\\n -> (0 - n)", "neg"});
  t.push_back({"pair", branch(leaf(tvar(0)), leaf(tvar(1))), tprod(tvar(0), tvar(1)), "\\p -> p",
               std::nullopt});
  t.push_back({"fst", leaf(tprod(tvar(0), tvar(1))), tvar(0), "\\p -> fst p", std::nullopt});
  t.push_back({"snd", leaf(tprod(tvar(0), tvar(1))), tvar(1), "\\p -> snd p", std::nullopt});
  return t;
}

using Binding = std::map<int, GuestType>;

bool match_type(const TypePattern& p, const GuestType& t, Binding& b) {
  switch (p.kind) {
    case TypePattern::Kind::Var: {
      auto it = b.find(p.var);
      if (it == b.end()) {
        b.emplace(p.var, t);
        return true;
      }
      return it->second == t;
    }
    case TypePattern::Kind::Int: return t.is(GuestType::Kind::Int);
    case TypePattern::Kind::Bool: return t.is(GuestType::Kind::Bool);
    case TypePattern::Kind::Unit: return t.is(GuestType::Kind::Unit);
    case TypePattern::Kind::Prod:
      return t.is(GuestType::Kind::Prod) && match_type(p.kids[0], t.left(), b) &&
             match_type(p.kids[1], t.right(), b);
  }
  return false;
}

bool match_shape(const ShapePattern& p, const ShapeTree& s, Binding& b) {
  if (p.leaf) return s.is_leaf() && match_type(p.type, s.type(), b);
  return s.is_branch() && match_shape(p.kids[0], s.left(), b) &&
         match_shape(p.kids[1], s.right(), b);
}

GuestType instantiate(const TypePattern& p, const Binding& b) {
  switch (p.kind) {
    case TypePattern::Kind::Var: return b.at(p.var);
    case TypePattern::Kind::Int: return GuestType::Int();
    case TypePattern::Kind::Bool: return GuestType::Bool();
    case TypePattern::Kind::Unit: return GuestType::Unit();
    case TypePattern::Kind::Prod:
      return GuestType::Prod(instantiate(p.kids[0], b), instantiate(p.kids[1], b));
  }
  return GuestType::Int();
}

std::string render(const ShapePattern& p);

std::string render(const TypePattern& p) {
  switch (p.kind) {
    case TypePattern::Kind::Var: return std::string(1, static_cast<char>('a' + p.var));
    case TypePattern::Kind::Int: return "Int";
    case TypePattern::Kind::Bool: return "Bool";
    case TypePattern::Kind::Unit: return "()";
    case TypePattern::Kind::Prod: return "(" + render(p.kids[0]) + " * " + render(p.kids[1]) + ")";
  }
  return "?";
}

std::string render(const ShapePattern& p) {
  if (p.leaf) return "<" + render(p.type) + ">";
  return "<" + render(p.kids[0]) + ", " + render(p.kids[1]) + ">";
}

std::int64_t int_at(const Value& v) { return v.as_int(); }

}  // namespace

const std::vector<PrimInfo>& prim_table() {
  static const std::vector<PrimInfo> table = build_table();
  return table;
}

const PrimInfo* find_prim(const std::string& name) {
  for (const auto& p : prim_table()) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

ShapeTree prim_codomain(const std::string& name, const ShapeTree& dom) {
  const PrimInfo* info = find_prim(name);
  if (!info) fail(ErrorCode::PrimUndefined, "unknown primitive '" + name + "'");
  Binding b;
  if (!match_shape(info->dom, dom, b)) {
    fail(ErrorCode::IllTyped, "prim " + name + ": expected input " + render(info->dom) + ", got " +
                                  dom.to_string());
  }
  return ShapeTree::Leaf(instantiate(info->cod, b));
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) {
    fail(ErrorCode::Overflow, std::to_string(a) + " + " + std::to_string(b) + " overflows");
  }
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) {
    fail(ErrorCode::Overflow, std::to_string(a) + " - " + std::to_string(b) + " overflows");
  }
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) {
    fail(ErrorCode::Overflow, std::to_string(a) + " * " + std::to_string(b) + " overflows");
  }
  return r;
}

Value apply_prim(const std::string& name, const Value& input) {
  Value in = input.force();
  auto pair = [&]() -> const Value& {
    if (!in.is(Value::Kind::Pair)) {
      fail(ErrorCode::ShapeMismatch, "prim " + name + " expects a pair, got " + in.to_string());
    }
    return in;
  };
  if (name == "mult") return Value::Int(checked_mul(int_at(pair().left()), int_at(in.right())));
  if (name == "add") return Value::Int(checked_add(int_at(pair().left()), int_at(in.right())));
  if (name == "sub") return Value::Int(checked_sub(int_at(pair().left()), int_at(in.right())));
  if (name == "eq") return Value::Bool(int_at(pair().left()) == int_at(in.right()));
  if (name == "ite") {
    Value branches = pair().right().force();
    return pair().left().as_bool() ? branches.left() : branches.right();
  }
  if (name == "succ") return Value::Int(checked_add(in.as_int(), 1));
  if (name == "pred") return Value::Int(checked_sub(in.as_int(), 1));
  if (name == "neg") return Value::Int(checked_sub(0, in.as_int()));
  if (name == "pair") return pair();
  if (name == "fst") return pair().left();
  if (name == "snd") return pair().right();
  fail(ErrorCode::PrimUndefined, "unknown primitive '" + name + "'");
}

}  // namespace garrow
