#include "garrow/mltype.hpp"

#include <algorithm>
#include <atomic>
#include <functional>

namespace garrow {

namespace {

std::atomic<int> next_id{0};

using Kind = MLType::Kind;

}  // namespace

Classifier Classifier::fresh() {
  return Classifier(std::make_shared<Cell>(Cell{next_id++, "", nullptr}));
}

Classifier Classifier::rigid(const std::string& name) {
  return Classifier(std::make_shared<Cell>(Cell{next_id++, name, nullptr}));
}

std::shared_ptr<Classifier::Cell> Classifier::repr() const {
  std::shared_ptr<Cell> c = cell_;
  while (c->link) c = c->link;
  return c;
}

MLType::Kind MLType::kind() const { return node_->kind; }

MLType MLType::Int() {
  static const MLType t(std::make_shared<const Node>(Node{Kind::Int, {}, std::nullopt, nullptr}));
  return t;
}

MLType MLType::Bool() {
  static const MLType t(std::make_shared<const Node>(Node{Kind::Bool, {}, std::nullopt, nullptr}));
  return t;
}

MLType MLType::Unit() {
  static const MLType t(std::make_shared<const Node>(Node{Kind::Unit, {}, std::nullopt, nullptr}));
  return t;
}

MLType MLType::Fun(MLType dom, MLType cod) {
  return MLType(std::make_shared<const Node>(Node{Kind::Fun, {std::move(dom), std::move(cod)}, std::nullopt, nullptr}));
}

MLType MLType::Prod(MLType l, MLType r) {
  return MLType(std::make_shared<const Node>(Node{Kind::Prod, {std::move(l), std::move(r)}, std::nullopt, nullptr}));
}

MLType MLType::Code(MLType inner, Classifier c) {
  return MLType(std::make_shared<const Node>(Node{Kind::Code, {std::move(inner)}, std::move(c), nullptr}));
}

MLType MLType::fresh() {
  return MLType(std::make_shared<const Node>(
      Node{Kind::Var, {}, std::nullopt, std::make_shared<VarCell>(VarCell{next_id++, std::nullopt})}));
}

MLType MLType::prune() const {
  MLType t = *this;
  while (t.kind() == Kind::Var && t.var()->link) t = *t.var()->link;
  return t;
}

const MLType& MLType::left() const { return node_->kids.at(0); }
const MLType& MLType::right() const { return node_->kids.at(1); }
const Classifier& MLType::classifier() const { return *node_->cls; }
const std::shared_ptr<MLType::VarCell>& MLType::var() const { return node_->var; }

std::string debug_type(const MLType& t0) {
  MLType t = t0.prune();
  switch (t.kind()) {
    case Kind::Int: return "Int";
    case Kind::Bool: return "Bool";
    case Kind::Unit: return "()";
    case Kind::Var: return "t" + std::to_string(t.var()->id);
    case Kind::Fun: return "(" + debug_type(t.left()) + " -> " + debug_type(t.right()) + ")";
    case Kind::Prod: return "(" + debug_type(t.left()) + " * " + debug_type(t.right()) + ")";
    case Kind::Code: {
      auto c = t.classifier().repr();
      std::string name = c->rigid.empty() ? "c" + std::to_string(c->id) : c->rigid;
      return "<[" + debug_type(t.left()) + "]>@" + name;
    }
  }
  return "?";
}

namespace {

bool occurs(const MLType::VarCell* v, const MLType& t0) {
  MLType t = t0.prune();
  if (t.kind() == Kind::Var) return t.var().get() == v;
  switch (t.kind()) {
    case Kind::Fun:
    case Kind::Prod: return occurs(v, t.left()) || occurs(v, t.right());
    case Kind::Code: return occurs(v, t.left());
    default: return false;
  }
}

}  // namespace

void unify_classifiers(const Classifier& a, const Classifier& b, std::optional<SourcePos> pos) {
  auto x = a.repr();
  auto y = b.repr();
  if (x == y) return;
  if (x->rigid.empty()) {
    x->link = y;
  } else if (y->rigid.empty()) {
    y->link = x;
  } else {
    fail(ErrorCode::ClassifierMismatch, "classifier " + x->rigid + " does not match " + y->rigid, pos);
  }
}

bool levels_unify(const Level& a, const Level& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto x = a[i].repr(), y = b[i].repr();
    if (x != y && !x->rigid.empty() && !y->rigid.empty()) return false;
  }
  for (std::size_t i = 0; i < a.size(); ++i) unify_classifiers(a[i], b[i]);
  return true;
}

void unify(const MLType& expected0, const MLType& actual0, std::optional<SourcePos> pos) {
  std::function<void(const MLType&, const MLType&)> go = [&](const MLType& e0, const MLType& a0) {
    MLType e = e0.prune();
    MLType a = a0.prune();
    if (e.kind() == Kind::Var && a.kind() == Kind::Var && e.var() == a.var()) return;
    if (e.kind() == Kind::Var || a.kind() == Kind::Var) {
      const MLType& v = e.kind() == Kind::Var ? e : a;
      const MLType& other = e.kind() == Kind::Var ? a : e;
      if (occurs(v.var().get(), other)) {
        fail(ErrorCode::OccursCheck, "cannot construct the infinite type " + debug_type(v) + " = " + debug_type(other), pos);
      }
      v.var()->link = other;
      return;
    }
    if (e.kind() != a.kind()) {
      fail(ErrorCode::TypeMismatch,
           "expected " + debug_type(expected0) + ", got " + debug_type(actual0) +
               (expected0.prune().kind() == e.kind() ? "" : " (" + debug_type(e) + " vs " + debug_type(a) + ")"),
           pos);
    }
    switch (e.kind()) {
      case Kind::Fun:
      case Kind::Prod:
        go(e.left(), a.left());
        go(e.right(), a.right());
        return;
      case Kind::Code:
        unify_classifiers(e.classifier(), a.classifier(), pos);
        go(e.left(), a.left());
        return;
      default: return;
    }
  };
  go(expected0, actual0);
}

namespace {

void collect(const MLType& t0, std::vector<std::shared_ptr<MLType::VarCell>>& tv,
             std::vector<std::shared_ptr<Classifier::Cell>>& cv) {
  MLType t = t0.prune();
  switch (t.kind()) {
    case Kind::Var:
      if (std::find(tv.begin(), tv.end(), t.var()) == tv.end()) tv.push_back(t.var());
      return;
    case Kind::Fun:
    case Kind::Prod:
      collect(t.left(), tv, cv);
      collect(t.right(), tv, cv);
      return;
    case Kind::Code: {
      auto c = t.classifier().repr();
      if (std::find(cv.begin(), cv.end(), c) == cv.end()) cv.push_back(c);
      collect(t.left(), tv, cv);
      return;
    }
    default: return;
  }
}

MLType copy_with(const MLType& t0, std::map<const MLType::VarCell*, MLType>& tmap,
                 std::map<const Classifier::Cell*, Classifier>* cmap, bool all_vars) {
  MLType t = t0.prune();
  switch (t.kind()) {
    case Kind::Var: {
      auto it = tmap.find(t.var().get());
      if (it != tmap.end()) return it->second;
      if (!all_vars) return t;
      MLType f = MLType::fresh();
      tmap.emplace(t.var().get(), f);
      return f;
    }
    case Kind::Fun: return MLType::Fun(copy_with(t.left(), tmap, cmap, all_vars), copy_with(t.right(), tmap, cmap, all_vars));
    case Kind::Prod: return MLType::Prod(copy_with(t.left(), tmap, cmap, all_vars), copy_with(t.right(), tmap, cmap, all_vars));
    case Kind::Code: {
      Classifier c = t.classifier();
      if (cmap) {
        auto it = cmap->find(c.repr().get());
        if (it != cmap->end()) c = it->second;
      }
      return MLType::Code(copy_with(t.left(), tmap, cmap, all_vars), c);
    }
    default: return t;
  }
}

}  // namespace

Scheme generalize(const MLType& t) {
  Scheme s{t, {}, {}};
  collect(t, s.tvars, s.cvars);
  return s;
}

Scheme mono(const MLType& t) { return Scheme{t, {}, {}}; }

MLType instantiate(const Scheme& s) {
  if (s.tvars.empty() && s.cvars.empty()) return s.type;
  std::map<const MLType::VarCell*, MLType> tmap;
  std::map<const Classifier::Cell*, Classifier> cmap;
  for (const auto& v : s.tvars) tmap.emplace(v.get(), MLType::fresh());
  for (const auto& c : s.cvars) cmap.emplace(c.get(), Classifier::fresh());
  return copy_with(s.type, tmap, &cmap, false);
}

MLType freshen(const MLType& t, std::map<const MLType::VarCell*, MLType>& renaming) {
  return copy_with(t, renaming, nullptr, true);
}

MLType zonk(const MLType& t0) {
  MLType t = t0.prune();
  switch (t.kind()) {
    case Kind::Fun: return MLType::Fun(zonk(t.left()), zonk(t.right()));
    case Kind::Prod: return MLType::Prod(zonk(t.left()), zonk(t.right()));
    case Kind::Code: return MLType::Code(zonk(t.left()), t.classifier());
    default: return t;
  }
}

bool has_type_vars(const MLType& t0) {
  MLType t = t0.prune();
  switch (t.kind()) {
    case Kind::Var: return true;
    case Kind::Fun:
    case Kind::Prod: return has_type_vars(t.left()) || has_type_vars(t.right());
    case Kind::Code: return has_type_vars(t.left());
    default: return false;
  }
}

GuestType to_guest(const MLType& t0) {
  MLType t = t0.prune();
  switch (t.kind()) {
    case Kind::Int:
    case Kind::Var: return GuestType::Int();
    case Kind::Bool: return GuestType::Bool();
    case Kind::Unit: return GuestType::Unit();
    case Kind::Fun: return GuestType::Exp(to_guest(t.left()), to_guest(t.right()));
    case Kind::Prod: return GuestType::Prod(to_guest(t.left()), to_guest(t.right()));
    case Kind::Code:
      fail(ErrorCode::NestedBracketUnsupported, "code type " + debug_type(t) + " inside guest code");
  }
  return GuestType::Int();
}

MLType from_guest(const GuestType& t) {
  switch (t.kind()) {
    case GuestType::Kind::Int: return MLType::Int();
    case GuestType::Kind::Bool: return MLType::Bool();
    case GuestType::Kind::Unit: return MLType::Unit();
    case GuestType::Kind::Exp: return MLType::Fun(from_guest(t.left()), from_guest(t.right()));
    case GuestType::Kind::Prod: return MLType::Prod(from_guest(t.left()), from_guest(t.right()));
    case GuestType::Kind::Sum:
      fail(ErrorCode::TypeMismatch, "sum type " + t.to_string() + " has no surface counterpart");
  }
  return MLType::Int();
}

namespace {

class Printer {
 public:
  std::string top(const MLType& t) {
    std::string body = type(t, 0);
    if (cls_.empty()) return body;
    std::string out = "forall";
    for (const auto& [cell, name] : cls_order_) {
      if (cell->rigid.empty()) out += " " + name;
    }
    return out == "forall" ? body : out + ". " + body;
  }

 private:
  // prec: 0 = function position allowed, 1 = product operand, 2 = atom
  std::string type(const MLType& t0, int prec) {
    MLType t = t0.prune();
    switch (t.kind()) {
      case Kind::Int: return "Int";
      case Kind::Bool: return "Bool";
      case Kind::Unit: return "()";
      case Kind::Var: return var_name(t.var().get());
      // Names are handed out in reading order, so operands are rendered in
      // separate statements.
      case Kind::Fun: {
        std::string l = type(t.left(), 1);
        std::string s = l + " -> " + type(t.right(), 0);
        return prec > 0 ? "(" + s + ")" : s;
      }
      case Kind::Prod: {
        std::string l = type(t.left(), 2);
        std::string s = l + " * " + type(t.right(), 2);
        return prec > 1 ? "(" + s + ")" : s;
      }
      case Kind::Code: {
        std::string c = cls_name(t.classifier());
        return "<[" + type(t.left(), 0) + "]>@" + c;
      }
    }
    return "?";
  }

  std::string var_name(const MLType::VarCell* v) {
    auto it = vars_.find(v);
    if (it != vars_.end()) return it->second;
    static const char* pool[] = {"x", "y", "z", "w", "v", "u", "s", "r", "q", "p"};
    std::size_t n = vars_.size();
    std::string name = n < 10 ? pool[n] : "t" + std::to_string(n);
    vars_.emplace(v, name);
    return name;
  }

  std::string cls_name(const Classifier& c) {
    auto cell = c.repr();
    if (!cell->rigid.empty()) return cell->rigid;
    auto it = cls_.find(cell.get());
    if (it != cls_.end()) return it->second;
    std::size_t n = cls_.size();
    std::string name = n == 0 ? "c" : "c" + std::to_string(n);
    cls_.emplace(cell.get(), name);
    cls_order_.emplace_back(cell, name);
    return name;
  }

  std::map<const MLType::VarCell*, std::string> vars_;
  std::map<const Classifier::Cell*, std::string> cls_;
  std::vector<std::pair<std::shared_ptr<Classifier::Cell>, std::string>> cls_order_;
};

}  // namespace

std::string print_type(const MLType& t) { return Printer().top(t); }

}  // namespace garrow
