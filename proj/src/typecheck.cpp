#include "garrow/typecheck.hpp"

#include <map>
#include <set>

namespace garrow {

namespace {

using K = Expr::Kind;

std::string level_text(const Level& l) {
  if (l.empty()) return "level 0";
  return "level " + std::to_string(l.size());
}

struct Binding {
  std::string name;
  Scheme scheme;
  Level level;
  int binder;
};

class Checker {
 public:
  explicit Checker(const TypedProgram* globals) : globals_(globals) {}

  TypedDef definition(const Definition& d) {
    rigid_.clear();
    tyvars_.clear();
    MLType self = MLType::fresh();
    scopes_.clear();
    self_name_ = d.name;
    self_type_ = self;
    TypedPtr body = infer(d.body, {});
    unify(self, body->type, d.pos);
    self_name_.clear();
    return TypedDef{d.name, body, generalize(self), d.pos};
  }

  TypedPtr closed(const ExprPtr& e) {
    scopes_.clear();
    return infer(e, {});
  }

  void add_global(const TypedDef* d) { extra_.push_back(d); }

 private:
  MLType convert(const TypeExpr& t) {
    switch (t.kind) {
      case TypeExpr::Kind::Int: return MLType::Int();
      case TypeExpr::Kind::Bool: return MLType::Bool();
      case TypeExpr::Kind::Unit: return MLType::Unit();
      case TypeExpr::Kind::Fun: return MLType::Fun(convert(t.kids[0]), convert(t.kids[1]));
      case TypeExpr::Kind::Prod: return MLType::Prod(convert(t.kids[0]), convert(t.kids[1]));
      case TypeExpr::Kind::Var: {
        auto it = tyvars_.find(t.name);
        if (it == tyvars_.end()) it = tyvars_.emplace(t.name, MLType::fresh()).first;
        return it->second;
      }
      case TypeExpr::Kind::Code: {
        auto it = rigid_.find(t.name);
        if (it == rigid_.end()) it = rigid_.emplace(t.name, Classifier::rigid(t.name)).first;
        return MLType::Code(convert(t.kids[0]), it->second);
      }
    }
    return MLType::Unit();
  }

  static TypedPtr node(const Expr& e, const Level& level) {
    auto t = std::make_shared<TypedTerm>();
    t->kind = e.kind;
    t->pos = e.pos;
    t->name = e.name;
    t->lit = e.lit;
    t->level = level;
    return t;
  }

  const Binding* lookup_local(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      if (it->name == name) return &*it;
    }
    return nullptr;
  }

  const TypedDef* lookup_global(const std::string& name) const {
    for (auto it = extra_.rbegin(); it != extra_.rend(); ++it) {
      if ((*it)->name == name) return *it;
    }
    return globals_ ? globals_->find(name) : nullptr;
  }

  void check_level(const std::string& name, const Level& bound, const Level& use, SourcePos pos) {
    if (bound.size() != use.size()) {
      fail(ErrorCode::LevelMismatch,
           "variable '" + name + "' is bound at " + level_text(bound) + " but used at " + level_text(use), pos);
    }
    for (std::size_t i = 0; i < bound.size(); ++i) unify_classifiers(bound[i], use[i], pos);
  }

  TypedPtr infer(const ExprPtr& ep, const Level& level) {
    const Expr& e = *ep;
    TypedPtr t = node(e, level);
    switch (e.kind) {
      case K::Var: {
        if (const Binding* b = lookup_local(e.name)) {
          check_level(e.name, b->level, level, e.pos);
          t->binder = b->binder;
          t->type = instantiate(b->scheme);
        } else if (e.name == self_name_) {
          check_level(e.name, {}, level, e.pos);
          t->type = self_type_;
        } else if (const TypedDef* g = lookup_global(e.name)) {
          check_level(e.name, {}, level, e.pos);
          t->type = instantiate(g->scheme);
        } else {
          fail(ErrorCode::UnboundVar, "unbound variable '" + e.name + "'", e.pos);
        }
        return t;
      }
      case K::Lit:
        t->type = e.lit.kind() == Literal::Kind::Int ? MLType::Int()
                  : e.lit.kind() == Literal::Kind::Bool ? MLType::Bool()
                                                         : MLType::Unit();
        return t;
      case K::Lam: {
        MLType arg = e.annot ? convert(*e.annot) : MLType::fresh();
        t->binder = next_binder_++;
        t->bound_type = arg;
        scopes_.push_back({e.name, mono(arg), level, t->binder});
        TypedPtr body = infer(e.kids[0], level);
        scopes_.pop_back();
        t->kids = {body};
        t->type = MLType::Fun(arg, body->type);
        return t;
      }
      case K::App: {
        TypedPtr f = infer(e.kids[0], level);
        TypedPtr a = infer(e.kids[1], level);
        MLType res = MLType::fresh();
        unify(f->type, MLType::Fun(a->type, res), e.kids[1]->pos);
        t->kids = {f, a};
        t->type = res;
        return t;
      }
      case K::Let: {
        TypedPtr bound = infer(e.kids[0], level);
        t->binder = next_binder_++;
        t->bound_type = bound->type;
        scopes_.push_back({e.name, mono(bound->type), level, t->binder});
        TypedPtr body = infer(e.kids[1], level);
        scopes_.pop_back();
        t->kids = {bound, body};
        t->type = body->type;
        return t;
      }
      case K::LetRec: {
        MLType declared = convert(*e.annot);
        t->binder = next_binder_++;
        t->bound_type = declared;
        scopes_.push_back({e.name, mono(declared), level, t->binder});
        TypedPtr bound = infer(e.kids[0], level);
        unify(declared, bound->type, e.kids[0]->pos);
        TypedPtr body = infer(e.kids[1], level);
        scopes_.pop_back();
        t->kids = {bound, body};
        t->type = body->type;
        return t;
      }
      case K::If: {
        TypedPtr c = infer(e.kids[0], level);
        unify(MLType::Bool(), c->type, e.kids[0]->pos);
        TypedPtr a = infer(e.kids[1], level);
        TypedPtr b = infer(e.kids[2], level);
        unify(a->type, b->type, e.kids[2]->pos);
        t->kids = {c, a, b};
        t->type = a->type;
        return t;
      }
      case K::PrimOp: {
        for (const auto& k : e.kids) t->kids.push_back(infer(k, level));
        const std::string& op = e.name;
        if (op == "add" || op == "sub" || op == "mult" || op == "eq") {
          unify(MLType::Int(), t->kids[0]->type, e.kids[0]->pos);
          unify(MLType::Int(), t->kids[1]->type, e.kids[1]->pos);
          t->type = op == "eq" ? MLType::Bool() : MLType::Int();
        } else if (op == "pair") {
          t->type = MLType::Prod(t->kids[0]->type, t->kids[1]->type);
        } else if (op == "fst" || op == "snd") {
          MLType l = MLType::fresh(), r = MLType::fresh();
          unify(MLType::Prod(l, r), t->kids[0]->type, e.kids[0]->pos);
          t->type = op == "fst" ? l : r;
        } else {
          fail(ErrorCode::Internal, "unknown surface primitive '" + op + "'", e.pos);
        }
        return t;
      }
      case K::Brak: {
        Classifier c = Classifier::fresh();
        Level inner = level;
        inner.insert(inner.begin(), c);
        TypedPtr body = infer(e.kids[0], inner);
        t->kids = {body};
        t->type = MLType::Code(body->type, c);
        return t;
      }
      case K::Esc: {
        if (level.empty()) fail(ErrorCode::EscapeAtLevelZero, "escape '~' outside of any bracket", e.pos);
        Level outer(level.begin() + 1, level.end());
        TypedPtr body = infer(e.kids[0], outer);
        MLType inner = MLType::fresh();
        unify(MLType::Code(inner, level.front()), body->type, e.kids[0]->pos);
        t->kids = {body};
        t->type = inner;
        return t;
      }
      case K::Note: {
        TypedPtr body = infer(e.kids[0], level);
        t->kids = {body};
        t->type = body->type;
        return t;
      }
    }
    fail(ErrorCode::Internal, "unhandled surface node", e.pos);
  }

  const TypedProgram* globals_;
  std::vector<const TypedDef*> extra_;
  std::vector<Binding> scopes_;
  std::map<std::string, Classifier> rigid_;
  std::map<std::string, MLType> tyvars_;
  std::string self_name_;
  MLType self_type_ = MLType::Unit();
  int next_binder_ = 0;
};

}  // namespace

const TypedDef* TypedProgram::find(const std::string& name) const {
  for (auto it = defs.rbegin(); it != defs.rend(); ++it) {
    if (it->name == name) return &*it;
  }
  return nullptr;
}

TypedProgram typecheck(const Program& prog) {
  TypedProgram out;
  out.defs.reserve(prog.size());
  Checker checker(nullptr);
  std::set<std::string> seen;
  for (const Definition& d : prog) {
    if (!seen.insert(d.name).second) fail(ErrorCode::SyntaxError, "duplicate definition '" + d.name + "'", d.pos);
    out.defs.push_back(checker.definition(d));
    checker.add_global(&out.defs.back());
  }
  return out;
}

TypedPtr typecheck_expr(const ExprPtr& e, const TypedProgram* globals) {
  return Checker(globals).closed(e);
}

std::vector<FreeVar> free_vars(const TypedTerm& root) {
  std::vector<FreeVar> out;
  std::set<int> bound, seen;
  auto walk = [&](auto&& self, const TypedTerm& t) -> void {
    switch (t.kind) {
      case K::Var:
        if (t.binder >= 0 && !bound.count(t.binder) && seen.insert(t.binder).second) {
          out.push_back({t.name, t.binder, t.type, t.level});
        }
        return;
      case K::Lam:
        bound.insert(t.binder);
        self(self, *t.kids[0]);
        bound.erase(t.binder);
        return;
      case K::Let:
        self(self, *t.kids[0]);
        bound.insert(t.binder);
        self(self, *t.kids[1]);
        bound.erase(t.binder);
        return;
      case K::LetRec:
        bound.insert(t.binder);
        self(self, *t.kids[0]);
        self(self, *t.kids[1]);
        bound.erase(t.binder);
        return;
      default:
        for (const auto& k : t.kids) self(self, *k);
    }
  };
  walk(walk, root);
  return out;
}

TypedPtr freshen_term(const TypedPtr& t, std::map<const MLType::VarCell*, MLType>& renaming) {
  auto c = std::make_shared<TypedTerm>(*t);
  c->type = freshen(t->type, renaming);
  if (t->bound_type) c->bound_type = freshen(*t->bound_type, renaming);
  for (auto& k : c->kids) k = freshen_term(k, renaming);
  return c;
}

std::string show(const TypedTerm& t) {
  auto kids = [&](std::string head) {
    for (const auto& k : t.kids) head += ", " + show(*k);
    return head + ")";
  };
  switch (t.kind) {
    case K::Var: return "Var " + t.name;
    case K::Lit: return "Lit " + t.lit.to_string();
    case K::Lam: return kids("Lam(" + t.name);
    case K::App: return "App(" + show(*t.kids[0]) + ", " + show(*t.kids[1]) + ")";
    case K::Let: return kids("Let(" + t.name);
    case K::LetRec: return kids("LetRec(" + t.name);
    case K::If: return "If(" + show(*t.kids[0]) + ", " + show(*t.kids[1]) + ", " + show(*t.kids[2]) + ")";
    case K::PrimOp: return kids("Prim(" + t.name);
    case K::Brak: return "Brak(" + show(*t.kids[0]) + ")";
    case K::Esc: return "Esc(" + show(*t.kids[0]) + ")";
    case K::Note: return kids("Note(" + t.name);
  }
  return "?";
}

}  // namespace garrow
