#include "garrow/flatten.hpp"

#include "garrow/ir_text.hpp"
#include "garrow/prims.hpp"
#include "garrow/stack.hpp"

namespace garrow {

namespace {

using AK = Arrangement::Kind;
using Rule = Derivation::Rule;

ShapeTree L(const GuestType& t) { return ShapeTree::Leaf(t); }

// f: A -> A', g: B -> B'  gives  <A, B> -> <A', B'>
GaTerm par(const GaTerm& f, const ShapeTree& f_cod, const GaTerm& g, const ShapeTree& g_dom) {
  return ga::comp(ga::first(f, g_dom), ga::second(g, f_cod));
}

// Reduces the arity of a spliced term from args.size() to keep by currying
// the trailing arguments back into its result.
GaTerm curry_down(GaTerm t, const std::vector<GuestType>& args, std::size_t keep) {
  for (std::size_t n = args.size(); n > keep; --n) {
    if (n == 1) t = ga::comp(ga::cancel_l(L(args[0])), t);
    t = ga::curry_r(t);
  }
  return t;
}

}  // namespace

GaTerm interp_arrangement(const Arrangement& a) {
  switch (a.kind()) {
    case AK::Id: return ga::id(a.shape(0));
    case AK::CanL: return ga::uncancel_l(a.shape(0));
    case AK::CanR: return ga::uncancel_r(a.shape(0));
    case AK::UCanL: return ga::cancel_l(a.shape(0));
    case AK::UCanR: return ga::cancel_r(a.shape(0));
    case AK::Assoc: return ga::unassoc(a.shape(0), a.shape(1), a.shape(2));
    case AK::UAssoc: return ga::assoc(a.shape(0), a.shape(1), a.shape(2));
    case AK::Left: return ga::second(interp_arrangement(a.sub(0)), a.shape(0));
    case AK::Right: return ga::first(interp_arrangement(a.sub(0)), a.shape(0));
    case AK::Exch: return ga::swap(a.shape(1), a.shape(0));
    case AK::Cont: return ga::copy(a.shape(0));
    case AK::Weak: return ga::drop(a.shape(0));
    case AK::Comp: return ga::comp(interp_arrangement(a.sub(1)), interp_arrangement(a.sub(0)));
  }
  fail(ErrorCode::Internal, "unhandled arrangement");
}

GaTerm flatten_derivation(const Derivation& d, const SpliceResolver& splices) {
  auto flat = [&](std::size_t i) { return flatten_derivation(*d.kids[i], splices); };
  auto out_of = [&](std::size_t i) { return L(d.kids[i]->type); };
  switch (d.rule) {
    case Rule::Var: return ga::id(L(d.type));
    case Rule::Lit: return ga::constant(d.lit, d.type);
    case Rule::Note: return flat(0);
    case Rule::Let: return ga::comp(ga::second(flat(0), d.ctx.left()), flat(1));
    case Rule::LetRec: {
      ShapeTree self = out_of(0);
      GaTerm loop = ga::loop_r(ga::comp(flat(0), ga::copy(self)), self);
      return ga::comp(ga::second(loop, d.ctx.left()), flat(1));
    }
    case Rule::Abs:
      if (!d.absorbed.empty()) return flat(0);
      return ga::curry_r(flat(0));
    case Rule::App: {
      const GuestType& arg = d.kids[0]->type;
      return ga::comp(ga::first(flat(0), d.kids[1]->ctx),
                      ga::comp(ga::second(flat(1), L(arg)), ga::apply_r(arg, d.type)));
    }
    case Rule::Esc: {
      if (!d.source) fail(ErrorCode::Internal, "splice without source");
      GaTerm spliced = splices(d);
      GaTerm head = curry_down(spliced, d.splice_args, d.kids.size());
      if (d.kids.empty()) return head;
      GaTerm args = flat(0);
      ShapeTree args_cod = out_of(0);
      for (std::size_t i = 1; i < d.kids.size(); ++i) {
        args = par(args, args_cod, flat(i), d.kids[i]->ctx);
        args_cod = ShapeTree::Branch(args_cod, out_of(i));
      }
      return ga::comp(args, head);
    }
    case Rule::Arrange: return ga::comp(interp_arrangement(*d.arrangement), flat(0));
    case Rule::Prim: {
      ShapeTree ins = ShapeTree::Empty();
      GaTerm args = flat(0);
      if (d.kids.size() == 1) {
        ins = out_of(0);
      } else if (d.kids.size() == 2) {
        ins = ShapeTree::Branch(out_of(0), out_of(1));
        args = par(flat(0), out_of(0), flat(1), d.kids[1]->ctx);
      } else {
        ShapeTree branches = ShapeTree::Branch(out_of(1), out_of(2));
        ins = ShapeTree::Branch(out_of(0), branches);
        GaTerm inner = par(flat(1), out_of(1), flat(2), d.kids[2]->ctx);
        args = par(flat(0), out_of(0), inner, ShapeTree::Branch(d.kids[1]->ctx, d.kids[2]->ctx));
      }
      return ga::comp(args, ga::prim(d.name, ins, L(d.type)));
    }
  }
  fail(ErrorCode::Internal, "unhandled derivation rule");
}

GaTerm flatten_bracket(const Derivation& root, const GuestType& body_type, const SpliceResolver& splices) {
  if (root.rule == Rule::Esc && root.kids.empty()) return splices(root);
  GaTerm t = flatten_derivation(root, splices);
  auto [args, result] = split_arrows(body_type);
  std::size_t have = root.rule == Rule::Abs ? root.absorbed.size() : 0;
  for (std::size_t i = have; i < args.size(); ++i) {
    ShapeTree x = L(args[i]);
    GuestType rest = result;
    for (std::size_t j = args.size(); j-- > i + 1;) rest = GuestType::Exp(args[j], rest);
    GuestType fn = GuestType::Exp(args[i], rest);
    if (i == 0) {
      t = ga::comp(ga::uncancel_r(x), ga::comp(ga::second(t, x), ga::apply_r(args[i], rest)));
    } else {
      t = ga::comp(ga::first(t, x), ga::comp(ga::swap(L(fn), x), ga::apply_r(args[i], rest)));
    }
  }
  return t;
}

// ------------------------------------------------------------------ code values

namespace {

void walk_escapes(const TypedPtr& a, const TypedPtr& b,
                  const std::function<void(const TypedPtr&, const TypedPtr&)>& fn) {
  if (a->kind == Expr::Kind::Esc) return fn(a, b);
  if (a->kind == Expr::Kind::Brak) return;
  for (std::size_t i = 0; i < a->kids.size(); ++i) walk_escapes(a->kids[i], b->kids[i], fn);
}

}  // namespace

std::shared_ptr<const StagedCode> as_staged(const Value& v) {
  Value w = v.force();
  if (!w.is(Value::Kind::Code)) fail(ErrorCode::SpliceNotCode, "expected a code value, got " + w.to_string());
  auto s = std::dynamic_pointer_cast<const StagedCode>(w.code());
  if (!s) fail(ErrorCode::SpliceNotCode, "code value " + w.code()->describe() + " was not produced by staging");
  return s;
}

StagedCode::StagedCode(TypedPtr body, std::map<const TypedTerm*, Value> splices)
    : body_(std::move(body)), splices_(std::move(splices)) {
  principal_ = zonk(instantiate(std::nullopt).body->type);
}

StagedCode::Instance StagedCode::instantiate(const std::optional<GuestType>& want) const {
  std::map<const MLType::VarCell*, MLType> renaming;
  Instance inst;
  inst.body = freshen_term(body_, renaming);
  if (want) {
    try {
      unify(inst.body->type, from_guest(*want));
    } catch (const Error& e) {
      fail(ErrorCode::TypeMismatch, "code of type " + print_type(principal_) + " cannot be used at " +
                                        want->to_string() + ": " + e.detail());
    }
  }
  walk_escapes(body_, inst.body, [&](const TypedPtr& orig, const TypedPtr& copy) {
    auto it = splices_.find(orig.get());
    if (it == splices_.end()) fail(ErrorCode::Internal, "escape without a staged value", orig->pos);
    auto staged = std::dynamic_pointer_cast<const StagedCode>(it->second.force().code());
    if (staged) unify(copy->type, staged->principal_type(), copy->pos);
    inst.splices.emplace(copy.get(), it->second);
  });
  return inst;
}

MLType StagedCode::principal_type() const {
  std::map<const MLType::VarCell*, MLType> renaming;
  return freshen(principal_, renaming);
}

GuestType StagedCode::default_type() const { return to_guest(principal_); }

DerivPtr StagedCode::derivation(const GuestType& t) const {
  Instance inst = instantiate(t);
  return elaborate(*inst.body);
}

GaTerm StagedCode::materialize(const GuestType& t) const {
  std::string key = t.to_string();
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  Instance inst = instantiate(t);
  DerivPtr d = elaborate(*inst.body);
  SpliceResolver resolve = [&](const Derivation& esc) -> GaTerm {
    auto it = inst.splices.find(esc.source);
    if (it == inst.splices.end()) fail(ErrorCode::Internal, "unresolved splice", esc.source->pos);
    Value v = it->second.force();
    GuestType at = to_guest(esc.source->type);
    if (auto staged = std::dynamic_pointer_cast<const StagedCode>(v.code())) return staged->materialize(at);
    return v.code()->term();
  };
  GaTerm term = normalize(flatten_bracket(*d, t, resolve));
  auto [args, result] = split_arrows(t);
  Signature sig = ga_type_of(term);
  if (!(sig.dom == absorbed_shape(args)) || !(sig.cod == L(result))) {
    fail(ErrorCode::Internal, "flattened code has signature " + sig.dom.to_string() + " -> " + sig.cod.to_string() +
                                  ", expected " + absorbed_shape(args).to_string() + " -> " + L(result).to_string());
  }
  cache_.emplace(key, term);
  return term;
}

const GaTerm& StagedCode::term() const {
  if (!default_term_) default_term_ = materialize(default_type());
  return *default_term_;
}

std::string StagedCode::describe() const { return render_ir(term()); }

// ------------------------------------------------------------ level-0 evaluator

namespace {

struct EnvNode;
using EnvPtr = std::shared_ptr<EnvNode>;
struct EnvNode {
  int binder;
  Value value;
  EnvPtr next;
};

}  // namespace

struct StageEnv::State {
  TypedProgram prog;
  StageOptions opts;
  std::map<std::string, Value> globals;
  std::int64_t steps_left = 0;
  std::int64_t depth = 0;
};

namespace {

using St = std::shared_ptr<StageEnv::State>;
using EK = Expr::Kind;

class Depth {
 public:
  explicit Depth(StageEnv::State& s) : s_(s) {
    if (++s_.depth > s_.opts.max_depth) {
      --s_.depth;
      fail(ErrorCode::FuelExhausted, "level-0 recursion deeper than " + std::to_string(s_.opts.max_depth));
    }
  }
  ~Depth() { --s_.depth; }
  Depth(const Depth&) = delete;
  Depth& operator=(const Depth&) = delete;

 private:
  StageEnv::State& s_;
};

void tick(StageEnv::State& s) {
  if (--s.steps_left < 0) fail(ErrorCode::FuelExhausted, "level-0 evaluation step budget exhausted");
}

Value lookup(const St& st, const TypedTerm& t, const EnvPtr& env) {
  if (t.binder >= 0) {
    for (EnvNode* n = env.get(); n; n = n->next.get()) {
      if (n->binder == t.binder) return n->value;
    }
    fail(ErrorCode::Internal, "unbound level-0 variable '" + t.name + "'", t.pos);
  }
  auto it = st->globals.find(t.name);
  if (it == st->globals.end()) fail(ErrorCode::UnboundVar, "unbound variable '" + t.name + "'", t.pos);
  return it->second;
}

Value ev(const St& st, const TypedPtr& tp, const EnvPtr& env);

Value make_code(const St& st, const TypedTerm& brak, const EnvPtr& env) {
  const TypedPtr& body = brak.kids[0];
  // Level-0 variables inside escapes are fine; a free positive-level one
  // belongs to an enclosing bracket that has not been built yet.
  for (const FreeVar& v : free_vars(*body)) {
    if (!v.level.empty()) {
      fail(ErrorCode::LevelMismatch, "code mentions '" + v.name + "', which is bound outside the bracket", brak.pos);
    }
  }
  std::map<const TypedTerm*, Value> splices;
  std::function<void(const TypedPtr&)> collect = [&](const TypedPtr& n) {
    if (n->kind == EK::Esc) {
      Value v = ev(st, n->kids[0], env).force();
      if (!v.is(Value::Kind::Code)) {
        fail(ErrorCode::SpliceNotCode, "escaped expression evaluated to " + v.to_string(), n->pos);
      }
      splices.emplace(n.get(), v);
      return;
    }
    if (n->kind == EK::Brak) return;
    for (const auto& k : n->kids) collect(k);
  };
  collect(body);
  return Value::Code(std::make_shared<const StagedCode>(body, std::move(splices)));
}

std::int64_t int_of(const Value& v, const TypedTerm& at) {
  Value w = v.force();
  if (!w.is(Value::Kind::Int)) fail(ErrorCode::RuntimeError, "expected an integer, got " + w.to_string(), at.pos);
  return w.as_int();
}

Value ev(const St& st, const TypedPtr& tp, const EnvPtr& env) {
  const TypedTerm& t = *tp;
  Depth guard(*st);
  tick(*st);
  switch (t.kind) {
    case EK::Var: return lookup(st, t, env);
    case EK::Lit: return Value::FromLiteral(t.lit);
    case EK::Lam: {
      TypedPtr body = t.kids[0];
      int binder = t.binder;
      return Value::HostFn(
          [st, body, binder, env](const Value& arg) {
            return ev(st, body, std::make_shared<EnvNode>(EnvNode{binder, arg, env}));
          },
          "<fun " + t.name + ">");
    }
    case EK::App: {
      Value f = ev(st, t.kids[0], env).force();
      Value a = ev(st, t.kids[1], env);
      if (!f.is(Value::Kind::HostFn)) fail(ErrorCode::RuntimeError, "applying a non-function " + f.to_string(), t.pos);
      return f.call(a);
    }
    case EK::Let: {
      Value v = ev(st, t.kids[0], env);
      return ev(st, t.kids[1], std::make_shared<EnvNode>(EnvNode{t.binder, v, env}));
    }
    case EK::LetRec: {
      auto node = std::make_shared<EnvNode>(EnvNode{t.binder, Value::Unit(), env});
      TypedPtr bound = t.kids[0];
      node->value = Value::Thunk([st, bound, node] { return ev(st, bound, node); });
      return ev(st, t.kids[1], node);
    }
    case EK::If: {
      Value c = ev(st, t.kids[0], env).force();
      if (!c.is(Value::Kind::Bool)) fail(ErrorCode::RuntimeError, "condition is " + c.to_string(), t.pos);
      return ev(st, c.as_bool() ? t.kids[1] : t.kids[2], env);
    }
    case EK::PrimOp: {
      const std::string& op = t.name;
      if (op == "pair") {
        // Components are deferred so residual feedback loops can refer to
        // the pair they are part of.
        auto part = [&](const TypedPtr& k) { return Value::Thunk([st, k, env] { return ev(st, k, env); }); };
        return Value::Pair(part(t.kids[0]), part(t.kids[1]));
      }
      if (op == "fst" || op == "snd") {
        Value p = ev(st, t.kids[0], env).force();
        if (!p.is(Value::Kind::Pair)) fail(ErrorCode::RuntimeError, op + " of " + p.to_string(), t.pos);
        return op == "fst" ? p.left() : p.right();
      }
      std::int64_t a = int_of(ev(st, t.kids[0], env), *t.kids[0]);
      std::int64_t b = int_of(ev(st, t.kids[1], env), *t.kids[1]);
      try {
        if (op == "add") return Value::Int(checked_add(a, b));
        if (op == "sub") return Value::Int(checked_sub(a, b));
        if (op == "mult") return Value::Int(checked_mul(a, b));
      } catch (const Error& e) {
        throw Error(e.code(), e.detail(), t.pos);
      }
      if (op == "eq") return Value::Bool(a == b);
      fail(ErrorCode::Internal, "unknown primitive '" + op + "'", t.pos);
    }
    case EK::Brak: return make_code(st, t, env);
    case EK::Esc: fail(ErrorCode::EscapeAtLevelZero, "escape evaluated at level 0", t.pos);
    case EK::Note: return ev(st, t.kids[0], env);
  }
  fail(ErrorCode::Internal, "unhandled level-0 node", t.pos);
}

template <typename F>
Value on_stack(F&& fn) {
  Value out = Value::Unit();
  with_large_stack([&] {
    out = fn();
  });
  return out;
}

}  // namespace

StageEnv::StageEnv(TypedProgram prog, StageOptions opts) : state_(std::make_shared<State>()) {
  state_->prog = std::move(prog);
  state_->opts = opts;
  state_->steps_left = opts.steps;
  State* raw = state_.get();
  for (const TypedDef& d : state_->prog.defs) {
    TypedPtr body = d.body;
    // Globals are read through the environment pointer; the map is cleared
    // on destruction to break the reference cycle.
    std::weak_ptr<State> weak = state_;
    raw->globals.insert_or_assign(d.name, Value::Thunk([weak, body] {
      St st = weak.lock();
      if (!st) fail(ErrorCode::Internal, "definition forced after its environment was released");
      return ev(st, body, nullptr);
    }));
  }
}

StageEnv::~StageEnv() { state_->globals.clear(); }

const TypedProgram& StageEnv::program() const { return state_->prog; }

Value StageEnv::global(const std::string& name) const {
  auto it = state_->globals.find(name);
  if (it == state_->globals.end()) fail(ErrorCode::UnboundVar, "no definition named '" + name + "'");
  Value v = it->second;
  return on_stack([&] { return v.force(); });
}

Value StageEnv::apply(const Value& f, const Value& arg) const {
  return on_stack([&] {
    Value g = f.force();
    if (!g.is(Value::Kind::HostFn)) fail(ErrorCode::RuntimeError, "applying a non-function " + g.to_string());
    return deep_force(g.call(arg));
  });
}

Value StageEnv::eval(const TypedTerm& t) const {
  auto tp = std::make_shared<TypedTerm>(t);
  return on_stack([&] { return deep_force(ev(state_, tp, nullptr)); });
}

Value stage_eval(const TypedTerm& t, const StageEnv& env) { return env.eval(t); }

namespace {

MLType type_of_literal_value(const Value& v) {
  Value w = v.force();
  switch (w.kind()) {
    case Value::Kind::Int: return MLType::Int();
    case Value::Kind::Bool: return MLType::Bool();
    case Value::Kind::Unit: return MLType::Unit();
    case Value::Kind::Pair: return MLType::Prod(type_of_literal_value(w.left()), type_of_literal_value(w.right()));
    default: fail(ErrorCode::TypeMismatch, "argument " + w.to_string() + " is not a literal");
  }
}

}  // namespace

std::shared_ptr<const StagedCode> stage_entry(const StageEnv& env, const std::string& entry,
                                              const std::vector<Value>& args) {
  const TypedDef* def = env.program().find(entry);
  if (!def) fail(ErrorCode::UnboundVar, "no definition named '" + entry + "'");
  MLType t = instantiate(def->scheme);
  for (std::size_t i = 0; i < args.size(); ++i) {
    MLType res = MLType::fresh();
    try {
      unify(t, MLType::Fun(type_of_literal_value(args[i]), res));
    } catch (const Error& e) {
      fail(ErrorCode::TypeMismatch, "argument " + std::to_string(i + 1) + " of '" + entry + "': " + e.detail());
    }
    t = res;
  }
  if (t.prune().kind() != MLType::Kind::Code) {
    fail(ErrorCode::SpliceNotCode, "'" + entry + "' applied to " + std::to_string(args.size()) +
                                       " argument(s) has type " + print_type(t) + ", not a code type");
  }
  Value v = env.global(entry);
  for (const Value& a : args) v = env.apply(v, a);
  return as_staged(v);
}

}  // namespace garrow
