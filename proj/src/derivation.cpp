#include "garrow/derivation.hpp"

#include <algorithm>
#include <map>

#include "node_pool.hpp"

namespace garrow {

// ---------------------------------------------------------------- arrangements

namespace {

using AK = Arrangement::Kind;
using SK = ShapeTree::Kind;

ShapeTree B(ShapeTree l, ShapeTree r) { return ShapeTree::Branch(std::move(l), std::move(r)); }

}  // namespace

Arrangement Arrangement::Id(ShapeTree s) { return build(Node{AK::Id, {s}, {}}); }
Arrangement Arrangement::CanL(ShapeTree s) { return build(Node{AK::CanL, {s}, {}}); }
Arrangement Arrangement::CanR(ShapeTree s) { return build(Node{AK::CanR, {s}, {}}); }
Arrangement Arrangement::UCanL(ShapeTree s) { return build(Node{AK::UCanL, {s}, {}}); }
Arrangement Arrangement::UCanR(ShapeTree s) { return build(Node{AK::UCanR, {s}, {}}); }
Arrangement Arrangement::Assoc(ShapeTree a, ShapeTree b, ShapeTree c) {
  return build(Node{AK::Assoc, {a, b, c}, {}});
}
Arrangement Arrangement::UAssoc(ShapeTree a, ShapeTree b, ShapeTree c) {
  return build(Node{AK::UAssoc, {a, b, c}, {}});
}
Arrangement Arrangement::Left(Arrangement sub, ShapeTree frame) {
  return build(Node{AK::Left, {frame}, {sub}});
}
Arrangement Arrangement::Right(Arrangement sub, ShapeTree frame) {
  return build(Node{AK::Right, {frame}, {sub}});
}
Arrangement Arrangement::Exch(ShapeTree a, ShapeTree b) {
  return build(Node{AK::Exch, {a, b}, {}});
}
Arrangement Arrangement::Cont(ShapeTree s) { return build(Node{AK::Cont, {s}, {}}); }
Arrangement Arrangement::Weak(ShapeTree s) { return build(Node{AK::Weak, {s}, {}}); }
Arrangement Arrangement::Comp(Arrangement first, Arrangement then) {
  if (!(arr_tgt(first) == arr_src(then))) {
    fail(ErrorCode::Internal, "arrangement composition mismatch: " + arr_tgt(first).to_string() + " vs " +
                                  arr_src(then).to_string());
  }
  return build(Node{AK::Comp, {}, {first, then}});
}

bool operator==(const Arrangement& a, const Arrangement& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.node_->shapes.size() != b.node_->shapes.size() ||
      a.node_->subs.size() != b.node_->subs.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.node_->shapes.size(); ++i) {
    if (!(a.shape(i) == b.shape(i))) return false;
  }
  for (std::size_t i = 0; i < a.node_->subs.size(); ++i) {
    if (!(a.sub(i) == b.sub(i))) return false;
  }
  return true;
}

namespace {

ShapeTree source_of(const Arrangement::Node& n) {
  const auto E = ShapeTree::Empty();
  auto shape = [&](std::size_t i) -> const ShapeTree& { return n.shapes[i]; };
  switch (n.kind) {
    case AK::Id: return shape(0);
    case AK::CanL: return B(E, shape(0));
    case AK::CanR: return B(shape(0), E);
    case AK::UCanL:
    case AK::UCanR: return shape(0);
    case AK::Assoc: return B(B(shape(0), shape(1)), shape(2));
    case AK::UAssoc: return B(shape(0), B(shape(1), shape(2)));
    case AK::Left: return B(shape(0), arr_src(n.subs[0]));
    case AK::Right: return B(arr_src(n.subs[0]), shape(0));
    case AK::Exch: return B(shape(0), shape(1));
    case AK::Cont: return B(shape(0), shape(0));
    case AK::Weak: return E;
    case AK::Comp: return arr_src(n.subs[0]);
  }
  return E;
}

ShapeTree target_of(const Arrangement::Node& n) {
  const auto E = ShapeTree::Empty();
  auto shape = [&](std::size_t i) -> const ShapeTree& { return n.shapes[i]; };
  switch (n.kind) {
    case AK::Id:
    case AK::CanL:
    case AK::CanR: return shape(0);
    case AK::UCanL: return B(E, shape(0));
    case AK::UCanR: return B(shape(0), E);
    case AK::Assoc: return B(shape(0), B(shape(1), shape(2)));
    case AK::UAssoc: return B(B(shape(0), shape(1)), shape(2));
    case AK::Left: return B(shape(0), arr_tgt(n.subs[0]));
    case AK::Right: return B(arr_tgt(n.subs[0]), shape(0));
    case AK::Exch: return B(shape(1), shape(0));
    case AK::Cont:
    case AK::Weak: return shape(0);
    case AK::Comp: return arr_tgt(n.subs[1]);
  }
  return E;
}

}  // namespace

Arrangement Arrangement::build(Node n) {
  n.src = source_of(n);
  n.tgt = target_of(n);
  return Arrangement(detail::make_pooled<Node>(std::move(n)));
}

ShapeTree arr_src(const Arrangement& a) { return a.node_->src; }

ShapeTree arr_tgt(const Arrangement& a) { return a.node_->tgt; }

Arrangement invert(const Arrangement& a) {
  switch (a.kind()) {
    case AK::Id: return a;
    case AK::CanL: return Arrangement::UCanL(a.shape(0));
    case AK::CanR: return Arrangement::UCanR(a.shape(0));
    case AK::UCanL: return Arrangement::CanL(a.shape(0));
    case AK::UCanR: return Arrangement::CanR(a.shape(0));
    case AK::Assoc: return Arrangement::UAssoc(a.shape(0), a.shape(1), a.shape(2));
    case AK::UAssoc: return Arrangement::Assoc(a.shape(0), a.shape(1), a.shape(2));
    case AK::Left: return Arrangement::Left(invert(a.sub(0)), a.shape(0));
    case AK::Right: return Arrangement::Right(invert(a.sub(0)), a.shape(0));
    case AK::Exch: return Arrangement::Exch(a.shape(1), a.shape(0));
    case AK::Comp: return Arrangement::Comp(invert(a.sub(1)), invert(a.sub(0)));
    case AK::Cont:
    case AK::Weak: break;
  }
  fail(ErrorCode::Internal, "arrangement " + to_string(a) + " has no inverse");
}

std::string to_string(const Arrangement& a) {
  auto s = [](const ShapeTree& t) { return t.to_string(); };
  switch (a.kind()) {
    case AK::Id: return "AId(" + s(a.shape(0)) + ")";
    case AK::CanL: return "ACanL(" + s(a.shape(0)) + ")";
    case AK::CanR: return "ACanR(" + s(a.shape(0)) + ")";
    case AK::UCanL: return "AuCanL(" + s(a.shape(0)) + ")";
    case AK::UCanR: return "AuCanR(" + s(a.shape(0)) + ")";
    case AK::Assoc: return "AAssoc(" + s(a.shape(0)) + ", " + s(a.shape(1)) + ", " + s(a.shape(2)) + ")";
    case AK::UAssoc: return "AuAssoc(" + s(a.shape(0)) + ", " + s(a.shape(1)) + ", " + s(a.shape(2)) + ")";
    case AK::Left: return "ALeft(" + to_string(a.sub(0)) + ", " + s(a.shape(0)) + ")";
    case AK::Right: return "ARight(" + to_string(a.sub(0)) + ", " + s(a.shape(0)) + ")";
    case AK::Exch: return "AExch(" + s(a.shape(0)) + ", " + s(a.shape(1)) + ")";
    case AK::Cont: return "ACont(" + s(a.shape(0)) + ")";
    case AK::Weak: return "AWeak(" + s(a.shape(0)) + ")";
    case AK::Comp: return "AComp(" + to_string(a.sub(0)) + ", " + to_string(a.sub(1)) + ")";
  }
  return "?";
}

std::size_t step_count(const Arrangement& a) {
  switch (a.kind()) {
    case AK::Id: return 0;
    case AK::Comp: return step_count(a.sub(0)) + step_count(a.sub(1));
    case AK::Left:
    case AK::Right: return step_count(a.sub(0));
    default: return 1;
  }
}

// ------------------------------------------------------------ labeled contexts

namespace {

// Context tree whose leaves carry a label identifying the variable (or
// given position) they hold.
struct LNode;
using LCtx = std::shared_ptr<const LNode>;
struct LNode {
  SK kind;
  int label = -1;
  GuestType type = GuestType::Unit();
  LCtx l, r;
  ShapeTree shape;  // the tree with labels erased
};

LCtx lempty() {
  static const LCtx e =
      std::make_shared<const LNode>(LNode{SK::Empty, -1, GuestType::Unit(), nullptr, nullptr, ShapeTree::Empty()});
  return e;
}
LCtx lleaf(int label, GuestType t) {
  ShapeTree s = ShapeTree::Leaf(t);
  return detail::make_pooled<LNode>(LNode{SK::Leaf, label, std::move(t), nullptr, nullptr, std::move(s)});
}
LCtx lbranch(LCtx l, LCtx r) {
  ShapeTree s = B(l->shape, r->shape);
  return detail::make_pooled<LNode>(LNode{SK::Branch, -1, GuestType::Unit(), std::move(l), std::move(r), std::move(s)});
}

const ShapeTree& unlabel(const LCtx& c) { return c->shape; }

bool same(const LCtx& a, const LCtx& b) {
  if (a == b) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case SK::Empty: return true;
    case SK::Leaf: return a->label == b->label && a->type == b->type;
    case SK::Branch: return same(a->l, b->l) && same(a->r, b->r);
  }
  return false;
}

void leaves(const LCtx& c, std::vector<LCtx>& out) {
  if (c->kind == SK::Leaf) out.push_back(c);
  if (c->kind == SK::Branch) {
    leaves(c->l, out);
    leaves(c->r, out);
  }
}

// Removes every leaf with the given label and collapses empty children.
LCtx strip(const LCtx& c, int label) {
  switch (c->kind) {
    case SK::Empty: return c;
    case SK::Leaf: return c->label == label ? lempty() : c;
    case SK::Branch: {
      LCtx l = strip(c->l, label), r = strip(c->r, label);
      if (l == c->l && r == c->r) return c;
      if (l->kind == SK::Empty) return r;
      if (r->kind == SK::Empty) return l;
      return lbranch(l, r);
    }
  }
  return c;
}

LCtx labsorbed(const std::vector<LCtx>& ls) {
  if (ls.empty()) return lempty();
  LCtx acc = ls[0];
  for (std::size_t i = 1; i < ls.size(); ++i) acc = lbranch(acc, ls[i]);
  return acc;
}

// Paths are sequences of child selections from the root: false = left.
using Path = std::vector<bool>;

LCtx at(const LCtx& c, const Path& p, std::size_t from = 0) {
  if (from == p.size()) return c;
  if (c->kind != SK::Branch) fail(ErrorCode::Internal, "arrangement path leaves the tree");
  return at(p[from] ? c->r : c->l, p, from + 1);
}

LCtx replace(const LCtx& c, const Path& p, const LCtx& with, std::size_t from = 0) {
  if (from == p.size()) return with;
  if (p[from]) return lbranch(c->l, replace(c->r, p, with, from + 1));
  return lbranch(replace(c->l, p, with, from + 1), c->r);
}

// Emits combinator-direction steps while rewriting the current tree.
class Rewriter {
 public:
  explicit Rewriter(LCtx start) : cur_(std::move(start)) {}

  const LCtx& current() const { return cur_; }
  const std::vector<Arrangement>& steps() const { return steps_; }

  // <<>, s> -> s
  void cancel_l(const Path& p) {
    LCtx t = at(cur_, p);
    emit(p, Arrangement::UCanL(unlabel(t->r)), t->r);
  }
  // <s, <>> -> s
  void cancel_r(const Path& p) {
    LCtx t = at(cur_, p);
    emit(p, Arrangement::UCanR(unlabel(t->l)), t->l);
  }
  // <<a, b>, c> -> <a, <b, c>>
  void assoc(const Path& p) {
    LCtx t = at(cur_, p);
    LCtx a = t->l->l, b = t->l->r, c = t->r;
    emit(p, Arrangement::UAssoc(unlabel(a), unlabel(b), unlabel(c)), lbranch(a, lbranch(b, c)));
  }
  // <a, <b, c>> -> <<a, b>, c>
  void unassoc(const Path& p) {
    LCtx t = at(cur_, p);
    LCtx a = t->l, b = t->r->l, c = t->r->r;
    emit(p, Arrangement::Assoc(unlabel(a), unlabel(b), unlabel(c)), lbranch(lbranch(a, b), c));
  }
  // s -> <s, s>
  void copy(const Path& p) {
    LCtx t = at(cur_, p);
    emit(p, Arrangement::Cont(unlabel(t)), lbranch(t, t));
  }
  // s -> <>
  void drop(const Path& p) {
    LCtx t = at(cur_, p);
    emit(p, Arrangement::Weak(unlabel(t)), lempty());
  }
  // <a, b> -> <b, a>
  void swap(const Path& p) {
    LCtx t = at(cur_, p);
    emit(p, Arrangement::Exch(unlabel(t->r), unlabel(t->l)), lbranch(t->r, t->l));
  }

  // Rewrites the subtree at p into a right comb of its leaves without
  // empties: <>, <x>, or <x1, <x2, ... <xn-1, xn>>>.
  void to_comb(const Path& p) {
    LCtx t = at(cur_, p);
    if (t->kind != SK::Branch) return;
    Path pl = p, pr = p;
    pl.push_back(false);
    pr.push_back(true);
    to_comb(pl);
    to_comb(pr);
    t = at(cur_, p);
    if (t->l->kind == SK::Empty) return cancel_l(p);
    if (t->r->kind == SK::Empty) return cancel_r(p);
    merge(p);
  }

 private:
  // Subtree at p is <comb, comb>, both non-empty.
  void merge(const Path& p) {
    LCtx t = at(cur_, p);
    if (t->l->kind == SK::Leaf) return;
    assoc(p);
    Path pr = p;
    pr.push_back(true);
    merge(pr);
  }

  void emit(const Path& p, Arrangement atom, const LCtx& result) {
    // Frame the atom from the innermost position outwards.
    std::vector<const LNode*> spine;
    const LNode* node = cur_.get();
    for (bool right : p) {
      spine.push_back(node);
      node = right ? node->r.get() : node->l.get();
    }
    for (std::size_t depth = p.size(); depth-- > 0;) {
      const LNode* parent = spine[depth];
      atom = p[depth] ? Arrangement::Left(atom, parent->l->shape) : Arrangement::Right(atom, parent->r->shape);
    }
    steps_.push_back(atom);
    cur_ = replace(cur_, p, result);
  }

  LCtx cur_;
  std::vector<Arrangement> steps_;
};

// Path of element i in a right comb with n elements.
Path comb_path(std::size_t i, std::size_t n) {
  if (n == 1) return {};
  if (i == n - 1) return Path(n - 1, true);
  Path p(i, true);
  p.push_back(false);
  return p;
}

Path rights(std::size_t k) { return Path(k, true); }

Arrangement arrange_labeled(const LCtx& needed, const LCtx& given) {
  if (same(needed, given)) return Arrangement::Id(unlabel(given));

  Rewriter rw(given);
  rw.to_comb({});

  std::vector<LCtx> want;
  leaves(needed, want);
  std::map<int, std::size_t> need_count;
  for (const auto& l : want) ++need_count[l->label];

  auto comb = [&] {
    std::vector<LCtx> ls;
    leaves(rw.current(), ls);
    return ls;
  };

  for (const auto& [label, count] : need_count) {
    std::vector<LCtx> have = comb();
    if (std::none_of(have.begin(), have.end(), [&](const LCtx& l) { return l->label == label; })) {
      GuestType t = GuestType::Unit();
      for (const auto& w : want) {
        if (w->label == label) t = w->type;
      }
      fail(ErrorCode::MissingLeaf, "needed leaf " + ShapeTree::Leaf(t).to_string() + " is absent from " +
                                       unlabel(given).to_string());
    }
  }

  // Duplicate, left to right.
  for (std::size_t i = 0;; ++i) {
    std::vector<LCtx> have = comb();
    if (i >= have.size()) break;
    int label = have[i]->label;
    std::size_t avail = std::count_if(have.begin(), have.end(), [&](const LCtx& l) { return l->label == label; });
    auto it = need_count.find(label);
    std::size_t need = it == need_count.end() ? 0 : it->second;
    bool first_of_label = std::find_if(have.begin(), have.end(), [&](const LCtx& l) { return l->label == label; }) ==
                          have.begin() + static_cast<std::ptrdiff_t>(i);
    if (!first_of_label || need <= avail) continue;
    for (std::size_t k = avail; k < need; ++k) {
      std::size_t n = comb().size();
      if (n == 1) {
        rw.copy({});
      } else if (i < n - 1) {
        Path p = comb_path(i, n);
        rw.copy(p);
        rw.assoc(rights(i));
      } else {
        rw.copy(comb_path(i, n));
      }
    }
  }

  // Delete surplus occurrences, keeping the leftmost ones.
  for (std::size_t i = 0;;) {
    std::vector<LCtx> have = comb();
    if (i >= have.size()) break;
    int label = have[i]->label;
    std::size_t seen = std::count_if(have.begin(), have.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                                     [&](const LCtx& l) { return l->label == label; });
    auto it = need_count.find(label);
    std::size_t need = it == need_count.end() ? 0 : it->second;
    if (seen <= need) {
      ++i;
      continue;
    }
    std::size_t n = have.size();
    if (n == 1) {
      rw.drop({});
    } else if (i < n - 1) {
      rw.drop(comb_path(i, n));
      rw.cancel_l(rights(i));
    } else {
      rw.drop(comb_path(i, n));
      rw.cancel_r(rights(n - 2));
    }
  }

  // Permute into the needed order by adjacent exchanges.
  {
    std::vector<LCtx> have = comb();
    std::vector<std::size_t> target(have.size());
    std::map<int, std::size_t> taken;
    for (std::size_t i = 0; i < have.size(); ++i) {
      std::size_t k = taken[have[i]->label]++;
      std::size_t seen = 0;
      for (std::size_t j = 0; j < want.size(); ++j) {
        if (want[j]->label == have[i]->label && seen++ == k) {
          target[i] = j;
          break;
        }
      }
    }
    std::size_t n = have.size();
    for (std::size_t pass = 0; pass < n; ++pass) {
      for (std::size_t i = 0; i + 1 < n; ++i) {
        if (target[i] <= target[i + 1]) continue;
        if (i + 1 == n - 1) {
          rw.swap(rights(i));
        } else {
          rw.unassoc(rights(i));
          Path p = rights(i);
          p.push_back(false);
          rw.swap(p);
          rw.assoc(rights(i));
        }
        std::swap(target[i], target[i + 1]);
      }
    }
  }

  // Rebuild the needed tree by running its own normalization backwards.
  Rewriter back(needed);
  back.to_comb({});
  if (!same(back.current(), rw.current())) {
    fail(ErrorCode::Internal, "arrangement leaf order mismatch");
  }
  std::vector<Arrangement> steps = rw.steps();
  for (auto it = back.steps().rbegin(); it != back.steps().rend(); ++it) steps.push_back(invert(*it));

  if (steps.empty()) return Arrangement::Id(unlabel(given));
  // The last combinator step is outermost.
  Arrangement acc = steps.front();
  for (std::size_t i = 1; i < steps.size(); ++i) acc = Arrangement::Comp(steps[i], acc);
  return acc;
}

}  // namespace

Arrangement arrange(const ShapeTree& needed, const ShapeTree& given) {
  // Label given leaves by position and needed leaves by the matching rule.
  int next = 0;
  std::vector<std::pair<GuestType, int>> given_labels;
  auto label_given = [&](auto&& self, const ShapeTree& s) -> LCtx {
    switch (s.kind()) {
      case SK::Empty: return lempty();
      case SK::Leaf: {
        int l = next++;
        given_labels.emplace_back(s.type(), l);
        return lleaf(l, s.type());
      }
      case SK::Branch: {
        LCtx l = self(self, s.left());
        return lbranch(l, self(self, s.right()));
      }
    }
    return lempty();
  };
  LCtx g = label_given(label_given, given);

  std::map<std::string, std::size_t> used;
  auto label_needed = [&](auto&& self, const ShapeTree& s) -> LCtx {
    switch (s.kind()) {
      case SK::Empty: return lempty();
      case SK::Leaf: {
        std::vector<int> cands;
        for (const auto& [t, l] : given_labels) {
          if (t == s.type()) cands.push_back(l);
        }
        if (cands.empty()) {
          fail(ErrorCode::MissingLeaf, "needed leaf " + s.to_string() + " is absent from " + given.to_string());
        }
        std::size_t k = used[s.type().to_string()]++;
        return lleaf(cands[std::min(k, cands.size() - 1)], s.type());
      }
      case SK::Branch: {
        LCtx l = self(self, s.left());
        return lbranch(l, self(self, s.right()));
      }
    }
    return lempty();
  };
  LCtx n = label_needed(label_needed, needed);
  return arrange_labeled(n, g);
}

// ------------------------------------------------------------------ elaboration

ShapeTree absorbed_shape(const std::vector<GuestType>& ts) {
  if (ts.empty()) return ShapeTree::Empty();
  ShapeTree acc = ShapeTree::Leaf(ts[0]);
  for (std::size_t i = 1; i < ts.size(); ++i) acc = B(acc, ShapeTree::Leaf(ts[i]));
  return acc;
}

std::pair<std::vector<GuestType>, GuestType> split_arrows(const GuestType& t) {
  std::vector<GuestType> args;
  GuestType cur = t;
  while (cur.kind() == GuestType::Kind::Exp) {
    args.push_back(cur.left());
    cur = cur.right();
  }
  return {args, cur};
}

namespace {

using EK = Expr::Kind;
using Rule = Derivation::Rule;

struct Result {
  DerivPtr d;
  LCtx ctx;
};

GuestType guest_of(const MLType& t, const SourcePos& pos) {
  try {
    return to_guest(t);
  } catch (const Error& e) {
    throw Error(e.code(), e.detail(), pos);
  }
}

class Elaborator {
 public:
  Result exact(const TypedTerm& t);

  Result root(const TypedTerm& body) {
    const TypedTerm* cur = &body;
    std::vector<const TypedTerm*> lams;
    while (cur->kind == EK::Lam) {
      lams.push_back(cur);
      cur = cur->kids[0].get();
    }
    std::vector<LCtx> params;
    for (const TypedTerm* l : lams) params.push_back(lleaf(l->binder, guest_of(*l->bound_type, l->pos)));
    LCtx given = labsorbed(params);
    Result inner = fit(*cur, given);
    if (lams.empty()) return inner;
    auto d = std::make_shared<Derivation>();
    d->rule = Rule::Abs;
    d->ctx = unlabel(given);
    d->type = guest_of(body.type, body.pos);
    d->level = body.level.size();
    d->source = &body;
    for (const TypedTerm* l : lams) d->absorbed.push_back(l->name);
    d->kids = {inner.d};
    return {d, given};
  }

 private:
  std::shared_ptr<Derivation> node(Rule r, const TypedTerm& t, const LCtx& ctx) {
    auto d = std::make_shared<Derivation>();
    d->rule = r;
    d->ctx = unlabel(ctx);
    d->type = guest_of(t.type, t.pos);
    d->level = t.level.size();
    d->source = &t;
    return d;
  }

  Result fit(const TypedTerm& t, const LCtx& given) {
    Result r = exact(t);
    if (same(r.ctx, given)) return r;
    Arrangement a = [&] {
      try {
        return arrange_labeled(r.ctx, given);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::MissingLeaf) {
          throw Error(ErrorCode::MissingLeaf, "variable bound outside the bracket: " + e.detail(), t.pos);
        }
        throw;
      }
    }();
    auto d = node(Rule::Arrange, t, given);
    d->arrangement = a;
    d->kids = {r.d};
    return {d, given};
  }

  Result exact_impl(const TypedTerm& t) {
    switch (t.kind) {
      case EK::Var: {
        LCtx ctx = lleaf(t.binder, guest_of(t.type, t.pos));
        auto d = node(Rule::Var, t, ctx);
        d->name = t.name;
        return {d, ctx};
      }
      case EK::Lit: {
        auto d = node(Rule::Lit, t, lempty());
        d->lit = t.lit;
        d->transport = !t.level.empty();
        return {d, lempty()};
      }
      case EK::Note: {
        Result r = exact(*t.kids[0]);
        auto d = node(Rule::Note, t, r.ctx);
        d->name = t.name;
        d->kids = {r.d};
        return {d, r.ctx};
      }
      case EK::PrimOp:
      case EK::If: {
        std::vector<Result> rs;
        for (const auto& k : t.kids) rs.push_back(exact(*k));
        LCtx ctx = rs.size() == 1   ? rs[0].ctx
                   : rs.size() == 2 ? lbranch(rs[0].ctx, rs[1].ctx)
                                    : lbranch(rs[0].ctx, lbranch(rs[1].ctx, rs[2].ctx));
        auto d = node(Rule::Prim, t, ctx);
        d->name = t.kind == EK::If ? "ite" : t.name;
        for (const auto& r : rs) d->kids.push_back(r.d);
        return {d, ctx};
      }
      case EK::App:
      case EK::Esc: {
        std::vector<const TypedTerm*> args;
        const TypedTerm* head = &t;
        while (head->kind == EK::App) {
          args.push_back(head->kids[1].get());
          head = head->kids[0].get();
        }
        std::reverse(args.begin(), args.end());
        if (head->kind == EK::Esc) return splice(t, *head, args);
        Result ra = exact(*t.kids[1]);
        Result rf = exact(*t.kids[0]);
        LCtx ctx = lbranch(ra.ctx, rf.ctx);
        auto d = node(Rule::App, t, ctx);
        d->kids = {ra.d, rf.d};
        return {d, ctx};
      }
      case EK::Lam: {
        Result rb = exact(*t.kids[0]);
        LCtx frame = strip(rb.ctx, t.binder);
        LCtx given = lbranch(frame, lleaf(t.binder, guest_of(*t.bound_type, t.pos)));
        Result body = fit(*t.kids[0], given);
        auto d = node(Rule::Abs, t, frame);
        d->name = t.name;
        d->kids = {body.d};
        return {d, frame};
      }
      case EK::Let: {
        Result r1 = exact(*t.kids[0]);
        Result r2 = exact(*t.kids[1]);
        LCtx frame = strip(r2.ctx, t.binder);
        Result body = fit(*t.kids[1], lbranch(frame, lleaf(t.binder, guest_of(*t.bound_type, t.pos))));
        LCtx ctx = lbranch(frame, r1.ctx);
        auto d = node(Rule::Let, t, ctx);
        d->name = t.name;
        d->kids = {r1.d, body.d};
        return {d, ctx};
      }
      case EK::LetRec: {
        LCtx self = lleaf(t.binder, guest_of(*t.bound_type, t.pos));
        Result r1 = exact(*t.kids[0]);
        LCtx frame1 = strip(r1.ctx, t.binder);
        Result bound = fit(*t.kids[0], lbranch(frame1, self));
        Result r2 = exact(*t.kids[1]);
        LCtx frame2 = strip(r2.ctx, t.binder);
        Result body = fit(*t.kids[1], lbranch(frame2, self));
        LCtx ctx = lbranch(frame2, frame1);
        auto d = node(Rule::LetRec, t, ctx);
        d->name = t.name;
        d->kids = {bound.d, body.d};
        return {d, ctx};
      }
      case EK::Brak:
        fail(ErrorCode::NestedBracketUnsupported, "brackets nested inside a bracket cannot be flattened", t.pos);
    }
    fail(ErrorCode::Internal, "unhandled node in elaboration", t.pos);
  }

  Result splice(const TypedTerm& whole, const TypedTerm& esc, const std::vector<const TypedTerm*>& args) {
    std::vector<Result> rs;
    for (const TypedTerm* a : args) rs.push_back(exact(*a));
    std::vector<LCtx> ctxs;
    for (const auto& r : rs) ctxs.push_back(r.ctx);
    LCtx ctx = labsorbed(ctxs);
    auto d = node(Rule::Esc, whole, ctx);
    auto [targs, tres] = split_arrows(guest_of(esc.type, esc.pos));
    if (args.size() > targs.size()) fail(ErrorCode::Internal, "splice applied to too many arguments", whole.pos);
    d->splice_args = targs;
    d->splice_result = tres;
    d->source = &esc;
    for (const auto& r : rs) d->kids.push_back(r.d);
    return {d, ctx};
  }
};

Result Elaborator::exact(const TypedTerm& t) { return exact_impl(t); }

}  // namespace

ShapeTree required_context(const TypedTerm& t) { return Elaborator().exact(t).d->ctx; }

DerivPtr elaborate(const TypedTerm& body) { return Elaborator().root(body).d; }

namespace {

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Var: return "Var";
    case Rule::Lit: return "Lit";
    case Rule::Note: return "Note";
    case Rule::Let: return "Let";
    case Rule::LetRec: return "LetRec";
    case Rule::Abs: return "Abs";
    case Rule::App: return "App";
    case Rule::Esc: return "Esc";
    case Rule::Arrange: return "Arrange";
    case Rule::Prim: return "Prim";
  }
  return "?";
}

void dump_into(const Derivation& d, int depth, std::string& out) {
  out += std::string(static_cast<std::size_t>(depth) * 2, ' ');
  out += rule_name(d.rule);
  switch (d.rule) {
    case Rule::Var:
    case Rule::Note:
    case Rule::Let:
    case Rule::LetRec:
    case Rule::Prim: out += " " + d.name; break;
    case Rule::Abs:
      if (!d.absorbed.empty()) {
        out += " absorbed";
        for (const auto& n : d.absorbed) out += " " + n;
      } else {
        out += " " + d.name;
      }
      break;
    case Rule::Lit: out += " " + d.lit.to_string() + (d.transport ? " transported" : ""); break;
    case Rule::Arrange: out += " " + to_string(*d.arrangement); break;
    default: break;
  }
  out += "  " + d.ctx.to_string() + " |- " + d.type.to_string() + "\n";
  for (const auto& k : d.kids) dump_into(*k, depth + 1, out);
}

}  // namespace

std::string dump(const Derivation& d) {
  std::string out;
  dump_into(d, 0, out);
  return out;
}

std::string erase(const Derivation& d) {
  switch (d.rule) {
    case Rule::Var: return "Var " + d.name;
    case Rule::Lit: return "Lit " + d.lit.to_string();
    case Rule::Note: return "Note(" + d.name + ", " + erase(*d.kids[0]) + ")";
    case Rule::Let: return "Let(" + d.name + ", " + erase(*d.kids[0]) + ", " + erase(*d.kids[1]) + ")";
    case Rule::LetRec: return "LetRec(" + d.name + ", " + erase(*d.kids[0]) + ", " + erase(*d.kids[1]) + ")";
    case Rule::Abs: {
      if (d.absorbed.empty()) return "Lam(" + d.name + ", " + erase(*d.kids[0]) + ")";
      std::string out = erase(*d.kids[0]);
      for (auto it = d.absorbed.rbegin(); it != d.absorbed.rend(); ++it) out = "Lam(" + *it + ", " + out + ")";
      return out;
    }
    case Rule::App: return "App(" + erase(*d.kids[1]) + ", " + erase(*d.kids[0]) + ")";
    case Rule::Esc: {
      std::string out = "Esc(" + show(*d.source->kids[0]) + ")";
      for (const auto& k : d.kids) out = "App(" + out + ", " + erase(*k) + ")";
      return out;
    }
    case Rule::Arrange: return erase(*d.kids[0]);
    case Rule::Prim: {
      if (d.name == "ite") {
        return "If(" + erase(*d.kids[0]) + ", " + erase(*d.kids[1]) + ", " + erase(*d.kids[2]) + ")";
      }
      std::string out = "Prim(" + d.name;
      for (const auto& k : d.kids) out += ", " + erase(*k);
      return out + ")";
    }
  }
  return "?";
}

}  // namespace garrow
