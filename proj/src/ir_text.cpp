#include "garrow/ir_text.hpp"

#include <cctype>
#include <vector>

#include "garrow/error.hpp"
#include "garrow/prims.hpp"

namespace garrow {

using Kind = GaTerm::Kind;

namespace {

void render_into(const GaTerm& t, std::string& out) {
  out += '(';
  out += head_name(t.kind());
  switch (t.kind()) {
    case Kind::Constant:
      out += ' ';
      out += t.literal().to_string();
      break;
    case Kind::Prim:
      out += ' ';
      out += t.name();
      break;
    default:
      for (std::size_t i = 0; i < t.kid_count(); ++i) {
        out += ' ';
        render_into(t.kid(i), out);
      }
  }
  out += ')';
}

// ---------------------------------------------------------------------------
// Tokens

struct Token {
  enum class Kind { LParen, RParen, Lt, Gt, Comma, Arrow, Plus, Star, Colon, Header, Word, Int, End };
  Kind kind;
  std::string text;
  std::size_t offset;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](Token::Kind k, std::size_t start, std::size_t len) {
    out.push_back({k, std::string(s.substr(start, len)), start});
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    switch (c) {
      case '(': push(Token::Kind::LParen, i++, 1); continue;
      case ')': push(Token::Kind::RParen, i++, 1); continue;
      case '<': push(Token::Kind::Lt, i++, 1); continue;
      case '>': push(Token::Kind::Gt, i++, 1); continue;
      case ',': push(Token::Kind::Comma, i++, 1); continue;
      case '+': push(Token::Kind::Plus, i++, 1); continue;
      case '*': push(Token::Kind::Star, i++, 1); continue;
      case ':': push(Token::Kind::Colon, i++, 1); continue;
      default: break;
    }
    if (c == ';' && i + 1 < s.size() && s[i + 1] == ';') {
      push(Token::Kind::Header, i, 2);
      i += 2;
      continue;
    }
    if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      push(Token::Kind::Arrow, i, 2);
      i += 2;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
      ++i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      push(Token::Kind::Int, start, i - start);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' || s[i] == '\'')) ++i;
      push(Token::Kind::Word, start, i - start);
      continue;
    }
    fail(ErrorCode::SyntaxError, "offset " + std::to_string(i) + ": unexpected character '" + std::string(1, c) + "'");
  }
  out.push_back({Token::Kind::End, "", s.size()});
  return out;
}

// ---------------------------------------------------------------------------
// Partial types and shapes for reconstruction

struct PType {
  enum class Kind { Var, Int, Bool, Unit, Exp, Sum, Prod };
  Kind kind;
  int a = -1, b = -1;
  int bound = -1;  // Var only
};

struct PShape {
  enum class Kind { Var, Empty, Leaf, Branch };
  Kind kind;
  int a = -1, b = -1;  // Leaf: a is a PType; Branch: a, b are PShapes
  int bound = -1;
};

class Store {
 public:
  int type(PType::Kind k, int a = -1, int b = -1) {
    types_.push_back({k, a, b, -1});
    return static_cast<int>(types_.size()) - 1;
  }
  int tvar() { return type(PType::Kind::Var); }
  int shape(PShape::Kind k, int a = -1, int b = -1) {
    shapes_.push_back({k, a, b, -1});
    return static_cast<int>(shapes_.size()) - 1;
  }
  int svar() { return shape(PShape::Kind::Var); }
  int leaf(int t) { return shape(PShape::Kind::Leaf, t); }
  int branch(int l, int r) { return shape(PShape::Kind::Branch, l, r); }
  int empty() { return shape(PShape::Kind::Empty); }

  int find_t(int t) const {
    while (types_[t].kind == PType::Kind::Var && types_[t].bound >= 0) t = types_[t].bound;
    return t;
  }
  int find_s(int s) const {
    while (shapes_[s].kind == PShape::Kind::Var && shapes_[s].bound >= 0) s = shapes_[s].bound;
    return s;
  }
  const PType& t(int i) const { return types_[find_t(i)]; }
  const PShape& s(int i) const { return shapes_[find_s(i)]; }

  bool unify_t(int x, int y) {
    x = find_t(x);
    y = find_t(y);
    if (x == y) return true;
    if (types_[x].kind == PType::Kind::Var) return bind_t(x, y);
    if (types_[y].kind == PType::Kind::Var) return bind_t(y, x);
    if (types_[x].kind != types_[y].kind) return false;
    if (types_[x].a < 0) return true;
    return unify_t(types_[x].a, types_[y].a) && unify_t(types_[x].b, types_[y].b);
  }

  bool unify_s(int x, int y) {
    x = find_s(x);
    y = find_s(y);
    if (x == y) return true;
    if (shapes_[x].kind == PShape::Kind::Var) return bind_s(x, y);
    if (shapes_[y].kind == PShape::Kind::Var) return bind_s(y, x);
    if (shapes_[x].kind != shapes_[y].kind) return false;
    switch (shapes_[x].kind) {
      case PShape::Kind::Empty: return true;
      case PShape::Kind::Leaf: return unify_t(shapes_[x].a, shapes_[y].a);
      case PShape::Kind::Branch:
        return unify_s(shapes_[x].a, shapes_[y].a) && unify_s(shapes_[x].b, shapes_[y].b);
      case PShape::Kind::Var: break;
    }
    return false;
  }

  int from_type(const GuestType& g) {
    switch (g.kind()) {
      case GuestType::Kind::Int: return type(PType::Kind::Int);
      case GuestType::Kind::Bool: return type(PType::Kind::Bool);
      case GuestType::Kind::Unit: return type(PType::Kind::Unit);
      case GuestType::Kind::Exp: return type(PType::Kind::Exp, from_type(g.left()), from_type(g.right()));
      case GuestType::Kind::Sum: return type(PType::Kind::Sum, from_type(g.left()), from_type(g.right()));
      case GuestType::Kind::Prod: return type(PType::Kind::Prod, from_type(g.left()), from_type(g.right()));
    }
    return type(PType::Kind::Int);
  }

  int from_shape(const ShapeTree& s) {
    switch (s.kind()) {
      case ShapeTree::Kind::Empty: return empty();
      case ShapeTree::Kind::Leaf: return leaf(from_type(s.type()));
      case ShapeTree::Kind::Branch: return branch(from_shape(s.left()), from_shape(s.right()));
    }
    return empty();
  }

  int from_pattern(const TypePattern& p, std::vector<int>& vars) {
    switch (p.kind) {
      case TypePattern::Kind::Var:
        if (vars.size() <= static_cast<std::size_t>(p.var)) vars.resize(p.var + 1, -1);
        if (vars[p.var] < 0) vars[p.var] = tvar();
        return vars[p.var];
      case TypePattern::Kind::Int: return type(PType::Kind::Int);
      case TypePattern::Kind::Bool: return type(PType::Kind::Bool);
      case TypePattern::Kind::Unit: return type(PType::Kind::Unit);
      case TypePattern::Kind::Prod:
        return type(PType::Kind::Prod, from_pattern(p.kids[0], vars), from_pattern(p.kids[1], vars));
    }
    return tvar();
  }

  int from_pattern(const ShapePattern& p, std::vector<int>& vars) {
    if (p.leaf) return leaf(from_pattern(p.type, vars));
    return branch(from_pattern(p.kids[0], vars), from_pattern(p.kids[1], vars));
  }

  GuestType resolve_t(int i) const {
    const PType& p = t(i);
    switch (p.kind) {
      case PType::Kind::Var:
      case PType::Kind::Int: return GuestType::Int();
      case PType::Kind::Bool: return GuestType::Bool();
      case PType::Kind::Unit: return GuestType::Unit();
      case PType::Kind::Exp: return GuestType::Exp(resolve_t(p.a), resolve_t(p.b));
      case PType::Kind::Sum: return GuestType::Sum(resolve_t(p.a), resolve_t(p.b));
      case PType::Kind::Prod: return GuestType::Prod(resolve_t(p.a), resolve_t(p.b));
    }
    return GuestType::Int();
  }

  ShapeTree resolve_s(int i) const {
    const PShape& p = s(i);
    switch (p.kind) {
      case PShape::Kind::Var:
      case PShape::Kind::Empty: return ShapeTree::Empty();
      case PShape::Kind::Leaf: return ShapeTree::Leaf(resolve_t(p.a));
      case PShape::Kind::Branch: return ShapeTree::Branch(resolve_s(p.a), resolve_s(p.b));
    }
    return ShapeTree::Empty();
  }

  std::string show_s(int i) const {
    const PShape& p = s(i);
    switch (p.kind) {
      case PShape::Kind::Var: return "?";
      case PShape::Kind::Empty: return "<>";
      case PShape::Kind::Leaf: return "<" + show_t(p.a) + ">";
      case PShape::Kind::Branch: return "<" + show_s(p.a) + ", " + show_s(p.b) + ">";
    }
    return "?";
  }

  std::string show_t(int i) const {
    const PType& p = t(i);
    switch (p.kind) {
      case PType::Kind::Var: return "?";
      case PType::Kind::Int: return "Int";
      case PType::Kind::Bool: return "Bool";
      case PType::Kind::Unit: return "()";
      case PType::Kind::Exp: return "(" + show_t(p.a) + " -> " + show_t(p.b) + ")";
      case PType::Kind::Sum: return "(" + show_t(p.a) + " + " + show_t(p.b) + ")";
      case PType::Kind::Prod: return "(" + show_t(p.a) + " * " + show_t(p.b) + ")";
    }
    return "?";
  }

 private:
  bool occurs_t(int v, int t) const {
    t = find_t(t);
    if (t == v) return true;
    const PType& p = types_[t];
    return p.a >= 0 && (occurs_t(v, p.a) || occurs_t(v, p.b));
  }
  bool occurs_s(int v, int s) const {
    s = find_s(s);
    if (s == v) return true;
    const PShape& p = shapes_[s];
    return p.kind == PShape::Kind::Branch && (occurs_s(v, p.a) || occurs_s(v, p.b));
  }
  bool bind_t(int v, int t) {
    if (occurs_t(v, t)) return false;
    types_[v].bound = t;
    return true;
  }
  bool bind_s(int v, int s) {
    if (occurs_s(v, s)) return false;
    shapes_[v].bound = s;
    return true;
  }

  std::vector<PType> types_;
  std::vector<PShape> shapes_;
};

// ---------------------------------------------------------------------------
// Parser

struct PNode {
  Kind kind;
  std::vector<int> kids;  // indices into the node arena
  Literal lit = Literal::Unit();
  std::string name;
  int dom = -1;
  int cod = -1;
  int aux = -1;  // First/Second/LoopR: frame shape; CurryR: argument type
};

Kind kind_of_head(const std::string& h, std::size_t offset) {
  static const std::vector<Kind> all = {
      Kind::Id, Kind::Comp, Kind::First, Kind::Second, Kind::CancelL, Kind::CancelR,
      Kind::UncancelL, Kind::UncancelR, Kind::Assoc, Kind::Unassoc, Kind::Copy, Kind::Drop,
      Kind::Swap, Kind::Constant, Kind::Prim, Kind::CurryR, Kind::ApplyR, Kind::LoopR,
      Kind::Merge, Kind::Never, Kind::InjL, Kind::InjR};
  for (Kind k : all) {
    if (head_name(k) == h) return k;
  }
  fail(ErrorCode::SyntaxError, "offset " + std::to_string(offset) + ": unknown combinator '" + h + "'");
}

std::size_t arity(Kind k) {
  switch (k) {
    case Kind::Comp: return 2;
    case Kind::First:
    case Kind::Second:
    case Kind::CurryR:
    case Kind::LoopR: return 1;
    default: return 0;
  }
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  const Token& peek() const { return toks_[pos_]; }
  bool at(Token::Kind k) const { return peek().kind == k; }

  const Token& expect(Token::Kind k, const char* what) {
    if (!at(k)) {
      fail(ErrorCode::SyntaxError, "offset " + std::to_string(peek().offset) + ": expected " + what +
                                       (peek().text.empty() ? std::string(" at end of input")
                                                            : ", found '" + peek().text + "'"));
    }
    return toks_[pos_++];
  }

  void expect_word(const char* w) {
    const Token& t = expect(Token::Kind::Word, w);
    if (t.text != w) {
      fail(ErrorCode::SyntaxError, "offset " + std::to_string(t.offset) + ": expected '" + w + "', found '" + t.text + "'");
    }
  }

  GuestType type() {
    GuestType lhs = type_atom();
    if (at(Token::Kind::Arrow)) {
      ++pos_;
      return GuestType::Exp(lhs, type());
    }
    if (at(Token::Kind::Plus)) {
      ++pos_;
      return GuestType::Sum(lhs, type());
    }
    if (at(Token::Kind::Star)) {
      ++pos_;
      return GuestType::Prod(lhs, type());
    }
    return lhs;
  }

  GuestType type_atom() {
    if (at(Token::Kind::LParen)) {
      ++pos_;
      if (at(Token::Kind::RParen)) {
        ++pos_;
        return GuestType::Unit();
      }
      GuestType t = type();
      expect(Token::Kind::RParen, "')'");
      return t;
    }
    const Token& w = expect(Token::Kind::Word, "a type");
    if (w.text == "Int") return GuestType::Int();
    if (w.text == "Bool") return GuestType::Bool();
    fail(ErrorCode::SyntaxError, "offset " + std::to_string(w.offset) + ": unknown type '" + w.text + "'");
  }

  ShapeTree shape() {
    expect(Token::Kind::Lt, "'<'");
    if (at(Token::Kind::Gt)) {
      ++pos_;
      return ShapeTree::Empty();
    }
    if (at(Token::Kind::Lt)) {
      ShapeTree l = shape();
      expect(Token::Kind::Comma, "','");
      ShapeTree r = shape();
      expect(Token::Kind::Gt, "'>'");
      return ShapeTree::Branch(l, r);
    }
    GuestType t = type();
    expect(Token::Kind::Gt, "'>'");
    return ShapeTree::Leaf(t);
  }

  Literal literal() {
    if (at(Token::Kind::Int)) {
      const Token& t = toks_[pos_++];
      try {
        return Literal::Int(std::stoll(t.text));
      } catch (const std::out_of_range&) {
        fail(ErrorCode::Overflow, "offset " + std::to_string(t.offset) + ": literal " + t.text + " does not fit in 64 bits");
      }
    }
    if (at(Token::Kind::LParen)) {
      ++pos_;
      expect(Token::Kind::RParen, "')'");
      return Literal::Unit();
    }
    const Token& w = expect(Token::Kind::Word, "a literal");
    if (w.text == "true") return Literal::Bool(true);
    if (w.text == "false") return Literal::Bool(false);
    fail(ErrorCode::SyntaxError, "offset " + std::to_string(w.offset) + ": expected a literal, found '" + w.text + "'");
  }

  int term() {
    expect(Token::Kind::LParen, "'('");
    const Token& head = expect(Token::Kind::Word, "a combinator name");
    PNode n{kind_of_head(head.text, head.offset), {}, Literal::Unit(), {}};
    if (n.kind == Kind::Constant) {
      n.lit = literal();
    } else if (n.kind == Kind::Prim) {
      n.name = expect(Token::Kind::Word, "a primitive name").text;
    } else {
      for (std::size_t i = 0; i < arity(n.kind); ++i) n.kids.push_back(term());
    }
    expect(Token::Kind::RParen, "')'");
    nodes.push_back(std::move(n));
    return static_cast<int>(nodes.size()) - 1;
  }

  std::vector<PNode> nodes;
  std::size_t pos_ = 0;

 private:
  std::vector<Token> toks_;
};

class Reconstructor {
 public:
  Reconstructor(std::vector<PNode>& nodes, Store& st) : nodes_(nodes), st_(st) {}

  void unify(int expected, int actual, const std::string& path) {
    if (!st_.unify_s(expected, actual)) {
      fail(ErrorCode::IllTyped, path + ": expected shape " + st_.show_s(expected) + ", got " + st_.show_s(actual));
    }
  }

  // Assigns dom/cod to node i given its incoming domain.
  int walk(int i, int dom, const std::string& path) {
    PNode& n = nodes_[i];
    n.dom = dom;
    std::string here = path + "/" + std::string(head_name(n.kind));
    int cod = -1;
    switch (n.kind) {
      case Kind::Id: cod = dom; break;
      case Kind::Comp: {
        int mid = walk(n.kids[0], dom, here + ".0");
        cod = walk(nodes_[i].kids[1], mid, here + ".1");
        break;
      }
      case Kind::First:
      case Kind::Second: {
        int a = st_.svar(), z = st_.svar();
        bool first = n.kind == Kind::First;
        unify(first ? st_.branch(a, z) : st_.branch(z, a), dom, here);
        int c = walk(n.kids[0], a, here);
        nodes_[i].aux = z;
        cod = first ? st_.branch(c, z) : st_.branch(z, c);
        break;
      }
      case Kind::CancelL: {
        int x = st_.svar();
        unify(st_.branch(st_.empty(), x), dom, here);
        cod = x;
        break;
      }
      case Kind::CancelR: {
        int x = st_.svar();
        unify(st_.branch(x, st_.empty()), dom, here);
        cod = x;
        break;
      }
      case Kind::UncancelL: cod = st_.branch(st_.empty(), dom); break;
      case Kind::UncancelR: cod = st_.branch(dom, st_.empty()); break;
      case Kind::Assoc: {
        int x = st_.svar(), y = st_.svar(), z = st_.svar();
        unify(st_.branch(st_.branch(x, y), z), dom, here);
        cod = st_.branch(x, st_.branch(y, z));
        break;
      }
      case Kind::Unassoc: {
        int x = st_.svar(), y = st_.svar(), z = st_.svar();
        unify(st_.branch(x, st_.branch(y, z)), dom, here);
        cod = st_.branch(st_.branch(x, y), z);
        break;
      }
      case Kind::Copy: cod = st_.branch(dom, dom); break;
      case Kind::Drop: cod = st_.empty(); break;
      case Kind::Swap: {
        int x = st_.svar(), y = st_.svar();
        unify(st_.branch(x, y), dom, here);
        cod = st_.branch(y, x);
        break;
      }
      case Kind::Constant:
        unify(st_.empty(), dom, here);
        cod = st_.leaf(st_.from_type(n.lit.type()));
        break;
      case Kind::Prim: {
        const PrimInfo* info = find_prim(n.name);
        if (!info) fail(ErrorCode::PrimUndefined, here + ": unknown primitive '" + n.name + "'");
        std::vector<int> vars;
        int pd = st_.from_pattern(info->dom, vars);
        int pc = st_.leaf(st_.from_pattern(info->cod, vars));
        unify(pd, dom, here);
        cod = pc;
        break;
      }
      case Kind::CurryR: {
        int x = st_.tvar();
        int c = walk(n.kids[0], st_.branch(dom, st_.leaf(x)), here);
        int y = st_.tvar();
        unify(st_.leaf(y), c, here);
        nodes_[i].aux = x;
        cod = st_.leaf(st_.type(PType::Kind::Exp, x, y));
        break;
      }
      case Kind::ApplyR: {
        int x = st_.tvar(), y = st_.tvar();
        unify(st_.branch(st_.leaf(x), st_.leaf(st_.type(PType::Kind::Exp, x, y))), dom, here);
        cod = st_.leaf(y);
        break;
      }
      case Kind::LoopR: {
        int z = st_.svar();
        int c = walk(n.kids[0], st_.branch(dom, z), here);
        int b = st_.svar();
        unify(st_.branch(b, z), c, here);
        nodes_[i].aux = z;
        cod = b;
        break;
      }
      case Kind::Merge: {
        int x = st_.tvar();
        unify(st_.leaf(st_.type(PType::Kind::Sum, x, x)), dom, here);
        cod = st_.leaf(x);
        break;
      }
      case Kind::Never:
        unify(st_.empty(), dom, here);
        cod = st_.leaf(st_.tvar());
        break;
      case Kind::InjL:
      case Kind::InjR: {
        int x = st_.tvar(), y = st_.tvar();
        unify(st_.leaf(n.kind == Kind::InjL ? x : y), dom, here);
        cod = st_.leaf(st_.type(PType::Kind::Sum, x, y));
        break;
      }
    }
    nodes_[i].cod = cod;
    return cod;
  }

  GaTerm build(int i) {
    const PNode& n = nodes_[i];
    auto dom = [&] { return st_.resolve_s(n.dom); };
    auto cod = [&] { return st_.resolve_s(n.cod); };
    switch (n.kind) {
      case Kind::Id: return ga::id(dom());
      case Kind::Comp: return ga::comp(build(n.kids[0]), build(n.kids[1]));
      case Kind::First: return ga::first(build(n.kids[0]), st_.resolve_s(n.aux));
      case Kind::Second: return ga::second(build(n.kids[0]), st_.resolve_s(n.aux));
      case Kind::CancelL: return ga::cancel_l(cod());
      case Kind::CancelR: return ga::cancel_r(cod());
      case Kind::UncancelL: return ga::uncancel_l(dom());
      case Kind::UncancelR: return ga::uncancel_r(dom());
      case Kind::Assoc: {
        ShapeTree d = dom();
        return ga::assoc(d.left().left(), d.left().right(), d.right());
      }
      case Kind::Unassoc: {
        ShapeTree d = dom();
        return ga::unassoc(d.left(), d.right().left(), d.right().right());
      }
      case Kind::Copy: return ga::copy(dom());
      case Kind::Drop: return ga::drop(dom());
      case Kind::Swap: {
        ShapeTree d = dom();
        return ga::swap(d.left(), d.right());
      }
      case Kind::Constant: return ga::constant(n.lit, n.lit.type());
      case Kind::Prim: return ga::prim(n.name, dom(), cod());
      case Kind::CurryR: return ga::curry_r(build(n.kids[0]));
      case Kind::ApplyR: {
        GuestType f = dom().right().type();
        return ga::apply_r(f.left(), f.right());
      }
      case Kind::LoopR: return ga::loop_r(build(n.kids[0]), st_.resolve_s(n.aux));
      case Kind::Merge: return ga::merge(cod().type());
      case Kind::Never: return ga::never(cod().type());
      case Kind::InjL:
      case Kind::InjR: {
        GuestType s = cod().type();
        return n.kind == Kind::InjL ? ga::inj_l(s.left(), s.right()) : ga::inj_r(s.left(), s.right());
      }
    }
    fail(ErrorCode::Internal, "unhandled combinator in parse_ir");
  }

 private:
  std::vector<PNode>& nodes_;
  Store& st_;
};

}  // namespace

std::string render_ir(const GaTerm& t) {
  std::string out;
  render_into(t, out);
  return out;
}

std::string render_ir_with_header(const GaTerm& t) {
  Signature sig = ga_type_of(t);
  return ";; dom: " + sig.dom.to_string() + " ;; cod: " + sig.cod.to_string() + "\n" + render_ir(t);
}

GaTerm parse_ir(std::string_view text, std::optional<ShapeTree> dom) {
  Parser p(text);
  std::optional<ShapeTree> header_dom, header_cod;
  while (p.at(Token::Kind::Header)) {
    ++p.pos_;
    const Token& key = p.expect(Token::Kind::Word, "'dom' or 'cod'");
    p.expect(Token::Kind::Colon, "':'");
    if (key.text == "dom") {
      header_dom = p.shape();
    } else if (key.text == "cod") {
      header_cod = p.shape();
    } else {
      fail(ErrorCode::SyntaxError, "offset " + std::to_string(key.offset) + ": unknown header field '" + key.text + "'");
    }
  }
  int root = p.term();
  p.expect(Token::Kind::End, "end of input");

  Store st;
  int d = dom ? st.from_shape(*dom) : header_dom ? st.from_shape(*header_dom) : st.svar();
  if (dom && header_dom && !(*dom == *header_dom)) {
    fail(ErrorCode::IllTyped, "header domain " + header_dom->to_string() + " disagrees with " + dom->to_string());
  }
  Reconstructor r(p.nodes, st);
  int c = r.walk(root, d, "root");
  if (header_cod) r.unify(st.from_shape(*header_cod), c, "root");
  GaTerm t = r.build(root);
  ga_type_of(t);
  return t;
}

ShapeTree parse_shape(std::string_view text) {
  Parser p(text);
  ShapeTree s = p.shape();
  p.expect(Token::Kind::End, "end of input");
  return s;
}

GuestType parse_guest_type(std::string_view text) {
  Parser p(text);
  GuestType t = p.type();
  p.expect(Token::Kind::End, "end of input");
  return t;
}

}  // namespace garrow
