#include "garrow/syntax.hpp"

#include <cctype>
#include <charconv>
#include <set>

namespace garrow {

namespace {

enum class Tok { Ident, Int, Sym, DefSep, End };

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

const std::set<std::string> kKeywords = {"let",  "letrec", "in",  "if",  "then", "else",
                                         "true", "false",  "fst", "snd", "note"};

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  bool line_start = true;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
        line_start = true;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '\n' || c == ' ' || c == '\t' || c == '\r') {
      advance(1);
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    SourcePos pos{line, col};
    if (line_start && col == 1 && !out.empty()) out.push_back({Tok::DefSep, "", pos});
    line_start = false;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '\'')) ++j;
      out.push_back({Tok::Ident, src.substr(i, j - i), pos});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::Int, src.substr(i, j - i), pos});
      advance(j - i);
      continue;
    }
    static const char* two[] = {"<[", "]>", "->", "=="};
    bool matched = false;
    for (const char* s : two) {
      if (src.compare(i, 2, s) == 0) {
        out.push_back({Tok::Sym, s, pos});
        advance(2);
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (std::string("\\~@:=(),*+-").find(c) != std::string::npos) {
      out.push_back({Tok::Sym, std::string(1, c), pos});
      advance(1);
      continue;
    }
    fail(ErrorCode::SyntaxError, std::string("unexpected character '") + c + "'", pos);
  }
  out.push_back({Tok::End, "", SourcePos{line, col}});
  return out;
}

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::DefSep: return "start of a new definition";
    default: return "'" + t.text + "'";
  }
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Program program() {
    Program prog;
    if (peek().kind == Tok::End) return prog;
    prog.push_back(definition());
    while (peek().kind == Tok::DefSep) {
      next();
      prog.push_back(definition());
    }
    expect_end();
    return prog;
  }

  ExprPtr lone_expr() {
    skip_seps();
    ExprPtr e = expr();
    skip_seps();
    expect_end();
    return e;
  }

  TypeExpr lone_type() {
    TypeExpr t = type();
    expect_end();
    return t;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  bool is_sym(const std::string& s, std::size_t k = 0) const {
    return peek(k).kind == Tok::Sym && peek(k).text == s;
  }
  bool is_kw(const std::string& s) const { return peek().kind == Tok::Ident && peek().text == s; }

  [[noreturn]] void error(const std::string& expected) const {
    fail(ErrorCode::SyntaxError, "expected " + expected + ", found " + describe(peek()), peek().pos);
  }

  void expect_sym(const std::string& s) {
    if (!is_sym(s)) error("'" + s + "'");
    next();
  }
  void expect_kw(const std::string& s) {
    if (!is_kw(s)) error("'" + s + "'");
    next();
  }
  void expect_end() {
    if (peek().kind != Tok::End) error("end of input");
  }
  void skip_seps() {
    while (peek().kind == Tok::DefSep) next();
  }

  std::string ident(const std::string& what) {
    if (peek().kind != Tok::Ident || kKeywords.count(peek().text)) error(what);
    return next().text;
  }

  static ExprPtr mk(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

  static ExprPtr prim(const std::string& name, std::vector<ExprPtr> args, SourcePos pos) {
    Expr e;
    e.kind = Expr::Kind::PrimOp;
    e.name = name;
    e.kids = std::move(args);
    e.pos = pos;
    return mk(std::move(e));
  }

  struct Binder {
    std::string name;
    std::optional<TypeExpr> annot;
    SourcePos pos;
  };

  Binder binder() {
    SourcePos pos = peek().pos;
    if (is_sym("(")) {
      next();
      std::string n = ident("a parameter name");
      expect_sym(":");
      TypeExpr t = type();
      expect_sym(")");
      return {n, t, pos};
    }
    return {ident("a parameter name"), std::nullopt, pos};
  }

  static ExprPtr lam(const Binder& b, ExprPtr body) {
    Expr e;
    e.kind = Expr::Kind::Lam;
    e.name = b.name;
    e.annot = b.annot;
    e.pos = b.pos;
    e.kids = {std::move(body)};
    return mk(std::move(e));
  }

  Definition definition() {
    Definition d;
    d.pos = peek().pos;
    d.name = ident("a definition name");
    std::vector<Binder> params;
    while (!is_sym("=")) params.push_back(binder());
    next();
    ExprPtr body = expr();
    for (auto it = params.rbegin(); it != params.rend(); ++it) body = lam(*it, body);
    d.body = body;
    return d;
  }

  ExprPtr expr() {
    SourcePos pos = peek().pos;
    if (is_sym("\\")) {
      next();
      Binder b = binder();
      expect_sym("->");
      return lam(b, expr());
    }
    if (is_kw("let")) {
      next();
      Expr e;
      e.kind = Expr::Kind::Let;
      e.pos = pos;
      e.name = ident("a variable name");
      expect_sym("=");
      ExprPtr bound = expr();
      expect_kw("in");
      e.kids = {bound, expr()};
      return mk(std::move(e));
    }
    if (is_kw("letrec")) {
      next();
      Expr e;
      e.kind = Expr::Kind::LetRec;
      e.pos = pos;
      e.name = ident("a variable name");
      expect_sym(":");
      e.annot = type();
      expect_sym("=");
      ExprPtr bound = expr();
      expect_kw("in");
      e.kids = {bound, expr()};
      return mk(std::move(e));
    }
    if (is_kw("if")) {
      next();
      Expr e;
      e.kind = Expr::Kind::If;
      e.pos = pos;
      ExprPtr c = expr();
      expect_kw("then");
      ExprPtr t = expr();
      expect_kw("else");
      e.kids = {c, t, expr()};
      return mk(std::move(e));
    }
    if (is_kw("note")) {
      next();
      Expr e;
      e.kind = Expr::Kind::Note;
      e.pos = pos;
      e.name = ident("a note name");
      e.kids = {expr()};
      return mk(std::move(e));
    }
    return comparison();
  }

  ExprPtr comparison() {
    ExprPtr l = additive();
    if (is_sym("==")) {
      SourcePos pos = next().pos;
      ExprPtr r = additive();
      if (is_sym("==")) error("an operand (== does not chain)");
      return prim("eq", {l, r}, pos);
    }
    return l;
  }

  ExprPtr additive() {
    ExprPtr l = multiplicative();
    while (is_sym("+") || is_sym("-")) {
      Token op = next();
      l = prim(op.text == "+" ? "add" : "sub", {l, multiplicative()}, op.pos);
    }
    return l;
  }

  ExprPtr multiplicative() {
    ExprPtr l = application();
    while (is_sym("*")) {
      SourcePos pos = next().pos;
      l = prim("mult", {l, application()}, pos);
    }
    return l;
  }

  bool atom_start() const {
    const Token& t = peek();
    if (t.kind == Tok::Int) return true;
    if (t.kind == Tok::Ident) {
      return !kKeywords.count(t.text) || t.text == "true" || t.text == "false" || t.text == "fst" || t.text == "snd";
    }
    return t.kind == Tok::Sym && (t.text == "(" || t.text == "<[" || t.text == "~");
  }

  ExprPtr application() {
    if (!atom_start()) error("an expression");
    ExprPtr f = atom();
    while (atom_start()) {
      SourcePos pos = peek().pos;
      Expr e;
      e.kind = Expr::Kind::App;
      e.pos = pos;
      e.kids = {f, atom()};
      f = mk(std::move(e));
    }
    return f;
  }

  ExprPtr atom() {
    Token t = peek();
    if (t.kind == Tok::Int) {
      next();
      std::int64_t v = 0;
      auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
      if (ec != std::errc()) fail(ErrorCode::SyntaxError, "integer literal out of range: " + t.text, t.pos);
      Expr e;
      e.kind = Expr::Kind::Lit;
      e.lit = Literal::Int(v);
      e.pos = t.pos;
      return mk(std::move(e));
    }
    if (t.kind == Tok::Ident) {
      if (t.text == "true" || t.text == "false") {
        next();
        Expr e;
        e.kind = Expr::Kind::Lit;
        e.lit = Literal::Bool(t.text == "true");
        e.pos = t.pos;
        return mk(std::move(e));
      }
      if (t.text == "fst" || t.text == "snd") {
        next();
        if (!atom_start()) error("an argument to " + t.text);
        return prim(t.text, {atom()}, t.pos);
      }
      Expr e;
      e.kind = Expr::Kind::Var;
      e.name = ident("an identifier");
      e.pos = t.pos;
      return mk(std::move(e));
    }
    if (is_sym("~")) {
      next();
      if (!atom_start()) error("an expression after '~'");
      Expr e;
      e.kind = Expr::Kind::Esc;
      e.pos = t.pos;
      e.kids = {atom()};
      return mk(std::move(e));
    }
    if (is_sym("<[")) {
      next();
      Expr e;
      e.kind = Expr::Kind::Brak;
      e.pos = t.pos;
      e.kids = {expr()};
      expect_sym("]>");
      return mk(std::move(e));
    }
    if (is_sym("(")) {
      next();
      if (is_sym(")")) {
        next();
        Expr e;
        e.kind = Expr::Kind::Lit;
        e.lit = Literal::Unit();
        e.pos = t.pos;
        return mk(std::move(e));
      }
      ExprPtr inner = expr();
      if (is_sym(",")) {
        std::vector<ExprPtr> items{inner};
        while (is_sym(",")) {
          next();
          items.push_back(expr());
        }
        expect_sym(")");
        ExprPtr acc = items.back();
        for (std::size_t k = items.size() - 1; k-- > 0;) acc = prim("pair", {items[k], acc}, t.pos);
        return acc;
      }
      expect_sym(")");
      return inner;
    }
    error("an expression");
  }

  TypeExpr type() {
    TypeExpr l = product_type();
    if (is_sym("->")) {
      SourcePos pos = next().pos;
      TypeExpr r = type();
      TypeExpr f;
      f.kind = TypeExpr::Kind::Fun;
      f.pos = pos;
      f.kids = {l, r};
      return f;
    }
    return l;
  }

  TypeExpr product_type() {
    TypeExpr l = atom_type();
    if (is_sym("*")) {
      SourcePos pos = next().pos;
      TypeExpr r = product_type();
      TypeExpr p;
      p.kind = TypeExpr::Kind::Prod;
      p.pos = pos;
      p.kids = {l, r};
      return p;
    }
    return l;
  }

  TypeExpr atom_type() {
    Token t = peek();
    TypeExpr out;
    out.pos = t.pos;
    if (t.kind == Tok::Ident && !kKeywords.count(t.text)) {
      next();
      if (t.text == "Int") {
        out.kind = TypeExpr::Kind::Int;
      } else if (t.text == "Bool") {
        out.kind = TypeExpr::Kind::Bool;
      } else if (std::islower(static_cast<unsigned char>(t.text[0]))) {
        out.kind = TypeExpr::Kind::Var;
        out.name = t.text;
      } else {
        fail(ErrorCode::SyntaxError, "unknown type '" + t.text + "'", t.pos);
      }
      return out;
    }
    if (is_sym("(")) {
      next();
      if (is_sym(")")) {
        next();
        out.kind = TypeExpr::Kind::Unit;
        return out;
      }
      TypeExpr inner = type();
      expect_sym(")");
      return inner;
    }
    if (is_sym("<[")) {
      next();
      out.kind = TypeExpr::Kind::Code;
      out.kids = {type()};
      expect_sym("]>");
      expect_sym("@");
      out.name = ident("a classifier name");
      return out;
    }
    error("a type");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Program parse_program(const std::string& source) { return Parser(lex(source)).program(); }

ExprPtr parse_expr(const std::string& source) { return Parser(lex(source)).lone_expr(); }

TypeExpr parse_type(const std::string& source) { return Parser(lex(source)).lone_type(); }

namespace {

class ValueParser {
 public:
  explicit ValueParser(const std::string& s) : s_(s) {}

  Value parse() {
    Value v = value();
    skip();
    if (i_ != s_.size()) error("end of value");
    return v;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  [[noreturn]] void error(const std::string& expected) const {
    fail(ErrorCode::SyntaxError, "expected " + expected + " in value '" + s_ + "'",
         SourcePos{1, static_cast<int>(i_) + 1});
  }

  Value value() {
    skip();
    if (i_ >= s_.size()) error("a value");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      skip();
      if (i_ < s_.size() && s_[i_] == ')') {
        ++i_;
        return Value::Unit();
      }
      Value l = value();
      skip();
      if (i_ < s_.size() && s_[i_] == ')') {
        ++i_;
        return l;
      }
      if (i_ >= s_.size() || s_[i_] != ',') error("',' or ')'");
      ++i_;
      Value r = value();
      skip();
      if (i_ >= s_.size() || s_[i_] != ')') error("')'");
      ++i_;
      return Value::Pair(l, r);
    }
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i_ + (c == '-' ? 1 : 0);
      std::size_t start = j;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      if (j == start) error("digits");
      std::int64_t v = 0;
      auto [p, ec] = std::from_chars(s_.data() + i_, s_.data() + j, v);
      if (ec != std::errc()) fail(ErrorCode::SyntaxError, "integer out of range in value '" + s_ + "'");
      i_ = j;
      return Value::Int(v);
    }
    for (const char* kw : {"true", "false"}) {
      std::size_t n = std::char_traits<char>::length(kw);
      if (s_.compare(i_, n, kw) == 0) {
        i_ += n;
        return Value::Bool(kw[0] == 't');
      }
    }
    error("a value");
  }

  const std::string& s_;
  std::size_t i_ = 0;
};

}  // namespace

Value parse_value(const std::string& text) { return ValueParser(text).parse(); }

std::string show(const TypeExpr& t) {
  switch (t.kind) {
    case TypeExpr::Kind::Int: return "Int";
    case TypeExpr::Kind::Bool: return "Bool";
    case TypeExpr::Kind::Unit: return "()";
    case TypeExpr::Kind::Var: return t.name;
    case TypeExpr::Kind::Fun: return "(" + show(t.kids[0]) + " -> " + show(t.kids[1]) + ")";
    case TypeExpr::Kind::Prod: return "(" + show(t.kids[0]) + " * " + show(t.kids[1]) + ")";
    case TypeExpr::Kind::Code: return "<[" + show(t.kids[0]) + "]>@" + t.name;
  }
  return "?";
}

std::string show(const Expr& e) {
  auto kids = [&](std::string head, std::size_t from = 0) {
    for (std::size_t i = from; i < e.kids.size(); ++i) head += ", " + show(*e.kids[i]);
    return head + ")";
  };
  switch (e.kind) {
    case Expr::Kind::Var: return "Var " + e.name;
    case Expr::Kind::Lit: return "Lit " + e.lit.to_string();
    case Expr::Kind::Lam: return kids("Lam(" + e.name + (e.annot ? " : " + show(*e.annot) : ""));
    case Expr::Kind::App: return "App(" + show(*e.kids[0]) + ", " + show(*e.kids[1]) + ")";
    case Expr::Kind::Let: return kids("Let(" + e.name);
    case Expr::Kind::LetRec: return kids("LetRec(" + e.name + " : " + show(*e.annot));
    case Expr::Kind::If: return "If(" + show(*e.kids[0]) + ", " + show(*e.kids[1]) + ", " + show(*e.kids[2]) + ")";
    case Expr::Kind::PrimOp: return kids("Prim(" + e.name);
    case Expr::Kind::Brak: return "Brak(" + show(*e.kids[0]) + ")";
    case Expr::Kind::Esc: return "Esc(" + show(*e.kids[0]) + ")";
    case Expr::Kind::Note: return kids("Note(" + e.name);
  }
  return "?";
}

}  // namespace garrow
