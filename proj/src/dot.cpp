#include "garrow/dot.hpp"

#include <memory>
#include <vector>

#include "garrow/error.hpp"

namespace garrow {

namespace {

using Kind = GaTerm::Kind;

// A bundle of wire ends shaped like a ShapeTree.
struct Wires {
  enum class Kind { Empty, Leaf, Branch };
  Kind kind = Kind::Empty;
  std::string source;
  GuestType type = GuestType::Unit();
  std::vector<Wires> kids;

  static Wires empty() { return {}; }
  static Wires leaf(std::string src, GuestType t) { return {Kind::Leaf, std::move(src), std::move(t), {}}; }
  static Wires branch(Wires l, Wires r) {
    Wires w;
    w.kind = Kind::Branch;
    w.kids = {std::move(l), std::move(r)};
    return w;
  }

  const Wires& left() const { return kids.at(0); }
  const Wires& right() const { return kids.at(1); }

  void collect(std::vector<const Wires*>& out) const {
    if (kind == Kind::Leaf) out.push_back(this);
    for (const auto& k : kids) k.collect(out);
  }
};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

class Builder {
 public:
  std::string finish(const GaTerm& t) {
    Signature sig = ga_type_of(t);
    line("digraph ga {");
    ++indent_;
    line("rankdir=LR;");
    line("node [shape=box, fontname=\"monospace\"];");
    Wires in = inputs(sig.dom);
    Wires out = build(t, in);
    std::vector<const Wires*> ends;
    out.collect(ends);
    for (std::size_t i = 0; i < ends.size(); ++i) {
      std::string id = "out" + std::to_string(i);
      line(id + " [shape=circle, label=\"out\"];");
      edge(*ends[i], id);
    }
    --indent_;
    line("}");
    return text_;
  }

 private:
  void line(const std::string& s) {
    text_.append(static_cast<std::size_t>(indent_) * 2, ' ');
    text_ += s;
    text_ += '\n';
  }

  void edge(const Wires& from, const std::string& to) {
    line(from.source + " -> " + to + " [label=\"" + escape(from.type.to_string()) + "\"];");
  }

  Wires inputs(const ShapeTree& s) {
    switch (s.kind()) {
      case ShapeTree::Kind::Empty: return Wires::empty();
      case ShapeTree::Kind::Leaf: {
        std::string id = "in" + std::to_string(inputs_++);
        line(id + " [shape=circle, label=\"in\"];");
        return Wires::leaf(id, s.type());
      }
      case ShapeTree::Kind::Branch: {
        Wires l = inputs(s.left());
        return Wires::branch(l, inputs(s.right()));
      }
    }
    return Wires::empty();
  }

  // A node consuming every wire in `in` and producing wires shaped like `out`.
  Wires node(const std::string& label, const Wires& in, const ShapeTree& out) {
    std::string id = "n" + std::to_string(nodes_++);
    line(id + " [label=\"" + escape(label) + "\"];");
    std::vector<const Wires*> ends;
    in.collect(ends);
    for (const Wires* w : ends) edge(*w, id);
    return outputs(id, out);
  }

  Wires outputs(const std::string& id, const ShapeTree& s) {
    switch (s.kind()) {
      case ShapeTree::Kind::Empty: return Wires::empty();
      case ShapeTree::Kind::Leaf: return Wires::leaf(id, s.type());
      case ShapeTree::Kind::Branch: {
        Wires l = outputs(id, s.left());
        return Wires::branch(l, outputs(id, s.right()));
      }
    }
    return Wires::empty();
  }

  // Runs `body` inside a cluster; the cluster is dropped if it stayed empty.
  template <typename F>
  Wires cluster(const std::string& label, F body) {
    std::size_t mark = text_.size();
    std::size_t nodes_before = nodes_;
    line("subgraph cluster_" + std::to_string(clusters_++) + " {");
    ++indent_;
    line("label=\"" + label + "\";");
    std::size_t inner = text_.size();
    Wires out = body();
    --indent_;
    if (nodes_ == nodes_before) {
      std::string edges = text_.substr(inner);
      text_.resize(mark);
      // Re-indent the edges one level out.
      std::size_t pos = 0;
      while (pos < edges.size()) {
        std::size_t nl = edges.find('\n', pos);
        std::string l = edges.substr(pos, nl - pos);
        if (l.rfind("  ", 0) == 0) l = l.substr(2);
        text_ += l + '\n';
        pos = nl + 1;
      }
      --clusters_;
    } else {
      line("}");
    }
    return out;
  }

  Wires build(const GaTerm& t, const Wires& in) {
    Signature sig = ga_type_of(t);
    switch (t.kind()) {
      case Kind::Id: return in;
      case Kind::Comp: return build(t.kid(1), build(t.kid(0), in));
      case Kind::First: {
        Wires a = in.left();
        Wires inner = cluster("first", [&] { return build(t.kid(0), a); });
        return Wires::branch(inner, in.right());
      }
      case Kind::Second: {
        Wires a = in.right();
        Wires inner = cluster("second", [&] { return build(t.kid(0), a); });
        return Wires::branch(in.left(), inner);
      }
      case Kind::CancelL: return in.right();
      case Kind::CancelR: return in.left();
      case Kind::UncancelL: return Wires::branch(Wires::empty(), in);
      case Kind::UncancelR: return Wires::branch(in, Wires::empty());
      case Kind::Assoc:
        return Wires::branch(in.left().left(), Wires::branch(in.left().right(), in.right()));
      case Kind::Unassoc:
        return Wires::branch(Wires::branch(in.left(), in.right().left()), in.right().right());
      case Kind::Swap: return Wires::branch(in.right(), in.left());
      case Kind::Copy: return node("copy", in, sig.cod);
      case Kind::Drop: return node("drop", in, sig.cod);
      case Kind::Constant: return node(t.literal().to_string(), in, sig.cod);
      case Kind::Prim: return node(t.name(), in, sig.cod);
      case Kind::ApplyR: return node("apply", in, sig.cod);
      case Kind::Merge: return node("merge", in, sig.cod);
      case Kind::Never: return node("never", in, sig.cod);
      case Kind::InjL: return node("inl", in, sig.cod);
      case Kind::InjR: return node("inr", in, sig.cod);
      case Kind::CurryR: {
        Signature body = ga_type_of(t.kid(0));
        std::string arg = "n" + std::to_string(nodes_++);
        Wires result = cluster("curry", [&] {
          line(arg + " [shape=circle, label=\"arg\"];");
          return build(t.kid(0), Wires::branch(in, Wires::leaf(arg, body.dom.right().type())));
        });
        return node("curry", result, sig.cod);
      }
      case Kind::LoopR: {
        std::string trace = "n" + std::to_string(nodes_++);
        line(trace + " [label=\"loop\"];");
        const ShapeTree& z = t.shape(0);
        Wires fed = outputs(trace, z);
        Wires out = cluster("loop", [&] { return build(t.kid(0), Wires::branch(in, fed)); });
        std::vector<const Wires*> back;
        out.right().collect(back);
        for (const Wires* w : back) line(w->source + " -> " + trace + " [label=\"" + escape(w->type.to_string()) + "\", constraint=false];");
        return out.left();
      }
    }
    fail(ErrorCode::Internal, "unhandled combinator in to_dot");
  }

  std::string text_;
  int indent_ = 0;
  std::size_t nodes_ = 0;
  std::size_t inputs_ = 0;
  std::size_t clusters_ = 0;
};

}  // namespace

std::string to_dot(const GaTerm& t) { return Builder().finish(t); }

}  // namespace garrow
