#include "garrow/residual.hpp"

#include <cstdint>

#include "garrow/error.hpp"
#include "garrow/prims.hpp"

namespace garrow {

namespace {

using Kind = GaTerm::Kind;

std::string paren(const std::string& s) { return "(" + s + ")"; }

std::string literal_text(const Literal& lit) {
  // The surface language has no negative literals.
  if (lit.kind() != Literal::Kind::Int || lit.as_int() >= 0) return lit.to_string();
  if (lit.as_int() == INT64_MIN) return "((0 - 9223372036854775807) - 1)";
  return "(0 - " + std::to_string(-lit.as_int()) + ")";
}

std::string emit(const GaTerm& t) {
  switch (t.kind()) {
    case Kind::Id: return "\\x -> x";
    case Kind::Comp:
      return "\\x -> " + paren(emit(t.kid(1))) + " (" + paren(emit(t.kid(0))) + " x)";
    case Kind::First: return "\\p -> (" + paren(emit(t.kid(0))) + " (fst p), snd p)";
    case Kind::Second: return "\\p -> (fst p, " + paren(emit(t.kid(0))) + " (snd p))";
    case Kind::CancelL: return "\\p -> snd p";
    case Kind::CancelR: return "\\p -> fst p";
    case Kind::UncancelL: return "\\x -> ((), x)";
    case Kind::UncancelR: return "\\x -> (x, ())";
    case Kind::Assoc: return "\\p -> (fst (fst p), (snd (fst p), snd p))";
    case Kind::Unassoc: return "\\p -> ((fst p, fst (snd p)), snd (snd p))";
    case Kind::Copy: return "\\x -> (x, x)";
    case Kind::Drop: return "\\y -> ()";
    case Kind::Swap: return "\\p -> (snd p, fst p)";
    case Kind::Constant: return "\\u -> " + literal_text(t.literal());
    case Kind::Prim: {
      const PrimInfo* info = find_prim(t.name());
      if (!info) fail(ErrorCode::PrimUndefined, "unknown primitive '" + t.name() + "'");
      return info->residual;
    }
    case Kind::CurryR: return "\\a -> \\x -> " + paren(emit(t.kid(0))) + " (a, x)";
    case Kind::ApplyR: return "\\p -> (snd p) (fst p)";
    case Kind::LoopR: {
      std::string body = paren(emit(t.kid(0)));
      return "\\a -> letrec k : " + surface_type_of(t.shape(0)) + " = snd (" + body +
             " (a, k)) in fst (" + body + " (a, k))";
    }
    case Kind::Merge:
    case Kind::Never:
    case Kind::InjL:
    case Kind::InjR:
      fail(ErrorCode::Unresidualizable,
           std::string(head_name(t.kind())) + " has no counterpart in the residual language");
  }
  fail(ErrorCode::Internal, "unhandled combinator in residualize");
}

}  // namespace

std::string surface_type_of(const GuestType& t) {
  switch (t.kind()) {
    case GuestType::Kind::Int: return "Int";
    case GuestType::Kind::Bool: return "Bool";
    case GuestType::Kind::Unit: return "()";
    case GuestType::Kind::Exp: return "(" + surface_type_of(t.left()) + " -> " + surface_type_of(t.right()) + ")";
    case GuestType::Kind::Prod: return "(" + surface_type_of(t.left()) + " * " + surface_type_of(t.right()) + ")";
    case GuestType::Kind::Sum:
      fail(ErrorCode::Unresidualizable, "sum type " + t.to_string() + " has no surface syntax");
  }
  return "?";
}

std::string surface_type_of(const ShapeTree& s) {
  switch (s.kind()) {
    case ShapeTree::Kind::Empty: return "()";
    case ShapeTree::Kind::Leaf: return surface_type_of(s.type());
    case ShapeTree::Kind::Branch:
      return "(" + surface_type_of(s.left()) + " * " + surface_type_of(s.right()) + ")";
  }
  return "?";
}

std::string residualize(const GaTerm& t) {
  ga_type_of(t);
  return emit(t);
}

}  // namespace garrow
