#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "tadic/truncated.hpp"

namespace tadic {

enum class ExprOp {
  Var,
  Literal,
  Neg,
  Not,
  Add,
  Sub,
  Mul,
  Pow,
  And,
  Or,
  Xor,
  Inv,
};

/// Immutable syntax tree of a map expression in the variable `x`.
///
/// Every construct (ring operations, bitwise operations, constant powers,
/// inverses of odd constants) is a T-function, so any well-formed tree
/// denotes a 1-Lipschitz map of the 2-adic integers.
class MapExpr {
 public:
  static MapExpr var();
  static MapExpr literal(std::uint64_t value);
  static MapExpr unary(ExprOp op, MapExpr operand);
  static MapExpr binary(ExprOp op, MapExpr lhs, MapExpr rhs);
  static MapExpr power(MapExpr base, std::uint64_t exponent);
  /// Throws NonConstantInvArgument / EvenInvConstant.
  static MapExpr inverse(MapExpr constant);

  ExprOp op() const noexcept;
  /// Literal value for Literal, exponent for Pow; 0 otherwise.
  std::uint64_t value() const noexcept;
  MapExpr lhs() const;
  MapExpr rhs() const;

  bool is_constant() const noexcept;
  /// True when only ring operations (no bitwise ones) occur.
  bool is_polynomial() const noexcept;

  /// Evaluates at x modulo 2^k; result is reduced mod 2^k.
  std::uint64_t evaluate(std::uint64_t x, unsigned k) const;
  Truncated2Adic evaluate(Truncated2Adic x) const;

  friend bool operator==(const MapExpr& a, const MapExpr& b);

  struct Node;  // opaque

 private:
  explicit MapExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Parses the map DSL.
///
///   expr    := xor_expr ("or" xor_expr)*
///   xor_expr:= and_expr ("xor" and_expr)*
///   and_expr:= sum ("and" sum)*
///   sum     := prod (("+"|"-") prod)*
///   prod    := unary ("*" unary)*
///   unary   := ("-"|"not") unary | power
///   power   := atom ("**" uint)?
///   atom    := "x" | uint | "inv" "(" expr ")" | "(" expr ")"
///
/// Literals are decimal or 0x-hex and are reduced mod 2^64.
/// Throws ParseError.
MapExpr parse_map(std::string_view text);

/// Canonical text form; parse_map(to_string(e)) == e.
std::string to_string(const MapExpr& expr);

}  // namespace tadic
