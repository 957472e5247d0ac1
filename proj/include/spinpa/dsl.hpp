#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "spinpa/basis.hpp"
#include "spinpa/diagram.hpp"

namespace spinpa {

struct SourcePos {
  int line = 1;
  int column = 1;
};

/// Parse or type error with the position of the offending token or node.
struct DslError : ValidationError {
  DslError(const std::string& what, SourcePos at)
      : ValidationError(std::to_string(at.line) + ":" + std::to_string(at.column) + ": " + what), pos(at) {}
  SourcePos pos;
};

enum class NodeKind : std::uint8_t { Generator, Unit, Basis, Jones, Diagram, Literal, Sum, Product, Apply };
enum class UnaryOp : std::uint8_t { Inc, CapL, CapR, Rot, Star, Tr, Expand };

struct Expr;
using ExprPtr = std::shared_ptr<Expr>;

struct Expr {
  NodeKind kind = NodeKind::Literal;
  SourcePos pos;

  int k = 0;                    // Unit, Jones
  Sign eps = Sign::Plus;        // Unit, Jones
  int index = 0;                // Generator label, Jones position
  BasisIndex basis;             // Basis
  FlatDiagram diagram;          // Diagram
  Scalar value;                 // Literal
  UnaryOp op = UnaryOp::Inc;    // Apply
  std::vector<ExprPtr> args;    // Sum, Product, Apply
  std::vector<bool> negated;    // Sum: sign of each summand

  /// Filled by typecheck: the colour of an element-valued node, empty for scalars.
  std::optional<Colour> colour;
  bool typed = false;
};

/// Parses with scalars over sqrt(n); `sqrtn` and `sqrt(n)` both denote sqrt n.
ExprPtr parse_expr(const std::string& text, int n);

/// Infers colours bottom up; throws DslError at the first ill-typed node.
void typecheck(Expr& e, int n);

/// Canonical rendering; parsing it back gives the same tree.
std::string print_expr(const Expr& e);

using Value = std::variant<Scalar, Element>;

/// Evaluates a type-checked tree.
Value evaluate(const Expr& e, int n);

/// parse + typecheck + evaluate.
Value eval_text(const std::string& text, int n);

std::string to_text(const Value& v);
const char* op_name(UnaryOp op);

}  // namespace spinpa
