#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wbench/scalars/field.hpp"

namespace wb {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Syntax tree for coefficient strings such as "1/2*(z3' + 6*z1*z3)*d + 3*sqrt(2)*t1^(5/2)".
// Primes after a name give its jet order; "I" is the imaginary unit.
struct ExprNode {
  enum class Kind { Num, Sym, Add, Sub, Mul, Div, Neg, Pow, Call };
  Kind kind = Kind::Num;
  Rational num;
  std::string name;  // Sym: variable name, Call: function name
  int jet = 0;       // Sym: number of primes
  std::vector<std::unique_ptr<ExprNode>> kids;
};

using ExprPtr = std::unique_ptr<ExprNode>;

ExprPtr parse_expr(std::string_view text);

// Constant folding into the number field; nullopt when a symbol is present or
// a sqrt leaves the field.
std::optional<FieldScalar> fold_constant(const ExprNode& e);

}  // namespace wb
