// Recursive-descent parser for the expression grammar:
//
//   expr   := term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*
//   factor := base ("^" uint)?
//   base   := number | ident | fn "(" expr ")" | "(" expr ")" | "-" base
//   fn     := "sin" | "cos" | "exp"
//
// "/" requires a phase-space-constant right operand and is rejected at
// construction otherwise. Numbers are decimal or rational literals and are
// held exactly.
#pragma once

#include <string>

#include "qaxiom/expr.hpp"

namespace qaxiom {

Expr parse_expr(const std::string& text, SpacePtr space);

} // namespace qaxiom
