#pragma once

#include <string>

#include "ckstk/growth.hpp"

namespace ckstk {

// Builds a growth function from a tiny arithmetic expression in the variable
// r. Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' base)?
//   base   := number | 'r' | '(' expr ')' | func '(' expr ')'
//   func   := 'exp' | 'log' | 'sqrt'
// Whitespace is insignificant; numbers are decimal with optional fraction and
// exponent. When the root node is exp(...), evaluation works on the exponent
// directly so log u never round-trips through e^x.
// Throws ParseError (with position and expected-token set) on malformed
// input, NonPositive if a probe at r in {0, 1, 10} gives u(r) <= 0.
GrowthFunction parse_growth(const std::string& expr);

}  // namespace ckstk
