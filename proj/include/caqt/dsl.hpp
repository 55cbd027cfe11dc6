#pragma once

#include <string>
#include <string_view>

#include "caqt/setup.hpp"

namespace caqt {

// Textual setup language.
//
//   expr      := or_expr ;
//   or_expr   := and_expr { "OR" and_expr } ;
//   and_expr  := atom { "AND" atom } ;        left operand is later in time
//   atom      := canonical | "(" expr ")" ;
//   canonical := "[" point { ";" filter } ";" point "]" ;   detector first
//   filter    := "{" int { "," int } "}" "@" int ;
//   point     := "(" int "," int ")" ;         (site, time)
//
// Whitespace is insignificant and '#' starts a comment running to end of line.

/// Throws ParseError carrying the line and column of the offending token.
SetupExprPtr parse_setup(std::string_view text);

/// Parses a lone `filter` production, e.g. "{1,3}@2".
Filter parse_filter(std::string_view text);

std::string print(const SetupExpr& e);
std::string print(const CanonicalSetup& s);
std::string print(const Filter& f);
std::string print(const SpacetimePoint& p);

}  // namespace caqt
