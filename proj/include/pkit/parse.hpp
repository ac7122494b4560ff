#pragma once

#include <string>
#include <string_view>

#include "pkit/poly.hpp"

namespace pkit {

/// Parses a polynomial in x and y with rational coefficients:
///
///   expr     := ['+'|'-'] term (('+'|'-') term)*
///   term     := factor ('*'? factor)*
///   factor   := atom ('^' exponent)?
///   atom     := 'x' | 'y' | rational | '(' expr ')'
///   exponent := integer | '(' integer '/' integer ')'
///   rational := integer ('/' integer)?
///
/// Whitespace is ignored. A fractional exponent may only be applied to a
/// bare monomial such as x or x*y. Throws ParseError with a byte offset.
PuiseuxPoly parse_expression(std::string_view text);

/// Canonical text: terms by decreasing y exponent, then increasing x
/// exponent. Exact rational coefficients print in a form parse_expression
/// reads back to the same polynomial.
std::string to_expression(const PuiseuxPoly& f);

}  // namespace pkit
