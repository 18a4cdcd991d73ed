#pragma once

#include <string>

#include "coxmin/polynomial.hpp"

namespace coxmin {

// Expression grammar shared by matrix entries and polynomial files:
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := ('-'|'+')* primary ('^' ('-'? digits))?
//   primary:= digits | ident | '(' expr ')'
//
// Identifiers resolve to ring variables. "zeta" always denotes the primitive
// conductor-th root of unity; "z" denotes it too unless a ring variable
// shadows it. '/' requires a nonzero scalar divisor; '^' with a negative
// exponent requires a nonzero scalar base. Throws ValidationError.
Poly parsePoly(const std::string& text, const RingPtr& ring);

// Scalar grammar: same rules with no variables in scope (z = zeta_conductor).
CycNum parseScalar(const std::string& text, unsigned conductor);

}  // namespace coxmin
