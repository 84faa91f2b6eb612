#ifndef CONICDISC_EXPR_HPP
#define CONICDISC_EXPR_HPP

#include <string>

#include "conicdisc/poly.hpp"

namespace conicdisc {

// Grammar: expr := term (('+'|'-') term)*
//          term := factor ('*' factor)*
//          factor := atom ('^' nat)*
//          atom := integer | rational | identifier | '(' expr ')' | '-' atom
// Identifiers must be declared ring variables ('w' additionally names the
// field generator over proper extensions). Rational literals n/d are
// accepted over Q. Errors carry 1-based line/column positions.
Poly parse_expression(const std::string& text, const PolyRingPtr& ring);

} // namespace conicdisc

#endif
