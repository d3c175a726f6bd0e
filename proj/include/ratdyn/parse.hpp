#pragma once

#include <map>
#include <string>
#include <string_view>

#include "ratdyn/rational_map.hpp"

namespace ratdyn {

using SymbolTable = std::map<std::string, FieldElement, std::less<>>;

// Names bound automatically for a field: "alpha" (the generator) for any
// extension, "w" for a primitive cube root of unity and "i" for a square root
// of -1 when the field is one of the named fields containing them.
SymbolTable default_symbols(const FieldPtr& ctx);

// Parses a rational function of z, e.g. "z^3-3z", "(a*z^2+1)/(a z)",
// "0.5z^2 + (1+w)z". Multiplication may be implicit; exponents are integers
// (negative exponents invert). Throws ParseError with the byte offset.
RationalMap parse_map(std::string_view text, const FieldPtr& ctx, const SymbolTable& symbols);

// Parses a constant expression (no z) into a field element.
FieldElement parse_scalar(std::string_view text, const FieldPtr& ctx, const SymbolTable& symbols);

// A coefficient field by name: "Q", "Q(w)" (or "eisenstein"), "Q(i)" (or
// "gaussian"), "Q(zeta12)" (or "cyclotomic12"), or a minimal polynomial in
// alpha such as "alpha^2-2" (made monic). Throws ParseError / PreconditionError.
FieldPtr parse_field(std::string_view text);

// The name parse_field accepts for ctx: a named field or "minpoly in alpha".
std::string field_name(const FieldPtr& ctx);

}  // namespace ratdyn
