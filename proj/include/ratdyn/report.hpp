#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "ratdyn/catalog.hpp"
#include "ratdyn/graph_curve.hpp"
#include "ratdyn/measure.hpp"
#include "ratdyn/parse.hpp"

namespace ratdyn {

using Json = nlohmann::ordered_json;

// Rationals are "num/den" strings; extension elements are arrays of them
// (power-basis coordinates); a field is its monic minimal polynomial.
Json to_json(const Q& q);
Json to_json(const FieldElement& x);
Json field_to_json(const FieldPtr& ctx);
Json to_json(const RiemannPoint& p);  // {"re", "im"} or "infinity"

// {"field": minpoly, "num": [...], "den": [...]}, coefficients ascending.
Json to_json(const RationalMap& f);
Json to_json(const Moebius& m);
// Rows indexed by the power of x, columns by the power of y.
Json to_json(const BiPoly& p);

Json to_json(const Claim& c);
Json to_json(const CertificateReport& r);
Json to_json(const ComponentCertificate& c);
Json to_json(const GraphAnalysis& a);
Json to_json(const MeasureDistanceReport& r);
Json to_json(const CatalogEntry& e);

FieldPtr field_from_json(const Json& j);
FieldElement element_from_json(const Json& j, const FieldPtr& ctx);
RationalMap map_from_json(const Json& j);

// Parses JSON text; syntax errors become ParseError with the byte offset.
Json parse_json(std::string_view text);

// A map given as inline JSON (starting with '{') or as an expression for
// parse_map in `ctx` with `symbols`.
RationalMap read_map(std::string_view text, const FieldPtr& ctx, const SymbolTable& symbols);

}  // namespace ratdyn
