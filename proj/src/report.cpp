#include "ratdyn/report.hpp"

#include "ratdyn/errors.hpp"

namespace ratdyn {

namespace {

const Json& member(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("map JSON: missing member \"") + key + "\"", 0);
    return j.at(key);
}

Poly poly_from_json(const Json& j, const FieldPtr& ctx, const char* what) {
    if (!j.is_array()) throw ParseError(std::string("map JSON: \"") + what + "\" must be an array of coefficients", 0);
    std::vector<FieldElement> c;
    for (const auto& v : j) c.push_back(element_from_json(v, ctx));
    return Poly(ctx, std::move(c));
}

Json poly_to_json(const Poly& p) {
    Json out = Json::array();
    for (const auto& c : p.coeffs()) out.push_back(to_json(c));
    return out;
}

Json cycles_to_json(const std::vector<std::vector<int>>& v) {
    Json out = Json::array();
    for (const auto& row : v) out.push_back(row);
    return out;
}

}  // namespace

Json to_json(const Q& q) { return to_string(q); }

Json to_json(const FieldElement& x) {
    if (x.context()->is_rationals()) return to_json(x.coords()[0]);
    Json out = Json::array();
    for (const Q& q : x.coords()) out.push_back(to_json(q));
    return out;
}

Json field_to_json(const FieldPtr& ctx) {
    Json out = Json::array();
    for (const Q& q : ctx->minpoly()) out.push_back(to_json(q));
    return out;
}

Json to_json(const RiemannPoint& p) {
    if (p.infinite) return "infinity";
    return Json{{"re", p.z.real()}, {"im", p.z.imag()}};
}

Json to_json(const RationalMap& f) {
    return Json{{"field", field_to_json(f.context())}, {"num", poly_to_json(f.num())}, {"den", poly_to_json(f.den())}};
}

Json to_json(const Moebius& m) {
    return Json{{"a", to_json(m.a())}, {"b", to_json(m.b())}, {"c", to_json(m.c())}, {"d", to_json(m.d())},
                {"text", to_string(m)}};
}

Json to_json(const BiPoly& p) {
    Json rows = Json::array();
    for (const auto& row : p.rows()) {
        Json r = Json::array();
        for (const auto& c : row) r.push_back(to_json(c));
        rows.push_back(std::move(r));
    }
    return rows;
}

Json to_json(const Claim& c) {
    Json out{{"name", c.name}, {"verdict", c.pass ? "PASS" : "FAIL"}, {"witness", c.witness}};
    if (!c.note.empty()) out["note"] = c.note;
    return out;
}

Json to_json(const CertificateReport& r) {
    Json claims = Json::array();
    for (const auto& c : r.claims) claims.push_back(to_json(c));
    return Json{{"claims", std::move(claims)}, {"all_pass", r.all_pass()}};
}

Json to_json(const ComponentCertificate& c) {
    Json out{{"bidegree", {c.r1, c.r2}}, {"genus", c.genus}, {"ramification", cycles_to_json(c.ramification)},
             {"diagonal", c.is_diagonal}, {"genus_zero_parametrization", genus_zero_parametrization_check(c).pass}};
    if (c.exact_poly) {
        out["exact_poly"] = to_json(*c.exact_poly);
        out["exact_poly_text"] = to_string(*c.exact_poly);
    } else {
        out["exact_poly"] = nullptr;
    }
    return out;
}

Json to_json(const GraphAnalysis& a) {
    Json comps = Json::array();
    for (const auto& c : a.components) comps.push_back(to_json(c));
    Json branch = Json::array();
    for (const auto& b : a.curve.branch_points) {
        branch.push_back(Json{{"point", to_json(b.point)}, {"local_degree", b.local_degree}});
    }
    Json out{{"map", to_json(a.curve.G)},
             {"map_text", to_string(a.curve.G)},
             {"degree", a.curve.G.degree()},
             {"components", std::move(comps)},
             {"branch_points", std::move(branch)},
             {"sphere_relation", a.monodromy.sphere_relation},
             {"rotated_chart", a.curve.chart.has_value()},
             {"seed", a.curve.seed}};
    return out;
}

Json to_json(const MeasureDistanceReport& r) {
    return Json{{"distance", r.distance},
                {"self_baseline", r.self_baseline},
                {"ratio", r.ratio()},
                {"verdict", to_string(r.verdict)},
                {"blocks", r.blocks},
                {"thresholds", {{"same_below", kSameFactor}, {"different_above", kDifferentFactor}}},
                {"note", "thresholds are calibration constants, not theorems"}};
}

Json to_json(const CatalogEntry& e) {
    Json params = Json::object();
    for (const auto& [k, v] : e.params) params[k] = v;
    Json maps = Json::object();
    for (const auto& [role, f] : e.maps) maps[role] = Json{{"text", to_string(f)}, {"map", to_json(f)}};
    Json expected = Json::array();
    for (const auto& x : e.expected) expected.push_back(Json{{"claim", x.claim}, {"verdict", x.pass ? "PASS" : "FAIL"}});
    return Json{{"name", e.name}, {"field", field_name(e.field)}, {"params", std::move(params)}, {"maps", std::move(maps)},
                {"expected", std::move(expected)}};
}

FieldPtr field_from_json(const Json& j) {
    if (j.is_string()) return parse_field(j.get<std::string>());
    if (!j.is_array() || j.size() < 2) throw ParseError("field JSON: expected a minimal polynomial array or a field name", 0);
    std::vector<Q> c;
    for (const auto& v : j) {
        if (!v.is_string()) throw ParseError("field JSON: coefficients must be \"num/den\" strings", 0);
        c.push_back(parse_rational(v.get<std::string>()));
    }
    if (c.size() == 2) {
        if (c[1] == 0) throw ParseError("field JSON: minimal polynomial has a zero leading coefficient", 0);
        return FieldContext::rationals();
    }
    return FieldContext::configure(std::move(c));
}

FieldElement element_from_json(const Json& j, const FieldPtr& ctx) {
    if (j.is_string()) return FieldElement(ctx, parse_rational(j.get<std::string>()));
    if (j.is_number_integer()) return FieldElement(ctx, Q(j.get<long>()));
    if (!j.is_array()) throw ParseError("map JSON: a coefficient must be a \"num/den\" string or an array of them", 0);
    if (static_cast<int>(j.size()) > ctx->degree()) throw ParseError("map JSON: coefficient has more coordinates than the field degree", 0);
    std::vector<Q> coords;
    for (const auto& v : j) {
        if (!v.is_string()) throw ParseError("map JSON: coordinates must be \"num/den\" strings", 0);
        coords.push_back(parse_rational(v.get<std::string>()));
    }
    coords.resize(static_cast<std::size_t>(ctx->degree()), Q(0));
    return FieldElement(ctx, std::move(coords));
}

RationalMap map_from_json(const Json& j) {
    const FieldPtr ctx = j.is_object() && j.contains("field") ? field_from_json(j.at("field")) : FieldContext::rationals();
    Poly num = poly_from_json(member(j, "num"), ctx, "num");
    Poly den = poly_from_json(member(j, "den"), ctx, "den");
    try {
        return RationalMap(std::move(num), std::move(den));
    } catch (const PreconditionError& e) {
        throw ParseError(std::string("map JSON: ") + e.what(), 0);
    }
}

Json parse_json(std::string_view text) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte > 0 ? e.byte - 1 : 0);
    }
}

RationalMap read_map(std::string_view text, const FieldPtr& ctx, const SymbolTable& symbols) {
    std::size_t k = 0;
    while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
    if (k < text.size() && text[k] == '{') {
        const Json j = parse_json(text);
        if (!j.contains("field")) {
            Json with_field = j;
            with_field["field"] = field_to_json(ctx);
            return map_from_json(with_field);
        }
        return map_from_json(j);
    }
    return parse_map(text, ctx, symbols);
}

}  // namespace ratdyn
