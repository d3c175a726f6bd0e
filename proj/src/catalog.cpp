#include "ratdyn/catalog.hpp"

#include <algorithm>

#include "ratdyn/errors.hpp"
#include "ratdyn/parse.hpp"

namespace ratdyn {

namespace {

const char* const kTripleClaims[] = {"T o R = T o S", "R != sigma o S for every Moebius sigma",
                                     "f o f = f o g (f = R o T, g = S o T)"};

std::string param(const CatalogParams& params, const std::string& key, const std::string& fallback) {
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

long integer_param(const CatalogParams& params, const std::string& key, long fallback) {
    const std::string text = param(params, key, std::to_string(fallback));
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.empty()) throw PreconditionError("catalog: parameter " + key + " must be an integer, got '" + text + "'");
    return v;
}

void check_keys(const CatalogParams& params, std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : params) {
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
            throw PreconditionError("catalog: unknown parameter '" + key + "'");
        }
    }
}

RationalMap map_in(const std::string& text, const FieldPtr& field, const SymbolTable& symbols) {
    return parse_map(text, field, symbols);
}

CatalogEntry chebyshev_flower(const CatalogParams& params) {
    check_keys(params, {"a", "field"});
    CatalogEntry e;
    e.name = "chebyshev-flower";
    e.field = parse_field(param(params, "field", "Q(w)"));
    SymbolTable symbols = default_symbols(e.field);
    if (!symbols.count("w")) throw PreconditionError("chebyshev-flower: the field must contain w (use Q(w) or Q(zeta12))");
    const std::string a_text = param(params, "a", "1");
    const FieldElement a = parse_scalar(a_text, e.field, symbols);
    if (a.is_zero()) throw PreconditionError("chebyshev-flower: a must be nonzero");
    e.params = {{"a", a_text}, {"field", field_name(e.field)}};
    symbols.insert_or_assign("a", a);
    const RationalMap T = map_in("z^3-3z", e.field, symbols);
    const RationalMap R = map_in("a z + 1/(a z)", e.field, symbols);
    const RationalMap S = map_in("a w z + 1/(a w z)", e.field, symbols);
    e.maps = {{"R", R}, {"S", S}, {"T", T}, {"f", compose(R, T)}, {"g", compose(S, T)}};
    for (const char* c : kTripleClaims) e.expected.push_back({c, true});
    e.expected.push_back({"F o F = F o G", true});
    e.expected.push_back({"G o F = G o G", true});
    e.expected.push_back({"f_a o f_a = f_{-a} o f_{-a}", true});
    e.expected.push_back({"f_a != f_{-a}", true});
    return e;
}

CatalogEntry zieve_family(const CatalogParams& params) {
    check_keys(params, {"n", "m", "field"});
    CatalogEntry e;
    e.name = "zieve-family";
    e.field = parse_field(param(params, "field", "Q"));
    const long n = integer_param(params, "n", 2), m = integer_param(params, "m", 1);
    if (n < 1 || m < 1) throw PreconditionError("zieve-family: n and m must be >= 1");
    if (n == 1 && m == 1) throw PreconditionError("zieve-family: n = m = 1 gives R of degree 1");
    if (n + m > 40) throw PreconditionError("zieve-family: n + m must be <= 40");
    e.params = {{"n", std::to_string(n)}, {"m", std::to_string(m)}, {"field", field_name(e.field)}};
    const auto symbols = default_symbols(e.field);
    const std::string ns = std::to_string(n), ms = std::to_string(m), nm = std::to_string(n + m);
    const RationalMap T = map_in("z^" + ns + "(z+1)^" + ms, e.field, symbols);
    const RationalMap R = map_in("(1-z^" + ns + ")/(z^" + nm + "-1)", e.field, symbols);
    const RationalMap S = map_in("z^" + ms + "(1-z^" + ns + ")/(z^" + nm + "-1)", e.field, symbols);
    e.maps = {{"R", R}, {"S", S}, {"T", T}, {"f", compose(R, T)}, {"g", compose(S, T)}};
    // for n = m, R = -1/(z^n+1) = -S - 1
    e.expected = {{kTripleClaims[0], true}, {kTripleClaims[1], n != m}, {kTripleClaims[2], true}};
    e.expected.push_back({"F o F = F o G", true});
    e.expected.push_back({"G o F = G o G", true});
    return e;
}

CatalogEntry power_map(const CatalogParams& params) {
    check_keys(params, {"d", "field"});
    CatalogEntry e;
    e.name = "power-map";
    e.field = parse_field(param(params, "field", "Q"));
    const long d = integer_param(params, "d", 2);
    if (d < 2 || d > 64) throw PreconditionError("power-map: d must be in 2..64");
    e.params = {{"d", std::to_string(d)}, {"field", field_name(e.field)}};
    const RationalMap f = map_in("z^" + std::to_string(d), e.field, default_symbols(e.field));
    e.maps = {{"f", f}};
    if (d == 2) {
        e.maps.emplace_back("sigma_f", sigma_f_quadratic(f).as_map());
        e.expected.push_back({"sigma_f = -z", true});
    }
    e.expected.push_back({"shared iterate with f o f is (2, 1)", true});
    return e;
}

CatalogEntry quadratic_sigma(const CatalogParams& params) {
    check_keys(params, {"map", "field"});
    CatalogEntry e;
    e.name = "quadratic-sigma";
    e.field = parse_field(param(params, "field", "Q"));
    const std::string text = param(params, "map", "(z^2-2)/(z+5)");
    e.params = {{"map", text}, {"field", field_name(e.field)}};
    const RationalMap f = map_in(text, e.field, default_symbols(e.field));
    if (f.degree() != 2) throw PreconditionError("quadratic-sigma: the map must have degree 2");
    e.maps = {{"f", f}, {"sigma_f", sigma_f_quadratic(f).as_map()}};
    e.expected = {{"f o sigma_f = f", true}, {"sigma_f o sigma_f = id", true}, {"sigma_f != id", true}};
    return e;
}

Claim negated(Claim c, std::string name) {
    c.name = std::move(name);
    c.pass = !c.pass;
    return c;
}

}  // namespace

const RationalMap& CatalogEntry::map(const std::string& role) const {
    for (const auto& [r, f] : maps) {
        if (r == role) return f;
    }
    throw PreconditionError("catalog entry " + name + " has no map '" + role + "'");
}

const std::vector<std::string>& catalog_names() {
    static const std::vector<std::string> names{"chebyshev-flower", "zieve-family", "power-map", "quadratic-sigma"};
    return names;
}

CatalogEntry catalog_entry(const std::string& name, const CatalogParams& params) {
    if (name == "chebyshev-flower") return chebyshev_flower(params);
    if (name == "zieve-family") return zieve_family(params);
    if (name == "power-map") return power_map(params);
    if (name == "quadratic-sigma") return quadratic_sigma(params);
    throw PreconditionError("catalog: unknown entry '" + name + "'");
}

RationalMap flower_map(const FieldElement& a) {
    if (a.is_zero()) throw PreconditionError("flower_map: a must be nonzero");
    SymbolTable symbols = default_symbols(a.context());
    symbols.insert_or_assign("a", a);
    return parse_map("a(z^3-3z) + 1/(a(z^3-3z))", a.context(), symbols);
}

CertificateReport iterate_square_identity_check(const FieldElement& a) {
    const RationalMap fa = flower_map(a), fm = flower_map(-a);
    CertificateReport rep;
    rep.claims.push_back(equality_claim("f_a o f_a = f_{-a} o f_{-a}", compose(fa, fa), compose(fm, fm)));
    rep.claims.push_back(negated(equality_claim("f_a = f_{-a}", fa, fm), "f_a != f_{-a}"));
    return rep;
}

CertificateReport run_entry(const CatalogEntry& entry, std::uint64_t seed) {
    CertificateReport rep;
    const auto append = [&](const CertificateReport& r) {
        rep.claims.insert(rep.claims.end(), r.claims.begin(), r.claims.end());
    };
    if (entry.name == "chebyshev-flower" || entry.name == "zieve-family") {
        append(check_counterexample_triple(entry.map("R"), entry.map("S"), entry.map("T"), seed));
        append(check_main1_relations(entry.map("f"), entry.map("g")));
        if (entry.name == "chebyshev-flower") {
            SymbolTable symbols = default_symbols(entry.field);
            append(iterate_square_identity_check(parse_scalar(entry.params.at("a"), entry.field, symbols)));
        }
    } else if (entry.name == "power-map") {
        const RationalMap& f = entry.map("f");
        if (f.degree() == 2) {
            const Moebius s = sigma_f_quadratic(f);
            const Moebius neg(-FieldElement(entry.field, Q(1)), FieldElement(entry.field), FieldElement(entry.field),
                              FieldElement(entry.field, Q(1)));
            rep.claims.push_back({"sigma_f = -z", s == neg, "sigma_f = " + to_string(s), ""});
        }
        const auto shared = shared_iterate_search(f, compose(f, f), f.degree() * f.degree());
        Claim c{"shared iterate with f o f is (2, 1)", shared == std::make_pair(2, 1), "", ""};
        c.witness = shared ? "(" + std::to_string(shared->first) + ", " + std::to_string(shared->second) + ")" : "none";
        rep.claims.push_back(std::move(c));
    } else if (entry.name == "quadratic-sigma") {
        const RationalMap& f = entry.map("f");
        const Moebius s = sigma_f_quadratic(f);
        rep.claims.push_back(equality_claim("f o sigma_f = f", compose(f, s.as_map()), f));
        rep.claims.push_back({"sigma_f o sigma_f = id", (s * s).is_identity(), "sigma_f = " + to_string(s), ""});
        rep.claims.push_back({"sigma_f != id", !s.is_identity(), "sigma_f = " + to_string(s), ""});
    } else {
        throw PreconditionError("run_entry: unknown entry '" + entry.name + "'");
    }
    return rep;
}

std::vector<std::string> unexpected_verdicts(const CatalogEntry& entry, const CertificateReport& report) {
    std::vector<std::string> out;
    for (const auto& exp : entry.expected) {
        const auto it = std::find_if(report.claims.begin(), report.claims.end(),
                                     [&](const Claim& c) { return c.name == exp.claim; });
        if (it == report.claims.end()) out.push_back(exp.claim + ": missing");
        else if (it->pass != exp.pass) out.push_back(exp.claim + (exp.pass ? ": expected PASS" : ": expected FAIL"));
    }
    if (report.claims.size() != entry.expected.size()) out.push_back("claim count differs from the expected list");
    return out;
}

}  // namespace ratdyn
