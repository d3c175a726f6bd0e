#include "ratdyn/identities.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <tuple>

#include "ratdyn/errors.hpp"
#include "ratdyn/random.hpp"
#include "ratdyn/roots.hpp"
#include "ratdyn/tracking.hpp"

namespace ratdyn {

bool CertificateReport::all_pass() const {
    return std::all_of(claims.begin(), claims.end(), [](const Claim& c) { return c.pass; });
}

std::string digest(const RationalMap& f) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(to_string(f))));
    return buf;
}

Claim equality_claim(std::string name, const RationalMap& f, const RationalMap& g) {
    Claim c{std::move(name), maps_equal(f, g), "", ""};
    if (c.pass) {
        c.witness = "both sides equal the map with digest " + digest(f);
        return c;
    }
    if (f.degree() != g.degree()) {
        c.witness = "degrees differ: " + std::to_string(f.degree()) + " vs " + std::to_string(g.degree());
        return c;
    }
    const Poly diff = f.num() * g.den() - g.num() * f.den();
    int k = 0;
    while (diff.coeff(k).is_zero()) ++k;
    c.witness = "num_L den_R - num_R den_L has coefficient " + to_string(diff.coeff(k)) + " at z^" + std::to_string(k);
    return c;
}

namespace {

ProjPoint normalized(ProjPoint p) {
    if (!p.y.is_zero()) return ProjPoint::finite(p.x / p.y);
    return ProjPoint::infinity(p.x.context());
}

ProjPoint apply_iterate(const RationalMap& f, int n, ProjPoint p) {
    for (int k = 0; k < n; ++k) p = normalized(f.apply(p));
    return p;
}

ProjPoint exact_point(const FieldPtr& ctx, const Q& q) { return ProjPoint::finite(FieldElement(ctx, q)); }

}  // namespace

std::optional<Moebius> mobius_factor_exists(const RationalMap& R, const RationalMap& S, std::uint64_t seed) {
    if (!R.context()->same_field(*S.context())) throw ContextMismatchError("mobius_factor_exists: maps over different fields");
    if (R.degree() != S.degree()) return std::nullopt;
    const auto& ctx = R.context();
    const NumericMap nr(R), ns(S);
    Rng rng = make_stream(seed, "identities");

    constexpr int kSamples = 3 + 5;
    for (int reseed = 0; reseed < 10; ++reseed) {
        std::vector<Q> ws;
        std::vector<RiemannPoint> values;
        bool usable = true;
        while (static_cast<int>(ws.size()) < kSamples && usable) {
            const Q w = make_q(uniform_int(rng, -20, 20), uniform_int(rng, 1, 7));
            if (std::find(ws.begin(), ws.end(), w) != ws.end()) continue;
            const auto fiber = projective_roots(ns.preimage_poly(RiemannPoint(cplx(w.get_d(), 0.0))), ns.degree);
            if (min_separation(fiber) < 1e-6) {
                usable = false;
                break;
            }
            const RiemannPoint v0 = nr.eval(fiber.front());
            for (const auto& y : fiber) {
                // R is not constant on a fiber of S: no sigma can exist
                if (chordal_distance(nr.eval(y), v0) > 1e-6) return std::nullopt;
            }
            ws.push_back(w);
            values.push_back(v0);
        }
        if (!usable) continue;

        std::array<ProjPoint, 3> p{exact_point(ctx, ws[0]), exact_point(ctx, ws[1]), exact_point(ctx, ws[2])};
        std::array<ProjPoint, 3> q{p};
        for (std::size_t i = 0; i < 3; ++i) {
            if (values[i].infinite || std::abs(values[i].z) > 1e8) {
                q[i] = ProjPoint::infinity(ctx);
                continue;
            }
            const auto e = recognize(ctx, values[i].z);
            if (!e) return std::nullopt;
            q[i] = ProjPoint::finite(*e);
        }
        try {
            const Moebius sigma = mobius_from_three_points(p, q);
            if (maps_equal(R, compose(sigma.as_map(), S))) return sigma;
        } catch (const PreconditionError&) {
            continue;
        }
        return std::nullopt;
    }
    throw NumericalError("mobius_factor_exists: no usable fiber sample after 10 reseeds");
}

CertificateReport check_counterexample_triple(const RationalMap& R, const RationalMap& S, const RationalMap& T,
                                              std::uint64_t seed) {
    if (R.degree() < 2 || S.degree() < 2 || T.degree() < 2) {
        throw PreconditionError("check_counterexample_triple: R, S, T must have degree >= 2");
    }
    CertificateReport rep;
    rep.claims.push_back(equality_claim("T o R = T o S", compose(T, R), compose(T, S)));

    Claim no_sigma{"R != sigma o S for every Moebius sigma", true, "", ""};
    if (R.degree() != S.degree()) {
        no_sigma.witness = "none needed";
        no_sigma.note = "deg R != deg S, so the claim holds vacuously";
    } else if (const auto sigma = mobius_factor_exists(R, S, seed)) {
        no_sigma.pass = false;
        no_sigma.witness = "R = sigma o S exactly for sigma = " + to_string(*sigma);
    } else {
        no_sigma.witness = "R takes distinct values on a fiber of S";
    }
    rep.claims.push_back(std::move(no_sigma));

    const RationalMap f = compose(R, T), g = compose(S, T);
    rep.claims.push_back(equality_claim("f o f = f o g (f = R o T, g = S o T)", compose(f, f), compose(f, g)));
    return rep;
}

CertificateReport check_main1_relations(const RationalMap& F, const RationalMap& G) {
    if (F.degree() < 2 || G.degree() < 2) throw PreconditionError("check_main1_relations: degrees must be >= 2");
    CertificateReport rep;
    rep.claims.push_back(equality_claim("F o F = F o G", compose(F, F), compose(F, G)));
    rep.claims.push_back(equality_claim("G o F = G o G", compose(G, F), compose(G, G)));
    return rep;
}

std::optional<std::pair<int, int>> shared_iterate_search(const RationalMap& f, const RationalMap& g, long budget) {
    if (budget < std::max(f.degree(), g.degree())) {
        throw PreconditionError("shared_iterate_search: budget below the degrees of the maps");
    }
    if (budget > kDefaultDegreeBudget) throw BudgetError("shared_iterate_search: budget exceeds " + std::to_string(kDefaultDegreeBudget));
    std::vector<std::tuple<int, int, long>> pairs;  // (n, m, degree)
    long dn = f.degree();
    for (int n = 1; dn <= budget; ++n, dn *= f.degree()) {
        long dm = g.degree();
        for (int m = 1; dm <= budget; ++m, dm *= g.degree()) {
            if (dm == dn) pairs.emplace_back(n, m, dn);
        }
    }
    std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
        return std::make_pair(std::get<0>(a) + std::get<1>(a), std::get<0>(a)) <
               std::make_pair(std::get<0>(b) + std::get<1>(b), std::get<0>(b));
    });
    const auto& ctx = f.context();
    const std::array<Q, 3> probes{Q(2), make_q(-1, 3), Q(5)};
    for (const auto& [n, m, degree] : pairs) {
        // exact values at a few rational points usually refute f^n = g^m without composing
        bool refuted = false;
        for (const Q& z : probes) {
            if (!apply_iterate(f, n, exact_point(ctx, z)).same_as(apply_iterate(g, m, exact_point(ctx, z)))) {
                refuted = true;
                break;
            }
        }
        if (refuted) continue;
        if (maps_equal(iterate(f, n, budget), iterate(g, m, budget))) return std::make_pair(n, m);
    }
    return std::nullopt;
}

Moebius sigma_f_quadratic(const RationalMap& f) {
    if (f.degree() != 2) throw PreconditionError("sigma_f_quadratic: the map must have degree exactly 2");
    const FieldElement a = f.num().coeff(2), b = f.num().coeff(1), c = f.num().coeff(0);
    const FieldElement d = f.den().coeff(2), e = f.den().coeff(1), r = f.den().coeff(0);
    const FieldElement m = a * r - c * d;
    Moebius sigma = [&] {
        try {
            return Moebius(-m, -(b * r - c * e), a * e - b * d, m);
        } catch (const PreconditionError&) {
            throw ConsistencyError("sigma_f_quadratic: degenerate involution for a degree-2 map (resultant vanishes?)");
        }
    }();
    if (!maps_equal(compose(f, sigma.as_map()), f) || !(sigma * sigma).is_identity()) {
        throw ConsistencyError("sigma_f_quadratic: f o sigma = f or sigma o sigma = id fails exactly");
    }
    return sigma;
}

std::string to_string(DerivativeVerdict v) {
    switch (v) {
        case DerivativeVerdict::Nonzero: return "NONZERO";
        case DerivativeVerdict::Zero: return "ZERO";
        case DerivativeVerdict::Degenerate: return "DEGENERATE";
    }
    return "?";
}

namespace {

cplx horner(const std::vector<cplx>& c, cplx z) {
    cplx v = 0.0;
    for (auto k = c.size(); k-- > 0;) v = v * z + c[k];
    return v;
}

}  // namespace

DerivativeVerdict iteration_derivative_nonvanishing(const RationalMap& f, const Poly& dnum, const Poly& dden, int n,
                                                    int samples, std::uint64_t seed) {
    if (n < 1) throw PreconditionError("iteration_derivative_nonvanishing: n must be >= 1");
    const Poly wnum = dnum * f.den() - f.num() * dden;
    if (wnum.is_zero()) return DerivativeVerdict::Degenerate;

    // w = (dnum den - num dden) / den^2 and f' = W / den^2 with W the Wronskian
    const auto num = f.num().to_complex(), den = f.den().to_complex();
    const auto wn = wnum.to_complex(), fw = wronskian(f).to_complex();
    Rng rng = make_stream(seed, "identities");
    int evaluated = 0;
    for (int attempt = 0; attempt < 20 * samples && evaluated < samples; ++attempt) {
        cplx z = std::polar(uniform(rng, 0.2, 1.5), uniform(rng, 0.0, 2.0 * M_PI));
        cplx total = 0.0;
        bool finite = true;
        for (int k = 0; k < n && finite; ++k) {
            // total is d/dt f_t^k(z0) at t = 0; carry it through one more step
            const cplx dv = horner(den, z);
            if (std::abs(dv) < 1e-12) {
                finite = false;
                break;
            }
            const cplx d2 = dv * dv;
            total = horner(fw, z) / d2 * total + horner(wn, z) / d2;
            z = horner(num, z) / dv;
            finite = std::isfinite(total.real()) && std::isfinite(total.imag()) && std::abs(z) < 1e12;
        }
        if (!finite) continue;
        ++evaluated;
        if (std::abs(total) > 1e-8) return DerivativeVerdict::Nonzero;
    }
    return DerivativeVerdict::Zero;
}

}  // namespace ratdyn
