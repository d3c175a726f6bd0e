#include "ratdyn/tracking.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "ratdyn/errors.hpp"
#include "ratdyn/roots.hpp"

namespace ratdyn {

PathPiece PathPiece::segment(cplx from, cplx to) {
    PathPiece p;
    p.kind = Kind::Segment;
    p.a = from;
    p.b = to;
    return p;
}

PathPiece PathPiece::circle(cplx center, double radius, double theta0) {
    PathPiece p;
    p.kind = Kind::Arc;
    p.center = center;
    p.radius = radius;
    p.theta0 = theta0;
    p.sweep = 2.0 * std::numbers::pi;
    return p;
}

PathPiece PathPiece::ray(cplx from, cplx target, double shrink) {
    PathPiece p;
    p.kind = Kind::Ray;
    p.a = target;
    p.b = from;
    p.shrink = shrink;
    return p;
}

cplx PathPiece::at(double t) const {
    switch (kind) {
        case Kind::Segment:
            if (t >= 1.0) return b;
            return a + (b - a) * t;
        case Kind::Arc:
            return center + std::polar(radius, theta0 + sweep * std::min(t, 1.0));
        case Kind::Ray:
            return a + (b - a) * std::pow(shrink, std::min(t, 1.0));
    }
    return a;
}

namespace {

// value and derivative of an ascending polynomial
inline void horner(const std::vector<cplx>& c, cplx z, cplx& v, cplx& dv) {
    v = 0.0;
    dv = 0.0;
    for (auto k = c.size(); k-- > 0;) {
        dv = dv * z + v;
        v = v * z + c[k];
    }
}

// sum |c_k| |z|^k, the scale of rounding errors in horner()
inline double abs_eval(const std::vector<cplx>& c, double r) {
    double v = 0.0;
    for (auto k = c.size(); k-- > 0;) v = v * r + std::abs(c[k]);
    return v;
}

inline RiemannPoint from_chart(cplx u, bool inverted) {
    if (!inverted) return RiemannPoint(u);
    if (u == cplx(0.0, 0.0)) return RiemannPoint::infinity();
    return RiemannPoint(1.0 / u);
}

}  // namespace

FiberTracker::FiberTracker(const RationalMap& G, TrackOptions opt) : d_(G.degree()), opt_(opt) {
    const NumericMap m(G);
    p_ = m.num;
    q_ = m.den;
    pr_.assign(p_.rbegin(), p_.rend());
    qr_.assign(q_.rbegin(), q_.rend());
}

std::vector<RiemannPoint> FiberTracker::fiber(cplx x) const {
    cplx pv, qv, dummy;
    horner(p_, x, pv, dummy);
    horner(q_, x, qv, dummy);
    std::vector<cplx> c(static_cast<std::size_t>(d_) + 1);
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = pv * q_[k] - qv * p_[k];
    return projective_roots(c, d_);
}

void FiberTracker::eval(cplx x, const ChartPoint& pt, cplx& h, cplx& hu, cplx& hx) const {
    cplx pv, dp, qv, dq, Pu, dPu, Qu, dQu;
    horner(p_, x, pv, dp);
    horner(q_, x, qv, dq);
    horner(pt.inverted ? pr_ : p_, pt.u, Pu, dPu);
    horner(pt.inverted ? qr_ : q_, pt.u, Qu, dQu);
    h = pv * Qu - qv * Pu;
    hu = pv * dQu - qv * dPu;
    hx = dp * Qu - dq * Pu;
}

double FiberTracker::noise(cplx x, cplx u, bool inverted) const {
    const double ax = std::abs(x), au = std::abs(u);
    const auto& P = inverted ? pr_ : p_;
    const auto& Qy = inverted ? qr_ : q_;
    return 64.0 * std::numeric_limits<double>::epsilon() *
           (abs_eval(p_, ax) * abs_eval(Qy, au) + abs_eval(q_, ax) * abs_eval(P, au));
}

bool FiberTracker::step(cplx x0, cplx x1, std::vector<ChartPoint>& pts) const {
    const std::size_t n = pts.size();
    std::vector<RiemannPoint> old(n);
    for (std::size_t i = 0; i < n; ++i) old[i] = from_chart(pts[i].u, pts[i].inverted);
    std::vector<double> sep(n, 2.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = i + 1; k < n; ++k) {
            const double s = chordal_distance(old[i], old[k]);
            sep[i] = std::min(sep[i], s);
            sep[k] = std::min(sep[k], s);
        }
    }
    const double old_min = *std::min_element(sep.begin(), sep.end());

    std::vector<ChartPoint> next = pts;
    std::vector<RiemannPoint> fresh(n);
    for (std::size_t i = 0; i < n; ++i) {
        ChartPoint& pt = next[i];
        if (std::abs(pt.u) > 1.0) {
            pt.u = 1.0 / pt.u;
            pt.inverted = !pt.inverted;
        }
        cplx h, hu, hx;
        eval(x0, pt, h, hu, hx);
        if (hu == cplx(0.0, 0.0)) return false;
        const cplx predicted = pt.u - hx / hu * (x1 - x0);
        cplx u = predicted;
        bool converged = false;
        double prev = std::numeric_limits<double>::infinity();
        for (int it = 0; it < 8; ++it) {
            eval(x1, {u, pt.inverted}, h, hu, hx);
            if (hu == cplx(0.0, 0.0)) return false;
            const cplx delta = h / hu;
            u -= delta;
            if (!std::isfinite(u.real()) || !std::isfinite(u.imag())) return false;
            const double size = std::abs(delta), scale = 1.0 + std::abs(u);
            // near a collision the attainable accuracy is far above newton_tol: stop at the rounding noise
            if (size <= opt_.newton_tol * scale || (size > 0.5 * prev && std::abs(h) <= noise(x1, u, pt.inverted))) {
                converged = true;
                break;
            }
            prev = size;
        }
        if (!converged) return false;
        const RiemannPoint corr = from_chart(u, pt.inverted);
        if (chordal_distance(corr, from_chart(predicted, pt.inverted)) > opt_.guard * sep[i]) return false;
        if (chordal_distance(corr, old[i]) > 0.5 * sep[i]) return false;
        pt.u = u;
        fresh[i] = corr;
    }
    if (n > 1 && min_separation(fresh) < 0.1 * old_min) return false;
    pts = std::move(next);
    return true;
}

bool FiberTracker::too_long(cplx x0, cplx x1) const {
    const double len = std::abs(x1 - x0);
    for (const cplx b : singular_) {
        if (len > 0.5 * std::abs(x0 - b)) return true;
    }
    return false;
}

std::vector<RiemannPoint> FiberTracker::track(const Path& path, std::vector<RiemannPoint> start) const {
    std::vector<ChartPoint> pts;
    pts.reserve(start.size());
    for (const auto& s : start) {
        if (s.infinite) pts.push_back({cplx(0.0, 0.0), true});
        else if (std::abs(s.z) > 1.0) pts.push_back({1.0 / s.z, true});
        else pts.push_back({s.z, false});
    }
    for (std::size_t piece = 0; piece < path.size(); ++piece) {
        const PathPiece& pp = path[piece];
        double t = 0.0, h = opt_.initial_step;
        int clean = 0;
        while (t < 1.0) {
            h = std::min(h, 1.0 - t);
            const cplx x0 = pp.at(t), x1 = pp.at(t + h);
            if (too_long(x0, x1) || !step(x0, x1, pts)) {
                h *= 0.5;
                clean = 0;
                if (h < opt_.min_step) {
                    std::ostringstream os;
                    os << "path tracking step underflow on piece " << piece << " at x = (" << x0.real() << ", "
                       << x0.imag() << "), t = " << t;
                    throw TrackingError(os.str());
                }
            } else {
                t += h;
                if (++clean >= 4) {
                    h = std::min(2.0 * h, opt_.max_step);
                    clean = 0;
                }
            }
        }
    }
    std::vector<RiemannPoint> out;
    out.reserve(pts.size());
    for (const auto& p : pts) out.push_back(from_chart(p.u, p.inverted));
    return out;
}

std::vector<int> match_fibers(const std::vector<RiemannPoint>& a, const std::vector<RiemannPoint>& b, double tol) {
    if (a.size() != b.size()) throw TrackingError("fiber matching: fibers of different sizes");
    std::vector<int> perm(a.size(), -1);
    std::vector<bool> taken(b.size(), false);
    for (std::size_t i = 0; i < a.size(); ++i) {
        double best = std::numeric_limits<double>::infinity(), second = best;
        int arg = -1;
        for (std::size_t j = 0; j < b.size(); ++j) {
            const double dist = chordal_distance(a[i], b[j]);
            if (dist < best) {
                second = best;
                best = dist;
                arg = static_cast<int>(j);
            } else if (dist < second) {
                second = dist;
            }
        }
        if (best > tol) throw TrackingError("fiber matching: tracked endpoint has no partner in the fiber");
        if (second - best < tol) throw TrackingError("fiber matching: ambiguous endpoint (two candidates within tolerance)");
        if (taken[static_cast<std::size_t>(arg)]) throw TrackingError("fiber matching: two endpoints matched the same point");
        taken[static_cast<std::size_t>(arg)] = true;
        perm[i] = arg;
    }
    return perm;
}

double min_separation(const std::vector<RiemannPoint>& pts) {
    double m = 2.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t k = i + 1; k < pts.size(); ++k) m = std::min(m, chordal_distance(pts[i], pts[k]));
    }
    return m;
}

}  // namespace ratdyn
