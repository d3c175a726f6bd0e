#include "ratdyn/graph_curve.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "ratdyn/errors.hpp"
#include "ratdyn/random.hpp"
#include "ratdyn/roots.hpp"

namespace ratdyn {

RiemannPoint GraphCurve::to_original(cplx chart_point) const { return to_original(RiemannPoint(chart_point)); }

RiemannPoint GraphCurve::to_original(const RiemannPoint& p) const { return chart ? chart->apply(p) : p; }

int local_degree(int eG_x, int eG_y) {
    if (eG_x < 1 || eG_y < 1) throw PreconditionError("local_degree: local degrees must be positive");
    return eG_y / std::gcd(eG_x, eG_y);
}

namespace {

std::string describe(cplx z) {
    std::ostringstream os;
    os << "(" << z.real() << ", " << z.imag() << ")";
    return os.str();
}

double dist_to_segment(cplx p, cplx a, cplx b) {
    const cplx ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(p - a);
    const double t = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
    return std::abs(p - (a + ab * t));
}

// G^{-1}(v) for every critical value v, with local degrees: the k+1 roots
// nearest a critical point of multiplicity k are replaced by that point.
std::vector<BranchPoint> branch_locus(const RationalMap& G, const CriticalData& cd) {
    const NumericMap m(G);
    std::vector<BranchPoint> out;
    for (std::size_t v = 0; v < cd.values.size(); ++v) {
        const auto roots = projective_roots(m.preimage_poly(cd.values[v].value), m.degree);
        std::vector<bool> claimed(roots.size(), false);
        for (const int src : cd.values[v].sources) {
            const CriticalPoint& c = cd.points[static_cast<std::size_t>(src)];
            for (int k = 0; k <= c.multiplicity; ++k) {
                double best = std::numeric_limits<double>::infinity();
                std::size_t arg = roots.size();
                for (std::size_t r = 0; r < roots.size(); ++r) {
                    if (claimed[r]) continue;
                    const double dist = chordal_distance(roots[r], c.point);
                    if (dist < best) {
                        best = dist;
                        arg = r;
                    }
                }
                if (arg == roots.size()) throw ConsistencyError("branch locus: critical multiplicities exceed the degree");
                claimed[arg] = true;
            }
            out.push_back({c.point, {}, c.multiplicity + 1, static_cast<int>(v), 0.0});
        }
        for (std::size_t r = 0; r < roots.size(); ++r) {
            if (!claimed[r]) out.push_back({roots[r], {}, 1, static_cast<int>(v), 0.0});
        }
    }
    return out;
}

bool needs_rotation(const std::vector<BranchPoint>& b, double modulus) {
    return std::any_of(b.begin(), b.end(), [&](const BranchPoint& p) { return p.point.infinite || std::abs(p.point.z) > modulus; });
}

void fill_spacing(std::vector<BranchPoint>& bps) {
    for (auto& b : bps) {
        b.spacing = std::numeric_limits<double>::infinity();
        for (const auto& o : bps) {
            if (&o != &b) b.spacing = std::min(b.spacing, std::abs(o.chart_point - b.chart_point));
        }
    }
}

double loop_radius(const BranchPoint& b) { return 0.2 * b.spacing; }

cplx loop_entry(const BranchPoint& b, cplx x0) {
    const cplx dir = (x0 - b.chart_point) / std::abs(x0 - b.chart_point);
    return b.chart_point + loop_radius(b) * dir;
}

// min over branch points (other than `skip`) of dist(b, segment) / spacing(b)
double segment_clearance(const GraphCurve& c, cplx a, cplx b, int skip) {
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < c.branch_points.size(); ++k) {
        if (static_cast<int>(k) == skip) continue;
        const auto& bp = c.branch_points[k];
        worst = std::min(worst, dist_to_segment(bp.chart_point, a, b) / bp.spacing);
    }
    return worst;
}

// Segment a -> b keeps its distance from every branch point (other than `skip`).
bool segment_clear(const GraphCurve& c, cplx a, cplx b, int skip) {
    for (std::size_t k = 0; k < c.branch_points.size(); ++k) {
        if (static_cast<int>(k) == skip) continue;
        const auto& bp = c.branch_points[k];
        const double need = std::min(c.options.basepoint_margin * bp.spacing,
                                     0.5 * std::min(std::abs(bp.chart_point - a), std::abs(bp.chart_point - b)));
        if (dist_to_segment(bp.chart_point, a, b) < need) return false;
    }
    return true;
}

// Straight path if it keeps clear of the branch locus, else a detour through
// a random intermediate point.
Path plan_path(const GraphCurve& c, cplx from, cplx to, Rng& rng) {
    if (segment_clear(c, from, to, -1)) return {PathPiece::segment(from, to)};
    double scale = std::abs(to - from);
    for (const auto& b : c.branch_points) scale = std::max(scale, std::abs(b.chart_point - from));
    const cplx mid0 = 0.5 * (from + to);
    for (int attempt = 0; attempt < 400; ++attempt) {
        const double grow = 0.5 + attempt / 100.0;
        const cplx mid = mid0 + cplx(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)) * scale * grow;
        if (segment_clear(c, from, mid, -1) && segment_clear(c, mid, to, -1)) {
            return {PathPiece::segment(from, mid), PathPiece::segment(mid, to)};
        }
    }
    throw NumericalError("could not route a path around the branch locus from " + describe(from) + " to " +
                         describe(to) + "; try another seed");
}

constexpr int kTrackLevels = 3;

// Level 0 uses the configured options; each further level takes 8x shorter
// steps with a tighter corrector guard.
FiberTracker make_tracker(const GraphCurve& c, int level) {
    TrackOptions o = c.options.track;
    for (int k = 0; k < level; ++k) {
        o.max_step /= 8.0;
        o.initial_step /= 8.0;
        o.guard = std::min(o.guard, 0.1 / (k + 1));
    }
    FiberTracker tracker(c.work, o);
    std::vector<cplx> singular;
    for (const auto& b : c.branch_points) singular.push_back(b.chart_point);
    tracker.set_singularities(std::move(singular));
    return tracker;
}

// Tracks `start` along `path`, escalating the tracker level on failure.
std::vector<RiemannPoint> track_checked(const GraphCurve& c, const Path& path, const std::vector<RiemannPoint>& start,
                                        const std::string& what, int min_level = 0) {
    std::string error;
    for (int level = min_level; level < kTrackLevels; ++level) {
        try {
            return make_tracker(c, level).track(path, start);
        } catch (const TrackingError& e) {
            error = e.what();
        }
    }
    throw TrackingError(what + ": " + error);
}

// As track_checked, then matches the end fiber against `reference`.
std::vector<int> track_and_match(const GraphCurve& c, const Path& path, const std::vector<RiemannPoint>& start,
                                 const std::vector<RiemannPoint>& reference, const std::string& what, int min_level = 0) {
    std::string error;
    for (int level = min_level; level < kTrackLevels; ++level) {
        try {
            const auto end = make_tracker(c, level).track(path, start);
            return match_fibers(end, reference, c.options.match_tol);
        } catch (const TrackingError& e) {
            error = e.what();
        }
    }
    throw TrackingError(what + ": " + error);
}

std::vector<std::vector<int>> cycles_within(const std::vector<int>& perm, const std::vector<int>& orbit) {
    std::vector<std::vector<int>> out;
    std::vector<bool> seen(perm.size(), false);
    for (const int start : orbit) {
        if (seen[static_cast<std::size_t>(start)]) continue;
        std::vector<int> cyc;
        int i = start;
        while (!seen[static_cast<std::size_t>(i)]) {
            seen[static_cast<std::size_t>(i)] = true;
            cyc.push_back(i);
            i = perm[static_cast<std::size_t>(i)];
        }
        out.push_back(std::move(cyc));
    }
    return out;
}

int nearest_index(const std::vector<RiemannPoint>& pts, const RiemannPoint& p) {
    int arg = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double dist = chordal_distance(pts[i], p);
        if (dist < best) {
            best = dist;
            arg = static_cast<int>(i);
        }
    }
    return arg;
}

}  // namespace

GraphCurve build_graph(const RationalMap& G, std::uint64_t seed, const GraphOptions& options) {
    if (G.degree() < 2) throw PreconditionError("build_graph: degree must be >= 2");
    Rng rng = make_stream(seed, "graph-curve");

    CriticalData cd = critical_data(G, options.cluster_tol);
    std::vector<BranchPoint> bps = branch_locus(G, cd);
    std::optional<Moebius> chart;
    RationalMap work = G;
    if (needs_rotation(bps, options.chart_modulus)) {
        bool done = false;
        for (int attempt = 0; attempt < 50 && !done; ++attempt) {
            // mu(z) = t + 1/z sends infinity to t, which must avoid the branch locus
            const Q t = make_q(uniform_int(rng, -12, 12), uniform_int(rng, 1, 4));
            const RiemannPoint tp(cplx(t.get_d(), 0.0));
            const bool clear = std::all_of(bps.begin(), bps.end(), [&](const BranchPoint& b) {
                return chordal_distance(b.point, tp) > 0.05;
            });
            if (!clear) continue;
            const auto& ctx = G.context();
            const Moebius mu(FieldElement(ctx, t), FieldElement(ctx, Q(1)), FieldElement(ctx, Q(1)), FieldElement(ctx));
            RationalMap rotated = compose(G, mu.as_map());
            CriticalData rcd = critical_data(rotated, options.cluster_tol);
            std::vector<BranchPoint> rb = branch_locus(rotated, rcd);
            if (needs_rotation(rb, 1e3)) continue;
            chart = mu;
            work = std::move(rotated);
            cd = std::move(rcd);
            bps = std::move(rb);
            done = true;
        }
        if (!done) throw NumericalError("build_graph: no usable chart rotation found; try another seed");
    }
    for (auto& b : bps) {
        b.chart_point = b.point.z;
        b.point = chart ? chart->apply(b.point) : b.point;
    }
    fill_spacing(bps);

    GraphCurve curve{G, BiPoly::graph_of(G.num(), G.den()), chart, work, cd, bps, cplx(0.0, 0.0), seed, options};

    // basepoint on a circle enclosing the branch locus
    cplx centroid(0.0, 0.0);
    for (const auto& b : bps) centroid += b.chart_point;
    centroid /= static_cast<double>(bps.size());
    double R = 0.0;
    for (const auto& b : bps) R = std::max(R, std::abs(b.chart_point - centroid));
    const double radius = 1.25 * R + 0.5;
    const FiberTracker tracker(work, options.track);
    // take the first draw whose star of segments keeps the full margin, else the best one seen
    double best_clearance = 0.0;
    for (int draw = 0; draw < options.max_basepoint_draws; ++draw) {
        const cplx x0 = centroid + std::polar(radius, uniform(rng, 0.0, 2.0 * M_PI));
        double clearance = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < bps.size(); ++j) {
            clearance = std::min(clearance, segment_clearance(curve, x0, loop_entry(bps[j], x0), static_cast<int>(j)));
        }
        if (clearance <= best_clearance) continue;
        if (min_separation(tracker.fiber(x0)) < 1e-6) continue;
        best_clearance = clearance;
        curve.basepoint = x0;
        if (clearance >= options.basepoint_margin) break;
    }
    if (best_clearance >= 0.1 * options.basepoint_margin) return curve;
    throw NumericalError("build_graph: no admissible basepoint after " + std::to_string(options.max_basepoint_draws) +
                         " draws (branch points nearly collinear); rescale the map or change the seed");
}

std::vector<RiemannPoint> fiber_at(const GraphCurve& curve, const RiemannPoint& x0) {
    for (const auto& b : curve.branch_points) {
        if (chordal_distance(b.point, x0) < 1e-6) throw PreconditionError("fiber_at: x0 lies on the branch locus");
    }
    const NumericMap m(curve.G);
    const RiemannPoint v = m.eval(x0);
    const auto fib = projective_roots(m.preimage_poly(v), m.degree);
    if (min_separation(fib) < curve.options.cluster_tol) {
        throw PreconditionError("fiber_at: fewer than d distinct solutions; x0 is too close to the branch locus");
    }
    return fib;
}

MonodromyAction monodromy(const GraphCurve& curve) {
    MonodromyAction out;
    const cplx x0 = curve.basepoint;
    out.fiber = make_tracker(curve, 0).fiber(x0);
    out.base_index = nearest_index(out.fiber, RiemannPoint(x0));
    if (chordal_distance(out.fiber[static_cast<std::size_t>(out.base_index)], RiemannPoint(x0)) > 1e-8) {
        throw ConsistencyError("monodromy: the basepoint is missing from its own fiber");
    }

    cplx centroid(0.0, 0.0);
    for (const auto& b : curve.branch_points) centroid += b.chart_point;
    centroid /= static_cast<double>(curve.branch_points.size());
    for (std::size_t j = 0; j < curve.branch_points.size(); ++j) {
        const auto& b = curve.branch_points[j];
        out.loops.push_back({static_cast<int>(j), loop_radius(b), loop_entry(b, x0), std::arg((b.chart_point - x0) / (centroid - x0))});
    }
    std::sort(out.loops.begin(), out.loops.end(), [&](const LoopPlan& a, const LoopPlan& b) {
        if (a.angle != b.angle) return a.angle < b.angle;
        return std::abs(curve.branch_points[static_cast<std::size_t>(a.branch)].chart_point - x0) <
               std::abs(curve.branch_points[static_cast<std::size_t>(b.branch)].chart_point - x0);
    });

    // a violated sphere relation means some loop jumped paths: redo everything more carefully
    for (int level = 0; level < kTrackLevels; ++level) {
        out.permutations.clear();
        out.entry_fibers.clear();
        for (const auto& loop : out.loops) {
            const auto& b = curve.branch_points[static_cast<std::size_t>(loop.branch)];
            const std::string what = "loop around branch point " + describe(b.chart_point) + " (chart)";
            auto entry = track_checked(curve, {PathPiece::segment(x0, loop.entry)}, out.fiber, what, level);
            const Path circle{PathPiece::circle(b.chart_point, loop.radius, std::arg(loop.entry - b.chart_point))};
            out.permutations.push_back(track_and_match(curve, circle, entry, entry, what, level));
            out.entry_fibers.push_back(std::move(entry));
        }
        std::vector<int> total(out.fiber.size());
        std::iota(total.begin(), total.end(), 0);
        for (const auto& perm : out.permutations) {
            for (auto& t : total) t = perm[static_cast<std::size_t>(t)];
        }
        out.sphere_relation = true;
        for (std::size_t i = 0; i < total.size(); ++i) out.sphere_relation = out.sphere_relation && total[i] == static_cast<int>(i);
        if (out.sphere_relation) return out;
    }
    throw ConsistencyError("monodromy: the ordered product of the loop permutations is not the identity "
                           "(sphere relation violated)");
}

std::vector<ComponentCertificate> components(const GraphCurve& curve, const MonodromyAction& mono) {
    const std::size_t d = mono.fiber.size();
    Rng rng = make_stream(curve.seed ^ 0x5a5a5a5aULL, "graph-curve");

    // orbits
    std::vector<int> parent(d);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int i) {
        while (parent[static_cast<std::size_t>(i)] != i) i = parent[static_cast<std::size_t>(i)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
        return i;
    };
    for (const auto& perm : mono.permutations) {
        for (std::size_t i = 0; i < d; ++i) parent[static_cast<std::size_t>(find(static_cast<int>(i)))] = find(perm[i]);
    }
    std::map<int, std::vector<int>> groups;
    for (std::size_t i = 0; i < d; ++i) groups[find(static_cast<int>(i))].push_back(static_cast<int>(i));

    // ramification validation: follow each loop entry fiber into its branch point
    for (std::size_t k = 0; k < mono.loops.size(); ++k) {
        const auto& loop = mono.loops[k];
        const auto& b = curve.branch_points[static_cast<std::size_t>(loop.branch)];
        std::vector<int> cand;
        std::vector<RiemannPoint> cand_pts;
        for (std::size_t j = 0; j < curve.branch_points.size(); ++j) {
            if (curve.branch_points[j].value_index == b.value_index) {
                cand.push_back(static_cast<int>(j));
                cand_pts.emplace_back(curve.branch_points[j].chart_point);
            }
        }
        std::vector<int> all(d);
        std::iota(all.begin(), all.end(), 0);
        const auto cycles = cycles_within(mono.permutations[k], all);

        // expected cycle lengths: n / gcd(m, n), gcd(m, n) times, for each limit point of local degree n
        std::vector<int> expected, observed;
        for (const int c : cand) {
            const int n = curve.branch_points[static_cast<std::size_t>(c)].local_degree;
            expected.insert(expected.end(), static_cast<std::size_t>(std::gcd(b.local_degree, n)), local_degree(b.local_degree, n));
        }
        for (const auto& cyc : cycles) observed.push_back(static_cast<int>(cyc.size()));
        std::sort(expected.begin(), expected.end());
        std::sort(observed.begin(), observed.end());
        if (expected != observed) {
            throw ConsistencyError("ramification assembly: the cycle type of the loop around " + describe(b.chart_point) +
                                   " contradicts the local-degree formula");
        }

        // finer check when the fiber can be followed close enough to separate the limit points
        for (const double shrink : {1e-2, 1e-3, 1e-6}) {
            std::vector<RiemannPoint> near;
            try {
                near = track_checked(curve, {PathPiece::ray(loop.entry, b.chart_point, shrink)}, mono.entry_fibers[k],
                                     "ray into branch point " + describe(b.chart_point));
            } catch (const TrackingError&) {
                continue;
            }
            std::vector<int> assigned(d, 0), counts(cand.size(), 0);
            for (std::size_t i = 0; i < d; ++i) {
                assigned[i] = nearest_index(cand_pts, near[i]);
                ++counts[static_cast<std::size_t>(assigned[i])];
            }
            bool counts_ok = true;
            for (std::size_t c = 0; c < cand.size(); ++c) {
                counts_ok = counts_ok && counts[c] == curve.branch_points[static_cast<std::size_t>(cand[c])].local_degree;
            }
            if (!counts_ok) continue;
            for (const auto& cyc : cycles) {
                const int target = assigned[static_cast<std::size_t>(cyc.front())];
                const int n = curve.branch_points[static_cast<std::size_t>(cand[static_cast<std::size_t>(target)])].local_degree;
                const bool same_limit = std::all_of(cyc.begin(), cyc.end(), [&](int i) { return assigned[static_cast<std::size_t>(i)] == target; });
                if (!same_limit || static_cast<int>(cyc.size()) != local_degree(b.local_degree, n)) {
                    throw ConsistencyError("ramification assembly: a monodromy cycle at " + describe(b.chart_point) +
                                           " does not match the local degree at its limit point");
                }
            }
            break;
        }
    }

    // r1: which fiber points z_j satisfy (z_j, x0) in the component
    const cplx x0 = curve.basepoint;
    std::vector<int> back_label(d, mono.base_index);  // tau_j^{-1}(i0)
    for (std::size_t j = 0; j < d; ++j) {
        if (static_cast<int>(j) == mono.base_index) continue;
        const RiemannPoint& zj = mono.fiber[j];
        if (zj.infinite || std::abs(zj.z) > 1e8) {
            throw NumericalError("components: a fiber point over the basepoint is at infinity; try another seed");
        }
        const Path path = plan_path(curve, x0, zj.z, rng);
        const auto tau = track_and_match(curve, path, mono.fiber, mono.fiber, "path to fiber point " + describe(zj.z));
        for (std::size_t i = 0; i < d; ++i) {
            if (tau[i] == mono.base_index) back_label[j] = static_cast<int>(i);
        }
    }

    std::vector<ComponentCertificate> out;
    for (const auto& [root, orbit] : groups) {
        ComponentCertificate cert;
        cert.orbit = orbit;
        cert.r2 = static_cast<int>(orbit.size());
        cert.is_diagonal = orbit.size() == 1 && orbit.front() == mono.base_index;
        for (std::size_t j = 0; j < d; ++j) {
            if (std::find(orbit.begin(), orbit.end(), back_label[j]) != orbit.end()) ++cert.r1;
        }
        if (cert.r1 != cert.r2) {
            throw ConsistencyError("components: r1 = " + std::to_string(cert.r1) + " but r2 = " + std::to_string(cert.r2) +
                                   " for an orbit (tracking fault)");
        }
        int ramification = 0;
        for (std::size_t k = 0; k < mono.loops.size(); ++k) {
            std::vector<int> lengths;
            for (const auto& cyc : cycles_within(mono.permutations[k], orbit)) {
                lengths.push_back(static_cast<int>(cyc.size()));
                ramification += static_cast<int>(cyc.size()) - 1;
            }
            std::sort(lengths.rbegin(), lengths.rend());
            cert.ramification.push_back(std::move(lengths));
        }
        const int twice_genus = ramification - 2 * cert.r2 + 2;
        if (twice_genus < 0 || twice_genus % 2 != 0) {
            throw ConsistencyError("components: Riemann-Hurwitz gives a non-integral or negative genus (sum of (e-1) = " +
                                   std::to_string(ramification) + ", r = " + std::to_string(cert.r2) + ")");
        }
        cert.genus = twice_genus / 2;
        out.push_back(std::move(cert));
    }
    std::sort(out.begin(), out.end(), [](const ComponentCertificate& a, const ComponentCertificate& b) {
        if (a.r2 != b.r2) return a.r2 < b.r2;
        if (a.is_diagonal != b.is_diagonal) return a.is_diagonal;
        return a.orbit < b.orbit;
    });
    return out;
}

namespace {

// One interpolation attempt on a circle of abscissas |x| = rad (original coordinates).
std::optional<BiPoly> reconstruct_on_circle(const GraphCurve& curve, const MonodromyAction& mono,
                                            const ComponentCertificate& cert, Rng& rng) {
    const int r = static_cast<int>(cert.orbit.size());
    const auto& ctx = curve.G.context();
    const int wanted = 2 * r + 4;
    const double rad = uniform(rng, 0.6, 1.4);
    const double phase = uniform(rng, 0.0, 2.0 * M_PI);
    std::vector<cplx> nodes;
    for (int k = 0; k < 3 * wanted && static_cast<int>(nodes.size()) < wanted; ++k) {
        const cplx x = std::polar(rad, phase + 2.0 * M_PI * k / wanted + (k >= wanted ? 0.37 : 0.0));
        bool ok = true;
        for (const auto& b : curve.branch_points) ok = ok && chordal_distance(b.point, RiemannPoint(x)) > 0.02;
        if (ok) nodes.push_back(x);
    }
    if (static_cast<int>(nodes.size()) < 2 * r + 1) return std::nullopt;

    std::vector<std::vector<cplx>> node_coeffs;  // monic product coefficients, per usable node
    std::vector<cplx> used_nodes;
    std::vector<RiemannPoint> current = mono.fiber;
    cplx here = curve.basepoint;
    try {
        for (const cplx x : nodes) {
            const RiemannPoint xc = curve.chart ? curve.chart->inverse().apply(RiemannPoint(x)) : RiemannPoint(x);
            if (xc.infinite || std::abs(xc.z) > 1e6) continue;
            const Path path = plan_path(curve, here, xc.z, rng);
            current = track_checked(curve, path, current, "reconstruction path");
            here = xc.z;
            // replace the tracked points by the directly solved fiber, which is more accurate
            std::vector<RiemannPoint> tracked;
            for (const auto& p : current) tracked.push_back(curve.to_original(p));
            const auto solved = fiber_at(curve, RiemannPoint(x));
            const auto perm = match_fibers(tracked, solved, 1e-6);
            std::vector<cplx> poly{cplx(1.0, 0.0)};
            bool finite = true;
            for (const int i : cert.orbit) {
                const RiemannPoint& y = solved[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
                if (y.infinite || std::abs(y.z) > 1e8) {
                    finite = false;
                    break;
                }
                std::vector<cplx> next(poly.size() + 1, cplx(0.0, 0.0));
                for (std::size_t k = 0; k < poly.size(); ++k) {
                    next[k + 1] += poly[k];
                    next[k] -= y.z * poly[k];
                }
                poly = std::move(next);
            }
            if (!finite) continue;
            node_coeffs.push_back(std::move(poly));
            used_nodes.push_back(x);
        }
    } catch (const std::runtime_error&) {
        return std::nullopt;
    }
    if (static_cast<int>(used_nodes.size()) < 2 * r + 1) return std::nullopt;

    // unknowns a_{k,l}: coefficient of y^k x^l, index k (r+1) + l
    const int n_unknown = (r + 1) * (r + 1);
    const int n_rows = r * static_cast<int>(used_nodes.size());
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n_rows, n_unknown);
    for (std::size_t j = 0; j < used_nodes.size(); ++j) {
        for (int k = 0; k < r; ++k) {
            const int row = static_cast<int>(j) * r + k;
            const cplx ck = node_coeffs[j][static_cast<std::size_t>(k)];
            cplx xp(1.0, 0.0);
            double scale = 1.0 + std::abs(ck);
            for (int l = 0; l <= r; ++l) {
                A(row, k * (r + 1) + l) = xp / scale;
                A(row, r * (r + 1) + l) = -ck * xp / scale;
                xp *= used_nodes[j];
            }
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const Eigen::Index last = sv.size() - 1;
    // a one-dimensional kernel; the exact divisibility test below is the real certificate
    if (sv.size() < n_unknown || sv(last) > 1e-7 * sv(0) || sv(last - 1) < 1e3 * sv(last)) return std::nullopt;
    Eigen::VectorXcd a = svd.matrixV().col(n_unknown - 1);

    // lexicographic leading entry (highest x power, then highest y power)
    const double amax = a.cwiseAbs().maxCoeff();
    int lead = -1;
    for (int l = r; l >= 0 && lead < 0; --l) {
        for (int k = r; k >= 0; --k) {
            if (std::abs(a(k * (r + 1) + l)) > 1e-7 * amax) {
                lead = k * (r + 1) + l;
                break;
            }
        }
    }
    a /= a(lead);

    std::vector<std::vector<FieldElement>> rows(static_cast<std::size_t>(r) + 1,
                                                std::vector<FieldElement>(static_cast<std::size_t>(r) + 1, FieldElement(ctx)));
    for (int k = 0; k <= r; ++k) {
        for (int l = 0; l <= r; ++l) {
            const auto e = recognize(ctx, a(k * (r + 1) + l));
            if (!e) return std::nullopt;
            rows[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)] = *e;
        }
    }
    const BiPoly candidate(ctx, std::move(rows));
    if (candidate.bidegree() != std::make_pair(r, r)) return std::nullopt;
    if (!bipoly_divide_exact(curve.P, candidate)) return std::nullopt;
    return candidate.normalized();
}

}  // namespace

std::optional<BiPoly> reconstruct_component(const GraphCurve& curve, const MonodromyAction& mono,
                                            const ComponentCertificate& cert) {
    Rng rng = make_stream(curve.seed ^ (0x1000ULL + static_cast<std::uint64_t>(cert.orbit.front())), "graph-curve");
    for (int attempt = 0; attempt < 3; ++attempt) {
        if (auto p = reconstruct_on_circle(curve, mono, cert, rng)) return p;
    }
    return std::nullopt;
}

ParametrizationVerdict genus_zero_parametrization_check(const ComponentCertificate& cert) {
    ParametrizationVerdict v;
    v.pass = cert.genus == 0;
    if (cert.is_diagonal) {
        v.note = "diagonal, parametrized by (t, t)";
    } else if (v.pass) {
        v.note = "genus 0: a parametrization by rational functions of degree " + std::to_string(cert.r2) + " exists";
    } else {
        v.note = "genus " + std::to_string(cert.genus) + ": no rational parametrization";
    }
    if (!cert.exact_poly) v.note += " (component certified numerically only)";
    return v;
}

GraphAnalysis analyze_graph(const RationalMap& G, std::uint64_t seed, const GraphOptions& options) {
    GraphCurve curve = build_graph(G, seed, options);
    MonodromyAction mono = monodromy(curve);
    std::vector<ComponentCertificate> comps = components(curve, mono);
    for (auto& c : comps) c.exact_poly = reconstruct_component(curve, mono, c);
    return {std::move(curve), std::move(mono), std::move(comps)};
}

}  // namespace ratdyn
