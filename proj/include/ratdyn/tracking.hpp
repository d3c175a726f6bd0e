#pragma once

#include <vector>

#include "ratdyn/rational_map.hpp"

namespace ratdyn {

// One piece of a path in the x-plane, parametrized by t in [0, 1].
struct PathPiece {
    enum class Kind { Segment, Arc, Ray };
    Kind kind = Kind::Segment;
    cplx a{}, b{};          // Segment: a -> b. Ray: from b toward the target a.
    cplx center{};          // Arc
    double radius = 0.0;    // Arc
    double theta0 = 0.0;    // Arc start angle
    double sweep = 0.0;     // Arc signed sweep (2 pi for a counterclockwise turn)
    double shrink = 1.0;    // Ray: final distance to a as a fraction of |b - a|

    static PathPiece segment(cplx from, cplx to);
    static PathPiece circle(cplx center, double radius, double theta0);
    // x(t) = target + (from - target) * shrink^t: geometric approach.
    static PathPiece ray(cplx from, cplx target, double shrink);

    cplx at(double t) const;
};

using Path = std::vector<PathPiece>;

struct TrackOptions {
    double min_step = 1e-12;       // in the piece parameter t
    double initial_step = 1.0 / 64;
    double max_step = 1.0 / 8;
    double newton_tol = 1e-12;     // relative corrector tolerance
    double guard = 0.25;           // corrector drift allowed, as a fraction of the fiber separation
};

// Continues the fiber {y : G(y) = G(x)} of a rational map G = p/q along paths
// in x with a predictor-corrector on H(x, y) = p(x) q(y) - q(x) p(y). Points
// with |y| > 1 are carried in the chart w = 1/y.
class FiberTracker {
public:
    explicit FiberTracker(const RationalMap& G, TrackOptions opt = {});

    int degree() const { return d_; }
    // All d solutions y of G(y) = G(x), each with residual < 1e-10.
    std::vector<RiemannPoint> fiber(cplx x) const;
    // Continues `start` (a fiber over path.front().at(0)) to the end of the path.
    // Throws TrackingError on step underflow.
    std::vector<RiemannPoint> track(const Path& path, std::vector<RiemannPoint> start) const;

    const TrackOptions& options() const { return opt_; }
    // Points of the x-plane where fibers collide; steps are kept shorter than
    // half the distance to the nearest of them.
    void set_singularities(std::vector<cplx> pts) { singular_ = std::move(pts); }

private:
    struct ChartPoint {
        cplx u;
        bool inverted;
    };
    bool step(cplx x0, cplx x1, std::vector<ChartPoint>& pts) const;
    void eval(cplx x, const ChartPoint& pt, cplx& h, cplx& hu, cplx& hx) const;
    double noise(cplx x, cplx u, bool inverted) const;
    bool too_long(cplx x0, cplx x1) const;

    int d_;
    std::vector<cplx> p_, q_, pr_, qr_;  // ascending, padded; pr_/qr_ reversed at degree d
    TrackOptions opt_;
    std::vector<cplx> singular_;
};

// perm with a[i] ~ b[perm[i]] (chordal). Throws TrackingError when a point has
// no partner within `tol`, when its second-closest candidate is within `tol`
// of the closest, or when the result is not a bijection.
std::vector<int> match_fibers(const std::vector<RiemannPoint>& a, const std::vector<RiemannPoint>& b, double tol);

// Minimal pairwise chordal distance.
double min_separation(const std::vector<RiemannPoint>& pts);

}  // namespace ratdyn
