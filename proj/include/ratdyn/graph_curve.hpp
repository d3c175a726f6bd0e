#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ratdyn/bipoly.hpp"
#include "ratdyn/rational_map.hpp"
#include "ratdyn/tracking.hpp"

namespace ratdyn {

struct GraphOptions {
    double cluster_tol = 1e-7;       // deduplication of branch points and critical values
    double match_tol = 1e-6;         // fiber matching after a loop
    double chart_modulus = 1e6;      // rotate the chart when a branch point is beyond this
    double basepoint_margin = 0.1;   // segment clearance, as a fraction of the branch-point spacing
    int max_basepoint_draws = 100;
    TrackOptions track;
};

// A point of G^{-1}(critical values of G).
struct BranchPoint {
    RiemannPoint point;       // original coordinates
    cplx chart_point{};       // working chart coordinates (always finite)
    int local_degree = 1;     // local degree of G at the point
    int value_index = 0;      // which critical value it lies over
    double spacing = 0.0;     // distance (chart) to the nearest other branch point
};

// V_G = {G(x) = G(y)} together with the data used to analyze it. When a
// branch point lies at or near infinity, the analysis runs on G o mu for a
// random Moebius mu (`chart`), which maps chart coordinates to original ones.
struct GraphCurve {
    RationalMap G;
    BiPoly P;
    std::optional<Moebius> chart;
    RationalMap work;  // G o mu, or G
    CriticalData work_critical;
    std::vector<BranchPoint> branch_points;
    cplx basepoint{};  // chart coordinates
    std::uint64_t seed = 0;
    GraphOptions options;

    RiemannPoint to_original(cplx chart_point) const;
    RiemannPoint to_original(const RiemannPoint& chart_point) const;
};

GraphCurve build_graph(const RationalMap& G, std::uint64_t seed, const GraphOptions& options = {});

// The d solutions y of G(y) = G(x0), for x0 in original coordinates away from
// the branch locus. Throws PreconditionError when x0 is too close to it.
std::vector<RiemannPoint> fiber_at(const GraphCurve& curve, const RiemannPoint& x0);

struct LoopPlan {
    int branch = 0;       // index into branch_points
    double radius = 0.0;
    cplx entry{};         // where the segment from the basepoint meets the circle
    double angle = 0.0;   // argument about the basepoint, used for ordering
};

struct MonodromyAction {
    std::vector<RiemannPoint> fiber;           // chart coordinates, over the basepoint
    int base_index = 0;                        // fiber index of y = x0
    std::vector<LoopPlan> loops;               // in loop order
    std::vector<std::vector<int>> permutations;  // permutations[k] belongs to loops[k]
    std::vector<std::vector<RiemannPoint>> entry_fibers;  // labelled fiber at each loop entry
    bool sphere_relation = false;
};

// Loops around every branch point. Throws ConsistencyError when the ordered
// product of the permutations is not the identity, TrackingError when a loop
// cannot be tracked.
MonodromyAction monodromy(const GraphCurve& curve);

struct ComponentCertificate {
    std::vector<int> orbit;                   // fiber indices
    int r1 = 0, r2 = 0;
    std::vector<std::vector<int>> ramification;  // per loop (loop order): cycle lengths, descending
    int genus = 0;
    std::optional<BiPoly> exact_poly;
    bool is_diagonal = false;
};

// d_{G,y} / gcd(d_{G,x}, d_{G,y}).
int local_degree(int eG_x, int eG_y);

// Orbits of the monodromy group with bidegrees, ramification and genus. r1 is
// recomputed independently by continuing the fiber to every other fiber
// point; ramification is validated against local_degree at every branch
// point. Violations raise ConsistencyError.
std::vector<ComponentCertificate> components(const GraphCurve& curve, const MonodromyAction& mono);

// Exact defining polynomial of a component (original coordinates), or
// nullopt when rationalization or the exact divisibility check fails.
std::optional<BiPoly> reconstruct_component(const GraphCurve& curve, const MonodromyAction& mono,
                                            const ComponentCertificate& cert);

struct ParametrizationVerdict {
    bool pass = false;
    std::string note;
};

ParametrizationVerdict genus_zero_parametrization_check(const ComponentCertificate& cert);

struct GraphAnalysis {
    GraphCurve curve;
    MonodromyAction monodromy;
    std::vector<ComponentCertificate> components;
};

// build_graph + monodromy + components + reconstruct_component for each.
GraphAnalysis analyze_graph(const RationalMap& G, std::uint64_t seed, const GraphOptions& options = {});

}  // namespace ratdyn
