#include "ratdyn/measure.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "ratdyn/errors.hpp"
#include "ratdyn/identities.hpp"
#include "ratdyn/random.hpp"
#include "ratdyn/roots.hpp"

namespace ratdyn {

namespace {

RiemannPoint from_sphere(const SpherePoint& p) {
    // stereographic projection from the north pole, through the south chart near it
    if (p[2] > 0.0) {
        const cplx w(p[0], -p[1]);
        const double s = 1.0 + p[2];
        if (std::abs(w) == 0.0) return RiemannPoint::infinity();
        return RiemannPoint(s / w);
    }
    return RiemannPoint(cplx(p[0], p[1]) / (1.0 - p[2]));
}

// Preimages of w under f, solved in the better-conditioned of the charts w and 1/w.
std::vector<RiemannPoint> preimages(const NumericMap& m, const RiemannPoint& w) {
    std::vector<cplx> c(m.num.size());
    if (w.infinite) {
        c = m.den;
    } else if (std::abs(w.z) <= 1.0) {
        for (std::size_t k = 0; k < c.size(); ++k) c[k] = m.num[k] - w.z * m.den[k];
    } else {
        const cplx u = 1.0 / w.z;
        for (std::size_t k = 0; k < c.size(); ++k) c[k] = m.den[k] - u * m.num[k];
    }
    return projective_roots(c, m.degree);
}

// Runs `count` backward orbits of length `depth`; visit(step, point) sees every
// point after step >= 1 preimages. Orbits whose root finding fails are redrawn.
void backward_orbits(const RationalMap& f, int count, int depth, Rng& rng,
                     const std::function<void(int, const RiemannPoint&)>& visit) {
    if (f.degree() < 2) throw PreconditionError("backward orbits need degree >= 2");
    if (count < 0 || depth < 1) throw PreconditionError("backward orbits: count >= 0 and depth >= 1 required");
    const NumericMap m(f);
    const auto exceptional = exceptional_points(f);
    std::vector<RiemannPoint> orbit(static_cast<std::size_t>(depth));
    long redraws = 0;
    for (int done = 0; done < count;) {
        RiemannPoint z;
        do {
            z = RiemannPoint(std::polar(uniform(rng, 0.0, 2.0), uniform(rng, 0.0, 2.0 * M_PI)));
        } while (std::any_of(exceptional.begin(), exceptional.end(),
                             [&](const RiemannPoint& e) { return chordal_distance(e, z) < 1e-6; }));
        bool ok = true;
        for (int k = 0; k < depth; ++k) {
            try {
                const auto pre = preimages(m, z);
                z = pre[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(pre.size()) - 1))];
            } catch (const NumericalError&) {
                ok = false;
                break;
            }
            orbit[static_cast<std::size_t>(k)] = z;
        }
        if (!ok) {
            if (++redraws > 10L * std::max(count, 1)) throw NumericalError("backward orbits: root finding keeps failing");
            continue;
        }
        for (int k = 0; k < depth; ++k) visit(k + 1, orbit[static_cast<std::size_t>(k)]);
        ++done;
    }
}

double pair_sum(const std::vector<SpherePoint>& a, const std::vector<SpherePoint>& b) {
    std::vector<double> bx(b.size()), by(b.size()), bz(b.size());
    for (std::size_t j = 0; j < b.size(); ++j) {
        bx[j] = b[j][0];
        by[j] = b[j][1];
        bz[j] = b[j][2];
    }
    double total = 0.0;
    for (const auto& p : a) {
        double row = 0.0;
        for (std::size_t j = 0; j < b.size(); ++j) {
            const double dx = p[0] - bx[j], dy = p[1] - by[j], dz = p[2] - bz[j];
            row += std::sqrt(dx * dx + dy * dy + dz * dz);
        }
        total += row;
    }
    return total;
}

// E|X - Y| for X ~ a, Y ~ b (independent), all pairs or subsampled.
double mean_distance(const std::vector<SpherePoint>& a, const std::vector<SpherePoint>& b, Rng& rng) {
    constexpr double kAllPairsLimit = 5e8;
    const double pairs = static_cast<double>(a.size()) * static_cast<double>(b.size());
    if (pairs <= kAllPairsLimit) return pair_sum(a, b) / pairs;
    constexpr long kSampled = 2000000;
    double total = 0.0;
    for (long k = 0; k < kSampled; ++k) {
        const auto& p = a[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(a.size()) - 1))];
        const auto& q = b[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(b.size()) - 1))];
        total += chordal_distance(p, q);
    }
    return total / static_cast<double>(kSampled);
}

MeasureCloud block(const MeasureCloud& c, int k, int blocks) {
    MeasureCloud out;
    const std::size_t n = c.points.size() / static_cast<std::size_t>(blocks);
    out.points.assign(c.points.begin() + static_cast<std::ptrdiff_t>(n * k),
                      c.points.begin() + static_cast<std::ptrdiff_t>(n * (k + 1)));
    return out;
}

}  // namespace

std::vector<RiemannPoint> exceptional_points(const RationalMap& f) {
    const int d = f.degree();
    const NumericMap m(f);
    const CriticalData cd = critical_data(f);
    // a point of a finite totally invariant set is a totally ramified critical point
    std::vector<RiemannPoint> full;
    for (const auto& c : cd.points) {
        if (c.multiplicity == d - 1) full.push_back(c.point);
    }
    std::vector<RiemannPoint> out;
    for (const auto& c : full) {
        const RiemannPoint v = m.eval(c);
        if (chordal_distance(v, c) < 1e-9) {
            out.push_back(c);
            continue;
        }
        for (const auto& c2 : full) {
            if (chordal_distance(c2, v) < 1e-9 && chordal_distance(m.eval(c2), c) < 1e-9) out.push_back(c);
        }
    }
    return out;
}

MeasureCloud backward_orbit_sample(const RationalMap& f, int count, int depth, std::uint64_t seed,
                                   const std::string& stream) {
    Rng rng = make_stream(seed, "measure/" + stream);
    MeasureCloud cloud;
    cloud.map_digest = digest(f);
    cloud.depth = depth;
    cloud.seed = seed;
    cloud.points.reserve(static_cast<std::size_t>(count));

    backward_orbits(f, count, depth, rng, [&](int step, const RiemannPoint& z) {
        if (step == depth) cloud.points.push_back(sphere_lift(z));
    });
    return cloud;
}

double measure_distance(const MeasureCloud& a, const MeasureCloud& b, std::uint64_t seed) {
    if (a.points.size() < 1000 || b.points.size() < 1000) {
        throw PreconditionError("measure_distance: each cloud needs at least 1000 points");
    }
    if (&a == &b || a.points == b.points) return 0.0;
    Rng rng = make_stream(seed, "measure/pairs");
    const double xy = mean_distance(a.points, b.points, rng);
    const double xx = mean_distance(a.points, a.points, rng);
    const double yy = mean_distance(b.points, b.points, rng);
    return std::max(0.0, 2.0 * xy - xx - yy);
}

std::string to_string(MeasureVerdict v) {
    switch (v) {
        case MeasureVerdict::Same: return "SAME";
        case MeasureVerdict::Different: return "DIFFERENT";
        case MeasureVerdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

MeasureVerdict classify(double distance, double baseline) {
    if (distance < kSameFactor * baseline) return MeasureVerdict::Same;
    if (distance > kDifferentFactor * baseline) return MeasureVerdict::Different;
    return MeasureVerdict::Inconclusive;
}

int comparison_blocks(int count) { return std::clamp(count / kBlockSize, 1, kMaxBlocks); }

double blocked_distance(const MeasureCloud& a, const MeasureCloud& b, int blocks, std::uint64_t seed) {
    if (blocks < 1) throw PreconditionError("blocked_distance: blocks must be >= 1");
    double total = 0.0;
    for (int k = 0; k < blocks; ++k) total += measure_distance(block(a, k, blocks), block(b, k, blocks), seed);
    return total / blocks;
}

MeasureDistanceReport same_measure_test(const RationalMap& f, const RationalMap& g, int count, int depth,
                                        std::uint64_t seed) {
    const MeasureCloud a = backward_orbit_sample(f, count, depth, seed, "first");
    const MeasureCloud a2 = backward_orbit_sample(f, count, depth, seed, "second");
    const MeasureCloud b = backward_orbit_sample(g, count, depth, seed, "other");
    MeasureDistanceReport rep;
    rep.blocks = comparison_blocks(count);
    rep.distance = blocked_distance(a, b, rep.blocks, seed);
    rep.self_baseline = blocked_distance(a, a2, rep.blocks, seed);
    rep.verdict = classify(rep.distance, rep.self_baseline);
    return rep;
}

MeasureCloud push_forward(const MeasureCloud& cloud, const RationalMap& h) {
    const NumericMap m(h);
    MeasureCloud out = cloud;
    for (auto& p : out.points) p = sphere_lift(m.eval(from_sphere(p)));
    return out;
}

MeasureDistanceReport invariance_test(const RationalMap& f, const RationalMap& h, int count, int depth,
                                      std::uint64_t seed) {
    const MeasureCloud a = backward_orbit_sample(f, count, depth, seed, "first");
    const MeasureCloud a2 = backward_orbit_sample(f, count, depth, seed, "second");
    const MeasureCloud a3 = backward_orbit_sample(f, count, depth, seed, "third");
    MeasureDistanceReport rep;
    rep.blocks = comparison_blocks(count);
    rep.distance = blocked_distance(push_forward(a, h), a2, rep.blocks, seed);
    rep.self_baseline = blocked_distance(a2, a3, rep.blocks, seed);
    rep.verdict = classify(rep.distance, rep.self_baseline);
    return rep;
}

double Raster::lit_fraction() const {
    if (gray.empty()) return 0.0;
    const auto lit = std::count_if(gray.begin(), gray.end(), [](std::uint8_t g) { return g > 0; });
    return static_cast<double>(lit) / static_cast<double>(gray.size());
}

std::string Raster::to_ppm() const {
    std::string out = "P6\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
    out.reserve(out.size() + 3 * gray.size());
    for (const std::uint8_t g : gray) out.append(3, static_cast<char>(g));
    return out;
}

Raster julia_raster(const RationalMap& f, int width, int height, const Window& window, int count, int depth,
                    std::uint64_t seed, int burn_in) {
    if (width < 1 || height < 1) throw PreconditionError("julia_raster: width and height must be positive");
    if (!(window.xmax > window.xmin) || !(window.ymax > window.ymin)) throw PreconditionError("julia_raster: empty window");
    std::vector<long> bins(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0);
    Rng rng = make_stream(seed, "measure/raster");
    backward_orbits(f, count, depth, rng, [&](int step, const RiemannPoint& z) {
        if (step <= burn_in || z.infinite) return;
        const double u = (z.z.real() - window.xmin) / (window.xmax - window.xmin);
        const double v = (window.ymax - z.z.imag()) / (window.ymax - window.ymin);
        if (!(u >= 0.0 && u < 1.0 && v >= 0.0 && v < 1.0)) return;
        const auto col = static_cast<std::size_t>(u * width), row = static_cast<std::size_t>(v * height);
        ++bins[row * static_cast<std::size_t>(width) + col];
    });
    Raster r{width, height, std::vector<std::uint8_t>(bins.size(), 0)};
    const long peak = *std::max_element(bins.begin(), bins.end());
    if (peak == 0) return r;
    const double scale = 255.0 / std::log1p(static_cast<double>(peak));
    for (std::size_t k = 0; k < bins.size(); ++k) {
        if (bins[k] > 0) r.gray[k] = static_cast<std::uint8_t>(std::clamp(std::lround(std::log1p(static_cast<double>(bins[k])) * scale), 1L, 255L));
    }
    return r;
}

}  // namespace ratdyn
