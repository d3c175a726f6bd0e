#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ratdyn/rational_map.hpp"

namespace ratdyn {

using SpherePoint = std::array<double, 3>;

// Empirical maximal-entropy measure: uniform weights on points of the unit sphere.
struct MeasureCloud {
    std::vector<SpherePoint> points;
    std::string map_digest;
    int depth = 0;
    std::uint64_t seed = 0;

    double weight() const { return points.empty() ? 0.0 : 1.0 / static_cast<double>(points.size()); }
};

struct SampleOptions {
    int count = 20000;
    int depth = 40;
    int burn_in = 10;  // raster binning skips the first burn_in steps of each orbit
};

// Points of the sphere that form a finite totally invariant set of f (at most
// two); backward orbits must not start there.
std::vector<RiemannPoint> exceptional_points(const RationalMap& f);

// `count` independent backward orbits of length `depth`, one uniformly chosen
// preimage per step; the cloud holds the orbit endpoints. `stream` separates
// independent clouds drawn with the same seed.
MeasureCloud backward_orbit_sample(const RationalMap& f, int count, int depth, std::uint64_t seed,
                                   const std::string& stream = "cloud");

// Energy distance 2 E|X-Y| - E|X-X'| - E|Y-Y'| in the chordal metric (all-pairs
// V-statistic; at least 1e6 random pairs per term when |A| |B| > 5e8).
// Requires at least 1000 points in each cloud.
double measure_distance(const MeasureCloud& a, const MeasureCloud& b, std::uint64_t seed = 0);

enum class MeasureVerdict { Same, Different, Inconclusive };

std::string to_string(MeasureVerdict v);

struct MeasureDistanceReport {
    double distance = 0.0;
    double self_baseline = 0.0;
    MeasureVerdict verdict = MeasureVerdict::Inconclusive;
    int blocks = 1;
    double ratio() const { return self_baseline > 0.0 ? distance / self_baseline : 0.0; }
};

// Calibration constants, not theorems: SAME below 3x the baseline, DIFFERENT above 10x.
inline constexpr double kSameFactor = 3.0;
inline constexpr double kDifferentFactor = 10.0;

MeasureVerdict classify(double distance, double baseline);

// Comparisons split each cloud into consecutive blocks of kBlockSize points
// (at most kMaxBlocks) and average the block-wise energy distances.
inline constexpr int kBlockSize = 1000;
inline constexpr int kMaxBlocks = 20;

int comparison_blocks(int count);

// Mean of measure_distance over matching blocks of a and b.
double blocked_distance(const MeasureCloud& a, const MeasureCloud& b, int blocks, std::uint64_t seed = 0);

// Clouds of f (twice, independently) and g; the baseline is the distance
// between the two clouds of f. Both distances are block means.
MeasureDistanceReport same_measure_test(const RationalMap& f, const RationalMap& g, int count, int depth,
                                        std::uint64_t seed);

// The cloud pushed forward by a map (f-invariance, sigma_f-invariance).
MeasureCloud push_forward(const MeasureCloud& cloud, const RationalMap& h);

// distance(h_* A, A') against the baseline distance(A, A'') for independent
// clouds A, A', A'' of f.
MeasureDistanceReport invariance_test(const RationalMap& f, const RationalMap& h, int count, int depth,
                                      std::uint64_t seed);

struct Window {
    double xmin = -2.0, xmax = 2.0, ymin = -2.0, ymax = 2.0;
};

struct Raster {
    int width = 0, height = 0;
    std::vector<std::uint8_t> gray;  // row-major, top row first

    double lit_fraction() const;
    std::string to_ppm() const;  // binary P6
};

// Backward-orbit points after burn-in, binned over `window` with log-scaled density.
Raster julia_raster(const RationalMap& f, int width, int height, const Window& window, int count, int depth,
                    std::uint64_t seed, int burn_in = 10);

}  // namespace ratdyn
