#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "ratdyn/errors.hpp"
#include "ratdyn/identities.hpp"
#include "ratdyn/measure.hpp"

using namespace ratdyn;
using testing_support::map_of;
using testing_support::random_map;

namespace {

double modulus(const SpherePoint& p) { return std::sqrt((1.0 + p[2]) / (1.0 - p[2])); }

}  // namespace

TEST_CASE("z^2 clouds sit on the unit circle") {
    const auto cloud = backward_orbit_sample(map_of("z^2"), 2000, 30, 3);
    REQUIRE(cloud.points.size() == 2000);
    double worst = 0.0, total_weight = 0.0;
    for (const auto& p : cloud.points) {
        worst = std::max(worst, std::abs(modulus(p) - 1.0));
        CHECK(std::abs(p[0] * p[0] + p[1] * p[1] + p[2] * p[2] - 1.0) < 1e-10);
        total_weight += cloud.weight();
    }
    CHECK(worst < 1e-3);
    CHECK(std::abs(total_weight - 1.0) < 1e-12);
    CHECK(cloud.depth == 30);
    CHECK(cloud.map_digest == digest(map_of("z^2")));
}

TEST_CASE("clouds are deterministic per seed and stream") {
    const auto f = map_of("(z^2-1)/(2z+3)");
    const auto a = backward_orbit_sample(f, 300, 25, 11);
    CHECK(a.points == backward_orbit_sample(f, 300, 25, 11).points);
    CHECK(a.points != backward_orbit_sample(f, 300, 25, 12).points);
    CHECK(a.points != backward_orbit_sample(f, 300, 25, 11, "other").points);
    CHECK(backward_orbit_sample(f, 0, 25, 11).points.empty());
    CHECK_THROWS_AS(backward_orbit_sample(map_of("2z+1"), 10, 20, 1), PreconditionError);
    CHECK_THROWS_AS(backward_orbit_sample(f, 10, 0, 1), PreconditionError);
}

TEST_CASE("exceptional points") {
    CHECK(exceptional_points(map_of("z^2")).size() == 2);
    CHECK(exceptional_points(map_of("1/z^3")).size() == 2);
    const auto poly = exceptional_points(map_of("z^2+1"));
    REQUIRE(poly.size() == 1);
    CHECK(poly[0].infinite);
    // both critical points of this map are fixed: it is conjugate to z^2
    CHECK(exceptional_points(map_of("(z^2-1)/(2z+3)")).size() == 2);
    CHECK(exceptional_points(map_of("(z^2-2)/(z+5)")).empty());
    CHECK(exceptional_points(map_of("z^3+z")).size() == 1);
}

TEST_CASE("energy distance basics") {
    const auto f = map_of("z^2-1");
    const auto a = backward_orbit_sample(f, 1500, 30, 1), b = backward_orbit_sample(f, 1500, 30, 2);
    CHECK(measure_distance(a, a) == 0.0);
    const double ab = measure_distance(a, b), ba = measure_distance(b, a);
    CHECK(ab > 0.0);
    CHECK(std::abs(ab - ba) < 1e-12 * std::max(1.0, ab));
    CHECK(blocked_distance(a, b, 1) == doctest::Approx(ab).epsilon(1e-12));
    const auto small = backward_orbit_sample(f, 999, 30, 1);
    CHECK_THROWS_AS(measure_distance(a, small), PreconditionError);

    // oracle: point masses at the two poles against the uniform mixture of both
    MeasureCloud poles, north;
    for (int k = 0; k < 1000; ++k) {
        poles.points.push_back({0.0, 0.0, k % 2 ? 1.0 : -1.0});
        north.points.push_back({0.0, 0.0, 1.0});
    }
    // 2 E|X-Y| - E|X-X'| - E|Y-Y'| = 2 * 1 - 1 - 0
    CHECK(measure_distance(poles, north) == doctest::Approx(1.0));
}

TEST_CASE("comparison blocks") {
    CHECK(comparison_blocks(500) == 1);
    CHECK(comparison_blocks(1999) == 1);
    CHECK(comparison_blocks(4000) == 4);
    CHECK(comparison_blocks(20000) == 20);
    CHECK(comparison_blocks(500000) == kMaxBlocks);
    CHECK(classify(1.0, 1.0) == MeasureVerdict::Same);
    CHECK(classify(5.0, 1.0) == MeasureVerdict::Inconclusive);
    CHECK(classify(11.0, 1.0) == MeasureVerdict::Different);
}

TEST_CASE("same-measure verdicts") {
    const auto z2 = map_of("z^2");
    const auto same = same_measure_test(z2, z2, 4000, 30, 5);
    CHECK(same.verdict == MeasureVerdict::Same);
    CHECK(same.blocks == 4);
    CHECK(same_measure_test(z2, map_of("z^2+1"), 4000, 30, 5).verdict == MeasureVerdict::Different);
    // a conjugate of z^2 whose Julia set is the circle |z - 2| = 1
    const auto shifted = same_measure_test(z2, map_of("(z-2)^2+2"), 4000, 30, 5);
    CHECK(shifted.verdict == MeasureVerdict::Different);
    CHECK(shifted.ratio() > 10.0);
}

TEST_CASE("invariance under f and sigma_f") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 2; ++trial) {
        const auto f = random_map(FieldContext::rationals(), 2, rng);
        CAPTURE(to_string(f));
        CHECK(invariance_test(f, f, 8000, 30, 2).verdict == MeasureVerdict::Same);
        CHECK(invariance_test(f, sigma_f_quadratic(f).as_map(), 8000, 30, 2).verdict == MeasureVerdict::Same);
    }
    // z -> z + 1 moves the measure of z^2 - 1 off itself
    CHECK(invariance_test(map_of("z^2-1"), map_of("z+1"), 4000, 30, 2).verdict == MeasureVerdict::Different);
}

TEST_CASE("clouds stabilize with depth") {
    std::mt19937_64 rng(5);
    for (int d = 2; d <= 4; ++d) {
        const auto f = random_map(FieldContext::rationals(), d, rng);
        CAPTURE(to_string(f));
        const auto shallow = backward_orbit_sample(f, 8000, 20, 9, "shallow");
        const auto deep = backward_orbit_sample(f, 8000, 40, 9, "deep");
        const auto deep2 = backward_orbit_sample(f, 8000, 40, 9, "deep2");
        const double baseline = blocked_distance(deep, deep2, 8);
        CHECK(classify(blocked_distance(shallow, deep, 8), baseline) == MeasureVerdict::Same);
    }
}

TEST_CASE("rasters") {
    const Window w{-1.5, 1.5, -1.5, 1.5};
    const auto black = julia_raster(map_of("z^2"), 40, 30, w, 0, 30, 1);
    CHECK(black.gray.size() == 1200);
    CHECK(black.lit_fraction() == 0.0);

    const auto ring = julia_raster(map_of("z^2"), 120, 120, w, 500, 30, 1);
    CHECK(ring.lit_fraction() > 0.0);
    const double pixel = 3.0 / 120;
    for (int row = 0; row < ring.height; ++row) {
        for (int col = 0; col < ring.width; ++col) {
            if (ring.gray[static_cast<std::size_t>(row * ring.width + col)] == 0) continue;
            const double x = w.xmin + (col + 0.5) * pixel, y = w.ymax - (row + 0.5) * pixel;
            CHECK(std::abs(std::hypot(x, y) - 1.0) < pixel);
        }
    }
    CHECK(ring.gray == julia_raster(map_of("z^2"), 120, 120, w, 500, 30, 1).gray);

    const std::string ppm = ring.to_ppm();
    const std::string header = "P6\n120 120\n255\n";
    CHECK(ppm.substr(0, header.size()) == header);
    CHECK(ppm.size() == header.size() + 3 * 120 * 120);
    CHECK_THROWS_AS(julia_raster(map_of("z^2"), 10, 10, Window{1, 1, 0, 1}, 10, 30, 1), PreconditionError);
}
