#include <numeric>

#include "doctest.h"
#include "ratdyn/errors.hpp"
#include "ratdyn/powermap.hpp"

using namespace ratdyn;

namespace {

// first return time of a under a -> d a (mod b) within b steps, or 0
std::uint64_t orbit_return(std::uint64_t a, std::uint64_t b, std::uint64_t d) {
    std::uint64_t x = a;
    for (std::uint64_t n = 1; n <= b; ++n) {
        x = x * d % b;
        if (x == a) return n;
    }
    return 0;
}

std::uint64_t slow_radical(std::uint64_t d) {
    std::uint64_t r = 1;
    for (std::uint64_t p = 2; p <= d; ++p) {
        if (d % p) continue;
        r *= p;
        while (d % p == 0) d /= p;
    }
    return r;
}

}  // namespace

TEST_CASE("factorization") {
    CHECK(factorize(1).empty());
    CHECK(factorize(360) == std::vector<std::pair<std::uint64_t, int>>{{2, 3}, {3, 2}, {5, 1}});
    const std::uint64_t big = 4294967291ULL * 4294967279ULL;  // two primes below 2^32
    CHECK(factorize(big) == std::vector<std::pair<std::uint64_t, int>>{{4294967279ULL, 1}, {4294967291ULL, 1}});
    CHECK(is_prime(18446744073709551557ULL));  // largest 64-bit prime
    CHECK_FALSE(is_prime(3215031751ULL));     // strong pseudoprime to bases 2, 3, 5, 7
    CHECK(factorize(1ULL << 63) == std::vector<std::pair<std::uint64_t, int>>{{2, 63}});
    for (std::uint64_t n = 2; n < 3000; ++n) {
        std::uint64_t product = 1;
        for (const auto& [p, e] : factorize(n)) {
            CHECK(is_prime(p));
            for (int k = 0; k < e; ++k) product *= p;
        }
        CHECK(product == n);
    }
}

TEST_CASE("radicals") {
    CHECK(radical(12) == 6);
    CHECK(radical(6) == 6);
    CHECK(radical(97) == 97);
    CHECK(radical(1ULL << 40) == 2);
    for (std::uint64_t d = 2; d < 500; ++d) CHECK(radical(d) == slow_radical(d));
    CHECK_THROWS_AS(radical(1), PreconditionError);
    CHECK(same_periodic_points_powermaps(6, 12));
    CHECK_FALSE(same_periodic_points_powermaps(3, 5));
    CHECK(same_periodic_points_powermaps(7, 7));
}

TEST_CASE("Carmichael function and orders") {
    CHECK(carmichael_lambda(1) == 1);
    CHECK(carmichael_lambda(8) == 2);
    CHECK(carmichael_lambda(15) == 4);
    CHECK(carmichael_lambda(561) == 80);
    for (std::uint64_t b = 1; b <= 200; ++b) {
        for (std::uint64_t d = 1; d <= 20; ++d) {
            if (std::gcd(d, b) != 1) continue;
            CHECK(multiplicative_order(d, b) == orbit_return(1 % b, b, d % b));
        }
    }
    // 1e9+7 is a safe prime congruent to 7 mod 8, so 2 is a square and has order (p-1)/2
    CHECK(multiplicative_order(2, 1000000007ULL) == 500000003ULL);
    CHECK_THROWS_AS(multiplicative_order(6, 9), PreconditionError);
}

TEST_CASE("periodic roots of unity") {
    const auto third = root_of_unity(1, 3);
    CHECK_FALSE(is_periodic(third, 3));
    CHECK_FALSE(period(third, 3).has_value());
    CHECK(period(third, 5) == 2u);
    for (int k = 1; k <= 10; ++k) {
        const auto z = root_of_unity(1, 1ULL << k);
        CHECK(is_periodic(z, 3));
        CHECK(is_periodic(z, 5));
    }
    CHECK(root_of_unity(-1, 4).a == 3);
    CHECK_THROWS_AS(root_of_unity(2, 4), PreconditionError);
    CHECK_THROWS_AS(root_of_unity(1, 0), PreconditionError);

    // brute force over the exponent map a/b -> d a/b mod 1
    for (std::uint64_t d = 2; d <= 12; ++d) {
        for (std::uint64_t b = 1; b <= 50; ++b) {
            for (std::uint64_t a = 0; a < b; ++a) {
                if (std::gcd(a, b) != 1) continue;
                const auto z = root_of_unity(static_cast<std::int64_t>(a), b);
                const std::uint64_t n = orbit_return(a, b, d);
                CHECK(is_periodic(z, d) == (n != 0));
                if (n) CHECK(period(z, d) == n);
            }
        }
    }
}

TEST_CASE("periodic sets agree with the radical criterion") {
    for (std::uint64_t df = 2; df <= 12; ++df) {
        for (std::uint64_t dg = 2; dg <= 12; ++dg) {
            bool agree = true;
            for (std::uint64_t b = 1; b <= 50; ++b) {
                for (std::uint64_t a = 0; a < b; ++a) {
                    if (std::gcd(a, b) != 1) continue;
                    agree = agree && (orbit_return(a, b, df) != 0) == (orbit_return(a, b, dg) != 0);
                }
            }
            CAPTURE(df);
            CAPTURE(dg);
            CHECK(same_periodic_points_powermaps(df, dg) == agree);
        }
    }
}
