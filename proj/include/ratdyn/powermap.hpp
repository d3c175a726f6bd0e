#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace ratdyn {

// Prime factorization as (prime, exponent) pairs in increasing prime order.
// Deterministic Miller-Rabin for 64-bit inputs with Pollard-Brent splitting.
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);

bool is_prime(std::uint64_t n);

// Product of the distinct primes dividing d (d >= 2).
std::uint64_t radical(std::uint64_t d);

// Per(z^df) == Per(z^dg) iff df and dg have the same prime divisors.
bool same_periodic_points_powermaps(std::uint64_t df, std::uint64_t dg);

// e^{2 pi i a / b} with 0 <= a < b and gcd(a, b) = 1.
struct RootOfUnity {
    std::uint64_t a = 0;
    std::uint64_t b = 1;
};

// Reduces a modulo b; throws PreconditionError when b = 0 or gcd(a, b) != 1.
RootOfUnity root_of_unity(std::int64_t a, std::uint64_t b);

// Carmichael function lambda(n), n >= 1.
std::uint64_t carmichael_lambda(std::uint64_t n);

// Order of d in (Z/bZ)^*; requires gcd(d, b) = 1.
std::uint64_t multiplicative_order(std::uint64_t d, std::uint64_t b);

// z is periodic for z^d iff gcd(b, d) = 1 (otherwise it is strictly preperiodic).
bool is_periodic(const RootOfUnity& z, std::uint64_t d);

// Exact period of z under z^d, or nullopt when z is not periodic.
std::optional<std::uint64_t> period(const RootOfUnity& z, std::uint64_t d);

}  // namespace ratdyn
