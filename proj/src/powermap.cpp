#include "ratdyn/powermap.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "ratdyn/errors.hpp"

namespace ratdyn {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod(u64 base, u64 e, u64 m) {
    u64 r = 1 % m;
    base %= m;
    for (; e; e >>= 1) {
        if (e & 1) r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
    }
    return r;
}

// a nontrivial factor of an odd composite n
u64 pollard_brent(u64 n) {
    for (u64 c = 1;; ++c) {
        auto next = [&](u64 x) { return (mul_mod(x, x, n) + c) % n; };
        u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
        constexpr u64 kBatch = 128;
        for (u64 r = 1; g == 1; r <<= 1) {
            x = y;
            for (u64 i = 0; i < r; ++i) y = next(y);
            for (u64 k = 0; k < r && g == 1; k += kBatch) {
                ys = y;
                for (u64 i = 0; i < std::min(kBatch, r - k); ++i) {
                    y = next(y);
                    q = mul_mod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
            }
        }
        if (g == n) {
            // the batch overshot: retrace one step at a time
            do {
                ys = next(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void collect(u64 n, std::map<u64, int>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    const u64 f = pollard_brent(n);
    collect(f, out);
    collect(n / f, out);
}

}  // namespace

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // these bases are deterministic for n < 3.3e24
    for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        u64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::pair<u64, int>> factorize(u64 n) {
    if (n == 0) throw PreconditionError("factorize: n must be positive");
    std::map<u64, int> found;
    for (u64 p = 2; p < 1000 && p * p <= n; ++p) {
        while (n % p == 0) {
            ++found[p];
            n /= p;
        }
    }
    collect(n, found);
    return {found.begin(), found.end()};
}

u64 radical(u64 d) {
    if (d < 2) throw PreconditionError("radical: d must be >= 2");
    u64 r = 1;
    for (const auto& [p, e] : factorize(d)) r *= p;
    return r;
}

bool same_periodic_points_powermaps(u64 df, u64 dg) {
    if (df < 2 || dg < 2) throw PreconditionError("same_periodic_points_powermaps: degrees must be >= 2");
    return radical(df) == radical(dg);
}

RootOfUnity root_of_unity(std::int64_t a, u64 b) {
    if (b == 0) throw PreconditionError("root_of_unity: b must be positive");
    const auto bs = static_cast<std::int64_t>(b);
    const auto reduced = static_cast<u64>(((a % bs) + bs) % bs);
    if (std::gcd(reduced, b) != 1) throw PreconditionError("root_of_unity: gcd(a, b) must be 1");
    return {reduced, b};
}

u64 carmichael_lambda(u64 n) {
    if (n == 0) throw PreconditionError("carmichael_lambda: n must be positive");
    u64 l = 1;
    for (const auto& [p, e] : factorize(n)) {
        u64 pk = 1;
        for (int k = 1; k < e; ++k) pk *= p;
        u64 part = pk * (p - 1);
        if (p == 2 && e >= 3) part /= 2;
        l = std::lcm(l, part);
    }
    return l;
}

u64 multiplicative_order(u64 d, u64 b) {
    if (b == 0 || std::gcd(d, b) != 1) throw PreconditionError("multiplicative_order: need gcd(d, b) = 1");
    if (b == 1) return 1;
    u64 order = carmichael_lambda(b);
    for (const auto& [p, e] : factorize(order)) {
        for (int k = 0; k < e && pow_mod(d, order / p, b) == 1; ++k) order /= p;
    }
    return order;
}

bool is_periodic(const RootOfUnity& z, u64 d) {
    if (d < 2) throw PreconditionError("is_periodic: d must be >= 2");
    return std::gcd(z.b, d) == 1;
}

std::optional<u64> period(const RootOfUnity& z, u64 d) {
    if (!is_periodic(z, d)) return std::nullopt;
    return multiplicative_order(d % z.b, z.b);
}

}  // namespace ratdyn
