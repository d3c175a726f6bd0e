#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ratdyn/rational_map.hpp"

namespace ratdyn {

struct Claim {
    std::string name;
    bool pass = false;
    std::string witness;  // the exact object behind the verdict
    std::string note;
};

struct CertificateReport {
    std::vector<Claim> claims;
    bool all_pass() const;
};

// Short hex digest of the normalized form of a map.
std::string digest(const RationalMap& f);

// Exact equality claim f == g with a digest (equal) or the first differing
// coefficient of num_f den_g - num_g den_f (different) as witness.
Claim equality_claim(std::string name, const RationalMap& f, const RationalMap& g);

// A Moebius sigma with R = sigma o S, or nullopt. NONE is decided from fibers
// of S at random rational points; a Moebius is only returned after the exact
// identity has been verified.
std::optional<Moebius> mobius_factor_exists(const RationalMap& R, const RationalMap& S, std::uint64_t seed = 0);

// T o R = T o S, no Moebius sigma with R = sigma o S, and f o f = f o g for
// f = R o T, g = S o T.
CertificateReport check_counterexample_triple(const RationalMap& R, const RationalMap& S, const RationalMap& T,
                                              std::uint64_t seed = 0);

// F o F = F o G and G o F = G o G, separately.
CertificateReport check_main1_relations(const RationalMap& F, const RationalMap& G);

// Least (n, m) by n + m with f^n = g^m exactly and deg(f)^n = deg(g)^m <= budget.
std::optional<std::pair<int, int>> shared_iterate_search(const RationalMap& f, const RationalMap& g, long budget);

// The Moebius involution with f o sigma = f for a degree-2 map
// f = (a z^2 + b z + c) / (d z^2 + e z + r):
//   sigma(z) = (-(ar - cd) z - (br - ce)) / ((ae - bd) z + (ar - cd)).
// Both f o sigma = f and sigma o sigma = id are verified exactly.
Moebius sigma_f_quadratic(const RationalMap& f);

enum class DerivativeVerdict { Nonzero, Zero, Degenerate };

std::string to_string(DerivativeVerdict v);

// For f_t = (num + t dnum) / (den + t dden): whether d/dt f_t^n at t = 0 is a
// nonzero function, judged at `samples` random points (threshold 1e-8).
// Degenerate when dnum den - num dden vanishes identically.
DerivativeVerdict iteration_derivative_nonvanishing(const RationalMap& f, const Poly& dnum, const Poly& dden, int n,
                                                    int samples = 16, std::uint64_t seed = 0);

}  // namespace ratdyn
