#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ratdyn/identities.hpp"

namespace ratdyn {

// Parameter values as exact expressions ("1", "1+w", "2/3"), plus "field".
using CatalogParams = std::map<std::string, std::string, std::less<>>;

struct ExpectedVerdict {
    std::string claim;
    bool pass = true;
};

struct CatalogEntry {
    std::string name;
    FieldPtr field;
    CatalogParams params;                                 // after defaults
    std::vector<std::pair<std::string, RationalMap>> maps;  // R, S, T, f, g, ... by role
    std::vector<ExpectedVerdict> expected;

    const RationalMap& map(const std::string& role) const;
};

// chebyshev-flower, zieve-family, power-map, quadratic-sigma
const std::vector<std::string>& catalog_names();

// Parameters and defaults per entry:
//   chebyshev-flower  a = 1, field = Q(w)      R = az + 1/(az), S = awz + 1/(awz), T = z^3 - 3z
//   zieve-family      n = 2, m = 1, field = Q  T = z^n (z+1)^m, R = (1-z^n)/(z^{n+m}-1), S = z^m R
//   power-map         d = 2, field = Q         f = z^d
//   quadratic-sigma   map = (z^2-2)/(z+5)      f of degree 2 and its involution sigma_f
// The field must contain w for chebyshev-flower. Throws PreconditionError for
// invalid parameters (a = 0, n or m < 1, n = m = 1, d < 2, unknown names).
CatalogEntry catalog_entry(const std::string& name, const CatalogParams& params = {});

// The certificates of an entry, computed by the identities module; claim
// names match ExpectedVerdict::claim.
CertificateReport run_entry(const CatalogEntry& entry, std::uint64_t seed = 0);

// Claims whose verdict differs from the entry's expectations (empty when all match).
std::vector<std::string> unexpected_verdicts(const CatalogEntry& entry, const CertificateReport& report);

// f_a = R_a o T = a(z^3 - 3z) + 1/(a(z^3 - 3z)).
RationalMap flower_map(const FieldElement& a);

// f_a o f_a = f_{-a} o f_{-a} exactly, together with the control f_a != f_{-a}.
CertificateReport iterate_square_identity_check(const FieldElement& a);

}  // namespace ratdyn
