#pragma once

#include "fmr/family.hpp"
#include "fmr/scalar.hpp"

#include <string>
#include <vector>

namespace fmr {

// C(n, k), zero outside 0 <= k <= n.
BigInt binomial(long long n, long long k);

// Conditions lost by a quadric/cubic truncation of type mu (0..3).
BigInt v_value(long long M, int mu);
// C(j+M-1, M-1) - C(j+M-3, M-1) - v(mu) + v(max(0, mu-2)).
BigInt f_value(long long M, long long j, int mu);

// Codimensions of the R1.x violation loci at a nonsingular point.
struct SmoothPointCodims {
    long long M = 0;
    BigInt c1, c2, cubic_count;
    BigInt c3_lower_bound;  // only a lower bound is known
    BigInt c3_max_mixed;    // the two inner maxima of the c3 estimate
    BigInt c3_max_cubic;
    BigInt minimum;  // min{c1, c2, c3_lower_bound}
};
SmoothPointCodims smooth_point_codims(long long M);

// Conditions imposed by an R2.1 violation with c = 0, by first failing degree.
struct R21ViolationBounds {
    long long M = 0;
    BigInt baseline;                 // M(M-1)/2 + 2
    std::vector<BigInt> binomial;    // C(M+1, k), k = 2..M-1
    BigInt binomial_floor;           // (M+1)M/2
    std::vector<BigInt> split;       // k(M-k)(M-k+1)/2 + M - 2k - 1, k = 2..M-2
    std::vector<BigInt> span;        // M^2 - kM + k^2 - M + k + 1, k = 2..M-2
    BigInt curve;                    // M(M-1) + 1
    BigInt span_at(long long k) const;
    BigInt binomial_at(long long k) const;
    // Every alternative at least the baseline; binomial floor strictly above it.
    bool dominated() const;
};
R21ViolationBounds r21_violation_bounds(long long M);

// Pointwise R2.1 counts on subspaces of codimension c, Grassmannian subtracted.
struct SubspaceCounts {
    long long M = 0;
    BigInt fixed[3];  // (M-c)(M-c-1)/2 + 2
    BigInt value[3];  // fixed[c] - c(M-c)
    int argmin = 0;
    BigInt minimum;
};
SubspaceCounts subspace_counts(long long M);

struct BoundEntry {
    std::string id;
    Rational value;
    std::string note;
};

struct BoundTable {
    long long M = 0;
    Family family = Family::Hypersurface;
    std::vector<BoundEntry> entries;
    const BoundEntry* find(const std::string& id) const;
    Rational at(const std::string& id) const;
    void add(std::string id, const BigInt& v, std::string note = {});
};

// Lowest M at which the family-level bound is defined.
long long family_floor(Family f);
// Codimension of the non-regular locus in the whole family, after the incidence correction.
BigInt family_codim_bound(long long M, Family f);
// All constituents: pointwise counts, incidence corrections, v/f samples and the comparisons.
BoundTable bound_table(long long M, Family f);

}  // namespace fmr
