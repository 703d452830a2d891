#pragma once

#include "fmr/scalar.hpp"

#include <string>
#include <vector>

namespace fmr {

// aH - bE on the blow-up of a point; b is stored with the sign it has after the minus.
struct DivisorClass {
    Rational h, e;
    DivisorClass operator+(const DivisorClass& o) const { return {h + o.h, e + o.e}; }
    DivisorClass operator-(const DivisorClass& o) const { return {h - o.h, e - o.e}; }
    DivisorClass operator*(const Rational& s) const { return {h * s, e * s}; }
    bool operator==(const DivisorClass& o) const { return h == o.h && e == o.e; }
    std::string str() const;
};

// Class of the strict transform of the k-th hypertangent system.
DivisorClass hypertangent_class(long long M, long long k);

enum class ChainVariant { I, II, III };
const char* variant_name(ChainVariant v);
ChainVariant parse_variant(const std::string& s);

struct ChainStep {
    long long degree;     // k of the divisor D_k cut at this step
    Rational factor;      // (k+1)/k
    Rational cumulative;  // product of factors so far
};

struct RatioChain {
    long long M = 0;
    ChainVariant variant = ChainVariant::I;
    int start_codim = 0;  // codimension of the starting cycle in the variety it lives on
    std::vector<ChainStep> steps;
    Rational product;
    Rational bound;        // mult/deg <= bound, from 1 >= bound * product
    Rational closed_form;  // telescoped value of the bound
    Rational target;       // what the chain must reach: 4/M, 3/M, 4/M
    long long floor = 0;   // least M with bound <= target
    bool meets_target() const { return bound <= target; }
    // Steps re-multiply to the recorded product and the bound solves the final inequality.
    bool audit() const;
};

long long chain_floor(ChainVariant v);
Rational chain_target(long long M, ChainVariant v);
// Telescoped bound 4/M, 8/(3(M-1)), 8/(3(M-2)).
Rational chain_closed_form(long long M, ChainVariant v);
// Builds the step list for every M where it has non-negative length; does not enforce the floor.
RatioChain ratio_chain(long long M, ChainVariant v);
// The validated bound: throws below the variant's floor.
Rational chain_bound(long long M, ChainVariant v);

struct InequalityRecord {
    std::string statement;
    Rational value;
};

struct MultBound {
    long long M = 0, n = 0;
    std::vector<InequalityRecord> steps;
    Rational ratio_bound;  // mult/deg of D
    Rational bound;        // mult_o D
    Rational nu_bound;     // half of it: the E-coefficient of the strict transform
};
// mult_o D <= 8n/3 for D in |nH| through a singular point.
MultBound mult_bound(long long M, long long n);

struct D2Ratio {
    long long M = 0;
    long long mult = 6;  // multiplicity of D_2 restricted to a generic codim-2 section
    long long degree = 0;
    long long hyperplane_mult = 2;
    Rational ratio;
    // Two hyperplane sections can reach only 2 * hyperplane_mult < mult.
    bool split_refuted() const { return 2 * hyperplane_mult < mult; }
};
D2Ratio d2_ratio(long long M);

}  // namespace fmr
