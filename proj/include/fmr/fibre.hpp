#pragma once

#include "fmr/family.hpp"
#include "fmr/scalar.hpp"

#include <map>
#include <string>
#include <utility>

namespace fmr {

// sum c_ij h1^i h2^j in the Chow ring of P^M x P^m: h1^(M+1) = h2^(m+1) = 0.
class BidegreeElement {
public:
    BidegreeElement() : BidegreeElement(0, 0) {}
    BidegreeElement(int M, int m);
    static BidegreeElement one(int M, int m);
    static BidegreeElement h1(int M, int m);
    static BidegreeElement h2(int M, int m);
    // a h1 + b h2
    static BidegreeElement divisor(int M, int m, const BigInt& a, const BigInt& b);

    int M() const { return M_; }
    int m() const { return m_; }
    const std::map<std::pair<int, int>, BigInt>& coeffs() const { return c_; }
    BigInt coeff(int i, int j) const;
    // Coefficient of the point class h1^M h2^m.
    BigInt degree() const { return coeff(M_, m_); }

    BidegreeElement operator+(const BidegreeElement& o) const;
    BidegreeElement operator-(const BidegreeElement& o) const;
    BidegreeElement operator*(const BidegreeElement& o) const;
    BidegreeElement operator*(const BigInt& s) const;
    BidegreeElement pow(int e) const;
    bool operator==(const BidegreeElement& o) const { return M_ == o.M_ && m_ == o.m_ && c_ == o.c_; }
    std::string str() const;

private:
    void require_same(const BidegreeElement& o) const;
    void put(int i, int j, const BigInt& v);
    int M_, m_;
    std::map<std::pair<int, int>, BigInt> c_;
};

BidegreeElement ring_multiply(const BidegreeElement& a, const BidegreeElement& b);

// Fibration over P^m: a hypersurface of bidegree (M, l) in P^M x P^m, or the double cover
// of P^M x P^m branched in bidegree (2M, 2l).
struct FibreSpaceSpec {
    Family family = Family::Hypersurface;
    int M = 0, m = 0;
    long long l = 0;
    void validate() const;
};

struct ConditionIII {
    FibreSpaceSpec spec;
    int delta = 0;         // fibre dimension
    int cover_degree = 1;  // the double cover pushes forward with a factor 2
    BidegreeElement K_X, divisor, K, L, curve, cycle;  // classes on X; divisor is V or half the branch locus
    BigInt value;          // (L^delta . K_V . pi^-1(line)) on V
    bool holds = false;    // value >= 0
};
ConditionIII condition_iii_value(const FibreSpaceSpec& spec);

struct RigidityThreshold {
    Family family = Family::Hypersurface;
    int M = 0, m = 0;
    long long closed_form = 0;  // m+1, or ceil(M(m+1)/(M-1))
    long long scanned = 0;      // least l passing the ring test on 0..closed_form+2
    bool agree = false;
    // Hypersurfaces with M >= m: whether l = m+2 already passes (true iff M >= m+2).
    bool m_plus_two_holds = false;
    std::string note;
};
RigidityThreshold rigidity_threshold(Family family, int M, int m);

// m strictly below the family's codimension bound; false when M is below the family floor.
bool dimension_gate(Family family, long long M, long long m);

}  // namespace fmr
