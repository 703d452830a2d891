#include "fmr/codim.hpp"

#include <algorithm>

namespace fmr {

namespace {

BigInt B(long long x) { return BigInt(x); }

void require(bool ok, const std::string& msg) {
    if (!ok) throw FieldError(msg);
}

// pointwise + 1 - dim P^M
BigInt incidence(const BigInt& pointwise, long long M) { return pointwise + 1 - B(M); }

}  // namespace

BigInt binomial(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) return BigInt(0);
    k = std::min(k, n - k);
    BigInt r = 1;
    for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

BigInt v_value(long long M, int mu) {
    switch (mu) {
        case 0: return 0;
        case 1: return 1;
        case 2: return B(M);
        case 3: return B(M) * (M + 1) / 2 - 1;
    }
    throw FieldError("v: mu must lie in 0..3, got " + std::to_string(mu));
}

BigInt f_value(long long M, long long j, int mu) {
    require(j >= 0, "f: j must be non-negative");
    require(M >= 1, "f: M must be positive");
    return binomial(j + M - 1, M - 1) - binomial(j + M - 3, M - 1) - v_value(M, mu) + v_value(M, std::max(0, mu - 2));
}

SmoothPointCodims smooth_point_codims(long long M) {
    require(M >= 8, "smooth-point codimensions need M >= 8");
    SmoothPointCodims r;
    r.M = M;
    r.c1 = B(M - 1) * (M - 2) / 2 + 2;
    r.c2 = B(M - 6) * (M - 5) / 2;
    r.cubic_count = (B(M) * M * M - 6 * B(M) * M - 7 * B(M) + 54) / 6;
    r.c3_max_mixed = f_value(M, 2, 2) + f_value(M, M - 2, 1);
    for (long long j = 2; j <= M - 1; ++j) r.c3_max_mixed = std::max(r.c3_max_mixed, f_value(M, j, 2) + f_value(M, M - j, 1));
    r.c3_max_cubic = f_value(M, 3, 3) + f_value(M, M - 3, 0);
    for (long long j = 3; j <= M - 1; ++j) r.c3_max_cubic = std::max(r.c3_max_cubic, f_value(M, j, 3) + f_value(M, M - j, 0));
    r.c3_lower_bound = f_value(M, M, 3) - (M - 2) - std::max(r.c3_max_mixed, r.c3_max_cubic);
    r.minimum = std::min({r.c1, r.c2, r.c3_lower_bound});
    return r;
}

BigInt R21ViolationBounds::span_at(long long k) const {
    require(k >= 2 && k <= M - 2, "span bound needs 2 <= k <= M-2");
    return span[k - 2];
}

BigInt R21ViolationBounds::binomial_at(long long k) const {
    require(k >= 2 && k <= M - 1, "binomial bound needs 2 <= k <= M-1");
    return binomial[k - 2];
}

bool R21ViolationBounds::dominated() const {
    if (binomial_floor <= baseline) return false;
    for (const auto& b : binomial)
        if (b < binomial_floor) return false;
    for (const auto& s : span)
        if (s < baseline) return false;
    return curve >= baseline;
}

R21ViolationBounds r21_violation_bounds(long long M) {
    require(M >= 4, "R2.1 violation bounds need M >= 4");
    R21ViolationBounds r;
    r.M = M;
    r.baseline = B(M) * (M - 1) / 2 + 2;
    r.binomial_floor = B(M + 1) * M / 2;
    for (long long k = 2; k <= M - 1; ++k) r.binomial.push_back(binomial(M + 1, k));
    for (long long k = 2; k <= M - 2; ++k) {
        r.split.push_back(B(k) * (M - k) * (M - k + 1) / 2 + M - 2 * k - 1);
        r.span.push_back(B(M) * M - B(k) * M + B(k) * k - M + k + 1);
    }
    r.curve = B(M) * (M - 1) + 1;
    return r;
}

SubspaceCounts subspace_counts(long long M) {
    require(M >= 7, "subspace counts need M >= 7");
    SubspaceCounts r;
    r.M = M;
    for (int c = 0; c < 3; ++c) {
        r.fixed[c] = B(M - c) * (M - c - 1) / 2 + 2;
        r.value[c] = r.fixed[c] - B(c) * (M - c);
    }
    r.argmin = 0;
    for (int c = 1; c < 3; ++c)
        if (r.value[c] < r.value[r.argmin]) r.argmin = c;
    r.minimum = r.value[r.argmin];
    return r;
}

const BoundEntry* BoundTable::find(const std::string& id) const {
    for (const auto& e : entries)
        if (e.id == id) return &e;
    return nullptr;
}

Rational BoundTable::at(const std::string& id) const {
    const auto* e = find(id);
    if (!e) throw FieldError("bound table has no entry '" + id + "'");
    return e->value;
}

void BoundTable::add(std::string id, const BigInt& v, std::string note) {
    entries.push_back({std::move(id), Rational(v), std::move(note)});
}

long long family_floor(Family f) { return f == Family::Double ? 5 : 10; }

BigInt family_codim_bound(long long M, Family f) {
    require(M >= family_floor(f), std::string(family_name(f)) + " family bound needs M >= " +
                                      std::to_string(family_floor(f)) + ", got M = " + std::to_string(M));
    if (f == Family::Double) return B(M - 4) * (M - 1) / 2;
    return B(M - 7) * (M - 6) / 2 - 5;
}

BoundTable bound_table(long long M, Family f) {
    BoundTable t;
    t.M = M;
    t.family = f;
    const BigInt bound = family_codim_bound(M, f);
    for (int mu = 0; mu <= 3; ++mu) t.add("v(" + std::to_string(mu) + ")", v_value(M, mu));
    if (f == Family::Double) {
        const BigInt w1 = B(M - 2) * (M - 1) / 2;
        const BigInt w2 = B(M - 2) * (M - 1) / 2;
        t.add("W1.pointwise", w1, "rank q2|{q1=0} <= 1, q1 fixed");
        t.add("W2.pointwise", w2, "stated count for rank q2 <= 3");
        t.add("W2.rank-locus", B(M - 3) * (M - 2) / 2, "codim of rank <= 3 among quadratic forms in M variables");
        t.add("nonsingular.incidence", incidence(w1, M), "pointwise + 1 - M");
        t.add("singular.incidence", incidence(w2 + M, M), "pointwise + M (q1 = 0) + 1 - M");
        t.add("family.bound", bound, "(M-4)(M-1)/2");
        return t;
    }
    const auto s = smooth_point_codims(M);
    const auto r = r21_violation_bounds(M);
    const auto sub = subspace_counts(M);
    t.add("f(2,0)", f_value(M, 2, 0));
    t.add("f(M,3)", f_value(M, M, 3));
    t.add("c1", s.c1, "R1.1");
    t.add("c2", s.c2, "R1.2, (M-6)(M-5)/2");
    t.add("c3.lower", s.c3_lower_bound, "R1.3, lower bound only");
    t.add("cubic.count", s.cubic_count, "(M^3-6M^2-7M+54)/6");
    t.add("nonsingular.pointwise", s.minimum, "min{c1,c2,c3}");
    t.add("R2.1.baseline", r.baseline, "c = 0, M(M-1)/2 + 2");
    t.add("R2.1.curve", r.curve);
    for (int c = 0; c < 3; ++c) t.add("R2.1.c" + std::to_string(c), sub.value[c], "after the Grassmannian");
    const BigInt r22 = B(M - 7) * (M - 6) / 2;
    const BigInt r23 = B(M) * (B(M) * M + 3 * B(M) - 16) / 6;
    t.add("R2.2", r22, "(M-7)(M-6)/2");
    t.add("R2.3", r23, "M(M^2+3M-16)/6");
    const BigInt singular = std::min({r22, r23, sub.minimum});
    t.add("singular.pointwise", singular, "min over R2.1-R2.3");
    t.add("nonsingular.incidence", incidence(s.minimum, M), "pointwise + 1 - M");
    t.add("singular.incidence", incidence(singular + M, M), "pointwise + M (q1 = 0) + 1 - M");
    t.add("family.bound", bound, "(M-7)(M-6)/2 - 5");
    return t;
}

}  // namespace fmr
