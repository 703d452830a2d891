#include "fmr/hypertangent.hpp"

namespace fmr {

namespace {

Rational q(long long a, long long b = 1) { return Rational(a) / Rational(b); }

void require(bool ok, const std::string& msg) {
    if (!ok) throw FieldError(msg);
}

// Last k used by the variant's tail of D_4, D_5, ...
long long last_degree(long long M, ChainVariant v) {
    switch (v) {
        case ChainVariant::I: return M - 1;
        case ChainVariant::II: return M - 2;
        case ChainVariant::III: return M - 3;
    }
    return 0;
}

}  // namespace

std::string DivisorClass::str() const {
    std::string s = h.str() + "H";
    if (e < 0) return s + " + " + Rational(-e).str() + "E";
    return s + " - " + e.str() + "E";
}

DivisorClass hypertangent_class(long long M, long long k) {
    require(k >= 2 && k <= M - 1, "hypertangent class needs 2 <= k <= M-1, got k = " + std::to_string(k));
    return {q(k), q(k + 1)};
}

const char* variant_name(ChainVariant v) {
    switch (v) {
        case ChainVariant::I: return "i";
        case ChainVariant::II: return "ii";
        case ChainVariant::III: return "iii";
    }
    return "?";
}

ChainVariant parse_variant(const std::string& s) {
    if (s == "i") return ChainVariant::I;
    if (s == "ii") return ChainVariant::II;
    if (s == "iii") return ChainVariant::III;
    throw FieldError("unknown chain variant '" + s + "' (expected i, ii or iii)");
}

long long chain_floor(ChainVariant v) {
    switch (v) {
        case ChainVariant::I: return 5;
        case ChainVariant::II: return 9;
        case ChainVariant::III: return 6;
    }
    return 0;
}

Rational chain_target(long long M, ChainVariant v) { return q(v == ChainVariant::II ? 3 : 4, M); }

Rational chain_closed_form(long long M, ChainVariant v) {
    switch (v) {
        case ChainVariant::I: return q(4, M);
        case ChainVariant::II: return q(8, 3 * (M - 1));
        case ChainVariant::III: return q(8, 3 * (M - 2));
    }
    return 0;
}

bool RatioChain::audit() const {
    Rational p = 1;
    for (const auto& s : steps) {
        if (s.factor != q(s.degree + 1, s.degree)) return false;
        p *= s.factor;
        if (p != s.cumulative) return false;
    }
    return p == product && bound * product == 1;
}

RatioChain ratio_chain(long long M, ChainVariant v) {
    const long long last = last_degree(M, v);
    require(last >= 3, std::string("chain (") + variant_name(v) + ") has negative length at M = " + std::to_string(M));
    RatioChain c;
    c.M = M;
    c.variant = v;
    c.start_codim = v == ChainVariant::I ? 2 : 1;
    c.product = 1;
    auto push = [&](long long k) {
        const Rational f = q(k + 1, k);
        c.product *= f;
        c.steps.push_back({k, f, c.product});
    };
    if (v != ChainVariant::I) push(2);
    for (long long k = 4; k <= last; ++k) push(k);
    c.bound = 1 / c.product;
    c.closed_form = chain_closed_form(M, v);
    c.target = chain_target(M, v);
    c.floor = chain_floor(v);
    return c;
}

Rational chain_bound(long long M, ChainVariant v) {
    require(M >= chain_floor(v), std::string("chain (") + variant_name(v) + ") needs M >= " +
                                     std::to_string(chain_floor(v)) + ", got M = " + std::to_string(M));
    return ratio_chain(M, v).bound;
}

MultBound mult_bound(long long M, long long n) {
    require(M >= 5, "multiplicity bound needs M >= 5");
    require(n >= 1, "multiplicity bound needs n >= 1");
    MultBound r;
    r.M = M;
    r.n = n;
    const Rational cap = chain_bound(M, ChainVariant::I);
    r.steps.push_back({"mult/deg (D.D_2) >= 3/2 * mult/deg D", q(3, 2)});
    r.steps.push_back({"mult/deg (D.D_2) <= chain (i) bound", cap});
    r.ratio_bound = cap * q(2, 3);
    r.steps.push_back({"mult/deg D <= 2/3 * chain (i) bound", r.ratio_bound});
    r.steps.push_back({"deg D = nM", q(n * M)});
    r.bound = r.ratio_bound * n * M;
    r.steps.push_back({"mult_o D <= (mult/deg D) * nM", r.bound});
    r.nu_bound = r.bound / 2;
    return r;
}

D2Ratio d2_ratio(long long M) {
    require(M >= 3, "D_2 ratio needs M >= 3");
    D2Ratio r;
    r.M = M;
    r.degree = 2 * M;
    r.ratio = q(r.mult, r.degree);
    return r;
}

}  // namespace fmr
