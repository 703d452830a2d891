#include "fmr/fibre.hpp"

#include "fmr/codim.hpp"

namespace fmr {

BidegreeElement::BidegreeElement(int M, int m) : M_(M), m_(m) {
    if (M < 0 || m < 0) throw FieldError("bidegree ring needs non-negative dimensions");
}

BidegreeElement BidegreeElement::one(int M, int m) {
    BidegreeElement e(M, m);
    e.put(0, 0, 1);
    return e;
}

BidegreeElement BidegreeElement::h1(int M, int m) {
    BidegreeElement e(M, m);
    e.put(1, 0, 1);
    return e;
}

BidegreeElement BidegreeElement::h2(int M, int m) {
    BidegreeElement e(M, m);
    e.put(0, 1, 1);
    return e;
}

BidegreeElement BidegreeElement::divisor(int M, int m, const BigInt& a, const BigInt& b) {
    return h1(M, m) * a + h2(M, m) * b;
}

BigInt BidegreeElement::coeff(int i, int j) const {
    auto it = c_.find({i, j});
    return it == c_.end() ? BigInt(0) : it->second;
}

void BidegreeElement::put(int i, int j, const BigInt& v) {
    if (i > M_ || j > m_ || v == 0) return;
    auto& slot = c_[{i, j}];
    slot += v;
    if (slot == 0) c_.erase({i, j});
}

void BidegreeElement::require_same(const BidegreeElement& o) const {
    if (M_ != o.M_ || m_ != o.m_)
        throw FieldError("bidegree ring mismatch: (" + std::to_string(M_) + "," + std::to_string(m_) + ") vs (" +
                         std::to_string(o.M_) + "," + std::to_string(o.m_) + ")");
}

BidegreeElement BidegreeElement::operator+(const BidegreeElement& o) const {
    require_same(o);
    BidegreeElement r = *this;
    for (const auto& [k, v] : o.c_) r.put(k.first, k.second, v);
    return r;
}

BidegreeElement BidegreeElement::operator-(const BidegreeElement& o) const { return *this + o * BigInt(-1); }

BidegreeElement BidegreeElement::operator*(const BidegreeElement& o) const {
    require_same(o);
    BidegreeElement r(M_, m_);
    for (const auto& [a, x] : c_)
        for (const auto& [b, y] : o.c_) r.put(a.first + b.first, a.second + b.second, x * y);
    return r;
}

BidegreeElement BidegreeElement::operator*(const BigInt& s) const {
    BidegreeElement r(M_, m_);
    for (const auto& [k, v] : c_) r.put(k.first, k.second, v * s);
    return r;
}

BidegreeElement BidegreeElement::pow(int e) const {
    if (e < 0) throw FieldError("negative power in the bidegree ring");
    BidegreeElement r = one(M_, m_);
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
}

std::string BidegreeElement::str() const {
    if (c_.empty()) return "0";
    std::string s;
    // Highest power of h1 first.
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        const auto& [k, v] = *it;
        const bool neg = v < 0;
        const BigInt a = neg ? BigInt(-v) : v;
        if (s.empty())
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        std::string mono;
        auto part = [&](const char* h, int e) {
            if (e == 0) return;
            if (!mono.empty()) mono += "*";
            mono += h;
            if (e > 1) mono += "^" + std::to_string(e);
        };
        part("h1", k.first);
        part("h2", k.second);
        if (mono.empty())
            s += a.str();
        else
            s += (a == 1 ? "" : a.str() + "*") + mono;
    }
    return s;
}

BidegreeElement ring_multiply(const BidegreeElement& a, const BidegreeElement& b) { return a * b; }

void FibreSpaceSpec::validate() const {
    if (M < 3) throw FieldError("fibre space needs M >= 3");
    if (m < 1) throw FieldError("fibre space needs m >= 1");
    if (l < 0) throw FieldError("fibre space needs l >= 0");
}

ConditionIII condition_iii_value(const FibreSpaceSpec& spec) {
    spec.validate();
    const int M = spec.M, m = spec.m;
    ConditionIII r;
    r.spec = spec;
    r.K_X = BidegreeElement::divisor(M, m, -(M + 1), -(m + 1));
    r.divisor = BidegreeElement::divisor(M, m, M, spec.l);
    r.K = r.K_X + r.divisor;
    r.L = BidegreeElement::h1(M, m);
    r.curve = BidegreeElement::h2(M, m).pow(m - 1);
    if (spec.family == Family::Hypersurface) {
        r.delta = M - 1;
        r.cycle = r.L.pow(r.delta) * r.K * r.curve * r.divisor;
    } else {
        r.delta = M;
        r.cover_degree = 2;
        r.cycle = r.L.pow(r.delta) * r.K * r.curve;
    }
    r.value = r.cycle.degree() * r.cover_degree;
    r.holds = r.value >= 0;
    return r;
}

RigidityThreshold rigidity_threshold(Family family, int M, int m) {
    FibreSpaceSpec probe{family, M, m, 0};
    probe.validate();
    RigidityThreshold t;
    t.family = family;
    t.M = M;
    t.m = m;
    if (family == Family::Double) {
        t.closed_form = m + 1;
    } else {
        const long long num = static_cast<long long>(M) * (m + 1), den = M - 1;
        t.closed_form = (num + den - 1) / den;
    }
    t.scanned = -1;
    bool monotone = true;
    for (long long l = 0; l <= t.closed_form + 2; ++l) {
        const bool ok = condition_iii_value({family, M, m, l}).holds;
        if (ok && t.scanned < 0) t.scanned = l;
        if (!ok && t.scanned >= 0) monotone = false;
    }
    t.agree = monotone && t.scanned == t.closed_form;
    if (family == Family::Hypersurface) {
        t.m_plus_two_holds = condition_iii_value({family, M, m, m + 2}).holds;
        if (M >= m && !t.m_plus_two_holds)
            t.note = "l = m+2 fails the test although M >= m; it passes exactly when M >= m+2";
    }
    return t;
}

bool dimension_gate(Family family, long long M, long long m) {
    if (M < family_floor(family)) return false;
    return BigInt(m) < family_codim_bound(M, family);
}

}  // namespace fmr
