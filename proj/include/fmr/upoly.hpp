#pragma once

#include "fmr/scalar.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace fmr {

// Dense univariate polynomial over a finite field, low degree first, no
// trailing zeros. The zero polynomial has an empty coefficient list.
class UPoly {
public:
    explicit UPoly(const GfContext* c) : c_(c) {}
    UPoly(const GfContext* c, std::vector<Gf> a) : c_(c), a_(std::move(a)) { trim(); }

    static UPoly constant(const GfContext* c, const Gf& v) { return UPoly(c, {v}); }
    static UPoly x(const GfContext* c) { return UPoly(c, {Gf(c, 0), Gf(c, 1)}); }
    static UPoly random(const GfContext* c, int deg_below, Rng& rng) {
        std::vector<Gf> a;
        for (int i = 0; i < deg_below; ++i) a.push_back(FieldTraits<Gf>::random(c, rng));
        return UPoly(c, std::move(a));
    }

    const GfContext* ctx() const { return c_; }
    int degree() const { return static_cast<int>(a_.size()) - 1; }
    bool is_zero() const { return a_.empty(); }
    const std::vector<Gf>& coeffs() const { return a_; }
    Gf operator[](int i) const { return i < static_cast<int>(a_.size()) ? a_[i] : Gf(c_, 0); }
    Gf lead() const { return a_.back(); }

    Gf eval(const Gf& x) const {
        Gf acc(c_, 0);
        for (auto it = a_.rbegin(); it != a_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    UPoly monic() const {
        if (is_zero()) return *this;
        const Gf inv = lead().inverse();
        UPoly r = *this;
        for (auto& v : r.a_) v *= inv;
        return r;
    }

    UPoly derivative() const {
        std::vector<Gf> d;
        for (size_t i = 1; i < a_.size(); ++i) d.push_back(a_[i] * Gf(c_, c_->from_int(static_cast<long long>(i))));
        return UPoly(c_, std::move(d));
    }

    friend UPoly operator+(const UPoly& a, const UPoly& b) {
        std::vector<Gf> r(std::max(a.a_.size(), b.a_.size()), Gf(a.c_, 0));
        for (size_t i = 0; i < a.a_.size(); ++i) r[i] += a.a_[i];
        for (size_t i = 0; i < b.a_.size(); ++i) r[i] += b.a_[i];
        return UPoly(a.c_, std::move(r));
    }
    friend UPoly operator-(const UPoly& a, const UPoly& b) {
        std::vector<Gf> r(std::max(a.a_.size(), b.a_.size()), Gf(a.c_, 0));
        for (size_t i = 0; i < a.a_.size(); ++i) r[i] += a.a_[i];
        for (size_t i = 0; i < b.a_.size(); ++i) r[i] -= b.a_[i];
        return UPoly(a.c_, std::move(r));
    }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return UPoly(a.c_);
        std::vector<Gf> r(a.a_.size() + b.a_.size() - 1, Gf(a.c_, 0));
        for (size_t i = 0; i < a.a_.size(); ++i) {
            if (a.a_[i].is_zero()) continue;
            for (size_t j = 0; j < b.a_.size(); ++j) r[i + j] += a.a_[i] * b.a_[j];
        }
        return UPoly(a.c_, std::move(r));
    }
    friend UPoly operator*(const Gf& s, const UPoly& a) {
        UPoly r = a;
        for (auto& v : r.a_) v *= s;
        r.trim();
        return r;
    }
    bool operator==(const UPoly& o) const { return a_ == o.a_; }

    // Quotient and remainder; b must be nonzero.
    static void divmod(const UPoly& a, const UPoly& b, UPoly* q, UPoly* r) {
        std::vector<Gf> rem = a.a_;
        const int db = b.degree();
        const Gf inv = b.lead().inverse();
        std::vector<Gf> quo(std::max(a.degree() - db + 1, 0), Gf(a.c_, 0));
        for (int i = a.degree(); i >= db; --i) {
            const Gf c = rem[i] * inv;
            if (c.is_zero()) continue;
            quo[i - db] = c;
            for (int j = 0; j <= db; ++j) rem[i - db + j] -= c * b.a_[j];
        }
        if (q) *q = UPoly(a.c_, std::move(quo));
        if (r) {
            rem.resize(std::min<size_t>(rem.size(), static_cast<size_t>(std::max(db, 0))));
            *r = UPoly(a.c_, std::move(rem));
        }
    }
    friend UPoly operator%(const UPoly& a, const UPoly& b) {
        UPoly r(a.c_);
        divmod(a, b, nullptr, &r);
        return r;
    }
    friend UPoly operator/(const UPoly& a, const UPoly& b) {
        UPoly q(a.c_);
        divmod(a, b, &q, nullptr);
        return q;
    }

    std::string str() const {
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            if (a_[i].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += FieldTraits<Gf>::str(a_[i]);
            if (i) s += i == 1 ? "*t" : "*t^" + std::to_string(i);
        }
        return s.empty() ? "0" : s;
    }

private:
    void trim() {
        while (!a_.empty() && a_.back().is_zero()) a_.pop_back();
    }
    const GfContext* c_;
    std::vector<Gf> a_;
};

inline UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
        UPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// Returns g = gcd(a, b) (monic) with s*a + t*b = g.
inline UPoly ext_gcd(const UPoly& a, const UPoly& b, UPoly* s, UPoly* t) {
    const GfContext* c = a.ctx();
    UPoly r0 = a, r1 = b, s0 = UPoly::constant(c, Gf(c, 1)), s1(c), t0(c), t1 = UPoly::constant(c, Gf(c, 1));
    while (!r1.is_zero()) {
        UPoly q(c), r(c);
        UPoly::divmod(r0, r1, &q, &r);
        r0 = std::move(r1);
        r1 = std::move(r);
        UPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    const Gf inv = r0.lead().inverse();
    if (s) *s = inv * s0;
    if (t) *t = inv * t0;
    return inv * r0;
}

inline UPoly powmod(UPoly base, std::uint64_t e, const UPoly& m) {
    const GfContext* c = m.ctx();
    UPoly r = UPoly::constant(c, Gf(c, 1)) % m;
    base = base % m;
    while (e) {
        if (e & 1) r = (r * base) % m;
        base = (base * base) % m;
        e >>= 1;
    }
    return r;
}

inline bool is_squarefree(const UPoly& f) {
    if (f.degree() <= 0) return true;
    const UPoly d = f.derivative();
    return !d.is_zero() && gcd(f, d).degree() == 0;
}

namespace detail {

// Splits a monic squarefree f whose irreducible factors all have degree k.
inline void equal_degree_split(const UPoly& f, int k, Rng& rng, std::vector<UPoly>& out) {
    if (f.degree() == k) {
        out.push_back(f);
        return;
    }
    const GfContext* c = f.ctx();
    const std::uint64_t q = c->order();
    for (;;) {
        UPoly a = UPoly::random(c, f.degree(), rng);
        if (a.degree() < 1) continue;
        // a^{(q^k - 1)/2} = (a^{1 + q + ... + q^{k-1}})^{(q-1)/2}
        UPoly norm = a, frob = a;
        for (int j = 1; j < k; ++j) {
            frob = powmod(frob, q, f);
            norm = (norm * frob) % f;
        }
        UPoly b = powmod(norm, (q - 1) / 2, f) - UPoly::constant(c, Gf(c, 1));
        UPoly g = gcd(f, b);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree_split(g, k, rng, out);
            equal_degree_split(f / g, k, rng, out);
            return;
        }
    }
}

}  // namespace detail

// Monic irreducible factors of a squarefree polynomial over an odd-order field.
inline std::vector<UPoly> factor_squarefree(const UPoly& f_in, Rng& rng) {
    const GfContext* c = f_in.ctx();
    if (c->characteristic() == 2) throw FieldError("factorization needs odd characteristic");
    std::vector<UPoly> out;
    UPoly f = f_in.monic();
    if (f.degree() <= 0) return out;
    const UPoly x = UPoly::x(c);
    UPoly h = x;
    for (int k = 1; 2 * k <= f.degree(); ++k) {
        h = powmod(h, c->order(), f);
        UPoly g = gcd(f, h - x);
        if (g.degree() > 0) {
            detail::equal_degree_split(g, k, rng, out);
            f = f / g;
            h = h % f;
        }
    }
    if (f.degree() > 0) out.push_back(f);
    std::sort(out.begin(), out.end(), [](const UPoly& a, const UPoly& b) { return a.degree() < b.degree(); });
    return out;
}

// Distinct roots in the coefficient field.
inline std::vector<Gf> roots(const UPoly& f, Rng& rng) {
    const GfContext* c = f.ctx();
    std::vector<Gf> out;
    if (f.degree() <= 0) return out;
    const UPoly x = UPoly::x(c);
    UPoly lin = gcd(f, powmod(x, c->order(), f.monic()) - x);
    if (lin.degree() <= 0) return out;
    std::vector<UPoly> parts;
    detail::equal_degree_split(lin, 1, rng, parts);
    for (const auto& p : parts) out.push_back(-p[0]);
    return out;
}

// Polynomial of degree < xs.size() through the given values.
inline UPoly interpolate(const std::vector<Gf>& xs, const std::vector<Gf>& vs) {
    const GfContext* c = xs.front().context();
    UPoly acc(c);
    for (size_t i = 0; i < xs.size(); ++i) {
        UPoly basis = UPoly::constant(c, Gf(c, 1));
        Gf denom(c, 1);
        for (size_t j = 0; j < xs.size(); ++j) {
            if (j == i) continue;
            basis = basis * UPoly(c, {-xs[j], Gf(c, 1)});
            denom *= xs[i] - xs[j];
        }
        acc = acc + (vs[i] / denom) * basis;
    }
    return acc;
}

}  // namespace fmr
