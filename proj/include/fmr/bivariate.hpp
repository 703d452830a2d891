#pragma once

#include "fmr/poly.hpp"
#include "fmr/upoly.hpp"

#include <optional>
#include <vector>

namespace fmr {

// Bivariate polynomials are MultiPoly<Gf> in two variables (x, y). The factoring
// routines expect g monic in y with deg_y g equal to the total degree, so every
// factor monic in y has total degree equal to its y-degree.

using BiPoly = MultiPoly<Gf>;

inline int degree_y(const BiPoly& g) {
    int d = -1;
    for (const auto& [m, c] : g.terms()) d = std::max(d, static_cast<int>(m[1]));
    return d;
}

inline UPoly specialize_x(const BiPoly& g, const Gf& x0) {
    const GfContext* c = g.ctx();
    std::vector<Gf> a(std::max(degree_y(g) + 1, 0), Gf(c, 0));
    for (const auto& [m, v] : g.terms()) {
        Gf t = v;
        for (unsigned i = 0; i < m[0]; ++i) t *= x0;
        a[m[1]] += t;
    }
    return UPoly(c, std::move(a));
}

inline BiPoly from_y(const UPoly& u) {
    BiPoly r(u.ctx(), 2);
    for (int j = 0; j <= u.degree(); ++j) r.add_term(Monomial({0u, static_cast<unsigned>(j)}), u[j]);
    return r;
}

// Rescales g so its y^deg coefficient is 1; requires that coefficient be a constant.
inline std::optional<BiPoly> make_monic_y(const BiPoly& g) {
    const int d = g.degree();
    if (d <= 0) return std::nullopt;
    const Gf lc = g.coeff(Monomial({0u, static_cast<unsigned>(d)}));
    if (lc.is_zero()) return std::nullopt;
    return lc.inverse() * g;
}

inline BiPoly shift_x(const BiPoly& g, const Gf& x0) {
    const GfContext* c = g.ctx();
    BiPoly x = BiPoly::var(c, 2, 0) + BiPoly::constant(c, 2, x0);
    return g.compose({x, BiPoly::var(c, 2, 1)});
}

namespace detail {

// Truncated series in x with coefficients in F[y]: s[i] is the coefficient of x^i.
using Series = std::vector<UPoly>;

inline Series to_series(const BiPoly& g, int prec) {
    Series s(prec, UPoly(g.ctx()));
    std::vector<std::vector<Gf>> rows(prec, std::vector<Gf>(std::max(degree_y(g) + 1, 0), Gf(g.ctx(), 0)));
    for (const auto& [m, v] : g.terms())
        if (static_cast<int>(m[0]) < prec) rows[m[0]][m[1]] += v;
    for (int i = 0; i < prec; ++i) s[i] = UPoly(g.ctx(), rows[i]);
    return s;
}

inline Series series_mul(const Series& a, const Series& b) {
    const int prec = static_cast<int>(a.size());
    Series r(prec, UPoly(a[0].ctx()));
    for (int i = 0; i < prec; ++i)
        for (int j = 0; i + j < prec; ++j)
            if (!a[i].is_zero() && !b[j].is_zero()) r[i + j] = r[i + j] + a[i] * b[j];
    return r;
}

// Lifts G = a0 * b0 (mod x) to G = A * B (mod x^prec), A and B monic in y.
inline std::pair<Series, Series> lift_pair(const Series& g, const UPoly& a0, const UPoly& b0) {
    const int prec = static_cast<int>(g.size());
    const GfContext* c = a0.ctx();
    UPoly s(c), t(c);
    ext_gcd(a0, b0, &s, &t);  // s*a0 + t*b0 = 1
    Series a(prec, UPoly(c)), b(prec, UPoly(c));
    a[0] = a0;
    b[0] = b0;
    for (int k = 1; k < prec; ++k) {
        UPoly e = g[k];
        for (int i = 0; i <= k; ++i)
            if (!a[i].is_zero() && !b[k - i].is_zero()) e = e - a[i] * b[k - i];
        const UPoly da = (t * e) % a0;
        a[k] = da;
        b[k] = (e - b0 * da) / a0;
    }
    return {a, b};
}

inline void lift_all(const Series& g, const std::vector<UPoly>& f, size_t lo, size_t hi, std::vector<Series>& out) {
    if (hi - lo == 1) {
        out.push_back(g);
        return;
    }
    const size_t mid = (lo + hi) / 2;
    const GfContext* c = f[lo].ctx();
    UPoly a0 = UPoly::constant(c, Gf(c, 1)), b0 = a0;
    for (size_t i = lo; i < mid; ++i) a0 = a0 * f[i];
    for (size_t i = mid; i < hi; ++i) b0 = b0 * f[i];
    auto [a, b] = lift_pair(g, a0, b0);
    lift_all(a, f, lo, mid, out);
    lift_all(b, f, mid, hi, out);
}

// Truncated product as an exact polynomial if it fits the total-degree shape
// of a true factor (coefficient of x^i y^j vanishes for i + j > deg_y).
inline std::optional<BiPoly> candidate_factor(const Series& s) {
    const GfContext* c = s[0].ctx();
    const int e = s[0].degree();
    BiPoly h(c, 2);
    for (int i = 0; i < static_cast<int>(s.size()); ++i)
        for (int j = 0; j <= s[i].degree(); ++j) {
            const Gf v = s[i][j];
            if (v.is_zero()) continue;
            if (i + j > e) return std::nullopt;
            h.add_term(Monomial({static_cast<unsigned>(i), static_cast<unsigned>(j)}), v);
        }
    return h;
}

}  // namespace detail

// Some x0 with g(x0, y) squarefree of full y-degree, tried in a seeded order.
inline std::optional<Gf> squarefree_point(const BiPoly& g, Rng& rng, int tries) {
    const GfContext* c = g.ctx();
    const int d = degree_y(g);
    const bool small = c->order() <= static_cast<std::uint64_t>(tries);
    for (int k = 0; k < tries; ++k) {
        if (small && static_cast<std::uint64_t>(k) >= c->order()) break;
        const Gf x0 = small ? Gf(c, static_cast<std::uint64_t>(k)) : FieldTraits<Gf>::random(c, rng);
        const UPoly u = specialize_x(g, x0);
        if (u.degree() == d && is_squarefree(u)) return x0;
    }
    return std::nullopt;
}

struct BivariateFactorization {
    std::vector<BiPoly> factors;  // monic in y, irreducible over the coefficient field
    Gf point;                     // squarefree specialization used
    int lifted = 0;               // factors of the specialization
};

// Irreducible factorization over the coefficient field by Hensel lifting from
// a squarefree specialization and exhaustive recombination. nullopt when no
// squarefree specialization is found or the subset budget runs out.
inline std::optional<BivariateFactorization> factor_bivariate(const BiPoly& g, Rng& rng, int tries = 64,
                                                               std::uint64_t subset_budget = 1u << 18) {
    const GfContext* c = g.ctx();
    const int d = degree_y(g);
    if (d != g.degree() || !(g.coeff(Monomial({0u, static_cast<unsigned>(d)})) == Gf(c, 1)))
        throw FieldError("bivariate factoring needs a polynomial monic in y of full degree");
    BivariateFactorization out;
    const auto x0 = squarefree_point(g, rng, tries);
    if (!x0) return std::nullopt;
    out.point = *x0;
    const BiPoly shifted = shift_x(g, *x0);
    const std::vector<UPoly> lead = factor_squarefree(specialize_x(shifted, Gf(c, 0)), rng);
    out.lifted = static_cast<int>(lead.size());
    const Gf back = -*x0;
    if (lead.size() <= 1) {
        out.factors.push_back(g);
        return out;
    }
    const int prec = d + 1;
    std::vector<detail::Series> lifted;
    detail::lift_all(detail::to_series(shifted, prec), lead, 0, lead.size(), lifted);

    std::vector<size_t> idx(lifted.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    BiPoly rest = shifted;
    std::uint64_t spent = 0;
    size_t s = 1;
    while (2 * s <= idx.size()) {
        bool found = false;
        std::vector<size_t> pick(s);
        for (size_t i = 0; i < s; ++i) pick[i] = i;
        for (;;) {
            if (++spent > subset_budget) return std::nullopt;
            detail::Series prod = lifted[idx[pick[0]]];
            for (size_t i = 1; i < s; ++i) prod = detail::series_mul(prod, lifted[idx[pick[i]]]);
            if (auto h = detail::candidate_factor(prod)) {
                if (auto q = divide_exact(rest, *h)) {
                    out.factors.push_back(shift_x(*h, back));
                    rest = *q;
                    std::vector<size_t> keep;
                    for (size_t i = 0; i < idx.size(); ++i)
                        if (std::find(pick.begin(), pick.end(), i) == pick.end()) keep.push_back(idx[i]);
                    idx = std::move(keep);
                    found = true;
                    break;
                }
            }
            // next combination
            int i = static_cast<int>(s) - 1;
            while (i >= 0 && pick[i] == idx.size() - s + i) --i;
            if (i < 0) break;
            ++pick[i];
            for (size_t j = i + 1; j < s; ++j) pick[j] = pick[j - 1] + 1;
        }
        if (!found) ++s;
    }
    out.factors.push_back(shift_x(rest, back));
    return out;
}

// gcd over F(x)[y] of a and b, assuming a is monic in y of full degree, by
// interpolating gcds of specializations. The result is verified to divide both.
inline std::optional<BiPoly> gcd_bivariate(const BiPoly& a, const BiPoly& b, Rng& rng, int tries = 256) {
    const GfContext* c = a.ctx();
    const int da = degree_y(a);
    if (b.is_zero()) return a;
    int best = da + 1;
    std::vector<Gf> xs;
    std::vector<UPoly> gs;
    for (int k = 0; k < tries; ++k) {
        const Gf x0 = FieldTraits<Gf>::random(c, rng);
        if (std::find(xs.begin(), xs.end(), x0) != xs.end()) continue;
        UPoly ua = specialize_x(a, x0);
        if (ua.degree() != da) continue;
        UPoly g = gcd(ua, specialize_x(b, x0));
        if (g.degree() == 0) return BiPoly::constant(c, 2, Gf(c, 1));
        if (g.degree() < best) {
            best = g.degree();
            xs.clear();
            gs.clear();
        }
        if (g.degree() > best) continue;
        xs.push_back(x0);
        gs.push_back(g);
        if (static_cast<int>(xs.size()) < best + 2) continue;
        BiPoly h(c, 2);
        for (int j = 0; j <= best; ++j) {
            std::vector<Gf> vs;
            for (const auto& u : gs) vs.push_back(u[j]);
            UPoly cj = interpolate(xs, vs);
            for (int i = 0; i <= cj.degree(); ++i)
                h.add_term(Monomial({static_cast<unsigned>(i), static_cast<unsigned>(j)}), cj[i]);
        }
        if (divide_exact(a, h) && divide_exact(b, h)) return h;
    }
    return std::nullopt;
}

// Affine point of g over the coefficient field with nonzero y-derivative.
inline std::optional<std::pair<Gf, Gf>> smooth_point(const BiPoly& g, Rng& rng, int tries) {
    const GfContext* c = g.ctx();
    const BiPoly gy = g.derivative(1);
    for (int k = 0; k < tries; ++k) {
        const Gf x0 = FieldTraits<Gf>::random(c, rng);
        const UPoly u = specialize_x(g, x0);
        if (u.degree() <= 0) continue;
        for (const Gf& y0 : roots(u, rng))
            if (!gy.eval({x0, y0}).is_zero()) return std::make_pair(x0, y0);
    }
    return std::nullopt;
}

}  // namespace fmr
