#pragma once

#include "fmr/bivariate.hpp"
#include "fmr/linalg.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fmr {

// Dense coordinates on forms of one degree.
class FormBasis {
public:
    FormBasis(int n, unsigned d) : n_(n), mons_(monomials_of_degree(n, d)) {
        for (size_t i = 0; i < mons_.size(); ++i) index_.emplace(mons_[i], static_cast<int>(i));
    }
    int size() const { return static_cast<int>(mons_.size()); }
    int index(const Monomial& m) const { return index_.at(m); }
    const Monomial& monomial(int i) const { return mons_[i]; }

    template <class S>
    Vec<S> vec(const MultiPoly<S>& p) const {
        Vec<S> v = Vec<S>::Constant(size(), FieldTraits<S>::zero(p.ctx()));
        for (const auto& [m, c] : p.terms()) v(index(m)) = c;
        return v;
    }
    template <class S>
    MultiPoly<S> poly(typename FieldTraits<S>::Ctx ctx, const Vec<S>& v) const {
        MultiPoly<S> p(ctx, n_);
        for (int i = 0; i < size(); ++i) p.add_term(mons_[i], v(i));
        return p;
    }

private:
    int n_;
    std::vector<Monomial> mons_;
    std::map<Monomial, int, DegRevLex> index_;
};

// q3 = c0 l1^3 + c1 l1^2 l2 + c2 l1 l2^2 + c3 l2^3 + q2 h
template <class S>
struct PencilWitness {
    MultiPoly<S> l1, l2;
    std::vector<S> c;
    MultiPoly<S> h;

    MultiPoly<S> binary_cubic() const {
        MultiPoly<S> r(l1.ctx(), l1.nvars());
        for (int i = 0; i < 4; ++i)
            r += c[i] * (l1.pow(3 - i) * l2.pow(i));
        return r;
    }
    bool verify(const MultiPoly<S>& q2, const MultiPoly<S>& q3) const {
        Mat<S> m(2, l1.nvars());
        const auto a = l1.linear_coeffs(), b = l2.linear_coeffs();
        for (int k = 0; k < l1.nvars(); ++k) {
            m(0, k) = a[k];
            m(1, k) = b[k];
        }
        return matrix_rank<S>(m) == 2 && (h.is_zero() || h.degree() == 1) && q3 - binary_cubic() - q2 * h == MultiPoly<S>(q3.ctx(), q3.nvars());
    }
    std::string str() const {
        std::string s = "pencil <" + l1.str() + ", " + l2.str() + ">, c = (";
        for (int i = 0; i < 4; ++i) s += (i ? ", " : "") + FieldTraits<S>::str(c[i]);
        return s + "), h = " + h.str();
    }
};

// Exact membership test for one pencil: is q3 in span{l1^3, l1^2 l2, l1 l2^2, l2^3} + q2 * (linear forms)?
template <class S>
std::optional<PencilWitness<S>> pencil_member(const MultiPoly<S>& q2, const MultiPoly<S>& q3, const MultiPoly<S>& l1,
                                              const MultiPoly<S>& l2) {
    const auto ctx = q3.ctx();
    const int n = q3.nvars();
    const FormBasis cubics(n, 3);
    Mat<S> a(cubics.size(), 4 + n);
    for (int i = 0; i < 4; ++i) a.col(i) = cubics.vec(l1.pow(3 - i) * l2.pow(i));
    for (int k = 0; k < n; ++k) a.col(4 + k) = cubics.vec(q2 * MultiPoly<S>::var(ctx, n, k));
    const auto x = solve_linear<S>(ctx, a, cubics.vec(q3));
    if (!x) return std::nullopt;
    PencilWitness<S> w{l1, l2, {}, MultiPoly<S>(ctx, n)};
    for (int i = 0; i < 4; ++i) w.c.push_back((*x)(i));
    std::vector<S> hc(n);
    for (int k = 0; k < n; ++k) hc[k] = (*x)(4 + k);
    w.h = MultiPoly<S>::linear(ctx, hc);
    return w;
}

namespace detail {

// Columns are the first partials of a form of degree d, in the degree d-1 basis.
template <class S>
Mat<S> partials_matrix(const MultiPoly<S>& g, const FormBasis& lower) {
    const int n = g.nvars();
    Mat<S> j = zero_matrix<S>(g.ctx(), lower.size(), n);
    for (const auto& [m, c] : g.terms())
        for (int k = 0; k < n; ++k) {
            if (!m[k]) continue;
            std::vector<unsigned> e = m.exponents();
            --e[k];
            j(lower.index(Monomial(e)), k) += c * FieldTraits<S>::from_int(g.ctx(), m[k]);
        }
    return j;
}

// If g depends on at most two linear forms, return such a pair.
template <class S>
std::optional<std::pair<MultiPoly<S>, MultiPoly<S>>> essential_pair(const MultiPoly<S>& g, const FormBasis& quadrics) {
    const auto ctx = g.ctx();
    const int n = g.nvars();
    const auto e = rref<S>(partials_matrix(g, quadrics));
    if (e.rank() > 2) return std::nullopt;
    std::vector<MultiPoly<S>> forms;
    for (int r = 0; r < e.rank(); ++r) {
        std::vector<S> row(n);
        for (int k = 0; k < n; ++k) row[k] = e.m(r, k);
        forms.push_back(MultiPoly<S>::linear(ctx, row));
    }
    // Complete to a pencil with coordinate forms.
    for (int k = 0; k < n && forms.size() < 2; ++k) {
        std::vector<MultiPoly<S>> trial = forms;
        trial.push_back(MultiPoly<S>::var(ctx, n, k));
        Mat<S> m(static_cast<int>(trial.size()), n);
        for (size_t r = 0; r < trial.size(); ++r) {
            const auto v = trial[r].linear_coeffs();
            for (int c = 0; c < n; ++c) m(static_cast<int>(r), c) = v[c];
        }
        if (matrix_rank<S>(m) == static_cast<int>(trial.size())) forms = std::move(trial);
    }
    return std::make_pair(forms[0], forms[1]);
}

inline std::vector<Gf> apply(const Mat<Gf>& k, const std::vector<Gf>& y) {
    std::vector<Gf> x(k.rows(), Gf(k(0, 0).context(), 0));
    for (int i = 0; i < k.rows(); ++i)
        for (int j = 0; j < k.cols(); ++j) x[i] += k(i, j) * y[j];
    return x;
}

// Resultant of two univariate polynomials given with formal degrees.
inline Gf formal_resultant(const GfContext* c, const std::vector<Gf>& f, const std::vector<Gf>& g) {
    const int m = static_cast<int>(f.size()) - 1, n = static_cast<int>(g.size()) - 1;
    Mat<Gf> s = zero_matrix<Gf>(c, m + n, m + n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) s(i, i + j) = f[m - j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) s(n + i, i + j) = g[n - j];
    return determinant<Gf>(c, s);
}

inline std::vector<Gf> padded(const UPoly& u, int deg) {
    std::vector<Gf> a;
    for (int i = 0; i <= deg; ++i) a.push_back(u[i]);
    return a;
}

}  // namespace detail

// Rational points of {f = g = 0} inside the projectivized column span of k
// (n x 4), in the chart where the last slice coordinate is 1. Each first-slice
// coordinate a gives a zero-dimensional system solved by a resultant.
inline std::vector<std::vector<Gf>> rational_points_on_slice(const MultiPoly<Gf>& f, const MultiPoly<Gf>& g,
                                                             const Mat<Gf>& k, Rng& rng, std::uint64_t max_lines) {
    const GfContext* c = f.ctx();
    const MultiPoly<Gf> fs = substitute_linear(f, k), gs = substitute_linear(g, k);
    const int df = f.degree(), dg = g.degree();
    std::vector<std::vector<Gf>> pts;
    const std::uint64_t q = c->order();
    const bool all = q <= max_lines;
    const BiPoly x = BiPoly::var(c, 2, 0), y = BiPoly::var(c, 2, 1), one = BiPoly::constant(c, 2, Gf(c, 1));
    for (std::uint64_t s = 0; s < (all ? q : max_lines); ++s) {
        const Gf a = all ? Gf(c, s) : FieldTraits<Gf>::random(c, rng);
        const BiPoly fa = fs.compose({BiPoly::constant(c, 2, a), x, y, one});
        const BiPoly ga = gs.compose({BiPoly::constant(c, 2, a), x, y, one});
        if (fa.is_zero() || ga.is_zero()) continue;
        std::vector<Gf> bs, rs;
        for (int i = 0; i <= df * dg; ++i) {
            const Gf b(c, static_cast<std::uint64_t>(i));
            bs.push_back(b);
            rs.push_back(detail::formal_resultant(c, detail::padded(specialize_x(fa, b), df),
                                                  detail::padded(specialize_x(ga, b), dg)));
        }
        const UPoly res = interpolate(bs, rs);
        if (res.is_zero()) continue;  // common component in this plane
        for (const Gf& b : roots(res, rng)) {
            const UPoly common = gcd(specialize_x(fa, b), specialize_x(ga, b));
            if (common.is_zero()) continue;
            for (const Gf& t : roots(common, rng)) pts.push_back(detail::apply(k, {a, b, t, Gf(c, 1)}));
        }
    }
    return pts;
}

struct PencilReport {
    bool violation = false;
    bool exhaustive = false;  // true when the search covered every candidate
    std::string method;
    std::uint64_t candidates = 0;
    std::optional<PencilWitness<Gf>> witness;
};

inline constexpr std::uint64_t kDefaultPencilBudget = 20000;

namespace detail {

// Given v in the base locus of the pencil, q3 - q2 h has zero derivative along v,
// which pins down h linearly: d_v q3 = (d_v q2) h + h(v) q2.
inline std::optional<MultiPoly<Gf>> h_from_direction(const MultiPoly<Gf>& q2, const MultiPoly<Gf>& q3,
                                                     const std::vector<Gf>& v, const FormBasis& quadrics) {
    const GfContext* c = q2.ctx();
    const int n = q2.nvars();
    MultiPoly<Gf> dq2(c, n), dq3(c, n);
    for (int k = 0; k < n; ++k) {
        if (v[k].is_zero()) continue;
        dq2 += v[k] * q2.derivative(k);
        dq3 += v[k] * q3.derivative(k);
    }
    Mat<Gf> a(quadrics.size(), n);
    for (int k = 0; k < n; ++k) a.col(k) = quadrics.vec(dq2 * MultiPoly<Gf>::var(c, n, k) + v[k] * q2);
    const auto x = solve_linear<Gf>(c, a, quadrics.vec(dq3));
    if (!x) return std::nullopt;
    std::vector<Gf> hc(n);
    for (int k = 0; k < n; ++k) hc[k] = (*x)(k);
    return MultiPoly<Gf>::linear(c, hc);
}

inline std::optional<PencilWitness<Gf>> try_h(const MultiPoly<Gf>& q2, const MultiPoly<Gf>& q3, const MultiPoly<Gf>& h,
                                              const FormBasis& quadrics) {
    const auto pair = essential_pair(q3 - q2 * h, quadrics);
    if (!pair) return std::nullopt;
    return pencil_member(q2, q3, pair->first, pair->second);
}

inline bool rank_at_most_one(const std::vector<Gf>& a, const std::vector<Gf>& b) {
    Mat<Gf> m(2, static_cast<int>(a.size()));
    for (size_t k = 0; k < a.size(); ++k) {
        m(0, static_cast<int>(k)) = a[k];
        m(1, static_cast<int>(k)) = b[k];
    }
    return matrix_rank<Gf>(m) <= 1;
}

inline std::vector<Gf> gradient(const std::vector<MultiPoly<Gf>>& partials, const std::vector<Gf>& x) {
    std::vector<Gf> g;
    for (const auto& p : partials) g.push_back(p.eval(x));
    return g;
}

}  // namespace detail

// Searches for a pencil <l1, l2>, a binary cubic c and a linear form h with
// q3 = c(l1, l2) + q2 h. With rank q2 >= 5 such an h is unique, hence defined
// over the base field, so enumerating all h is exhaustive whenever q^n fits the
// budget. Otherwise candidates for h come from directions in the base locus of
// the pencil: singular rational points of {q2 = q3 = 0} on random 3-space
// sections, then random directions.
inline PencilReport pencil_cubic_membership(const MultiPoly<Gf>& q2, const MultiPoly<Gf>& q3,
                                            std::uint64_t budget = kDefaultPencilBudget, std::uint64_t seed = 0,
                                            int max_slices = 12) {
    const GfContext* c = q2.ctx();
    const int n = q2.nvars();
    if (c->degree() != 1) throw FieldError("pencil search runs over a prime field");
    if (c->characteristic() <= 3) throw FieldError("pencil search needs characteristic above 3");
    if (q3.nvars() != n) throw FieldError("q2 and q3 live in different spaces");
    if (!q2.is_homogeneous() || q2.degree() != 2) throw FieldError("q2 must be a quadratic form");
    if (!q3.is_zero() && (!q3.is_homogeneous() || q3.degree() != 3)) throw FieldError("q3 must be a cubic form");
    if (quadratic_form_of(q2).rank() < 5) throw FieldError("pencil search needs rank q2 >= 5");
    PencilReport rep;
    const FormBasis quadrics(n, 2);
    auto found = [&](PencilWitness<Gf> w, const char* how) {
        rep.violation = true;
        rep.method = how;
        rep.witness = std::move(w);
        return rep;
    };

    // Exhaustive enumeration of h over the field.
    std::uint64_t space = 1;
    bool small = true;
    for (int k = 0; k < n && small; ++k) {
        if (space > budget / c->order()) small = false;
        space *= c->order();
    }
    if (small && space <= budget) {
        rep.exhaustive = true;
        rep.method = "exhaustive over all linear forms h";
        std::vector<std::uint64_t> digits(n, 0);
        for (;;) {
            ++rep.candidates;
            std::vector<Gf> hc(n);
            for (int k = 0; k < n; ++k) hc[k] = Gf(c, digits[k]);
            if (auto w = detail::try_h(q2, q3, MultiPoly<Gf>::linear(c, hc), quadrics))
                return found(std::move(*w), "exhaustive over all linear forms h");
            int pos = 0;
            while (pos < n && ++digits[pos] == c->order()) digits[pos++] = 0;
            if (pos == n) break;
        }
        return rep;
    }

    rep.method = "directions from singular points of sections, then random directions";
    Rng rng(seed);
    std::vector<MultiPoly<Gf>> d2, d3;
    for (int k = 0; k < n; ++k) {
        d2.push_back(q2.derivative(k));
        d3.push_back(q3.derivative(k));
    }
    auto attempt = [&](const std::vector<Gf>& v) -> std::optional<PencilWitness<Gf>> {
        ++rep.candidates;
        const auto h = detail::h_from_direction(q2, q3, v, quadrics);
        if (!h) return std::nullopt;
        return detail::try_h(q2, q3, *h, quadrics);
    };
    if (n >= 4 && !q3.is_zero()) {
        for (int s = 0; s < max_slices && rep.candidates < budget; ++s) {
            Mat<Gf> k(n, 4);
            for (;;) {
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < 4; ++j) k(i, j) = FieldTraits<Gf>::random(c, rng);
                if (matrix_rank<Gf>(k) == 4) break;
            }
            for (const auto& x : rational_points_on_slice(q2, q3, k, rng, 2000)) {
                if (!detail::rank_at_most_one(detail::gradient(d2, x), detail::gradient(d3, x))) continue;
                if (auto w = attempt(x)) return found(std::move(*w), "direction from a singular point of a section");
                if (rep.candidates >= budget) break;
            }
        }
    }
    if (q3.is_zero()) {
        if (auto w = pencil_member(q2, q3, MultiPoly<Gf>::var(c, n, 0), MultiPoly<Gf>::var(c, n, 1)))
            return found(std::move(*w), "q3 is zero");
    }
    while (rep.candidates < budget) {
        std::vector<Gf> v(n);
        for (auto& x : v) x = FieldTraits<Gf>::random(c, rng);
        if (auto w = attempt(v)) return found(std::move(*w), "random direction");
    }
    return rep;
}

// q3 = m R + q2 h: the hyperplane section {m = 0} of the quadric {q2 = 0} lies in {q3 = 0}.
struct ComponentWitness {
    MultiPoly<Gf> m, r, h;
    bool verify(const MultiPoly<Gf>& q2, const MultiPoly<Gf>& q3) const {
        return m.degree() == 1 && m.is_homogeneous() && q3 == m * r + q2 * h;
    }
    std::string str() const { return "hyperplane " + m.str() + ", q3 = m*(" + r.str() + ") + q2*(" + h.str() + ")"; }
};

inline std::optional<ComponentWitness> hyperplane_component(const MultiPoly<Gf>& q2, const MultiPoly<Gf>& q3,
                                                            const MultiPoly<Gf>& m) {
    const GfContext* c = q2.ctx();
    const int n = q2.nvars();
    const FormBasis quadrics(n, 2), cubics(n, 3);
    Mat<Gf> a(cubics.size(), quadrics.size() + n);
    for (int j = 0; j < quadrics.size(); ++j)
        a.col(j) = cubics.vec(m * MultiPoly<Gf>::term(c, quadrics.monomial(j), Gf(c, 1)));
    for (int k = 0; k < n; ++k) a.col(quadrics.size() + k) = cubics.vec(q2 * MultiPoly<Gf>::var(c, n, k));
    const auto x = solve_linear<Gf>(c, a, cubics.vec(q3));
    if (!x) return std::nullopt;
    Vec<Gf> rv = x->head(quadrics.size());
    std::vector<Gf> hc(n);
    for (int k = 0; k < n; ++k) hc[k] = (*x)(quadrics.size() + k);
    return ComponentWitness{m, quadrics.poly(c, rv), MultiPoly<Gf>::linear(c, hc)};
}

// Sampled search for a component of {q2 = q3 = 0} spanning only a hyperplane.
// Two rational points x, y on such a component {q2 = m = 0} have m in
// span(grad q2, grad q3) at both, so m is the intersection of those planes.
inline std::optional<ComponentWitness> find_degenerate_component(const MultiPoly<Gf>& q2, const MultiPoly<Gf>& q3,
                                                                 std::uint64_t seed, int slices = 6) {
    const GfContext* c = q2.ctx();
    const int n = q2.nvars();
    if (n < 4) throw FieldError("component search needs at least four variables");
    Rng rng(seed);
    std::vector<MultiPoly<Gf>> d2, d3;
    for (int k = 0; k < n; ++k) {
        d2.push_back(q2.derivative(k));
        d3.push_back(q3.derivative(k));
    }
    for (int s = 0; s < slices; ++s) {
        Mat<Gf> k(n, 4);
        for (;;) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < 4; ++j) k(i, j) = FieldTraits<Gf>::random(c, rng);
            if (matrix_rank<Gf>(k) == 4) break;
        }
        const auto pts = rational_points_on_slice(q2, q3, k, rng, 2000);
        std::vector<std::pair<std::vector<Gf>, std::vector<Gf>>> planes;
        for (const auto& x : pts) {
            auto g2 = detail::gradient(d2, x), g3 = detail::gradient(d3, x);
            if (detail::rank_at_most_one(g2, g3)) continue;
            planes.emplace_back(std::move(g2), std::move(g3));
            if (planes.size() >= 40) break;
        }
        for (size_t i = 0; i < planes.size(); ++i)
            for (size_t j = i + 1; j < planes.size(); ++j) {
                Mat<Gf> a(n, 4);
                for (int r = 0; r < n; ++r) {
                    a(r, 0) = planes[i].first[r];
                    a(r, 1) = planes[i].second[r];
                    a(r, 2) = -planes[j].first[r];
                    a(r, 3) = -planes[j].second[r];
                }
                const Mat<Gf> ker = kernel_basis<Gf>(c, a);
                if (ker.cols() != 1) continue;
                std::vector<Gf> mc(n);
                for (int r = 0; r < n; ++r) mc[r] = ker(0, 0) * planes[i].first[r] + ker(1, 0) * planes[i].second[r];
                const auto m = MultiPoly<Gf>::linear(c, mc);
                if (m.is_zero()) continue;
                int on = 0;
                for (const auto& x : pts)
                    if (m.eval(x).is_zero()) ++on;
                if (on < 4) continue;
                if (auto w = hyperplane_component(q2, q3, m)) return w;
            }
    }
    return std::nullopt;
}

}  // namespace fmr
