#pragma once

#include "fmr/bivariate.hpp"
#include "fmr/dimension.hpp"
#include "fmr/linalg.hpp"

#include <string>
#include <vector>

namespace fmr {

enum class SampleVerdict { Pass, Fail, Inconclusive };

inline const char* verdict_name(SampleVerdict v) {
    switch (v) {
        case SampleVerdict::Pass: return "pass";
        case SampleVerdict::Fail: return "fail";
        case SampleVerdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

inline constexpr std::uint64_t kMinSamplingPrime = 11;

// A plane curve over `field` (monic in y, in affine coordinates x, y) cut from
// the input by `slice`, with a factorization curve = prod factors^exponents.
struct CurveWitness {
    std::string kind;  // split | repeated-factor | binary-form | improper
    Mat<Gf> slice;     // over the base field; columns span the cutting subspace
    const GfContext* field = nullptr;
    BiPoly curve{nullptr, 2};
    std::vector<BiPoly> factors;
    std::vector<int> exponents;

    std::string str() const {
        std::string s = kind + " over " + field->name() + ": curve " + curve.str();
        for (size_t i = 0; i < factors.size(); ++i)
            s += (i ? " * " : " = ") + std::string("(") + factors[i].str() + ")" +
                 (exponents[i] > 1 ? "^" + std::to_string(exponents[i]) : "");
        return s;
    }
};

struct IrreducibilityReport {
    SampleVerdict verdict = SampleVerdict::Inconclusive;
    int trials = 0;
    std::string evidence;
    std::vector<CurveWitness> witnesses;  // fail witnesses, at least one when verdict = fail
};

namespace detail {

inline void require_sampling_field(const GfContext* c) {
    if (c->degree() != 1) throw FieldError("irreducibility sampling runs over a prime field");
    if (c->characteristic() < kMinSamplingPrime)
        throw FieldError("irreducibility sampling needs p >= " + std::to_string(kMinSamplingPrime));
}

// Smallest extension of the base field large enough for squarefree specializations.
inline const GfContext* working_field(const GfContext* base, int d) {
    const std::uint64_t want = std::max<std::uint64_t>(64, 4ull * d * d + 8);
    std::uint64_t q = base->order();
    int k = 1;
    while (q < want && q * base->order() <= (1u << 21)) {
        q *= base->order();
        ++k;
    }
    return GfContext::get(base->characteristic(), k);
}

inline Mat<Gf> random_frame(const GfContext* c, int n, int m, Rng& rng) {
    Mat<Gf> k(n, m);
    for (;;) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j) k(i, j) = FieldTraits<Gf>::random(c, rng);
        if (matrix_rank<Gf>(k) == m) return k;
    }
}

// Dehomogenize a ternary form at the last variable and normalize to monic in y.
inline std::optional<BiPoly> affine_monic(const MultiPoly<Gf>& g3, int d) {
    const GfContext* c = g3.ctx();
    const BiPoly g = g3.compose({BiPoly::var(c, 2, 0), BiPoly::var(c, 2, 1), BiPoly::constant(c, 2, Gf(c, 1))});
    if (g.degree() != d) return std::nullopt;
    return make_monic_y(g);
}

inline std::optional<BiPoly> section_curve(const MultiPoly<Gf>& p, const Mat<Gf>& slice) {
    return affine_monic(substitute_linear(p, slice), p.degree());
}

// The (quadric . form) curve in P^3 projected from (0:0:0:1): with the quadric
// y3^2 + B y3 + C and the form reduced to U y3 + V, the image is V^2 - BUV + CU^2.
// Returns the zero polynomial when the form vanishes on the quadric section.
inline std::optional<BiPoly> cycle_curve(const MultiPoly<Gf>& q, const MultiPoly<Gf>& f, const Mat<Gf>& slice) {
    using P = MultiPoly<Gf>;
    const GfContext* c = q.ctx();
    const P qs = substitute_linear(q, slice), fs = substitute_linear(f, slice);
    const Gf a = qs.coeff(Monomial::var(4, 3, 2));
    if (a.is_zero()) return std::nullopt;
    const P qm = a.inverse() * qs;
    auto split_y3 = [&](const P& g) {
        std::vector<P> parts;
        for (const auto& [m, v] : g.terms()) {
            if (parts.size() <= m[3]) parts.resize(m[3] + 1, P(c, 3));
            parts[m[3]].add_term(Monomial({m[0], m[1], m[2]}), v);
        }
        return parts;
    };
    auto qp = split_y3(qm);
    qp.resize(3, P(c, 3));
    const P& b = qp[1];
    const P& cc = qp[0];
    auto fp = split_y3(fs);
    fp.resize(std::max<size_t>(fp.size(), 2), P(c, 3));
    for (size_t k = fp.size() - 1; k >= 2; --k) {
        fp[k - 1] -= b * fp[k];
        fp[k - 2] -= cc * fp[k];
        fp[k] = P(c, 3);
    }
    const P& u = fp[1];
    const P& v = fp[0];
    const P res = v * v - b * u * v + cc * u * u;
    if (res.is_zero()) return BiPoly(c, 2);
    return affine_monic(res, 2 * f.degree());
}

struct CurveOutcome {
    enum Kind { Certified, Split, Repeated, Unknown } kind = Unknown;
    std::string note;
    BiPoly curve{nullptr, 2};
    std::vector<BiPoly> factors;
    std::vector<int> exponents;
};

inline CurveOutcome analyze_curve(const BiPoly& base_curve, Rng& rng) {
    CurveOutcome out;
    const int d = base_curve.degree();
    const GfContext* field = working_field(base_curve.ctx(), d);
    const BiPoly g = lift(base_curve, field);
    out.curve = g;
    if (auto fact = factor_bivariate(g, rng)) {
        if (fact->factors.size() >= 2) {
            out.kind = CurveOutcome::Split;
            out.factors = fact->factors;
            out.exponents.assign(out.factors.size(), 1);
            out.note = "splits into " + std::to_string(out.factors.size()) + " factors over " + field->name();
            return out;
        }
        if (auto pt = smooth_point(g, rng, 64)) {
            out.kind = CurveOutcome::Certified;
            out.note = "squarefree, irreducible over " + field->name() + " with smooth rational point (" +
                       FieldTraits<Gf>::str(pt->first) + ", " + FieldTraits<Gf>::str(pt->second) + ")";
        } else {
            out.note = "irreducible over " + field->name() + " but no smooth rational point found";
        }
        return out;
    }
    const auto r = gcd_bivariate(g, g.derivative(1), rng);
    if (r && r->degree() > 0) {
        const auto k = divide_exact(g, *r);
        const auto h = k ? gcd_bivariate(*r, *k, rng) : std::nullopt;
        if (h && h->degree() > 0) {
            if (auto rest = divide_exact(g, *h * *h)) {
                out.kind = CurveOutcome::Repeated;
                out.factors = {*h};
                out.exponents = {2};
                if (rest->degree() > 0) {
                    out.factors.push_back(*rest);
                    out.exponents.push_back(1);
                }
                out.note = "repeated factor of degree " + std::to_string(h->degree()) + " over " + field->name();
                return out;
            }
        }
    }
    out.note = "no squarefree specialization and no repeated factor isolated";
    return out;
}

inline CurveWitness make_witness(const CurveOutcome& o, const Mat<Gf>& slice) {
    CurveWitness w;
    w.kind = o.kind == CurveOutcome::Split ? "split" : "repeated-factor";
    w.slice = slice;
    w.field = o.curve.ctx();
    w.curve = o.curve;
    w.factors = o.factors;
    w.exponents = o.exponents;
    return w;
}

inline bool factorization_holds(const CurveWitness& w) {
    BiPoly prod = BiPoly::constant(w.field, 2, Gf(w.field, 1));
    int total = 0;
    for (size_t i = 0; i < w.factors.size(); ++i) {
        if (w.factors[i].degree() < 1) return false;
        prod *= w.factors[i].pow(static_cast<unsigned>(w.exponents[i]));
        total += w.exponents[i];
    }
    return total >= 2 && prod == w.curve;
}

// Aggregates per-trial outcomes. A certified trial proves the property for the
// whole input; fails need `confirm` agreeing trials.
inline void decide(IrreducibilityReport& rep, int confirm_split, int confirm_repeated) {
    int splits = 0, repeats = 0;
    for (const auto& w : rep.witnesses) (w.kind == "repeated-factor" ? repeats : splits)++;
    if (rep.verdict == SampleVerdict::Pass) return;
    if (splits >= confirm_split || repeats >= confirm_repeated || splits + repeats >= std::max(confirm_split, 2))
        rep.verdict = SampleVerdict::Fail;
    else
        rep.witnesses.clear();
}

}  // namespace detail

// Monte-Carlo test that the hypersurface {p = 0} is irreducible and reduced
// over the algebraic closure. Each trial cuts by a random plane and factors
// the plane curve exactly.
inline IrreducibilityReport sample_irreducible_reduced(const MultiPoly<Gf>& p, int trials, std::uint64_t seed) {
    const GfContext* c = p.ctx();
    detail::require_sampling_field(c);
    if (p.is_zero() || !p.is_homogeneous() || p.degree() < 1) throw FieldError("need a nonzero form of positive degree");
    const int n = p.nvars();
    if (n < 2) throw FieldError("need at least two variables");
    IrreducibilityReport rep;
    const int d = p.degree();

    if (n == 2) {
        rep.trials = 1;
        if (d == 1) {
            rep.verdict = SampleVerdict::Pass;
            rep.evidence = "linear binary form";
            return rep;
        }
        Rng rng(seed);
        for (;;) {
            Mat<Gf> a = random_invertible<Gf>(c, 2, rng);
            const MultiPoly<Gf> moved = substitute_linear(p, a);
            const Gf lc = moved.coeff(Monomial({0u, static_cast<unsigned>(d)}));
            if (lc.is_zero()) continue;
            const UPoly u = specialize_x(lc.inverse() * moved.compose({BiPoly::constant(c, 2, Gf(c, 1)), BiPoly::var(c, 2, 1)}),
                                         Gf(c, 1));
            CurveWitness w;
            w.kind = "binary-form";
            w.slice = a;
            w.field = c;
            w.curve = from_y(u);
            if (is_squarefree(u)) {
                for (const auto& f : factor_squarefree(u, rng)) {
                    w.factors.push_back(from_y(f));
                    w.exponents.push_back(1);
                }
            } else {
                const UPoly r = gcd(u, u.derivative());
                w.factors = {from_y(r), from_y(u / r)};
                w.exponents = {1, 1};
            }
            rep.verdict = SampleVerdict::Fail;
            rep.evidence = "binary form of degree " + std::to_string(d) + " splits into linear factors over the closure";
            rep.witnesses.push_back(std::move(w));
            return rep;
        }
    }

    for (int t = 0; t < trials; ++t) {
        Rng rng(seed * 1000003ull + static_cast<std::uint64_t>(t));
        std::optional<BiPoly> curve;
        Mat<Gf> slice;
        for (int attempt = 0; attempt < 20 && !curve; ++attempt) {
            slice = detail::random_frame(c, n, 3, rng);
            curve = detail::section_curve(p, slice);
        }
        ++rep.trials;
        if (!curve) {
            rep.evidence += "trial " + std::to_string(t) + ": no usable plane; ";
            continue;
        }
        const auto o = detail::analyze_curve(*curve, rng);
        rep.evidence += "trial " + std::to_string(t) + ": " + o.note + "; ";
        if (o.kind == detail::CurveOutcome::Certified) {
            rep.verdict = SampleVerdict::Pass;
            break;
        }
        if (o.kind != detail::CurveOutcome::Unknown) rep.witnesses.push_back(detail::make_witness(o, slice));
    }
    const int confirm = n == 3 ? 1 : 2;
    detail::decide(rep, confirm, confirm);
    return rep;
}

// Same test for the cycle {q = f = 0} with q a quadratic form, cut down to a
// curve in P^3 and projected to the plane.
inline IrreducibilityReport sample_cycle_irreducible_reduced(const MultiPoly<Gf>& q, const MultiPoly<Gf>& f, int trials,
                                                             std::uint64_t seed) {
    const GfContext* c = q.ctx();
    detail::require_sampling_field(c);
    if (q.nvars() != f.nvars()) throw FieldError("cycle generators live in different spaces");
    if (q.is_zero() || q.degree() != 2 || !q.is_homogeneous()) throw FieldError("first generator must be a quadratic form");
    if (f.is_zero() || f.degree() < 1 || !f.is_homogeneous()) throw FieldError("second generator must be a nonzero form");
    const int n = q.nvars();
    if (n < 4) throw FieldError("cycle sampling needs at least four variables");
    IrreducibilityReport rep;
    int improper = 0;
    CurveWitness improper_w;
    for (int t = 0; t < trials; ++t) {
        Rng rng(seed * 1000003ull + static_cast<std::uint64_t>(t));
        std::optional<BiPoly> curve;
        Mat<Gf> slice;
        for (int attempt = 0; attempt < 20 && !curve; ++attempt) {
            slice = detail::random_frame(c, n, 4, rng);
            curve = detail::cycle_curve(q, f, slice);
        }
        ++rep.trials;
        if (!curve) {
            rep.evidence += "trial " + std::to_string(t) + ": no usable projection; ";
            continue;
        }
        if (curve->is_zero()) {
            ++improper;
            improper_w.kind = "improper";
            improper_w.slice = slice;
            improper_w.field = c;
            improper_w.curve = *curve;
            rep.evidence += "trial " + std::to_string(t) + ": the form vanishes on the quadric section; ";
            continue;
        }
        const auto o = detail::analyze_curve(*curve, rng);
        rep.evidence += "trial " + std::to_string(t) + ": " + o.note + "; ";
        if (o.kind == detail::CurveOutcome::Certified) {
            rep.verdict = SampleVerdict::Pass;
            break;
        }
        if (o.kind != detail::CurveOutcome::Unknown) rep.witnesses.push_back(detail::make_witness(o, slice));
    }
    const int confirm = n == 4 ? 1 : 2;
    if (rep.verdict != SampleVerdict::Pass && improper >= confirm) {
        rep.verdict = SampleVerdict::Fail;
        rep.witnesses = {improper_w};
        return rep;
    }
    detail::decide(rep, confirm, 2);
    return rep;
}

// Recomputes the witness curve from the input and checks its factorization.
inline bool reverify_section_witness(const MultiPoly<Gf>& p, const CurveWitness& w) {
    if (w.kind == "binary-form") {
        BiPoly prod = BiPoly::constant(w.field, 2, Gf(w.field, 1));
        for (size_t i = 0; i < w.factors.size(); ++i) prod *= w.factors[i].pow(static_cast<unsigned>(w.exponents[i]));
        return p.nvars() == 2 && p.degree() >= 2 && prod == w.curve && w.curve.degree() == p.degree();
    }
    const auto curve = detail::section_curve(p, w.slice);
    return curve && lift(*curve, w.field) == w.curve && detail::factorization_holds(w);
}

inline bool reverify_cycle_witness(const MultiPoly<Gf>& q, const MultiPoly<Gf>& f, const CurveWitness& w) {
    const auto curve = detail::cycle_curve(q, f, w.slice);
    if (!curve) return false;
    if (w.kind == "improper") return curve->is_zero();
    return lift(*curve, w.field) == w.curve && detail::factorization_holds(w);
}

}  // namespace fmr
