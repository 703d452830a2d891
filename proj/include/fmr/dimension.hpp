#pragma once

#include "fmr/groebner.hpp"
#include "fmr/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fmr {

enum class DimMethod { Groebner, Slicing, Exhaustive };

inline const char* method_name(DimMethod m) {
    switch (m) {
        case DimMethod::Groebner: return "groebner";
        case DimMethod::Slicing: return "slicing";
        case DimMethod::Exhaustive: return "exhaustive";
    }
    return "?";
}

struct DimensionVerdict {
    int projective_dim = -1;  // -1: only the origin
    DimMethod method = DimMethod::Groebner;
    std::string certificate;
};

template <class S>
void require_homogeneous(const std::vector<MultiPoly<S>>& gens, int nvars) {
    for (const auto& g : gens) {
        if (g.nvars() != nvars) throw FieldError("generator lives in the wrong number of variables");
        if (!g.is_homogeneous()) throw FieldError("generators must be homogeneous");
    }
}

inline std::string staircase_certificate(const std::vector<Monomial>& lead, const Staircase& st) {
    std::string s = "leading monomials [";
    for (size_t i = 0; i < lead.size(); ++i) s += (i ? ", " : "") + monomial_str(lead[i]);
    s += "]; maximal independent variables {";
    for (size_t i = 0; i < st.independent.size(); ++i)
        s += (i ? ", " : "") + std::string("z") + std::to_string(st.independent[i] + 1);
    return s + "}";
}

// Projective dimension of the common zero set of homogeneous forms in nvars
// variables, read off the degrevlex staircase. Zero generators are ignored.
template <class S>
DimensionVerdict dimension_groebner(const std::vector<MultiPoly<S>>& gens, int nvars,
                                    std::uint64_t budget = kDefaultBudget) {
    require_homogeneous(gens, nvars);
    const auto gb = groebner(gens, budget);
    const auto lead = gb.leading();
    const auto st = staircase_dimension(lead, nvars);
    DimensionVerdict v;
    v.method = DimMethod::Groebner;
    v.projective_dim = std::max(st.affine_dim - 1, -1);
    v.certificate = staircase_certificate(lead, st);
    return v;
}

// ---- slicing ----

inline const GfContext* slicing_context(const GfContext* base) {
    int k = 1;
    std::uint64_t q = base->order();
    while (q < 500) {
        q *= base->characteristic();
        ++k;
    }
    return GfContext::get(base->characteristic(), base->degree() * k);
}
inline RationalField slicing_context(RationalField f) { return f; }

inline MultiPoly<Gf> lift(const MultiPoly<Gf>& p, const GfContext* ext) {
    if (p.ctx() == ext) return p;
    if (p.ctx()->degree() != 1 || ext->characteristic() != p.ctx()->characteristic())
        throw FieldError("can only lift prime-field polynomials");
    MultiPoly<Gf> r(ext, p.nvars());
    for (const auto& [m, c] : p.terms()) r.add_term(m, Gf(ext, c.value()));
    return r;
}
inline MultiPoly<Rational> lift(const MultiPoly<Rational>& p, RationalField) { return p; }

// Empty projective zero set iff every variable has a pure-power leading monomial.
template <class S>
bool projectively_empty(const std::vector<MultiPoly<S>>& gens, int nvars, std::uint64_t budget) {
    if (nvars == 0) return true;
    const auto gb = groebner(gens, budget);
    return has_all_pure_powers(gb.leading(), nvars);
}

// Independent check: cut by random linear subspaces over a large extension
// until the zero set is empty; dimension = slices needed - 1, minimized over trials.
template <class S>
DimensionVerdict dimension_slicing(const std::vector<MultiPoly<S>>& gens, int nvars, std::uint64_t seed,
                                   int trials = 2, std::uint64_t budget = kDefaultBudget) {
    require_homogeneous(gens, nvars);
    if (gens.empty()) {
        DimensionVerdict v{nvars - 1, DimMethod::Slicing, "no generators"};
        return v;
    }
    const auto ext = slicing_context(gens[0].ctx());
    std::vector<MultiPoly<S>> lifted;
    for (const auto& g : gens) lifted.push_back(lift(g, ext));
    Rng rng(seed);
    int best = nvars;
    std::string trace;
    for (int t = 0; t < trials; ++t) {
        int slices = 0;
        for (; slices < best; ++slices) {
            const int m = nvars - slices;
            Mat<S> k(nvars, m);
            for (;;) {
                for (int i = 0; i < nvars; ++i)
                    for (int j = 0; j < m; ++j) k(i, j) = FieldTraits<S>::random(ext, rng);
                if (matrix_rank<S>(k) == m) break;
            }
            std::vector<MultiPoly<S>> cut;
            for (const auto& g : lifted) cut.push_back(substitute_linear(g, k));
            if (projectively_empty(cut, m, budget)) break;
        }
        best = std::min(best, slices);
        trace += (t ? "," : "") + std::to_string(slices);
    }
    DimensionVerdict v;
    v.method = DimMethod::Slicing;
    v.projective_dim = best - 1;
    v.certificate = "slices to emptiness per trial [" + trace + "]";
    return v;
}

// ---- point enumeration ----

// Flat term list for fast repeated evaluation.
template <class S>
class CompiledPoly {
public:
    explicit CompiledPoly(const MultiPoly<S>& p) : n_(p.nvars()), deg_(std::max(p.degree(), 0)) {
        for (const auto& [m, c] : p.terms()) terms_.push_back({c, m.exponents()});
    }
    // pw[i][e] = x_i^e
    S eval(const std::vector<std::vector<S>>& pw, const S& zero) const {
        S acc = zero;
        for (const auto& t : terms_) {
            S v = t.first;
            for (int i = 0; i < n_; ++i)
                if (t.second[i]) v *= pw[i][t.second[i]];
            acc += v;
        }
        return acc;
    }
    int degree() const { return deg_; }

private:
    int n_;
    int deg_;
    std::vector<std::pair<S, std::vector<unsigned>>> terms_;
};

// Visits normalized representatives of P^{n-1}(F) (first nonzero coordinate 1).
template <class F>
void for_each_projective_point(const GfContext* ctx, int n, F&& visit) {
    const std::uint64_t q = ctx->order();
    std::vector<Gf> x(n, Gf(ctx, 0));
    for (int lead = 0; lead < n; ++lead) {
        for (int i = 0; i < n; ++i) x[i] = Gf(ctx, 0);
        x[lead] = Gf(ctx, 1);
        const int free = n - lead - 1;
        std::vector<std::uint64_t> digits(free, 0);
        for (;;) {
            for (int i = 0; i < free; ++i) x[lead + 1 + i] = Gf(ctx, digits[i]);
            visit(x);
            int pos = 0;
            while (pos < free && ++digits[pos] == q) digits[pos++] = 0;
            if (pos == free) break;
        }
    }
}

inline std::uint64_t projective_count(std::uint64_t q, int dim) {
    if (dim < 0) return 0;
    std::uint64_t s = 0, pw = 1;
    for (int i = 0; i <= dim; ++i) {
        s += pw;
        pw *= q;
    }
    return s;
}

inline std::uint64_t count_common_zeros(const std::vector<MultiPoly<Gf>>& gens, int nvars, const GfContext* ctx) {
    std::vector<CompiledPoly<Gf>> comp;
    int maxdeg = 1;
    for (const auto& g : gens) {
        comp.emplace_back(lift(g, ctx));
        maxdeg = std::max(maxdeg, g.degree());
    }
    const Gf zero(ctx, 0), one(ctx, 1);
    std::vector<std::vector<Gf>> pw(nvars, std::vector<Gf>(maxdeg + 1, zero));
    std::uint64_t count = 0;
    for_each_projective_point(ctx, nvars, [&](const std::vector<Gf>& x) {
        for (int i = 0; i < nvars; ++i) {
            pw[i][0] = one;
            for (int e = 1; e <= maxdeg; ++e) pw[i][e] = pw[i][e - 1] * x[i];
        }
        for (const auto& c : comp)
            if (!c.eval(pw, zero).is_zero()) return;
        ++count;
    });
    return count;
}

// Factor g into linear forms defined over its own (prime) field, if possible.
inline std::optional<std::vector<MultiPoly<Gf>>> split_linear(MultiPoly<Gf> g) {
    const GfContext* ctx = g.ctx();
    const int n = g.nvars();
    std::vector<MultiPoly<Gf>> factors;
    std::vector<MultiPoly<Gf>> candidates;
    for_each_projective_point(ctx, n, [&](const std::vector<Gf>& a) { candidates.push_back(MultiPoly<Gf>::linear(ctx, a)); });
    while (g.degree() > 0) {
        bool found = false;
        for (const auto& l : candidates) {
            if (auto q = divide_exact(g, l)) {
                factors.push_back(l);
                g = *q;
                found = true;
                break;
            }
        }
        if (!found) return std::nullopt;
    }
    return factors;
}

struct ExhaustiveDimension {
    int lower_bound = -1;      // certified: dim >= lower_bound
    bool completed = false;    // true when the count pins the dimension exactly
    int projective_dim = -1;   // meaningful only when completed
    std::uint64_t count_base = 0, count_ext = 0;
    std::uint64_t bezout = 1;  // product of generator degrees
    std::string certificate;
};

// Point counts over F_q and F_{q^2}. Each component of degree e and dimension d
// has at most e * |P^d(F_Q)| points and component degrees sum to at most the
// Bezout number D, which yields the certified lower bound. When every generator
// splits into F_q-linear factors the zero set is a union of at most D rational
// linear subspaces, and the count then pins the dimension exactly.
inline ExhaustiveDimension dimension_exhaustive(const std::vector<MultiPoly<Gf>>& gens, int nvars) {
    require_homogeneous(gens, nvars);
    ExhaustiveDimension r;
    if (gens.empty()) throw FieldError("exhaustive enumeration needs at least one generator");
    const GfContext* base = gens[0].ctx();
    if (base->degree() != 1) throw FieldError("exhaustive enumeration runs over a prime field");
    std::vector<MultiPoly<Gf>> nz;
    for (const auto& g : gens)
        if (!g.is_zero()) nz.push_back(g);
    const std::uint64_t q = base->order(), Q = q * q;
    const GfContext* ext = GfContext::get(base->characteristic(), 2);
    r.count_base = count_common_zeros(nz, nvars, base);
    r.count_ext = count_common_zeros(nz, nvars, ext);
    bool all_split = true;
    for (const auto& g : nz) {
        r.bezout *= static_cast<std::uint64_t>(std::max(g.degree(), 1));
        if (all_split && !split_linear(g)) all_split = false;
    }
    for (int j = 0; j < nvars; ++j)
        if (r.count_ext > r.bezout * projective_count(Q, j - 1)) r.lower_bound = j;
    r.certificate = "points over F_q: " + std::to_string(r.count_base) + ", over F_q^2: " + std::to_string(r.count_ext) +
                    ", Bezout bound " + std::to_string(r.bezout);
    if (all_split && r.bezout <= Q) {
        int d = -1;
        for (int j = 0; j < nvars; ++j)
            if (projective_count(Q, j) <= r.count_ext) d = j;
        if (r.count_ext <= r.bezout * projective_count(Q, d)) {
            r.completed = true;
            r.projective_dim = d;
            r.certificate += "; generators split into rational linear factors";
        }
    }
    return r;
}

// ---- derived predicates ----

struct RegularSequenceReport {
    bool regular = true;
    int failing_index = 0;  // 1-based prefix length of the first violation; 0 when regular
    std::vector<int> prefix_dims;
    std::string certificate;
};

// Prefix k must have projective dimension nvars - 1 - k.
template <class S>
RegularSequenceReport is_regular_sequence(const std::vector<MultiPoly<S>>& gens, int nvars,
                                          std::uint64_t budget = kDefaultBudget) {
    RegularSequenceReport rep;
    std::vector<MultiPoly<S>> prefix;
    for (size_t k = 1; k <= gens.size(); ++k) {
        if (!gens[k - 1].is_zero() && gens[k - 1].degree() < 1)
            throw FieldError("regular sequences need forms of positive degree");
        prefix.push_back(gens[k - 1]);
        const auto v = dimension_groebner(prefix, nvars, budget);
        rep.prefix_dims.push_back(v.projective_dim);
        if (v.projective_dim != nvars - 1 - static_cast<int>(k)) {
            rep.regular = false;
            rep.failing_index = static_cast<int>(k);
            rep.certificate = "prefix " + std::to_string(k) + " has projective dimension " +
                              std::to_string(v.projective_dim) + ", expected " +
                              std::to_string(nvars - 1 - static_cast<int>(k)) + "; " + v.certificate;
            return rep;
        }
        rep.certificate = v.certificate;
    }
    return rep;
}

// The restricted system cuts a finite set in P(Pi).
template <class S>
bool finiteness_on_subspace(const std::vector<MultiPoly<S>>& qs, const LinearSubspace<S>& pi, int c,
                            std::uint64_t budget = kDefaultBudget, DimensionVerdict* out = nullptr) {
    if (c < 0 || c > 2) throw FieldError("codimension must be 0, 1 or 2");
    if (pi.codim() != c) throw FieldError("subspace codimension does not match c");
    std::vector<MultiPoly<S>> restricted;
    for (const auto& q : qs) restricted.push_back(restrict_to_subspace(q, pi));
    const auto v = dimension_groebner(restricted, pi.dim(), budget);
    if (out) *out = v;
    return v.projective_dim <= 0;
}

}  // namespace fmr
