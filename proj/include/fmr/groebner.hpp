#pragma once

#include "fmr/poly.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fmr {

inline constexpr std::uint64_t kDefaultBudget = 200000;

// Raised when a computation exceeds its configured budget; carries whatever
// certificate data existed at the moment of abort.
class ResourceLimit : public std::runtime_error {
public:
    ResourceLimit(const std::string& what, std::string partial)
        : std::runtime_error(what), partial_(std::move(partial)) {}
    const std::string& partial() const { return partial_; }

private:
    std::string partial_;
};

inline std::string monomial_str(const Monomial& m) {
    std::string s;
    for (int i = 0; i < m.nvars(); ++i) {
        if (!m[i]) continue;
        if (!s.empty()) s += "*";
        s += "z" + std::to_string(i + 1);
        if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s.empty() ? "1" : s;
}

template <class S>
struct GroebnerBasis {
    std::vector<MultiPoly<S>> basis;  // reduced, monic, sorted by leading monomial
    std::uint64_t reductions = 0;     // S-pairs reduced

    std::vector<Monomial> leading() const {
        std::vector<Monomial> out;
        for (const auto& g : basis) out.push_back(g.leading_monomial());
        return out;
    }
};

namespace detail {

template <class S>
MultiPoly<S> normal_form(MultiPoly<S> f, const std::vector<MultiPoly<S>>& g, const std::vector<int>& active) {
    MultiPoly<S> r(f.ctx(), f.nvars());
    while (!f.is_zero()) {
        const Monomial lm = f.leading_monomial();
        const S lc = f.leading_coeff();
        bool reduced = false;
        for (int id : active) {
            const auto& h = g[id];
            if (h.leading_monomial().divides(lm)) {
                f -= h.times_term(h.leading_monomial().quotient_into(lm), lc / h.leading_coeff());
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            r.add_term(lm, lc);
            f.add_term(lm, -lc);
        }
    }
    return r;
}

template <class S>
MultiPoly<S> monic(const MultiPoly<S>& f) {
    return (FieldTraits<S>::one(f.ctx()) / f.leading_coeff()) * f;
}

struct Pair {
    int i, j;
    Monomial lcm;
};

}  // namespace detail

// Buchberger's algorithm under degrevlex with the Gebauer-Moeller criteria.
// The budget bounds the number of S-pair reductions.
template <class S>
GroebnerBasis<S> groebner(std::vector<MultiPoly<S>> gens, std::uint64_t budget = kDefaultBudget) {
    using detail::Pair;
    GroebnerBasis<S> out;
    std::vector<MultiPoly<S>> store;
    std::vector<int> active;
    std::vector<Pair> pairs;

    auto update = [&](int h) {
        const Monomial& lh = store[h].leading_monomial();
        std::vector<Pair> c, d;
        for (int g : active) c.push_back({g, h, store[g].leading_monomial().lcm(lh)});
        for (size_t a = 0; a < c.size(); ++a) {
            const bool coprime = store[c[a].i].leading_monomial().coprime(lh);
            bool keep = coprime;
            if (!keep) {
                keep = true;
                for (size_t b = a + 1; b < c.size() && keep; ++b)
                    if (c[b].lcm.divides(c[a].lcm)) keep = false;
                for (size_t b = 0; b < d.size() && keep; ++b)
                    if (d[b].lcm.divides(c[a].lcm)) keep = false;
            }
            if (keep) d.push_back(c[a]);
        }
        std::vector<Pair> kept;
        for (auto& pr : pairs) {
            const bool drop = lh.divides(pr.lcm) && !(store[pr.i].leading_monomial().lcm(lh) == pr.lcm) &&
                              !(store[pr.j].leading_monomial().lcm(lh) == pr.lcm);
            if (!drop) kept.push_back(std::move(pr));
        }
        for (auto& pr : d)
            if (!store[pr.i].leading_monomial().coprime(lh)) kept.push_back(std::move(pr));
        pairs = std::move(kept);
        std::vector<int> next;
        for (int g : active)
            if (!lh.divides(store[g].leading_monomial())) next.push_back(g);
        next.push_back(h);
        active = std::move(next);
    };

    auto partial = [&]() {
        std::string s = "leading monomials so far:";
        for (int id : active) s += " " + monomial_str(store[id].leading_monomial());
        s += "; pending pairs: " + std::to_string(pairs.size());
        return s;
    };

    for (auto& f : gens) {
        if (f.is_zero()) continue;
        auto r = detail::normal_form(f, store, active);
        if (r.is_zero()) continue;
        store.push_back(detail::monic(r));
        update(static_cast<int>(store.size()) - 1);
    }

    while (!pairs.empty()) {
        size_t best = 0;
        for (size_t k = 1; k < pairs.size(); ++k)
            if (pairs[k].lcm.degree() < pairs[best].lcm.degree()) best = k;
        Pair pr = pairs[best];
        pairs.erase(pairs.begin() + static_cast<long>(best));
        if (++out.reductions > budget)
            throw ResourceLimit("Groebner budget of " + std::to_string(budget) + " S-pair reductions exhausted",
                                partial());
        const auto& a = store[pr.i];
        const auto& b = store[pr.j];
        auto sp = a.times_term(a.leading_monomial().quotient_into(pr.lcm), FieldTraits<S>::one(a.ctx()) / a.leading_coeff()) -
                  b.times_term(b.leading_monomial().quotient_into(pr.lcm), FieldTraits<S>::one(b.ctx()) / b.leading_coeff());
        auto r = detail::normal_form(sp, store, active);
        if (r.is_zero()) continue;
        store.push_back(detail::monic(r));
        update(static_cast<int>(store.size()) - 1);
    }

    // Interreduce the minimal basis into the reduced one.
    std::vector<MultiPoly<S>> minimal;
    for (int id : active) minimal.push_back(store[id]);
    std::sort(minimal.begin(), minimal.end(),
              [](const auto& x, const auto& y) { return DegRevLex()(x.leading_monomial(), y.leading_monomial()); });
    for (size_t k = 0; k < minimal.size(); ++k) {
        std::vector<MultiPoly<S>> others;
        std::vector<int> ids;
        for (size_t m = 0; m < minimal.size(); ++m)
            if (m != k) {
                ids.push_back(static_cast<int>(others.size()));
                others.push_back(minimal[m]);
            }
        MultiPoly<S> lead = MultiPoly<S>::term(minimal[k].ctx(), minimal[k].leading_monomial(), minimal[k].leading_coeff());
        auto tail = minimal[k] - lead;
        minimal[k] = lead + detail::normal_form(tail, others, ids);
    }
    out.basis = std::move(minimal);
    return out;
}

// Largest set of variables containing no leading monomial's support; its size is
// the Krull dimension of the quotient (the affine cone dimension).
struct Staircase {
    int affine_dim = -1;
    std::vector<int> independent;  // 0-based variable indices
};

inline Staircase staircase_dimension(const std::vector<Monomial>& leading, int nvars) {
    Staircase st;
    std::vector<std::uint64_t> supp;
    for (const auto& m : leading) {
        if (m.degree() == 0) return st;  // unit ideal
        supp.push_back(m.support());
    }
    if (nvars > 30) throw std::invalid_argument("too many variables for staircase search");
    const std::uint64_t full = (std::uint64_t(1) << nvars) - 1;
    for (std::uint64_t u = 0; u <= full; ++u) {
        const int size = __builtin_popcountll(u);
        if (size <= st.affine_dim) continue;
        bool ok = true;
        for (auto s : supp)
            if ((s & ~u) == 0) {
                ok = false;
                break;
            }
        if (ok) {
            st.affine_dim = size;
            st.independent.clear();
            for (int i = 0; i < nvars; ++i)
                if (u >> i & 1) st.independent.push_back(i);
        }
    }
    return st;
}

// True when the leading monomials contain a pure power of every variable.
inline bool has_all_pure_powers(const std::vector<Monomial>& leading, int nvars) {
    std::uint64_t seen = 0;
    for (const auto& m : leading) {
        if (m.degree() == 0) return true;
        const auto s = m.support();
        if (__builtin_popcountll(s) == 1) seen |= s;
    }
    return nvars == 0 || seen == (std::uint64_t(1) << nvars) - 1;
}

}  // namespace fmr
