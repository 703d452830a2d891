#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fmr/dimension.hpp"

using namespace fmr;

namespace {

const GfContext* F5 = GfContext::get(5);
const GfContext* F101 = GfContext::get(101);
using P = MultiPoly<Gf>;

P z(const GfContext* c, int n, int i) { return P::var(c, n, i); }

P diagonal_form(const GfContext* c, int n, unsigned k, Rng& rng) {
    P p(c, n);
    for (int j = 0; j < n; ++j) p.add_term(Monomial::var(n, j, k), random_unit<Gf>(c, rng));
    return p;
}

}  // namespace

TEST_CASE("projective dimension examples") {
    std::vector<P> coords = {z(F101, 3, 0), z(F101, 3, 1), z(F101, 3, 2)};
    CHECK(dimension_groebner(coords, 3).projective_dim == -1);
    CHECK(dimension_slicing(coords, 3, 1).projective_dim == -1);

    P sq = z(F101, 3, 0) * z(F101, 3, 0);
    CHECK(dimension_groebner<Gf>({sq}, 3).projective_dim == 1);
    CHECK(dimension_slicing<Gf>({sq}, 3, 2).projective_dim == 1);

    // Generic (q2, q3) over F_5: finitely many points, at most 6 over F_25.
    Rng rng(41);
    int checked = 0;
    for (int t = 0; t < 20 && checked < 5; ++t) {
        std::vector<P> g = {P::random_form(F5, 3, 2, rng), P::random_form(F5, 3, 3, rng)};
        auto gb = dimension_groebner(g, 3);
        if (gb.projective_dim != 0) continue;  // skip the rare degenerate draw
        ++checked;
        CHECK(dimension_slicing(g, 3, t).projective_dim == 0);
        auto ex = dimension_exhaustive(g, 3);
        CHECK(ex.count_ext <= 6);
        CHECK(ex.lower_bound <= 0);
    }
    CHECK(checked == 5);
}

TEST_CASE("rational ideals") {
    using R = MultiPoly<Rational>;
    const RationalField q{};
    R x = R::var(q, 3, 0), y = R::var(q, 3, 1), w = R::var(q, 3, 2);
    std::vector<R> g = {x * x - Rational(1, 2) * y * w, x * y - w * w};
    CHECK(dimension_groebner(g, 3).projective_dim == 0);
    CHECK(dimension_slicing(g, 3, 5).projective_dim == 0);
    std::vector<R> shared = {x * y, x * w};
    CHECK(dimension_groebner(shared, 3).projective_dim == 1);
}

TEST_CASE("regular sequences") {
    const int n = 5;
    std::vector<P> coords;
    for (int i = 0; i < n - 1; ++i) coords.push_back(z(F101, n, i));
    auto rep = is_regular_sequence(coords, n);
    CHECK(rep.regular);

    P a = z(F101, 3, 0);
    auto bad = is_regular_sequence<Gf>({a * a, a * a * a}, 3);
    CHECK(!bad.regular);
    CHECK(bad.failing_index == 2);

    // Generic diagonal forms of degrees 2..4 in 5 variables, slicing oracle on each prefix.
    Rng rng(77);
    for (int trial = 0; trial < 3; ++trial) {
        std::vector<P> seq;
        for (unsigned k = 2; k <= 4; ++k) seq.push_back(diagonal_form(F101, 5, k, rng));
        auto r = is_regular_sequence(seq, 5);
        CHECK(r.regular);
        for (size_t k = 1; k <= seq.size(); ++k) {
            std::vector<P> prefix(seq.begin(), seq.begin() + static_cast<long>(k));
            CHECK(dimension_slicing(prefix, 5, 100 + k).projective_dim == 4 - static_cast<int>(k));
        }
    }
}

TEST_CASE("regularity is invariant under scaling and linear changes") {
    Rng rng(19);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 4;
        std::vector<P> seq = {P::random_form(F101, n, 2, rng), P::random_form(F101, n, 2, rng)};
        if (trial % 2) {
            P l = P::random_form(F101, n, 1, rng);
            seq = {l * P::random_form(F101, n, 1, rng), l * P::random_form(F101, n, 2, rng)};
        }
        auto base = is_regular_sequence(seq, n);
        auto a = random_invertible<Gf>(F101, n, rng);
        std::vector<P> moved, scaled;
        for (const auto& s : seq) {
            moved.push_back(substitute_linear(s, a));
            scaled.push_back(random_unit<Gf>(F101, rng) * s);
        }
        auto m = is_regular_sequence(moved, n);
        auto s = is_regular_sequence(scaled, n);
        CHECK(m.regular == base.regular);
        CHECK(m.failing_index == base.failing_index);
        CHECK(s.failing_index == base.failing_index);
        CHECK(base.regular == (trial % 2 == 0));
    }
}

TEST_CASE("finiteness on subspaces") {
    Rng rng(8);
    // c = 0, generic diagonal forms, M = 4: forms q2, q3, q4 in 4 variables.
    const int m = 4;
    std::vector<P> qs;
    for (unsigned k = 2; k <= 3; ++k) qs.push_back(diagonal_form(F101, m, k, rng));
    qs.push_back(diagonal_form(F101, m, 4, rng));
    // q2..q_{M-c} with c = 0 is M - 1 forms in M variables.
    CHECK(finiteness_on_subspace(qs, LinearSubspace<Gf>::whole(F101, m), 0));
    // Oracle: a finite zero set has at most 2*3*4 rational points.
    CHECK(count_common_zeros(qs, m, F101) <= 24);

    // Common hyperplane component.
    P z1 = z(F101, m, 0);
    std::vector<P> bad = {z1 * z1, z1 * P::random_form(F101, m, 2, rng), z1 * P::random_form(F101, m, 3, rng)};
    CHECK(!finiteness_on_subspace(bad, LinearSubspace<Gf>::whole(F101, m), 0));

    // c = 2 with Pi = {z1 = z2 = 0}, generic forms, slicing oracle on the restriction.
    const int n = 6;
    std::vector<P> g;
    for (unsigned k = 2; k <= 4; ++k) g.push_back(P::random_form(F101, n, k, rng));
    LinearSubspace<Gf> pi(F101, n, {z(F101, n, 0), z(F101, n, 1)});
    DimensionVerdict v;
    CHECK(finiteness_on_subspace(g, pi, 2, kDefaultBudget, &v));
    std::vector<P> restricted;
    for (const auto& q : g) restricted.push_back(restrict_to_subspace(q, pi));
    CHECK(dimension_slicing(restricted, 4, 3).projective_dim == v.projective_dim);
    CHECK_THROWS_AS(finiteness_on_subspace(g, pi, 1), FieldError);
}

TEST_CASE("three methods agree on small ideals over F_5") {
    Rng rng(2024);
    int completed = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + trial % 3;
        std::vector<P> gens;
        const int r = 1 + static_cast<int>(uniform_below(rng, n));
        for (int k = 0; k < r; ++k) {
            P f = P::random_form(F5, n, 1, rng);
            if (uniform_below(rng, 2)) f = f * P::random_form(F5, n, 1, rng);
            if (!f.is_zero()) gens.push_back(f);
        }
        if (gens.empty()) continue;
        auto gb = dimension_groebner(gens, n);
        auto sl = dimension_slicing(gens, n, trial);
        auto ex = dimension_exhaustive(gens, n);
        CHECK(gb.projective_dim == sl.projective_dim);
        CHECK(ex.lower_bound <= gb.projective_dim);
        if (ex.completed) {
            ++completed;
            CHECK(ex.projective_dim == gb.projective_dim);
        }
    }
    CHECK(completed >= 20);
}

TEST_CASE("projective point counts") {
    CHECK(projective_count(5, 2) == 31);
    CHECK(projective_count(25, 0) == 1);
    CHECK(projective_count(7, -1) == 0);
    int seen = 0;
    for_each_projective_point(F5, 3, [&](const std::vector<Gf>&) { ++seen; });
    CHECK(seen == 31);
    // A smooth conic has q + 1 points.
    P conic = z(F5, 3, 0) * z(F5, 3, 0) + z(F5, 3, 1) * z(F5, 3, 1) - z(F5, 3, 2) * z(F5, 3, 2);
    CHECK(count_common_zeros({conic}, 3, F5) == 6);
    CHECK(count_common_zeros({conic}, 3, GfContext::get(5, 2)) == 26);
}
