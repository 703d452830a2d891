#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fmr/pencil.hpp"

using namespace fmr;

namespace {

using P = MultiPoly<Gf>;

P full_rank_quadric(const GfContext* c, int n, Rng& rng) {
    for (;;) {
        P q = P::random_form(c, n, 2, rng);
        if (quadratic_form_of(q).rank() == n) return q;
    }
}

P binary_cubic(const P& l1, const P& l2, Rng& rng) {
    P r(l1.ctx(), l1.nvars());
    for (int i = 0; i < 4; ++i) r += FieldTraits<Gf>::random(l1.ctx(), rng) * (l1.pow(3 - i) * l2.pow(i));
    return r;
}

// Oracle: try every 2-dimensional space of linear forms, enumerated by reduced echelon form.
bool any_pencil(const P& q2, const P& q3) {
    const GfContext* c = q2.ctx();
    const int n = q2.nvars();
    const std::uint64_t q = c->order();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            std::vector<int> free1, free2;
            for (int k = i + 1; k < n; ++k)
                if (k != j) free1.push_back(k);
            for (int k = j + 1; k < n; ++k) free2.push_back(k);
            const size_t nf = free1.size() + free2.size();
            std::uint64_t total = 1;
            for (size_t t = 0; t < nf; ++t) total *= q;
            for (std::uint64_t code = 0; code < total; ++code) {
                std::vector<Gf> a(n, Gf(c, 0)), b(n, Gf(c, 0));
                a[i] = Gf(c, 1);
                b[j] = Gf(c, 1);
                std::uint64_t r = code;
                for (int k : free1) {
                    a[k] = Gf(c, r % q);
                    r /= q;
                }
                for (int k : free2) {
                    b[k] = Gf(c, r % q);
                    r /= q;
                }
                if (pencil_member(q2, q3, P::linear(c, a), P::linear(c, b))) return true;
            }
        }
    return false;
}

}  // namespace

TEST_CASE("exact per-pencil test") {
    const GfContext* F = GfContext::get(101);
    Rng rng(1);
    const int n = 6;
    P q2 = full_rank_quadric(F, n, rng);
    P l1 = P::random_form(F, n, 1, rng), l2 = P::random_form(F, n, 1, rng), h = P::random_form(F, n, 1, rng);
    P q3 = binary_cubic(l1, l2, rng) + q2 * h;
    auto w = pencil_member(q2, q3, l1, l2);
    REQUIRE(w.has_value());
    CHECK(w->verify(q2, q3));
    CHECK(w->h == h);
    // Same cubic against a different pencil.
    CHECK_FALSE(pencil_member(q2, q3, l1, P::random_form(F, n, 1, rng)).has_value());
    // Rational coefficients work through the same template.
    using Q = MultiPoly<Rational>;
    Q x = Q::var(RationalField{}, 3, 0), y = Q::var(RationalField{}, 3, 1), z = Q::var(RationalField{}, 3, 2);
    Q qq = x * x + y * y + z * z;
    auto wq = pencil_member(qq, x * y * (x + y) + qq * z, x, y);
    REQUIRE(wq.has_value());
    CHECK(wq->verify(qq, x * y * (x + y) + qq * z));
}

TEST_CASE("canonical violations: a triple plane and three planes of one pencil") {
    const GfContext* F = GfContext::get(101);
    Rng rng(2);
    const int n = 8;
    P q2 = full_rank_quadric(F, n, rng);
    P l = P::random_form(F, n, 1, rng), l1 = P::random_form(F, n, 1, rng), l2 = P::random_form(F, n, 1, rng);
    for (const P& q3 : {P(l * l * l), P(l1 * l2 * (l1 + l2))}) {
        auto rep = pencil_cubic_membership(q2, q3, kDefaultPencilBudget, 3);
        REQUIRE(rep.violation);
        REQUIRE(rep.witness.has_value());
        CHECK(rep.witness->verify(q2, q3));
        CHECK_FALSE(rep.exhaustive);
    }
    auto zero = pencil_cubic_membership(q2, P(F, n), 100, 1);
    CHECK(zero.violation);
    CHECK(zero.witness->verify(q2, P(F, n)));
}

TEST_CASE("planted pencils over F_101 are detected") {
    const GfContext* F = GfContext::get(101);
    Rng rng(3);
    int detected = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 6 + trial % 4;
        P q2 = full_rank_quadric(F, n, rng);
        P l1 = P::random_form(F, n, 1, rng), l2 = P::random_form(F, n, 1, rng);
        P q3 = binary_cubic(l1, l2, rng) + q2 * P::random_form(F, n, 1, rng);
        auto rep = pencil_cubic_membership(q2, q3, kDefaultPencilBudget, trial);
        if (rep.violation && rep.witness->verify(q2, q3)) ++detected;
    }
    CHECK(detected == 50);
}

TEST_CASE("generic cubics give no violation") {
    const GfContext* F = GfContext::get(101);
    Rng rng(4);
    for (int trial = 0; trial < 3; ++trial) {
        const int n = 6;
        P q2 = full_rank_quadric(F, n, rng);
        auto rep = pencil_cubic_membership(q2, P::random_form(F, n, 3, rng), 300, trial);
        CHECK_FALSE(rep.violation);
        CHECK_FALSE(rep.exhaustive);
        CHECK(rep.candidates >= 300);
    }
}

TEST_CASE("exhaustive search over F_5 agrees with enumeration of all pencils") {
    const GfContext* F = GfContext::get(5);
    Rng rng(5);
    int yes = 0, no = 0;
    for (int trial = 0; trial < 8; ++trial) {
        const int n = 5;
        P q2 = full_rank_quadric(F, n, rng);
        P q3 = P::random_form(F, n, 3, rng);
        if (trial % 2 == 0) {
            P l1 = P::random_form(F, n, 1, rng), l2 = P::random_form(F, n, 1, rng);
            q3 = binary_cubic(l1, l2, rng) + q2 * P::random_form(F, n, 1, rng);
        }
        auto rep = pencil_cubic_membership(q2, q3, kDefaultPencilBudget, trial);
        CHECK(rep.exhaustive);
        const bool truth = any_pencil(q2, q3);
        CHECK(rep.violation == truth);
        if (rep.violation) CHECK(rep.witness->verify(q2, q3));
        (truth ? yes : no)++;
    }
    CHECK(yes >= 3);
    CHECK(no >= 3);
}

TEST_CASE("pencil search preconditions") {
    Rng rng(6);
    const GfContext* F3 = GfContext::get(3);
    CHECK_THROWS_AS(pencil_cubic_membership(full_rank_quadric(F3, 5, rng), P(F3, 5)), FieldError);
    const GfContext* F = GfContext::get(101);
    P low = P::var(F, 6, 0) * P::var(F, 6, 1);
    CHECK_THROWS_AS(pencil_cubic_membership(low, P(F, 6)), FieldError);
    CHECK_THROWS_AS(pencil_cubic_membership(full_rank_quadric(GfContext::get(5, 2), 5, rng), P(GfContext::get(5, 2), 5)),
                    FieldError);
}

TEST_CASE("rational points on a section") {
    const GfContext* F = GfContext::get(31);
    Rng rng(7);
    const int n = 5;
    P f = P::random_form(F, n, 2, rng), g = P::random_form(F, n, 3, rng);
    Mat<Gf> k = random_invertible<Gf>(F, n, rng).leftCols(4);
    auto pts = rational_points_on_slice(f, g, k, rng, 1000);
    for (const auto& x : pts) {
        CHECK(f.eval(x).is_zero());
        CHECK(g.eval(x).is_zero());
    }
    // Brute force over the same chart.
    std::size_t brute = 0;
    for (std::uint64_t a = 0; a < 31; ++a)
        for (std::uint64_t b = 0; b < 31; ++b)
            for (std::uint64_t t = 0; t < 31; ++t) {
                auto x = detail::apply(k, {Gf(F, a), Gf(F, b), Gf(F, t), Gf(F, 1)});
                if (f.eval(x).is_zero() && g.eval(x).is_zero()) ++brute;
            }
    CHECK(pts.size() == brute);
}

TEST_CASE("hyperplane components of the base locus") {
    const GfContext* F = GfContext::get(101);
    Rng rng(8);
    for (int trial = 0; trial < 5; ++trial) {
        const int n = 7;
        P q2 = full_rank_quadric(F, n, rng);
        P m = P::random_form(F, n, 1, rng);
        P q3 = m * P::random_form(F, n, 2, rng) + q2 * P::random_form(F, n, 1, rng);
        auto w = find_degenerate_component(q2, q3, trial);
        REQUIRE(w.has_value());
        CHECK(w->verify(q2, q3));
        auto direct = hyperplane_component(q2, q3, m);
        REQUIRE(direct.has_value());
        CHECK(direct->verify(q2, q3));
    }
    P q2 = full_rank_quadric(F, 6, rng);
    CHECK_FALSE(find_degenerate_component(q2, P::random_form(F, 6, 3, rng), 1, 2).has_value());
}
