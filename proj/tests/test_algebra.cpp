#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fmr/linalg.hpp"

using namespace fmr;

namespace {

const GfContext* F101 = GfContext::get(101);

using P = MultiPoly<Gf>;
using Q = MultiPoly<Rational>;

P var(int n, int i) { return P::var(F101, n, i); }
Gf g(long long v) { return FieldTraits<Gf>::from_int(F101, v); }

P random_poly(Rng& rng, int n, int terms, unsigned maxdeg) {
    P p(F101, n);
    for (int t = 0; t < terms; ++t) {
        std::vector<unsigned> e(n);
        for (auto& x : e) x = static_cast<unsigned>(uniform_below(rng, maxdeg + 1));
        p.add_term(Monomial(e), FieldTraits<Gf>::random(F101, rng));
    }
    return p;
}

std::vector<Gf> random_point(Rng& rng, int n) {
    std::vector<Gf> x;
    for (int i = 0; i < n; ++i) x.push_back(FieldTraits<Gf>::random(F101, rng));
    return x;
}

}  // namespace

TEST_CASE("prime field arithmetic") {
    CHECK(is_prime(101));
    CHECK(!is_prime(91));
    CHECK(is_prime(2305843009213693951ULL));
    Gf a = g(37), b = g(80);
    CHECK((a + b).value() == 16);
    CHECK((a * a.inverse()).value() == 1);
    CHECK((a / b * b) == a);
    CHECK(FieldTraits<Gf>::parse(F101, "1/3") * g(3) == g(1));
    CHECK(FieldTraits<Gf>::parse(F101, "-2").value() == 99);
    CHECK_THROWS_AS(FieldTraits<Gf>::parse(F101, "1/101"), FieldError);
    CHECK_THROWS_AS(FieldSpec::parse("p:91"), FieldError);
    CHECK(FieldSpec::parse("p:101").modulus == 101);
}

TEST_CASE("extension field axioms") {
    for (auto [p, k] : {std::pair{5ull, 2}, std::pair{5ull, 4}, std::pair{3ull, 3}, std::pair{101ull, 2}}) {
        const GfContext* c = GfContext::get(p, k);
        Rng rng(p * 7 + k);
        for (int i = 0; i < 200; ++i) {
            Gf x = FieldTraits<Gf>::random(c, rng), y = FieldTraits<Gf>::random(c, rng),
               z = FieldTraits<Gf>::random(c, rng);
            CHECK((x * y) * z == x * (y * z));
            CHECK(x * (y + z) == x * y + x * z);
            CHECK(x - x == Gf(c, 0));
            if (!x.is_zero()) CHECK(x * x.inverse() == Gf(c, 1));
        }
        // Frobenius fixes exactly the prime subfield.
        int fixed = 0;
        for (const Gf& x : FieldTraits<Gf>::elements(c)) {
            Gf y = Gf(c, 1);
            for (std::uint64_t i = 0; i < p; ++i) y *= x;
            if (y == x) ++fixed;
        }
        CHECK(fixed == static_cast<int>(p));
    }
}

TEST_CASE("graded pieces") {
    P p = var(2, 0) + var(2, 0) * var(2, 1);
    auto pieces = p.graded_pieces();
    REQUIRE(pieces.size() == 3);
    CHECK(pieces[0].is_zero());
    CHECK(pieces[1] == var(2, 0));
    CHECK(pieces[2] == var(2, 0) * var(2, 1));
    CHECK(P(F101, 3).graded_pieces().empty());

    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        P r = random_poly(rng, 4, 5, 3);
        P sum(F101, 4);
        int d = 0;
        for (const auto& piece : r.graded_pieces()) {
            CHECK(piece.is_homogeneous());
            if (!piece.is_zero()) CHECK(piece.degree() == d);
            sum += piece;
            ++d;
        }
        CHECK(sum == r);
    }
}

TEST_CASE("ring axioms on random triples") {
    Rng rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        P a = random_poly(rng, 3, 4, 2), b = random_poly(rng, 3, 4, 2), c = random_poly(rng, 3, 4, 2);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        auto x = random_point(rng, 3);
        CHECK((a * b).eval(x) == a.eval(x) * b.eval(x));
        if (!b.is_zero()) {
            auto q = divide_exact(a * b, b);
            REQUIRE(q.has_value());
            CHECK(*q == a);
        }
    }
    CHECK(!divide_exact(var(2, 0) * var(2, 0) + var(2, 1), var(2, 0)).has_value());
}

TEST_CASE("restriction to subspaces") {
    const int n = 2;
    P p = var(n, 0) * var(n, 0) + var(n, 1) * var(n, 1);
    LinearSubspace<Gf> s(F101, n, {var(n, 0)});
    P r = restrict_to_subspace(p, s);
    CHECK(r.nvars() == 1);
    CHECK(r == P::var(F101, 1, 0) * P::var(F101, 1, 0));

    P q1 = var(4, 0) + g(3) * var(4, 2) - var(4, 3);
    CHECK(restrict_to_subspace(q1, LinearSubspace<Gf>(F101, 4, {q1})).is_zero());

    CHECK_THROWS_AS(LinearSubspace<Gf>(F101, 3, {var(3, 0), g(2) * var(3, 0)}), FieldError);

    // Point-evaluation oracle: a parametrized point of S evaluates identically.
    Rng rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        P cubic = P::random_form(F101, 4, 3, rng);
        std::vector<Gf> h;
        for (int i = 0; i < 4; ++i) h.push_back(FieldTraits<Gf>::random(F101, rng));
        h[0] = g(1);
        LinearSubspace<Gf> hyper(F101, 4, {P::linear(F101, h)});
        P rc = restrict_to_subspace(cubic, hyper);
        CHECK(rc.nvars() == 3);
        CHECK(rc.degree() <= 3);
        Mat<Gf> k = hyper.parametrization();
        for (int pt = 0; pt < 20; ++pt) {
            auto y = random_point(rng, 3);
            Vec<Gf> yy(3);
            for (int i = 0; i < 3; ++i) yy(i) = y[i];
            Vec<Gf> x = k * yy;
            std::vector<Gf> xs(x.data(), x.data() + 4);
            CHECK(hyper.contains(xs));
            CHECK(cubic.eval(xs) == rc.eval(y));
        }
    }
}

TEST_CASE("quadratic form rank") {
    const int n = 5;
    P q = var(n, 0) * var(n, 0) + var(n, 1) * var(n, 1) + var(n, 2) * var(n, 2);
    CHECK(quadratic_form_of(q).rank() == 3);
    auto hyp = quadratic_form_of(var(2, 0) * var(2, 1));
    CHECK(hyp.rank() == 2);
    CHECK(hyp.gram()(0, 1) == g(1) / g(2));

    Q z = Q::var({}, 2, 0) * Q::var({}, 2, 1);
    auto qz = quadratic_form_of(z);
    CHECK(qz.gram()(0, 1) == Rational(1, 2));
    CHECK(quadratic_form_of(Rational(3) * (Q::var({}, 1, 0) * Q::var({}, 1, 0))).gram()(0, 0) == 3);

    CHECK_THROWS_AS(quadratic_form_of(var(2, 0) + var(2, 1) * var(2, 1)), FieldError);
    const GfContext* f2 = GfContext::get(2);
    CHECK_THROWS_AS(quadratic_form_of(P::var(f2, 2, 0) * P::var(f2, 2, 1)), FieldError);

    // Congruence invariance, polarization identity and hyperplane rank drop.
    Rng rng(23);
    for (int seed = 0; seed < 50; ++seed) {
        P r = P::random_form(F101, 5, 2, rng);
        // Occasionally force low rank through a product of forms.
        if (seed % 5 == 0) r = P::random_form(F101, 5, 1, rng) * P::random_form(F101, 5, 1, rng);
        auto form = quadratic_form_of(r);
        Mat<Gf> a = random_invertible<Gf>(F101, 5, rng);
        CHECK(form.congruent(a).rank() == form.rank());
        CHECK(form.rank() <= 5);
        for (int pt = 0; pt < 20; ++pt) {
            auto x = random_point(rng, 5);
            Vec<Gf> v(5);
            for (int i = 0; i < 5; ++i) v(i) = x[i];
            CHECK(form.eval(v) == r.eval(x));
        }
        CHECK(polynomial_of(form) == r);
        std::vector<Gf> h = random_point(rng, 5);
        h[4] = g(1);
        auto restricted = quadratic_form_of(restrict_to_subspace(r, LinearSubspace<Gf>(F101, 5, {P::linear(F101, h)})));
        CHECK(restricted.rank() >= form.rank() - 2);
    }
}

TEST_CASE("rational round trip") {
    Q p(RationalField{}, 2);
    p.add_term(Monomial({1, 1}), parse_rational("-3/6"));
    p.add_term(Monomial({0, 2}), parse_rational("7"));
    CHECK(p.coeff(Monomial({1, 1})).str() == "-1/2");
    CHECK(parse_rational(p.coeff(Monomial({1, 1})).str()) == Rational(-1, 2));
    CHECK_THROWS_AS(parse_rational("1/0"), FieldError);
    CHECK_THROWS_AS(parse_rational("x"), FieldError);
}
