#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fmr/fibre.hpp"

#include <chrono>
#include <random>

using namespace fmr;

namespace {

using E = BidegreeElement;

E random_element(std::mt19937_64& rng, int M, int m) {
    E r(M, m);
    for (int i = 0; i <= M; ++i)
        for (int j = 0; j <= m; ++j)
            if (rng() % 3 == 0) r = r + E::h1(M, m).pow(i) * E::h2(M, m).pow(j) * BigInt(static_cast<long long>(rng() % 11) - 5);
    return r;
}

}  // namespace

TEST_CASE("truncated ring") {
    CHECK((E::h1(3, 2) * E::h1(3, 2).pow(3)).coeffs().empty());
    const E s = E::h1(2, 1) + E::h2(2, 1);
    CHECK((s * s).str() == "h1^2 + 2*h1*h2");
    CHECK((E::h1(4, 3).pow(4) * E::h2(4, 3).pow(3)).degree() == 1);
    CHECK((E::h1(4, 3).pow(5)).degree() == 0);
    CHECK(E::divisor(3, 1, -4, -2).str() == "-4*h1 - 2*h2");
    CHECK_THROWS_AS(E::h1(3, 2) * E::h1(3, 1), FieldError);
    CHECK_THROWS_AS(ring_multiply(E::h1(3, 2), E::h2(2, 2)), FieldError);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 30; ++t) {
        const int M = 1 + static_cast<int>(rng() % 5), m = 1 + static_cast<int>(rng() % 4);
        const E a = random_element(rng, M, m), b = random_element(rng, M, m), c = random_element(rng, M, m);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("condition (iii) examples") {
    auto h = condition_iii_value({Family::Hypersurface, 10, 2, 4});
    CHECK(h.value == 6);
    CHECK(h.holds);
    CHECK(h.delta == 9);
    CHECK(h.K.str() == "-h1 + h2");
    auto h3 = condition_iii_value({Family::Hypersurface, 10, 2, 3});
    CHECK(h3.value == -3);
    CHECK_FALSE(h3.holds);
    auto d = condition_iii_value({Family::Double, 5, 2, 3});
    CHECK(d.value == 0);
    CHECK(d.holds);
    CHECK(d.cover_degree == 2);
    CHECK_THROWS_AS(condition_iii_value({Family::Double, 2, 2, 3}), FieldError);
    CHECK_THROWS_AS(condition_iii_value({Family::Double, 5, 0, 3}), FieldError);
    CHECK_THROWS_AS(condition_iii_value({Family::Double, 5, 2, -1}), FieldError);
}

TEST_CASE("closed forms on the grid") {
    const auto start = std::chrono::steady_clock::now();
    for (int M = 3; M < 13; ++M)
        for (int m = 1; m <= 5; ++m)
            for (long long l = 0; l < 10; ++l) {
                const auto h = condition_iii_value({Family::Hypersurface, M, m, l});
                CHECK(h.value == BigInt((M - 1) * l - static_cast<long long>(M) * (m + 1)));
                const auto d = condition_iii_value({Family::Double, M, m, l});
                const long long diff = l - (m + 1);
                CHECK((d.value > 0) == (diff > 0));
                CHECK((d.value == 0) == (diff == 0));
            }
    CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() < 1.0);
}

TEST_CASE("thresholds") {
    CHECK(rigidity_threshold(Family::Double, 5, 2).closed_form == 3);
    CHECK(rigidity_threshold(Family::Hypersurface, 10, 2).closed_form == 4);
    for (Family f : {Family::Double, Family::Hypersurface})
        for (int M = 3; M <= 20; ++M)
            for (int m = 1; m <= 12; ++m) {
                const auto t = rigidity_threshold(f, M, m);
                CHECK(t.agree);
                CHECK(t.scanned == t.closed_form);
            }
    const auto t = rigidity_threshold(Family::Hypersurface, 10, 9);
    CHECK(t.closed_form == 12);
    CHECK_FALSE(t.m_plus_two_holds);
    CHECK_FALSE(t.note.empty());
    for (int m = 1; m <= 20; ++m)
        for (int M = std::max(3, m); M <= m + 6; ++M)
            CHECK(rigidity_threshold(Family::Hypersurface, M, m).m_plus_two_holds == (M >= m + 2));
    CHECK(rigidity_threshold(Family::Hypersurface, 12, 9).note.empty());
}

TEST_CASE("dimension gates") {
    CHECK(dimension_gate(Family::Double, 10, 26));
    CHECK_FALSE(dimension_gate(Family::Double, 10, 27));
    CHECK_FALSE(dimension_gate(Family::Hypersurface, 10, 1));
    CHECK(dimension_gate(Family::Hypersurface, 13, 15));
    CHECK_FALSE(dimension_gate(Family::Hypersurface, 13, 16));
    CHECK_FALSE(dimension_gate(Family::Hypersurface, 9, 0));
    CHECK_FALSE(dimension_gate(Family::Double, 4, 0));
}
