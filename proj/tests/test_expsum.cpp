#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "ntv/expsum.hpp"

using namespace ntv;

namespace {
cplx brute_kloosterman(i64 a, i64 b, i64 q) {
    cplx s = 0;
    for (i64 x = 0; x < q; ++x)
        if (std::gcd(x, q) == 1) {
            i64 xb = q == 1 ? 0 : inv_mod(x, q);
            s += std::polar(1.0, 2 * M_PI * double(mod(i128(a) * x + i128(b) * xb, q)) / double(q));
        }
    return s;
}
}  // namespace

TEST_SUITE("expsum") {
    TEST_CASE("Kloosterman small values") {
        CHECK(std::abs(kloosterman(3, 7, 1) - 1.0) < 1e-15);
        for (i64 q : {1, 7, 12, 30, 97})
            CHECK(std::abs(kloosterman(0, 0, q) - double(totient(factorize(u64(q))))) < 1e-9);
        cplx s = kloosterman(1, 1, 5);
        CHECK(s.real() == doctest::Approx(2 + 2 * std::cos(4 * M_PI / 5)).epsilon(1e-12));
        CHECK(s.real() == doctest::Approx(0.381966).epsilon(1e-6));
        CHECK(std::fabs(s.imag()) < 1e-12);
    }

    TEST_CASE("Kloosterman direct, CRT and brute force agree") {
        std::mt19937_64 rng(7);
        for (int i = 0; i < 300; ++i) {
            i64 q = std::uniform_int_distribution<i64>(1, 3000)(rng);
            i64 a = std::uniform_int_distribution<i64>(-q, 2 * q)(rng);
            i64 b = std::uniform_int_distribution<i64>(-q, 2 * q)(rng);
            cplx d = kloosterman(a, b, q);
            REQUIRE(std::abs(d - brute_kloosterman(a, b, q)) < 1e-8);
            REQUIRE(std::abs(d - kloosterman_crt(a, b, q)) < 1e-8);
            if (mod(a - b, q) == 0) REQUIRE(std::fabs(d.imag()) < 1e-6);
            REQUIRE(std::abs(d) <= weil_bound(a, b, q) + 1e-9);
        }
    }

    TEST_CASE("Kloosterman symmetry in the arguments") {
        for (i64 q = 1; q < 60; ++q)
            for (i64 a = 0; a < 6; ++a)
                for (i64 b = 0; b < 6; ++b) {
                    REQUIRE(std::abs(kloosterman(a, b, q) - kloosterman(b, a, q)) < 1e-9);
                    if (std::gcd(a, q) == 1)
                        REQUIRE(std::abs(kloosterman(a, b, q) - kloosterman(1, a * b, q)) < 1e-9);
                }
    }

    TEST_CASE("Ramanujan sums") {
        for (i64 q : {1, 6, 10, 36}) CHECK(ramanujan_sum(0, q) == double(totient(factorize(u64(q)))));
        CHECK(ramanujan_sum(1, 6) == 1);
        CHECK(ramanujan_sum(2, 4) == -2);
        for (i64 q = 1; q < 200; ++q)
            for (i64 m = -30; m < 60; ++m) {
                REQUIRE(ramanujan_sum(m, q) == doctest::Approx(ramanujan_sum_direct(m, q)).epsilon(1e-9));
                REQUIRE(ramanujan_sum(m, q) == doctest::Approx(kloosterman(m, 0, q).real()).epsilon(1e-9));
            }
    }

    TEST_CASE("quadratic Gauss sums") {
        CHECK(std::abs(quad_gauss(1, 6, Mode::closed)) < 1e-12);
        CHECK(std::abs(quad_gauss(1, 6, Mode::direct)) < 1e-12);
        CHECK(std::abs(quad_gauss(1, 5, Mode::direct) - std::sqrt(5.0)) < 1e-12);
        CHECK(std::abs(quad_gauss(1, 5, Mode::closed) - std::sqrt(5.0)) < 1e-12);
        CHECK(std::abs(quad_gauss(1, 4, Mode::direct) - cplx(2, 2)) < 1e-12);
        CHECK(std::abs(quad_gauss(1, 4, Mode::closed) - cplx(2, 2)) < 1e-12);
        CHECK_THROWS_AS(quad_gauss(3, 9, Mode::closed), std::domain_error);
    }

    TEST_CASE("quadratic Gauss sum modes agree and magnitudes are 0, sqrt q or sqrt 2q") {
        for (i64 q = 1; q <= 500; ++q)
            for (i64 a = 1; a < std::min<i64>(q, 25) + 1; ++a) {
                if (std::gcd(a, q) != 1) continue;
                cplx d = quad_gauss(a, q, Mode::direct);
                REQUIRE(std::abs(d - quad_gauss(a, q, Mode::closed)) < 1e-9);
                double m = std::abs(d), r = std::sqrt(double(q));
                bool tri = m < 1e-9 || std::fabs(m - r) < 1e-9 || std::fabs(m - std::sqrt(2.0) * r) < 1e-9;
                REQUIRE(tri);
            }
    }

    TEST_CASE("quadratic form basics") {
        CHECK_THROWS_AS(QuadraticForm(1, -1, 0), std::invalid_argument);
        CHECK_THROWS_AS(QuadraticForm(0, 1, 0), std::invalid_argument);
        QuadraticForm Q(2, 3, 1);
        CHECK(Q.det() == 5);
        // adjugate composition: Q*(grad/2) relation, Q(x) * det = adj(Hx/2) on integer points
        for (i64 x = -5; x <= 5; ++x)
            for (i64 y = -5; y <= 5; ++y) {
                i64 gx = Q.A * x + Q.C * y, gy = Q.C * x + Q.B * y;
                REQUIRE(Q.adj_value(gx, gy) == Q.det() * Q.value(x, y));
            }
    }

    TEST_CASE("form Gauss sums") {
        QuadraticForm S(1, 1, 0);
        CHECK(std::abs(form_gauss(S, 0, 0, 1, 5, Mode::direct) - 5.0) < 1e-12);
        CHECK(std::abs(form_gauss(S, 0, 0, 1, 5, Mode::closed) - 5.0) < 1e-9);
        CHECK(std::abs(form_gauss(S, 3, 4, 2, 1, Mode::direct) - 1.0) < 1e-12);
        QuadraticForm Q(2, 3, 1);
        CHECK(std::abs(form_gauss(Q, 1, 2, 1, 7, Mode::direct) - form_gauss(Q, 1, 2, 1, 7, Mode::closed)) < 1e-9);
        CHECK_THROWS_AS(form_gauss(Q, 1, 2, 1, 5, Mode::closed), std::domain_error);
        for (i64 q = 1; q < 120; q += 2)
            for (i64 a = 1; a < 5; ++a) {
                if (std::gcd(q, 2 * 4 * Q.det() * a) != 1) continue;
                for (i64 m1 = 0; m1 < 4; ++m1)
                    REQUIRE(std::abs(form_gauss(Q, m1, 3 - m1, a, q, Mode::direct) -
                                     form_gauss(Q, m1, 3 - m1, a, q, Mode::closed)) < 1e-9);
            }
    }

    TEST_CASE("rank-3 diagonal form Gauss sums") {
        auto F = IntegralForm::diagonal({2, 4, 6});  // x^2 + 2y^2 + 3z^2
        for (i64 q : {1, 5, 7, 11, 13, 25})
            for (i64 a : {1, 2, 3}) {
                if (std::gcd(q, a) != 1) continue;
                std::vector<i64> m = {1, 0, 2};
                REQUIRE(std::abs(form_gauss(F, m, a, q, Mode::direct) - form_gauss(F, m, a, q, Mode::closed)) < 1e-9);
            }
    }
}
