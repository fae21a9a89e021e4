#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "ntv/charsum.hpp"

using namespace ntv;

namespace {
cplx ee(i64 num, i64 q) { return std::polar(1.0, 2 * M_PI * double(mod(num, q)) / double(q)); }

cplx frakC_brute(i64 m1, i64 m2, i64 a, i64 q) {
    cplx s = 0;
    for (i64 x = 0; x < q; ++x)
        for (i64 y = 0; y < q; ++y) s += ee(-a * (x * x + y * y) + m1 * x + m2 * y, q);
    return s;
}

i64 ipow(i64 b, int k) {
    i64 r = 1;
    for (int i = 0; i < k; ++i) r *= b;
    return r;
}

cplx frakC1_brute(i64 m1, i64 m2, i64 m, i64 n, i64 n3, int k, i64 q, int sign) {
    cplx s = 0;
    for (i64 a = 0; a < q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        i64 r = q / n;
        i64 ai = r == 1 ? 0 : inv_mod(mod(a, r), r);
        s += kloosterman(ai, sign * m, r) * frakC_brute(m1, m2, a, q) * ee(-a * ipow(n3, k), q);
    }
    return s;
}

cplx correlation_brute(i64 p, const CorrelationParams& c) {
    cplx s = 0;
    for (i64 b = 1; b < p; ++b) s += kloosterman(c.c[0], c.c[1] + c.c[4] * b, p) * kloosterman(c.c[2], c.c[3] + c.c[4] * inv_mod(b, p), p);
    return s;
}
}  // namespace

TEST_SUITE("charsum") {
    TEST_CASE("frakC small cases") {
        CHECK(std::abs(frakC(3, 4, 1, 1, Mode::direct) - 1.0) < 1e-14);
        CHECK(std::abs(frakC(0, 0, 1, 5, Mode::direct) - 5.0) < 1e-12);
        CHECK(std::abs(frakC(1, 0, 1, 3, Mode::direct) - frakC_brute(1, 0, 1, 3)) < 1e-12);
        // completing the square gives -3 e(+1/3) here
        CHECK(std::abs(frakC(1, 0, 1, 3, Mode::direct) + 3.0 * ee(1, 3)) < 1e-12);
        CHECK_THROWS_AS(frakC(0, 0, 3, 9, Mode::direct), std::domain_error);
    }

    TEST_CASE("frakC direct matches brute force and completed square for odd q") {
        std::mt19937_64 rng(11);
        for (i64 q = 1; q <= 499; q += 2) {
            int got = 0;
            for (i64 a = 1; got < 5 && a < 4 * q + 10; ++a) {
                if (std::gcd(a, q) != 1) continue;
                ++got;
                i64 m1 = std::uniform_int_distribution<i64>(-50, 50)(rng), m2 = std::uniform_int_distribution<i64>(-50, 50)(rng);
                cplx d = frakC(m1, m2, a, q, Mode::direct);
                REQUIRE(std::abs(d - frakC_completed(m1, m2, a, q)) < 1e-6);
                if (q < 40) REQUIRE(std::abs(d - frakC_brute(m1, m2, a, q)) < 1e-9);
            }
        }
    }

    TEST_CASE("frakC1 definition against brute force and the completed simplification") {
        CHECK(std::abs(frakC1(1, 2, 3, 1, 2, 3, 1, 1) - 1.0) < 1e-12);
        CHECK(std::abs(frakC1(0, 0, 1, 1, 1, 3, 3, 1) - frakC1_brute(0, 0, 1, 1, 1, 3, 3, 1)) < 1e-9);
        for (i64 q : {3, 5, 9, 15, 21})
            for (i64 n : {1, 3})
                for (int sign : {1, -1}) {
                    if (q % n) continue;
                    cplx d = frakC1(1, 2, 3, n, 2, 3, q, sign);
                    REQUIRE(std::abs(d - frakC1_brute(1, 2, 3, n, 2, 3, q, sign)) < 1e-7);
                    REQUIRE(std::abs(d - frakC1_simplified(1, 2, 3, n, 2, 3, q, sign, +1)) < 1e-6);
                }
        CHECK_THROWS_AS(frakC1(0, 0, 1, 2, 1, 3, 9, 1), std::invalid_argument);
    }

    TEST_CASE("frequency sum basics") {
        FreqSumInput one;
        CHECK(std::abs(frak_S(one) - 1.0) < 1e-12);
        FreqSumInput bad;
        bad.q = 9;
        bad.n = 2;
        CHECK_THROWS_AS(frak_S(bad), std::invalid_argument);
    }

    TEST_CASE("zero frequency bound when the cubes agree") {
        for (i64 q = 3; q <= 60; q += 2) {
            FreqSumInput in;
            in.q = q;
            in.n3 = 1;
            in.n3p = 1 + q;
            REQUIRE(std::abs(frak_S(in)) <= std::pow(double(q), 4) * (1 + 1e-12));
        }
    }

    TEST_CASE("frequency sum conjugation under sign flip") {
        for (i64 q : {5, 9, 15}) {
            FreqSumInput in;
            in.q = q;
            in.n = q == 15 ? 3 : 1;
            in.m1 = 1;
            in.m2 = 2;
            in.n3 = 2;
            in.n3p = 3;
            in.m = 1;
            cplx a = frak_S(in);
            in.sign = -1;
            in.m = -1;
            cplx b = frak_S(in);
            REQUIRE(std::abs(a - std::conj(b)) < 1e-6 * std::max(1.0, std::abs(a)));
        }
    }

    TEST_CASE("non-zero frequency bound ratios") {
        FreqSumInput q1;
        q1.m = 1;
        CHECK(nonzero_bound_ratio(q1).ratio_gcd == doctest::Approx(1.0));
        FreqSumInput zero;
        CHECK_THROWS_AS(nonzero_bound_ratio(zero), std::domain_error);
        FreqSumInput in;
        in.q = 13;
        in.m = 2;
        in.n3 = 2;
        in.n3p = 3;
        auto r = nonzero_bound_ratio(in);
        CHECK(r.coprime_gcd);
        CHECK(r.ratio_gcd == doctest::Approx(0.939).epsilon(1e-3));
        for (i64 p : {5, 7, 11, 17, 23}) {
            in.q = p;
            REQUIRE(nonzero_bound_ratio(in).ratio_gcd <= 10);
        }
        for (i64 p : {3, 5}) {
            in.q = p * p;
            auto rr = nonzero_bound_ratio(in);
            REQUIRE(rr.value / (std::pow(double(in.q), 4) / in.n) <= 10);
        }
    }

    TEST_CASE("Kloosterman correlation") {
        CorrelationParams c{{1, 2, 3, 4, 5}};
        CHECK(std::abs(kloosterman_correlation(7, c) - correlation_brute(7, c)) < 1e-9);
        CorrelationParams deg{{0, 2, 3, 4, 5}};
        CHECK_THROWS_AS(kloosterman_correlation(7, deg), std::domain_error);
        CHECK_THROWS_AS(kloosterman_correlation(9, c), std::invalid_argument);
        std::mt19937_64 rng(3);
        for (i64 p : {23, 101, 211}) {
            for (int i = 0; i < 50; ++i) {
                CorrelationParams r;
                for (auto& x : r.c) x = std::uniform_int_distribution<i64>(0, p - 1)(rng);
                if (!r.admissible(p)) continue;
                cplx v = kloosterman_correlation(p, r);
                if (p == 23) REQUIRE(std::abs(v - correlation_brute(p, r)) < 1e-8);
                REQUIRE(std::abs(v) <= 10 * std::pow(double(p), 1.5));
            }
        }
    }

    TEST_CASE("pre-substitution form differs from the correlation by the beta = 1 term") {
        for (i64 p : {7, 11, 13, 17, 31}) {
            auto cp = CorrelationParams::from_sum(p, 1, 1, 1, 2, 1, 2, 3, 3, 1);
            cplx post = kloosterman_correlation(p, cp);
            cplx pre = correlation_pre_substitution(p, 1, 1, 1, 2, 1, 2, 3, 3, 1);
            cplx b1 = kloosterman(cp.c[0], cp.c[1] + cp.c[4], p) * kloosterman(cp.c[2], cp.c[3] + cp.c[4], p);
            REQUIRE(std::abs(pre - (post - b1)) < 1e-8 * p * p);
        }
    }

    TEST_CASE("frakS1 values and bound") {
        QuadraticForm Q(1, 1, 0);
        CHECK(std::abs(frakS1(1, 2, 1, 1, Q) - 1.0) < 1e-12);
        cplx s = frakS1(1, 2, 1, 15, Q);
        // quadruple loop oracle
        cplx b = 0;
        for (i64 a = 1; a < 15; ++a) {
            if (std::gcd(a, i64(15)) != 1) continue;
            i64 ai = inv_mod(a, 15);
            cplx rs = 0;
            for (i64 beta = 1; beta < 15; ++beta)
                if (std::gcd(beta, i64(15)) == 1) rs += ee(ai * beta, 15);
            cplx cp = 0;
            for (i64 x = 0; x < 15; ++x)
                for (i64 y = 0; y < 15; ++y) cp += ee(-a * (x * x + y * y) + x + 2 * y, 15);
            b += rs * cp;
        }
        CHECK(std::abs(s - b) < 1e-8);
        CHECK(s.real() == doctest::Approx(60).epsilon(1e-9));
        CHECK(frakS1_bound(1, 15, Q) == doctest::Approx(900));
        QuadraticForm R(2, 3, 1);
        for (i64 q = 1; q <= 200; q += 13)
            for (i64 n : {1, 3})
                if (q % n == 0) REQUIRE(std::abs(frakS1(1, 1, n, q, R)) <= 10 * frakS1_bound(n, q, R));
    }
}
