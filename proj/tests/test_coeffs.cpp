#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "doctest.h"
#include "ntv/coeffs.hpp"

using namespace ntv;

namespace {
u64 sigma00_brute(u64 m, u64 n) {
    u64 c = 0;
    for (u64 d1 = 1; d1 <= n; ++d1)
        if (n % d1 == 0)
            for (u64 d2 = 1; d2 <= n / d1; ++d2)
                if ((n / d1) % d2 == 0 && std::gcd(d2, m) == 1) ++c;
    return c;
}
}  // namespace

TEST_SUITE("coeffs") {
    TEST_CASE("sigma00 examples and brute force") {
        for (u64 m = 1; m < 30; ++m) CHECK(sigma00(m, 1) == 1);
        for (u64 n = 1; n < 300; ++n) CHECK(sigma00(1, n) == n_divisors3(factorize(n)));
        CHECK(sigma00(2, 4) == 3);
        for (u64 m = 1; m <= 60; ++m)
            for (u64 n = 1; n <= 200; ++n) REQUIRE(sigma00(m, n) == sigma00_brute(m, n));
    }

    TEST_CASE("sigma00 bounded by d3") {
        for (u64 m = 1; m <= 1000; m += 7)
            for (u64 n = 1; n <= 1000; ++n) REQUIRE(sigma00(m, n) <= n_divisors3(factorize(n)));
    }

    TEST_CASE("tau values and Hecke relations") {
        auto t = tau_table(2000);
        CHECK(t[1] == 1);
        CHECK(t[2] == -24);
        CHECK(t[3] == 252);
        CHECK(t[6] == -6048);
        for (u64 m = 1; m < 45; ++m)
            for (u64 n = 1; n < 45; ++n)
                if (std::gcd(m, n) == 1) REQUIRE(t[m * n] == t[m] * t[n]);
        for (u64 p : {2, 3, 5, 7, 11, 13}) {
            i128 p11 = 1;
            for (int i = 0; i < 11; ++i) p11 *= i128(p);
            for (u64 pa = p; pa * p * p <= 2000; pa *= p) REQUIRE(t[pa * p] == t[p] * t[pa] - p11 * t[pa / p]);
        }
        auto T = compute_tau(5000, 3000);
        CHECK(T.tau(2) == -24);
        CHECK(T.lambda(2) == doctest::Approx(-24.0 / std::pow(2.0, 5.5)).epsilon(1e-15));
        for (u64 n = 1; n <= 5000; ++n) {
            if (n > 3000 && !is_prime(n)) {
                REQUIRE(std::isnan(T.lambda(n)));
                continue;
            }
            REQUIRE(std::fabs(T.lambda(n)) <= double(n_divisors(factorize(n))) + 1e-9);
        }
    }

    TEST_CASE("Schur evaluators agree") {
        for (double lam : {-2.0, -1.7, -0.3, 0.0, 0.5, 1.99999999, 2.0})
            for (int l1 = 0; l1 < 6; ++l1)
                for (int l2 = 0; l2 <= l1; ++l2)
                    REQUIRE(schur_weyl(l1, l2, lam) == doctest::Approx(schur_jacobi_trudi(l1, l2, lam)).epsilon(1e-7));
    }

    TEST_CASE("Sym2 lift values") {
        auto S = CoefficientSource::sym2_discriminant(10000);
        CHECK(S->lambda(1, 1) == 1.0);
        CHECK(S->A(2) == -0.71875);
        CHECK(S->lambda(2, 1) == doctest::Approx(-0.71875).epsilon(1e-14));
        for (u64 p = 2; p <= 10000; ++p)
            if (is_prime(p)) REQUIRE(std::fabs(S->A(p)) <= 3.0 + 1e-12);
        for (u64 m = 1; m <= 100; ++m)
            for (u64 n = 1; n <= 100; ++n) REQUIRE(S->lambda(m, n) == doctest::Approx(S->lambda(n, m)).epsilon(1e-10));
    }

    TEST_CASE("Sym2 multiplicativity against local Schur values") {
        auto S = CoefficientSource::sym2_discriminant(10000);
        auto lam = compute_tau_cached(100);
        for (u64 p : {2, 3, 5, 7})
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 4; ++b) {
                    u64 pa = 1, pb = 1;
                    for (int i = 0; i < a; ++i) pa *= p;
                    for (int i = 0; i < b; ++i) pb *= p;
                    double w = schur_weyl(a + b, b, lam.lambda(p));
                    REQUIRE(S->lambda(pa, pb) == doctest::Approx(w).epsilon(1e-9));
                }
        for (u64 m1 = 1; m1 < 20; ++m1)
            for (u64 n1 = 1; n1 < 20; ++n1)
                for (u64 m2 = 1; m2 < 12; ++m2)
                    for (u64 n2 = 1; n2 < 12; ++n2) {
                        if (std::gcd(m1 * n1, m2 * n2) != 1) continue;
                        REQUIRE(S->lambda(m1 * m2, n1 * n2) ==
                                doctest::Approx(S->lambda(m1, n1) * S->lambda(m2, n2)).epsilon(1e-9).scale(1e-12));
                    }
    }

    TEST_CASE("triple divisor source") {
        auto D = CoefficientSource::triple_divisor(1000);
        CHECK(D->lambda(1, 1) == 1.0);
        for (u64 n = 1; n <= 1000; ++n) REQUIRE(D->A(n) == double(n_divisors3(factorize(n))));
        CHECK_THROWS(D->A(1001));
    }

    TEST_CASE("l2 ratios") {
        auto D = CoefficientSource::triple_divisor(1000);
        CHECK(l2_ratio(1, *D, 0).sum == 1.0);
        // direct sum over m^2 n <= X of sigma-weighted d3 values
        double direct = 0;
        for (u64 m = 1; m * m <= 1000; ++m)
            for (u64 n = 1; m * m * n <= 1000; ++n) direct += std::pow(D->lambda(m, n), 2);
        CHECK(l2_ratio(1000, *D, 0).sum == doctest::Approx(direct).epsilon(1e-12));
        CHECK(std::isnan(l2_ratio(1000, *D, 1.0).ratio));
        auto S = CoefficientSource::sym2_discriminant(100000);
        double r3 = l2_ratio(1000, *S, 0).ratio, r4 = l2_ratio(10000, *S, 0).ratio, r5 = l2_ratio(100000, *S, 0).ratio;
        CHECK(r4 <= 10);
        CHECK(std::max({r3, r4, r5}) <= 10);
        CHECK(std::min({r3, r4, r5}) > 0.1);
    }

    TEST_CASE("user table CSV") {
        auto dir = std::filesystem::temp_directory_path();
        auto p2 = dir / "ntv_user2.csv", p3 = dir / "ntv_user3.csv";
        {
            std::ofstream f(p2);
            f << "# n,value\n1,1\n2,-0.5\n3,0.25\n";
        }
        {
            std::ofstream f(p3);
            f << "m,n,value\n1,1,1\n2,3,4.5\n";
        }
        auto U2 = CoefficientSource::user_table(p2.string());
        CHECK(U2->A(2) == -0.5);
        CHECK(U2->lambda(1, 3) == 0.25);
        auto U3 = CoefficientSource::user_table(p3.string());
        CHECK(U3->lambda(2, 3) == 4.5);
        CHECK(U3->kind() == SourceKind::UserTable);
        CHECK_THROWS(CoefficientSource::user_table((dir / "ntv_missing_table.csv").string()));
        std::filesystem::remove(p2);
        std::filesystem::remove(p3);
    }
}
