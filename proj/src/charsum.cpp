#include "ntv/charsum.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ntv {

namespace {

i64 powk(i64 x, int k, i64 q) { return static_cast<i64>(powmod(static_cast<u64>(mod(x, q)), k, q)); }

void need_divides(i64 n, i64 q) {
    if (n < 1 || q < 1 || q % n) throw std::invalid_argument("character sum: n must divide q");
}

// S(x, y; r) for all x, y mod r, row-major
std::vector<double> kloosterman_grid(i64 r) {
    std::vector<double> g(static_cast<std::size_t>(r * r));
    if (r == 1) {
        g[0] = 1;
        return g;
    }
    RootTable e(r);
    auto inv = inverse_table(r);
    for (i64 x = 0; x < r; ++x)
        for (i64 y = 0; y < r; ++y) {
            double s = 0;
            for (i64 t = 1; t < r; ++t)
                if (inv[t]) s += e((x * t + y * inv[t]) % r).real();
            g[x * r + y] = s;
        }
    return g;
}

}  // namespace

cplx frakC(i64 m1, i64 m2, i64 a, i64 q, Mode mode) {
    if (q < 1) throw std::invalid_argument("frakC: q must be positive");
    if (std::gcd(mod(a, q), q) != 1) throw std::domain_error("frakC: gcd(a,q) must be 1");
    if (mode == Mode::closed) {
        if (q % 2 == 0) return frakC(m1, m2, a, q, Mode::direct);
        cplx e2 = eps_q(q) * eps_q(q);
        i64 c = inv_mod(mod(i128(4) * a, q), q);
        i64 M = mod(i128(m1) * m1 + i128(m2) * m2, q);
        return e2 * double(q) * e_rat(-mod(i128(c) * M, q), q);
    }
    // the double sum factors as a product of two one-dimensional sums
    RootTable e(q);
    i64 am = mod(a, q);
    CSum s1, s2;
    for (i64 x = 0; x < q; ++x) {
        i64 sq = mod(i128(am) * (x * x % q), q);
        s1 += e(mod(-sq + i128(m1) * x, q));
        s2 += e(mod(-sq + i128(m2) * x, q));
    }
    return s1.value() * s2.value();
}

cplx frakC_completed(i64 m1, i64 m2, i64 a, i64 q) {
    if (q % 2 == 0) throw std::domain_error("frakC_completed: odd q only");
    cplx e2 = eps_q(q) * eps_q(q);
    i64 c = inv_mod(mod(i128(4) * a, q), q);
    i64 M = mod(i128(m1) * m1 + i128(m2) * m2, q);
    return e2 * double(q) * e_rat(mod(i128(c) * M, q), q);
}

cplx frakC1(i64 m1, i64 m2, i64 m, i64 n, i64 n3, int k, i64 q, int sign) {
    need_divides(n, q);
    const i64 r = q / n;
    const i64 t = powk(n3, k, q);
    RootTable e(q);
    CSum s;
    for (i64 a = 0; a < q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        if (q == 1) {
            s += frakC(m1, m2, 0, 1, Mode::direct) * kloosterman(0, sign * m, r);
            continue;
        }
        i64 ai = inv_mod(a, r);
        s += kloosterman(ai, sign * m, r).real() * frakC(m1, m2, a, q, Mode::direct) * e(-mod(i128(a) * t, q));
    }
    return s.value();
}

cplx frakC1_simplified(i64 m1, i64 m2, i64 m, i64 n, i64 n3, int k, i64 q, int sign, int sgn) {
    need_divides(n, q);
    if (q % 2 == 0) throw std::domain_error("frakC1_simplified: odd q only");
    const i64 r = q / n;
    const i64 t = powk(n3, k, q);
    const i64 M = mod(i128(m1) * m1 + i128(m2) * m2, q);
    RootTable e(q);
    CSum s;
    for (i64 a = 0; a < q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        i64 c = q == 1 ? 0 : inv_mod(mod(i128(4) * a, q), q);
        i64 ph = mod(sgn * i128(c) * M - i128(a) * t, q);
        s += kloosterman(q == 1 ? 0 : inv_mod(a, r), sign * m, r).real() * e(ph);
    }
    return eps_q(q) * eps_q(q) * double(q) * s.value();
}

cplx frak_S(const FreqSumInput& in) {
    need_divides(in.n, in.q);
    const i64 q = in.q, r = q / in.n;
    const i64 t = powk(in.n3, in.k, q), tp = powk(in.n3p, in.k, q);
    // C1 for every j mod r at both n3 and n3'
    std::vector<cplx> fc(static_cast<std::size_t>(q));
    std::vector<i64> units;
    for (i64 a = 0; a < q; ++a)
        if (std::gcd(a, q) == 1) {
            units.push_back(a);
            fc[a] = frakC(in.m1, in.m2, a, q, Mode::direct);
        }
    auto K = kloosterman_grid(r);
    RootTable e(q), er(r);
    CSum total;
    for (i64 j = 0; j < r; ++j) {
        i64 y = mod(in.sign * j, r);
        CSum c1, c2;
        for (i64 a : units) {
            i64 ai = r == 1 ? 0 : inv_mod(mod(a, r), r);
            double kl = K[ai * r + y];
            c1 += kl * fc[a] * e(-mod(i128(a) * t, q));
            c2 += kl * fc[a] * e(-mod(i128(a) * tp, q));
        }
        total += er(mod(i128(in.m) * j, r)) * c1.value() * std::conj(c2.value());
    }
    return total.value() * (double(in.n) / double(q));
}

double zero_freq_oracle(const FreqSumInput& in) {
    const i64 q = in.q;
    i64 d = powk(in.n3p, in.k, q) - powk(in.n3, in.k, q);
    return double(q) * q * q * ramanujan_sum(d, q);
}

NonzeroRatio nonzero_bound_ratio(const FreqSumInput& in) {
    if (in.m == 0) throw std::domain_error("nonzero_bound_ratio: m must be nonzero");
    need_divides(in.n, in.q);
    const double v = std::abs(frak_S(in));
    auto ms = modulus_split(static_cast<u64>(in.q), static_cast<u64>(in.n));
    auto sf = squarefull_split(ms.coprime);
    const double q = double(in.q), n = double(in.n);
    const double b_cop = std::pow(q, 3.5) * std::sqrt(double(ms.seeded) * double(sf.squarefull_part)) / n;
    const double b_other = std::pow(q, 4) / n;
    const i64 q3p = static_cast<i64>(sf.squarefree_part);
    // gcd(q3', n3^k n3'^k m) = 1 iff each factor is coprime to q3'
    bool cop_gcd = std::gcd(q3p, powk(in.n3, in.k, q3p)) == 1 && std::gcd(q3p, powk(in.n3p, in.k, q3p)) == 1 &&
                   std::gcd(q3p, mod(in.m, q3p)) == 1;
    if (q3p == 1) cop_gcd = true;
    bool cop_div = q3p == 1 ? true : mod(in.m, q3p) != 0;
    return {v, v / (cop_gcd ? b_cop : b_other), v / (cop_div ? b_cop : b_other), cop_gcd, cop_div};
}

bool CorrelationParams::admissible(i64 p) const {
    return mod(i128(c[0]) * c[4], p) != 0 && mod(i128(c[2]) * c[4] % p * c[4], p) != 0;
}

CorrelationParams CorrelationParams::from_sum(i64 p, i64 q12, i64 n, i64 m1, i64 m2, i64 n3, i64 n3p, int k, i64 m,
                                              int sign) {
    const i64 iq = inv_mod(q12, p), iqn = inv_mod(q12 / n, p), i4 = inv_mod(4, p), im = inv_mod(m, p);
    const i64 M = mod(i128(m1) * m1 + i128(m2) * m2, p);
    CorrelationParams c;
    c.c[4] = mod(sign * i128(im) * iqn, p);
    c.c[0] = mod(-i128(iq) * powk(n3, k, p), p);
    c.c[1] = mod(-i128(i4) * iq % p * M - c.c[4], p);
    c.c[2] = mod(i128(iq) * powk(n3p, k, p), p);
    c.c[3] = mod(i128(i4) * iq % p * M - c.c[4], p);
    return c;
}

cplx kloosterman_correlation(i64 p, const CorrelationParams& c) {
    if (p < 3 || !is_prime(static_cast<u64>(p))) throw std::invalid_argument("kloosterman_correlation: p must be an odd prime");
    if (!c.admissible(p)) throw std::domain_error("kloosterman_correlation: degenerate determinant");
    // S(c1, y; p) and S(c3, y; p) tabulated over y
    RootTable e(p);
    auto inv = inverse_table(p);
    std::vector<double> S1(p), S3(p);
    for (i64 y = 0; y < p; ++y) {
        double s1 = 0, s3 = 0;
        for (i64 x = 1; x < p; ++x) {
            s1 += e((mod(c.c[0], p) * x + y * inv[x]) % p).real();
            s3 += e((mod(c.c[2], p) * x + y * inv[x]) % p).real();
        }
        S1[y] = s1;
        S3[y] = s3;
    }
    CSum s;
    for (i64 b = 1; b < p; ++b)
        s += S1[mod(c.c[1] + i128(c.c[4]) * b, p)] * S3[mod(c.c[3] + i128(c.c[4]) * inv[b], p)];
    return s.value();
}

cplx correlation_pre_substitution(i64 p, i64 q12, i64 n, i64 m1, i64 m2, i64 n3, i64 n3p, int k, i64 m, int sign) {
    const i64 iq = inv_mod(q12, p), iqn = inv_mod(q12 / n, p), i4 = inv_mod(4, p);
    const i64 M = mod(i128(m1) * m1 + i128(m2) * m2, p);
    const i64 t = powk(n3, k, p), tp = powk(n3p, k, p);
    RootTable e(p);
    auto inv = inverse_table(p);
    CSum s;
    for (i64 a1 = 1; a1 < p; ++a1)
        for (i64 a2 = 1; a2 < p; ++a2) {
            i64 ph = mod(-i128(i4) * inv[a1] % p * iq % p * M - i128(a1) * iq % p * t + i128(a2) * iq % p * tp +
                             i128(i4) * inv[a2] % p * iq % p * M,
                         p);
            CSum in;
            for (i64 b1 = 1; b1 < p; ++b1) {
                i64 d = mod(inv[b1] + sign * m, p);
                if (d == 0) continue;
                in += e(mod(i128(iqn) * mod(i128(inv[a1]) * b1 - i128(inv[a2]) * inv[d], p), p));
            }
            s += e(ph) * in.value();
        }
    return s.value();
}

cplx frakCprime(i64 m1, i64 m2, i64 a, i64 q, const QuadraticForm& Q) {
    RootTable e(q);
    CSum s;
    const i64 am = mod(a, q);
    for (i64 x = 0; x < q; ++x)
        for (i64 y = 0; y < q; ++y) {
            i64 qv = mod(Q.value(x, y), q);
            s += e(mod(-i128(am) * qv + i128(m1) * x + i128(m2) * y, q));
        }
    return s.value();
}

cplx frakS1(i64 m1, i64 m2, i64 n, i64 q, const QuadraticForm& Q) {
    need_divides(n, q);
    const i64 r = q / n;
    RootTable er(r);
    CSum s;
    for (i64 a = 0; a < q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        i64 ai = q == 1 ? 0 : inv_mod(a, q);
        CSum b;
        for (i64 beta = 0; beta < r; ++beta)
            if (std::gcd(beta, r) == 1) b += er(mod(i128(ai) * beta, r));
        s += b.value() * frakCprime(m1, m2, a, q, Q);
    }
    return s.value();
}

double frakS1_bound(i64 n, i64 q, const QuadraticForm& Q) {
    auto ms = modulus_split(static_cast<u64>(q), static_cast<u64>(2 * n * Q.det()));
    double q1 = double(ms.seeded), q2 = double(ms.coprime);
    double d1 = double(n_divisors(factorize(ms.seeded))), d2 = double(n_divisors(factorize(ms.coprime)));
    return q1 * q1 * q1 / double(n) * q2 * q2 * d1 * d2;
}

}  // namespace ntv
