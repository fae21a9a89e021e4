#pragma once
#include "ntv/expsum.hpp"

namespace ntv {

// sum over alpha1, alpha2 mod q of e((-a(alpha1^2+alpha2^2) + m1 alpha1 + m2 alpha2)/q).
// closed mode is the stated simplification eps_q^2 q e(-inv(4a)(m1^2+m2^2)/q); odd q only
cplx frakC(i64 m1, i64 m2, i64 a, i64 q, Mode mode);
// completed-square evaluation: eps_q^2 q e(+inv(4a)(m1^2+m2^2)/q), odd q
cplx frakC_completed(i64 m1, i64 m2, i64 a, i64 q);

// sign = +1 or -1 selects S(a^-1, +-m; q/n)
cplx frakC1(i64 m1, i64 m2, i64 m, i64 n, i64 n3, int k, i64 q, int sign);
// q eps_q^2 sum* S(a^-1, +-m; q/n) e(s*inv(4a)(m1^2+m2^2)/q) e(-a n3^k/q); s = -1 as stated, +1 completed
cplx frakC1_simplified(i64 m1, i64 m2, i64 m, i64 n, i64 n3, int k, i64 q, int sign, int s = -1);

struct FreqSumInput {
    i64 q = 1, n = 1, m1 = 0, m2 = 0, n3 = 1, n3p = 1;
    int k = 3;
    i64 m = 0;
    int sign = 1;
};

// (n/q) sum_{j mod q/n} e(mj/(q/n)) C1(+-j, n3) conj C1(+-j, n3')
cplx frak_S(const FreqSumInput& in);
// q^3 c_q(n3'^k - n3^k)
double zero_freq_oracle(const FreqSumInput& in);

struct NonzeroRatio {
    double value;        // |S|
    double ratio_gcd;    // branch from gcd(q3', n3^k n3'^k m)
    double ratio_div;    // branch from q3' | m
    bool coprime_gcd, coprime_div;
};
NonzeroRatio nonzero_bound_ratio(const FreqSumInput& in);

struct CorrelationParams {
    i64 c[5];
    bool admissible(i64 p) const;
    // the substitution block built from the frequency-sum data at prime p
    static CorrelationParams from_sum(i64 p, i64 q12, i64 n, i64 m1, i64 m2, i64 n3, i64 n3p, int k, i64 m, int sign);
};

// sum* over beta of S(c1, c2 + c5 beta; p) S(c3, c4 + c5 inv(beta); p)
cplx kloosterman_correlation(i64 p, const CorrelationParams& c);
// the beta1-sum before the change of variables, including the a1, a2 sums
cplx correlation_pre_substitution(i64 p, i64 q12, i64 n, i64 m1, i64 m2, i64 n3, i64 n3p, int k, i64 m, int sign);

cplx frakCprime(i64 m1, i64 m2, i64 a, i64 q, const QuadraticForm& Q);
cplx frakS1(i64 m1, i64 m2, i64 n, i64 q, const QuadraticForm& Q);
// (q1^3/n) q2^2 d(q1) d(q2) with q1 the (2n|A|)-part of q
double frakS1_bound(i64 n, i64 q, const QuadraticForm& Q);

}  // namespace ntv
