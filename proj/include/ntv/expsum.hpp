#pragma once
#include <vector>

#include "ntv/arith.hpp"

namespace ntv {

// e(k/q) for k mod q, built once per modulus
class RootTable {
public:
    explicit RootTable(i64 q);
    cplx operator()(i64 k) const { return w_[static_cast<std::size_t>(mod(k, q_))]; }
    i64 modulus() const { return q_; }

private:
    i64 q_;
    std::vector<cplx> w_;
};

// e(num/den) with exact reduction of the rational phase
cplx e_rat(i64 num, i64 den);
inline cplx e_real(double x) {
    double s = x - std::floor(x);
    return std::polar(1.0, 2.0 * M_PI * s);
}

// Neumaier compensated complex accumulator
struct CSum {
    double re = 0, im = 0, cre = 0, cim = 0;
    void add(double x, double& s, double& c) {
        double t = s + x;
        c += std::fabs(s) >= std::fabs(x) ? (s - t) + x : (x - t) + s;
        s = t;
    }
    void operator+=(cplx z) {
        add(z.real(), re, cre);
        add(z.imag(), im, cim);
    }
    cplx value() const { return {re + cre, im + cim}; }
};

// inverse table mod q: inv[x] for gcd(x,q)=1, 0 otherwise
std::vector<i64> inverse_table(i64 q);

cplx kloosterman(i64 a, i64 b, i64 q);       // direct O(q)
cplx kloosterman_crt(i64 a, i64 b, i64 q);   // twisted multiplicativity over prime powers
double ramanujan_sum(i64 m, i64 q);          // Moebius closed form
double ramanujan_sum_direct(i64 m, i64 q);

enum class Mode { direct, closed };

cplx quad_gauss(i64 a, i64 q, Mode mode);

// Ax^2 + By^2 + 2Cxy
struct QuadraticForm {
    i64 A, B, C;
    QuadraticForm(i64 A_, i64 B_, i64 C_);  // throws std::invalid_argument unless positive definite
    i64 det() const { return A * B - C * C; }
    i64 value(i64 x, i64 y) const { return A * x * x + B * y * y + 2 * C * x * y; }
    // adjoint form B x^2 + A y^2 - 2C xy, with N*Q*(m) = adj(m), N = 4 det
    i64 adj_value(i64 x, i64 y) const { return B * x * x + A * y * y - 2 * C * x * y; }
    i64 N() const { return 4 * det(); }
};

// Integral form Q(x) = x^T H x / 2 with symmetric H, even diagonal. Covers binary and diagonal rank-r.
struct IntegralForm {
    int r;
    std::vector<i64> H;  // r*r row major
    static IntegralForm binary(const QuadraticForm& Q);
    static IntegralForm diagonal(const std::vector<i64>& coeffs);
    i64 det_hessian() const;
    std::vector<i64> adj_hessian() const;
    i128 value(const std::vector<i64>& x) const;
};

// sum over x mod q of e(a (Q(x) + m.x) / q)
cplx form_gauss(const IntegralForm& F, const std::vector<i64>& m, i64 a, i64 q, Mode mode);
cplx form_gauss(const QuadraticForm& Q, i64 m1, i64 m2, i64 a, i64 q, Mode mode);

// d(q) gcd(a,b,q)^{1/2} q^{1/2}
double weil_bound(i64 a, i64 b, i64 q);

}  // namespace ntv
