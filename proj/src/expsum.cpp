#include "ntv/expsum.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ntv {

RootTable::RootTable(i64 q) : q_(q), w_(static_cast<std::size_t>(q)) {
    if (q < 1) throw std::invalid_argument("RootTable: q must be positive");
    for (i64 k = 0; k < q; ++k) w_[k] = std::polar(1.0, 2.0 * M_PI * double(k) / double(q));
}

cplx e_rat(i64 num, i64 den) {
    return std::polar(1.0, 2.0 * M_PI * double(mod(num, den)) / double(den));
}

std::vector<i64> inverse_table(i64 q) {
    std::vector<i64> inv(static_cast<std::size_t>(q), 0);
    if (q == 1) {
        inv[0] = 0;
        return inv;
    }
    for (i64 x = 1; x < q; ++x) {
        if (inv[x] || std::gcd(x, q) != 1) continue;
        i64 y = inv_mod(x, q);
        inv[x] = y;
        inv[y] = x;
    }
    return inv;
}

cplx kloosterman(i64 a, i64 b, i64 q) {
    if (q < 1) throw std::invalid_argument("kloosterman: q must be positive");
    if (q == 1) return 1.0;
    RootTable e(q);
    auto inv = inverse_table(q);
    i64 am = mod(a, q), bm = mod(b, q);
    CSum s;
    for (i64 x = 1; x < q; ++x) {
        if (!inv[x]) continue;
        s += e((am * x + bm * inv[x]) % q);
    }
    return s.value();
}

cplx kloosterman_crt(i64 a, i64 b, i64 q) {
    if (q < 1) throw std::invalid_argument("kloosterman: q must be positive");
    cplx r = 1.0;
    for (auto [p, e] : factorize(static_cast<u64>(q)).entries) {
        i64 qi = 1;
        for (int i = 0; i < e; ++i) qi *= static_cast<i64>(p);
        i64 c = inv_mod(mod(q / qi, qi), qi);
        r *= kloosterman(mod(i128(a) * c, qi), mod(i128(b) * c, qi), qi);
    }
    return r;
}

double ramanujan_sum(i64 m, i64 q) {
    if (q < 1) throw std::invalid_argument("ramanujan_sum: q must be positive");
    i64 g = std::gcd(mod(m, q), q);
    if (g == 0) g = q;
    double s = 0;
    for (u64 d : divisors(static_cast<u64>(g)))
        s += double(d) * moebius(factorize(static_cast<u64>(q) / d));
    return s;
}

double ramanujan_sum_direct(i64 m, i64 q) { return kloosterman(m, 0, q).real(); }

cplx quad_gauss(i64 a, i64 q, Mode mode) {
    if (q < 1) throw std::invalid_argument("quad_gauss: q must be positive");
    if (mode == Mode::direct) {
        RootTable e(q);
        i64 am = mod(a, q);
        CSum s;
        for (i64 x = 0; x < q; ++x) s += e(mod(i128(am) * (x * x % q), q));
        return s.value();
    }
    if (std::gcd(mod(a, q), q) != 1) throw std::domain_error("quad_gauss: closed mode needs gcd(a,q)=1");
    const double rq = std::sqrt(double(q));
    if (q % 4 == 2) return 0.0;
    if (q % 2 == 1) return eps_q(q) * rq * double(jacobi(a, q));
    i64 ap = mod(a, q);  // odd, since gcd(a,q)=1 and q even
    return cplx(1, 1) * std::conj(eps_q(ap)) * rq * double(jacobi(q, ap));
}

QuadraticForm::QuadraticForm(i64 A_, i64 B_, i64 C_) : A(A_), B(B_), C(C_) {
    if (A <= 0 || A * B - C * C <= 0)
        throw std::invalid_argument("QuadraticForm: form is not positive definite");
}

IntegralForm IntegralForm::binary(const QuadraticForm& Q) {
    return {2, {2 * Q.A, 2 * Q.C, 2 * Q.C, 2 * Q.B}};
}

IntegralForm IntegralForm::diagonal(const std::vector<i64>& c) {
    IntegralForm F{static_cast<int>(c.size()), std::vector<i64>(c.size() * c.size(), 0)};
    for (std::size_t i = 0; i < c.size(); ++i) F.H[i * c.size() + i] = 2 * c[i];
    return F;
}

namespace {

i64 det_rec(const std::vector<i64>& M, int n) {
    if (n == 0) return 1;
    if (n == 1) return M[0];
    i64 s = 0;
    for (int j = 0; j < n; ++j) {
        std::vector<i64> sub;
        for (int r = 1; r < n; ++r)
            for (int c = 0; c < n; ++c)
                if (c != j) sub.push_back(M[r * n + c]);
        i64 t = M[j] * det_rec(sub, n - 1);
        s += (j % 2 ? -t : t);
    }
    return s;
}

}  // namespace

i64 IntegralForm::det_hessian() const { return det_rec(H, r); }

std::vector<i64> IntegralForm::adj_hessian() const {
    std::vector<i64> adj(r * r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            std::vector<i64> sub;
            for (int a = 0; a < r; ++a)
                for (int b = 0; b < r; ++b)
                    if (a != i && b != j) sub.push_back(H[a * r + b]);
            i64 c = det_rec(sub, r - 1);
            adj[j * r + i] = ((i + j) % 2 ? -c : c);
        }
    return adj;
}

i128 IntegralForm::value(const std::vector<i64>& x) const {
    i128 s = 0;
    for (int i = 0; i < r; ++i) {
        s += i128(H[i * r + i] / 2) * x[i] * x[i];
        for (int j = i + 1; j < r; ++j) s += i128(H[i * r + j]) * x[i] * x[j];
    }
    return s;
}

cplx form_gauss(const IntegralForm& F, const std::vector<i64>& m, i64 a, i64 q, Mode mode) {
    if (q < 1) throw std::invalid_argument("form_gauss: q must be positive");
    if (static_cast<int>(m.size()) != F.r) throw std::invalid_argument("form_gauss: dimension mismatch");
    if (mode == Mode::direct) {
        RootTable e(q);
        std::vector<i64> x(F.r, 0);
        CSum s;
        while (true) {
            i128 v = F.value(x);
            for (int i = 0; i < F.r; ++i) v += i128(m[i]) * x[i];
            s += e(mod(i128(mod(v, q)) * mod(a, q), q));
            int i = 0;
            while (i < F.r && ++x[i] == q) x[i++] = 0;
            if (i == F.r) break;
        }
        return s.value();
    }
    const i64 dh = F.det_hessian();
    if (std::gcd(mod(i128(2) * dh * a, q), q) != 1 && q > 1)
        throw std::domain_error("form_gauss: closed mode needs (q, 2|A|a) = 1");
    if (q == 1) return 1.0;
    const auto adj = F.adj_hessian();
    i128 qs = 0;
    for (int i = 0; i < F.r; ++i)
        for (int j = 0; j < F.r; ++j) qs += i128(m[i]) * adj[i * F.r + j] * m[j];
    i64 qstar = mod(i128(mod(qs, q)) * inv_mod(mod(i128(2) * dh, q), q), q);
    cplx g1 = eps_q(q) * double(jacobi(mod(i128(2) * a, q), q)) * std::sqrt(double(q));
    cplx gr = 1.0;
    for (int i = 0; i < F.r; ++i) gr *= g1;
    return double(jacobi(mod(dh, q), q)) * gr * e_rat(-mod(i128(mod(a, q)) * qstar, q), q);
}

cplx form_gauss(const QuadraticForm& Q, i64 m1, i64 m2, i64 a, i64 q, Mode mode) {
    return form_gauss(IntegralForm::binary(Q), {m1, m2}, a, q, mode);
}

double weil_bound(i64 a, i64 b, i64 q) {
    i64 g = std::gcd(std::gcd(mod(a, q), mod(b, q)), q);
    if (g == 0) g = q;
    return double(n_divisors(factorize(static_cast<u64>(q)))) * std::sqrt(double(g)) * std::sqrt(double(q));
}

}  // namespace ntv
