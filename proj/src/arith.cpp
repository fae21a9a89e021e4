#include "ntv/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ntv {

u64 Factorization::value() const {
    u64 v = 1;
    for (auto [p, e] : entries)
        for (int i = 0; i < e; ++i) v *= p;
    return v;
}

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    static const u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 p : small)
        if (n % p == 0) return n == p;
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // bases 2..37 are deterministic below 3.3e24
    for (u64 a : small) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                comp = false;
                break;
            }
        }
        if (comp) return false;
    }
    return true;
}

namespace {

// Brent's cycle variant, fixed start x0=2 and increasing c
u64 pollard_brent(u64 n) {
    if (n % 2 == 0) return 2;
    for (u64 c = 1;; ++c) {
        u64 y = 2, g = 1, q = 1, x = 0, ys = 0;
        const u64 m = 128;
        u64 r = 1;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        do {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r <<= 1;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void split(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    u64 d = pollard_brent(n);
    split(d, out);
    split(n / d, out);
}

}  // namespace

Factorization factorize(u64 n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be positive");
    if (n > (u64(1) << 63)) throw std::out_of_range("factorize: n above 2^63");
    Factorization f;
    auto push = [&](u64 p, int e) {
        if (e) f.entries.push_back({p, e});
    };
    int e = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++e;
    }
    push(2, e);
    for (u64 p = 3; p < 1000000 && p * p <= n; p += 2) {
        e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        push(p, e);
    }
    if (n > 1) {
        std::vector<u64> ps;
        split(n, ps);
        std::sort(ps.begin(), ps.end());
        for (std::size_t i = 0; i < ps.size();) {
            std::size_t j = i;
            while (j < ps.size() && ps[j] == ps[i]) ++j;
            push(ps[i], static_cast<int>(j - i));
            i = j;
        }
    }
    return f;
}

i64 inv_mod(i64 a, i64 q) {
    if (q <= 0) throw std::domain_error("inv_mod: modulus must be positive");
    if (q == 1) return 0;
    i64 r0 = q, r1 = mod(a, q), s0 = 0, s1 = 1;
    while (r1) {
        i64 t = r0 / r1;
        std::tie(r0, r1) = std::make_pair(r1, r0 - t * r1);
        std::tie(s0, s1) = std::make_pair(s1, s0 - t * s1);
    }
    if (r0 != 1) throw std::domain_error("inv_mod: argument not invertible");
    return mod(s0, q);
}

int jacobi(i64 a, i64 n) {
    if (n <= 0 || n % 2 == 0) throw std::invalid_argument("jacobi: n must be odd and positive");
    a = mod(a, n);
    int t = 1;
    while (a) {
        while (a % 2 == 0) {
            a /= 2;
            i64 r = n % 8;
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) t = -t;
        a %= n;
    }
    return n == 1 ? t : 0;
}

cplx eps_q(i64 q) {
    if (q <= 0 || q % 2 == 0) throw std::invalid_argument("eps_q: q must be odd and positive");
    return q % 4 == 1 ? cplx(1, 0) : cplx(0, 1);
}

u64 n_divisors(const Factorization& f) {
    u64 r = 1;
    for (auto [p, e] : f.entries) r *= e + 1;
    return r;
}

u64 n_divisors3(const Factorization& f) {
    u64 r = 1;
    for (auto [p, e] : f.entries) r *= u64(e + 1) * (e + 2) / 2;
    return r;
}

int moebius(const Factorization& f) {
    for (auto [p, e] : f.entries)
        if (e > 1) return 0;
    return f.entries.size() % 2 ? -1 : 1;
}

u64 totient(const Factorization& f) {
    u64 r = 1;
    for (auto [p, e] : f.entries) {
        r *= p - 1;
        for (int i = 1; i < e; ++i) r *= p;
    }
    return r;
}

std::vector<u64> divisors(u64 n) {
    std::vector<u64> ds{1};
    for (auto [p, e] : factorize(n).entries) {
        std::size_t m = ds.size();
        u64 pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < m; ++j) ds.push_back(ds[j] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

MultTables mult_tables(u64 N, std::size_t budget_bytes) {
    if (N < 1) throw std::invalid_argument("mult_tables: N must be positive");
    if ((N + 1) > budget_bytes / MultTables::bytes_per_entry)
        throw std::length_error("mult_tables: memory budget exceeded");
    MultTables t;
    t.N = N;
    t.d.assign(N + 1, 0);
    t.d3.assign(N + 1, 0);
    t.phi.assign(N + 1, 0);
    t.mu.assign(N + 1, 0);
    t.vm.assign(N + 1, 0.0);
    t.spf.assign(N + 1, 0);
    std::vector<std::uint8_t> cnt(N + 1, 0);  // exponent of spf
    std::vector<std::uint32_t> primes;
    t.d[1] = t.d3[1] = t.phi[1] = 1;
    t.mu[1] = 1;
    for (u64 i = 2; i <= N; ++i) {
        if (t.spf[i] == 0) {
            t.spf[i] = static_cast<std::uint32_t>(i);
            primes.push_back(static_cast<std::uint32_t>(i));
            cnt[i] = 1;
            t.d[i] = 2;
            t.d3[i] = 3;
            t.phi[i] = static_cast<std::uint32_t>(i - 1);
            t.mu[i] = -1;
        }
        for (std::uint32_t p : primes) {
            u64 ip = i * p;
            if (p > t.spf[i] || ip > N) break;
            t.spf[ip] = p;
            if (p == t.spf[i]) {
                int e = cnt[i];
                cnt[ip] = static_cast<std::uint8_t>(e + 1);
                t.d[ip] = t.d[i] / (e + 1) * (e + 2);
                t.d3[ip] = t.d3[i] / ((e + 1) * (e + 2) / 2) * ((e + 2) * (e + 3) / 2);
                t.phi[ip] = t.phi[i] * p;
                t.mu[ip] = 0;
            } else {
                cnt[ip] = 1;
                t.d[ip] = t.d[i] * 2;
                t.d3[ip] = t.d3[i] * 3;
                t.phi[ip] = t.phi[i] * (p - 1);
                t.mu[ip] = static_cast<std::int8_t>(-t.mu[i]);
            }
        }
    }
    for (std::uint32_t p : primes) {
        double lp = std::log(double(p));
        for (u64 pk = p; pk <= N; pk *= p) {
            t.vm[pk] = lp;
            if (pk > N / p) break;
        }
    }
    return t;
}

std::vector<std::uint32_t> primes_upto(u64 N) {
    std::vector<char> comp(N + 1, 0);
    std::vector<std::uint32_t> ps;
    for (u64 i = 2; i <= N; ++i) {
        if (comp[i]) continue;
        ps.push_back(static_cast<std::uint32_t>(i));
        for (u64 j = i * i; j <= N; j += i) comp[j] = 1;
    }
    return ps;
}

std::vector<std::uint32_t> spf_table(u64 N) {
    std::vector<std::uint32_t> spf(N + 1, 0);
    for (u64 i = 2; i <= N; ++i) {
        if (spf[i]) continue;
        spf[i] = static_cast<std::uint32_t>(i);
        if (i * i > N) continue;
        for (u64 j = i * i; j <= N; j += i)
            if (!spf[j]) spf[j] = static_cast<std::uint32_t>(i);
    }
    return spf;
}

std::vector<std::uint32_t> d3_table(u64 N) {
    std::vector<std::uint32_t> d3(N + 1, 0), spf(N + 1, 0);
    std::vector<std::uint8_t> cnt(N + 1, 0);
    std::vector<std::uint32_t> primes;
    if (N >= 1) d3[1] = 1;
    for (u64 i = 2; i <= N; ++i) {
        if (!spf[i]) {
            spf[i] = static_cast<std::uint32_t>(i);
            primes.push_back(static_cast<std::uint32_t>(i));
            cnt[i] = 1;
            d3[i] = 3;
        }
        for (std::uint32_t p : primes) {
            u64 ip = i * p;
            if (p > spf[i] || ip > N) break;
            spf[ip] = p;
            if (p == spf[i]) {
                int e = cnt[i];
                cnt[ip] = static_cast<std::uint8_t>(e + 1);
                d3[ip] = d3[i] / ((e + 1) * (e + 2) / 2) * ((e + 2) * (e + 3) / 2);
            } else {
                cnt[ip] = 1;
                d3[ip] = d3[i] * 3;
            }
        }
    }
    return d3;
}

std::vector<std::uint32_t> d3_table_parallel(u64 N, u64 block) {
    std::vector<std::uint32_t> d3(N + 1, 0);
    if (N == 0) return d3;
    const auto ps = primes_upto(iroot(N, 2));
    const u64 nblocks = (N + block) / block;  // covers 0..N
#pragma omp parallel
    {
        std::vector<u64> rem(block);
#pragma omp for schedule(dynamic)
        for (i64 b = 0; b < static_cast<i64>(nblocks); ++b) {
            u64 lo = u64(b) * block, hi = std::min(N + 1, lo + block);
            for (u64 n = lo; n < hi; ++n) {
                rem[n - lo] = n;
                d3[n] = 1;
            }
            for (std::uint32_t p : ps) {
                if (u64(p) * p >= hi) break;
                u64 start = (lo + p - 1) / p * p;
                if (start == 0) start = p;
                for (u64 n = start; n < hi; n += p) {
                    int e = 0;
                    u64& r = rem[n - lo];
                    while (r % p == 0) {
                        r /= p;
                        ++e;
                    }
                    d3[n] *= (e + 1) * (e + 2) / 2;
                }
            }
            for (u64 n = std::max<u64>(lo, 1); n < hi; ++n)
                if (rem[n - lo] > 1) d3[n] *= 3;
            if (lo == 0) d3[0] = 0;
        }
    }
    return d3;
}

SquarefullSplit squarefull_split(u64 q) {
    SquarefullSplit s{1, 1};
    for (auto [p, e] : factorize(q).entries) {
        u64 pe = 1;
        for (int i = 0; i < e; ++i) pe *= p;
        (e == 1 ? s.squarefree_part : s.squarefull_part) *= pe;
    }
    return s;
}

u64 iroot(u64 x, int k) {
    if (k == 1 || x < 2) return x;
    u64 r = static_cast<u64>(std::pow(double(x), 1.0 / k));
    auto pw = [k](u64 b) {
        u128 v = 1;
        for (int i = 0; i < k; ++i) {
            v *= b;
            if (v > (u128(1) << 64)) return u128(1) << 65;
        }
        return v;
    };
    while (r > 0 && pw(r) > x) --r;
    while (pw(r + 1) <= x) ++r;
    return r;
}

u64 count_squarefull(u64 X) {
    // n = a^2 b^3 uniquely with b squarefree
    u64 bmax = iroot(X, 3), total = 0;
    std::vector<char> sqfree(bmax + 1, 1);
    for (u64 p = 2; p * p <= bmax; ++p)
        for (u64 j = p * p; j <= bmax; j += p * p) sqfree[j] = 0;
    for (u64 b = 1; b <= bmax; ++b)
        if (sqfree[b]) total += iroot(X / (b * b * b), 2);
    return total;
}

ModulusSplit modulus_split(u64 q, u64 seed) {
    ModulusSplit s{1, q, seed};
    for (auto [p, e] : factorize(q).entries) {
        if (seed % p) continue;
        for (int i = 0; i < e; ++i) {
            s.seeded *= p;
            s.coprime /= p;
        }
    }
    return s;
}

}  // namespace ntv
