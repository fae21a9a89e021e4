#include <boost/multiprecision/cpp_int.hpp>
#include <unistd.h>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ntv/coeffs.hpp"

namespace ntv {

namespace {

using u32 = std::uint32_t;

// 32-bit Montgomery arithmetic, p < 2^31
struct Mont {
    u32 p, ninv, r2;
    explicit Mont(u32 p_) : p(p_) {
        u32 inv = p;
        for (int i = 0; i < 5; ++i) inv *= 2 - p * inv;
        ninv = ~inv + 1;
        r2 = static_cast<u32>((u64(1) << 32) % p);
        r2 = static_cast<u32>(u64(r2) * r2 % p);
    }
    u32 mul(u32 a, u32 b) const {
        u64 t = u64(a) * b;
        u32 m = static_cast<u32>(t) * ninv;
        u32 r = static_cast<u32>((t + u64(m) * p) >> 32);
        return r >= p ? r - p : r;
    }
    u32 to(u64 a) const { return mul(static_cast<u32>(a % p), r2); }
    u32 from(u32 a) const { return mul(a, 1); }
};

u64 primitive_root(u64 p) {
    auto f = factorize(p - 1);
    for (u64 g = 2;; ++g) {
        bool ok = true;
        for (auto [q, e] : f.entries)
            if (powmod(g, (p - 1) / q, p) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
}

std::vector<u32> ntt_primes(int k, int count) {
    std::vector<u32> ps;
    for (u64 c = ((u64(1) << 31) - 1) >> k; c >= 1 && ps.size() < std::size_t(count); --c) {
        u64 p = (c << k) + 1;
        if (p < (u64(1) << 31) && is_prime(p)) ps.push_back(static_cast<u32>(p));
    }
    if (ps.size() < std::size_t(count)) throw std::length_error("tau: transform length too large");
    return ps;
}

struct Plan {
    Mont M;
    std::size_t n;
    std::vector<u32> fw, iw;  // twiddles for level len stored at [len/2, len)
    u32 ninv_m;
    Plan(u32 p, std::size_t n_) : M(p), n(n_), fw(n_), iw(n_) {
        const u64 g = primitive_root(p);
        for (std::size_t len = 2; len <= n; len <<= 1) {
            const std::size_t half = len / 2;
            u64 r = powmod(g, (p - 1) / len, p);
            u32 rm = M.to(r), rim = M.to(powmod(r, p - 2, p));
            fw[half] = iw[half] = M.to(1);
            for (std::size_t j = 1; j < half; ++j) {
                fw[half + j] = M.mul(fw[half + j - 1], rm);
                iw[half + j] = M.mul(iw[half + j - 1], rim);
            }
        }
        ninv_m = M.to(powmod(n % p, p - 2, p));
    }
    void dif_level(u32* a, std::size_t span, std::size_t len) const {
        const u32 p = M.p;
        const std::size_t half = len / 2;
        const u32* w = fw.data() + half;
        for (std::size_t i = 0; i < span; i += len) {
            u32* x = a + i;
            u32* y = a + i + half;
            for (std::size_t j = 0; j < half; ++j) {
                u32 u = x[j], v = y[j];
                u32 s = u + v;
                x[j] = s >= p ? s - p : s;
                y[j] = M.mul(u >= v ? u - v : u + p - v, w[j]);
            }
        }
    }
    void dit_level(u32* a, std::size_t span, std::size_t len) const {
        const u32 p = M.p;
        const std::size_t half = len / 2;
        const u32* w = iw.data() + half;
        for (std::size_t i = 0; i < span; i += len) {
            u32* x = a + i;
            u32* y = a + i + half;
            for (std::size_t j = 0; j < half; ++j) {
                u32 u = x[j], v = M.mul(y[j], w[j]);
                u32 s = u + v;
                x[j] = s >= p ? s - p : s;
                y[j] = u >= v ? u - v : u + p - v;
            }
        }
    }
    // natural order in, bit-reversed out; levels below `blk` run block by block to stay in cache
    void forward(u32* a) const {
        const std::size_t blk = std::min<std::size_t>(n, 1 << 14);
        for (std::size_t len = n; len > blk; len >>= 1) dif_level(a, n, len);
#pragma omp parallel for schedule(static)
        for (std::size_t b = 0; b < n; b += blk)
            for (std::size_t len = blk; len >= 2; len >>= 1) dif_level(a + b, blk, len);
    }
    // bit-reversed in, natural out, scaled by 1/n
    void inverse(u32* a) const {
        const std::size_t blk = std::min<std::size_t>(n, 1 << 14);
#pragma omp parallel for schedule(static)
        for (std::size_t b = 0; b < n; b += blk)
            for (std::size_t len = 2; len <= blk; len <<= 1) dit_level(a + b, blk, len);
        for (std::size_t len = 2 * blk; len <= n; len <<= 1) dit_level(a, n, len);
        for (std::size_t i = 0; i < n; ++i) a[i] = M.mul(a[i], ninv_m);
    }
    void square_trunc(std::vector<u32>& a, std::size_t keep) const {
        forward(a.data());
        for (auto& x : a) x = M.mul(x, x);
        inverse(a.data());
        std::fill(a.begin() + keep, a.end(), 0);
    }
};

}  // namespace

i128 TauTable::tau(u64 n) const {
    if (n == 0 || n > exact_limit) throw std::out_of_range("tau: index outside exact table");
    return exact[n];
}

TauTable compute_tau(u64 N, u64 exact_limit) {
    using boost::multiprecision::int256_t;
    if (N < 1) throw std::invalid_argument("compute_tau: N must be positive");
    TauTable T;
    T.N = N;
    T.exact_limit = std::min(N, exact_limit);
    // prod (1-q^n)^24 = A^8 with A = prod (1-q^n)^3 = sum (-1)^k (2k+1) q^{k(k+1)/2};
    // tau(n) is the coefficient of q^{n-1}
    const std::size_t len = N;
    std::vector<i64> B(len, 0);
    std::vector<std::pair<std::size_t, i64>> A;
    for (i64 k = 0;; ++k) {
        std::size_t e = std::size_t(k) * (k + 1) / 2;
        if (e >= len) break;
        A.push_back({e, (k % 2 ? -1 : 1) * (2 * k + 1)});
    }
    for (auto [i, ai] : A)
        for (auto [j, aj] : A) {
            if (i + j >= len) break;
            B[i + j] += ai * aj;
        }
    std::size_t L = 2;
    int k = 1;
    while (L < 2 * len) {
        L <<= 1;
        ++k;
    }
    // |tau(n)| <= d(n) n^{11/2}; five 31-bit primes leave ample room up to ~10^7
    constexpr int NP = 5;
    const auto ps = ntt_primes(k, NP);
    std::vector<std::vector<u32>> res(NP);
    for (int t = 0; t < NP; ++t) {
        Plan P(ps[t], L);
        std::vector<u32> a(L, 0);
        for (std::size_t i = 0; i < len; ++i) a[i] = P.M.to(static_cast<u64>(mod(B[i], i64(ps[t]))));
        P.square_trunc(a, len);  // A^4
        P.square_trunc(a, len);  // A^8
        a.resize(len);
        for (auto& x : a) x = P.M.from(x);
        res[t] = std::move(a);
    }
    // Garner mixed-radix digits, balanced top digit
    u64 inv[NP][NP];
    for (int i = 0; i < NP; ++i)
        for (int j = 0; j < NP; ++j) inv[i][j] = i == j ? 0 : powmod(ps[i] % ps[j], ps[j] - 2, ps[j]);
    int256_t prefix[NP];
    prefix[0] = 1;
    for (int i = 1; i < NP; ++i) prefix[i] = prefix[i - 1] * ps[i - 1];
    auto reconstruct = [&](u64 n) {
        u64 dgt[NP];
        for (int j = 0; j < NP; ++j) {
            u64 x = res[j][n - 1];
            for (int i = 0; i < j; ++i) x = (x + ps[j] - dgt[i] % ps[j]) % ps[j] * inv[i][j] % ps[j];
            dgt[j] = x;
        }
        int256_t v = 0;
        for (int j = 0; j < NP; ++j) {
            i64 d = static_cast<i64>(dgt[j]);
            if (j == NP - 1 && dgt[j] > ps[j] / 2) d -= ps[j];
            v += prefix[j] * d;
        }
        return v;
    };
    auto spf = spf_table(N);
    T.exact.assign(T.exact_limit + 1, 0);
    T.lam.assign(N + 1, std::numeric_limits<double>::quiet_NaN());
    for (u64 n = 1; n <= N; ++n) {
        if (n > T.exact_limit && spf[n] != n) continue;
        int256_t v = reconstruct(n);
        T.lam[n] = static_cast<double>(static_cast<long double>(v) / std::pow((long double)n, 5.5L));
        if (n <= T.exact_limit) T.exact[n] = static_cast<i128>(v);
    }
    return T;
}

std::vector<i128> tau_table(u64 N) { return compute_tau(N, N).exact; }

}  // namespace ntv

namespace ntv {

TauTable compute_tau_cached(u64 N, u64 exact_limit) {
    const char* dir = std::getenv("NTV_CACHE_DIR");
    if (!dir || !*dir) return compute_tau(N, exact_limit);
    const std::filesystem::path path = std::filesystem::path(dir) / ("tau_lambda_" + std::to_string(N) + ".bin");
    const u64 el = std::min(N, exact_limit);
    {
        std::ifstream in(path, std::ios::binary);
        if (in) {
            TauTable T = compute_tau(el, el);
            T.N = N;
            T.lam.assign(N + 1, 0.0);
            in.read(reinterpret_cast<char*>(T.lam.data()), static_cast<std::streamsize>((N + 1) * sizeof(double)));
            if (in.gcount() == static_cast<std::streamsize>((N + 1) * sizeof(double))) return T;
        }
    }
    TauTable T = compute_tau(N, exact_limit);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    // write to a temporary name first so a concurrent reader never sees a partial file
    const auto tmp = path.string() + ".tmp" + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary);
        out.write(reinterpret_cast<const char*>(T.lam.data()), static_cast<std::streamsize>(T.lam.size() * sizeof(double)));
    }
    std::filesystem::rename(tmp, path, ec);
    return T;
}

}  // namespace ntv
