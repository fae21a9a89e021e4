#pragma once
#include <complex>
#include <cstdint>
#include <vector>

namespace ntv {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;
using cplx = std::complex<double>;

struct PrimePower {
    u64 p;
    int e;
    bool operator==(const PrimePower&) const = default;
};

struct Factorization {
    std::vector<PrimePower> entries;
    u64 value() const;
};

// deterministic; throws std::invalid_argument on 0, std::out_of_range above 2^63
Factorization factorize(u64 n);
bool is_prime(u64 n);
u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);

// a mod q in [0,q)
inline i64 mod(i64 a, i64 q) {
    i64 r = a % q;
    return r < 0 ? r + q : r;
}
inline i64 mod(i128 a, i64 q) {
    i64 r = static_cast<i64>(a % q);
    return r < 0 ? r + q : r;
}

i64 inv_mod(i64 a, i64 q);       // throws std::domain_error if gcd(a,q) != 1
int jacobi(i64 a, i64 n);        // n odd positive, else std::invalid_argument
cplx eps_q(i64 q);               // 1 or i; odd q only

// per-factorization helpers
u64 n_divisors(const Factorization& f);
u64 n_divisors3(const Factorization& f);
int moebius(const Factorization& f);
u64 totient(const Factorization& f);
std::vector<u64> divisors(u64 n);

// MultTables: flat arrays indexed 0..N (index 0 unused)
struct MultTables {
    u64 N = 0;
    std::vector<std::uint32_t> d, d3, phi;
    std::vector<std::int8_t> mu;
    std::vector<double> vm;   // von Mangoldt
    std::vector<std::uint32_t> spf;
    static constexpr std::size_t bytes_per_entry = 4 + 4 + 4 + 1 + 8 + 4 + 1;
};

// linear sieve; throws std::length_error if N*bytes_per_entry exceeds budget
MultTables mult_tables(u64 N, std::size_t budget_bytes = std::size_t(1) << 30);

// d3 only, serial linear sieve (reference)
std::vector<std::uint32_t> d3_table(u64 N);
// d3 only, segmented and OpenMP-parallel over blocks
std::vector<std::uint32_t> d3_table_parallel(u64 N, u64 block = 1u << 16);
std::vector<std::uint32_t> primes_upto(u64 N);
// smallest prime factor table
std::vector<std::uint32_t> spf_table(u64 N);

struct SquarefullSplit {
    u64 squarefree_part;  // q'
    u64 squarefull_part;  // q''
};
SquarefullSplit squarefull_split(u64 q);
u64 count_squarefull(u64 X);

struct ModulusSplit {
    u64 seeded;    // primes of seed, full exponent
    u64 coprime;   // coprime to seed
    u64 seed;
};
ModulusSplit modulus_split(u64 q, u64 seed);

// floor(x^(1/k)) exactly
u64 iroot(u64 x, int k);

}  // namespace ntv
