#pragma once
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ntv/arith.hpp"

namespace ntv {

u64 sigma00(u64 m, u64 n);

// Ramanujan tau from the q-expansion of eta^24.
struct TauTable {
    u64 N = 0;
    u64 exact_limit = 0;
    std::vector<i128> exact;    // tau(n) for n <= exact_limit
    std::vector<double> lam;    // tau(n)/n^{11/2}; past exact_limit only primes are filled (NaN elsewhere)
    i128 tau(u64 n) const;      // n <= exact_limit
    double lambda(u64 n) const { return lam.at(n); }
};

// exact table up to N (N <= 10^6 by default budget)
std::vector<i128> tau_table(u64 N);
// normalized values up to N, exact integers up to min(N, exact_limit)
TauTable compute_tau(u64 N, u64 exact_limit = 1000000);
// same values, stored under $NTV_CACHE_DIR when that is set
TauTable compute_tau_cached(u64 N, u64 exact_limit = 1000000);

// complete homogeneous / Schur on the set {a^2, 1, a^-2} with lam = a + 1/a real
double schur_jacobi_trudi(int l1, int l2, double lam);
double schur_weyl(int l1, int l2, double lam, double switch_eps = 1e-8);

enum class SourceKind { TripleDivisor, Sym2Discriminant, UserTable };
std::string to_string(SourceKind k);

class CoefficientSource {
public:
    static std::shared_ptr<CoefficientSource> triple_divisor(u64 limit);
    static std::shared_ptr<CoefficientSource> sym2_discriminant(u64 limit);
    // CSV with (n,value) or (m,n,value) rows; '#' comment lines skipped
    static std::shared_ptr<CoefficientSource> user_table(const std::string& path);

    SourceKind kind() const { return kind_; }
    u64 limit() const { return limit_; }
    // A(n) = Lambda(1,n)
    double A(u64 n) const;
    double lambda(u64 m, u64 n) const;
    // local factor at p^a, p^b
    double local(u64 p, int a, int b) const;

private:
    SourceKind kind_{};
    u64 limit_ = 0;
    std::vector<std::uint32_t> spf_;
    std::vector<std::uint32_t> d3_;
    std::shared_ptr<TauTable> tau_;
    std::map<std::pair<u64, u64>, double> user_;
    bool user_two_col_ = true;
    std::vector<std::pair<u64, int>> factor(u64 n) const;
};

struct L2Ratio {
    double sum;
    double ratio;  // sum / X^{1-w}, NaN when w >= 1
};
L2Ratio l2_ratio(u64 X, const CoefficientSource& src, double w);

}  // namespace ntv
