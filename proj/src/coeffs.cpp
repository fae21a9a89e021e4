#include "ntv/coeffs.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ntv {

u64 sigma00(u64 m, u64 n) {
    if (m < 1 || n < 1) throw std::invalid_argument("sigma00: arguments must be positive");
    u64 r = 1;
    for (auto [p, e] : factorize(n).entries) r *= (m % p == 0) ? u64(e + 1) : u64(e + 1) * (e + 2) / 2;
    return r;
}

namespace {

std::vector<double> h_seq(int kmax, double lam) {
    // h_k on {a^2,1,a^-2}: e1 = e2 = lam^2 - 1, e3 = 1
    const double e = lam * lam - 1.0;
    std::vector<double> h(kmax + 1, 0.0);
    h[0] = 1.0;
    for (int k = 1; k <= kmax; ++k) {
        double v = e * h[k - 1];
        if (k >= 2) v -= e * h[k - 2];
        if (k >= 3) v += h[k - 3];
        h[k] = v;
    }
    return h;
}

}  // namespace

double schur_jacobi_trudi(int l1, int l2, double lam) {
    // s_(l1,l2,0) = h_l1 h_l2 - h_{l1+1} h_{l2-1}
    auto h = h_seq(l1 + 1, lam);
    double s = h[l1] * h[l2];
    if (l2 >= 1) s -= h[l1 + 1] * h[l2 - 1];
    return s;
}

double schur_weyl(int l1, int l2, double lam, double switch_eps) {
    double c = std::clamp(lam / 2.0, -1.0, 1.0);
    cplx a = std::polar(1.0, std::acos(c));
    cplx x[3] = {a * a, 1.0, 1.0 / (a * a)};
    double gap = std::min({std::abs(x[0] - x[1]), std::abs(x[0] - x[2]), std::abs(x[1] - x[2])});
    if (gap < switch_eps) return schur_jacobi_trudi(l1, l2, lam);
    const int ex[3] = {l1 + 2, l2 + 1, 0};
    auto det3 = [&](const int* ee) {
        cplx m[3][3];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m[i][j] = std::pow(x[i], ee[j]);
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    const int vd[3] = {2, 1, 0};
    return (det3(ex) / det3(vd)).real();
}

std::string to_string(SourceKind k) {
    switch (k) {
        case SourceKind::TripleDivisor: return "d3";
        case SourceKind::Sym2Discriminant: return "sym2";
        case SourceKind::UserTable: return "user";
    }
    return "?";
}

std::shared_ptr<CoefficientSource> CoefficientSource::triple_divisor(u64 limit) {
    auto s = std::make_shared<CoefficientSource>();
    s->kind_ = SourceKind::TripleDivisor;
    s->limit_ = limit;
    s->d3_ = d3_table_parallel(limit);
    s->spf_ = spf_table(limit);
    return s;
}

std::shared_ptr<CoefficientSource> CoefficientSource::sym2_discriminant(u64 limit) {
    auto s = std::make_shared<CoefficientSource>();
    s->kind_ = SourceKind::Sym2Discriminant;
    s->limit_ = limit;
    s->spf_ = spf_table(limit);
    s->tau_ = std::make_shared<TauTable>(compute_tau_cached(limit, std::min<u64>(limit, 1000)));
    return s;
}

std::shared_ptr<CoefficientSource> CoefficientSource::user_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("user_table: cannot open " + path);
    auto s = std::make_shared<CoefficientSource>();
    s->kind_ = SourceKind::UserTable;
    std::string line;
    int cols = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        for (auto& ch : line)
            if (ch == ',') ch = ' ';
        std::istringstream ss(line);
        std::vector<std::string> tok;
        for (std::string t; ss >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        if (tok.size() != 2 && tok.size() != 3) throw std::runtime_error("user_table: expected 2 or 3 columns");
        // skip a header row
        if (!std::isdigit(static_cast<unsigned char>(tok[0][0]))) continue;
        if (cols == 0) cols = static_cast<int>(tok.size());
        if (int(tok.size()) != cols) throw std::runtime_error("user_table: inconsistent column count");
        u64 m = 1, n;
        double v;
        if (cols == 2) {
            n = std::stoull(tok[0]);
            v = std::stod(tok[1]);
        } else {
            m = std::stoull(tok[0]);
            n = std::stoull(tok[1]);
            v = std::stod(tok[2]);
        }
        s->user_[{m, n}] = v;
        s->limit_ = std::max(s->limit_, n);
    }
    s->user_two_col_ = cols != 3;
    return s;
}

std::vector<std::pair<u64, int>> CoefficientSource::factor(u64 n) const {
    std::vector<std::pair<u64, int>> f;
    if (n <= limit_ && !spf_.empty()) {
        while (n > 1) {
            u64 p = spf_[n];
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            f.push_back({p, e});
        }
        return f;
    }
    for (auto [p, e] : factorize(n).entries) f.push_back({p, e});
    return f;
}

double CoefficientSource::local(u64 p, int a, int b) const {
    switch (kind_) {
        case SourceKind::TripleDivisor:
            // Schur polynomial at (1,1,1)
            return double(a + 1) * (b + 1) * (a + b + 2) / 2.0;
        case SourceKind::Sym2Discriminant:
            if (p > tau_->N) throw std::out_of_range("sym2: prime beyond tau table range");
            if (a == 0) {
                // Lambda(1,p^b) = h_b(a^2, 1, a^-2), a polynomial in u = lam^2 - 2; exact tau keeps small cases exact
                long double u;
                if (p <= tau_->exact_limit) {
                    long double t = static_cast<long double>(tau_->tau(p));
                    u = t * t / std::pow(static_cast<long double>(p), 11.0L) - 2;
                } else {
                    long double l = tau_->lambda(p);
                    u = l * l - 2;
                }
                long double h = 1, Um = 1, U = u;
                if (b == 0) return 1.0;
                h += U;
                for (int j = 2; j <= b; ++j) {
                    long double Un = u * U - Um;
                    Um = U;
                    U = Un;
                    h += U;
                }
                return static_cast<double>(h);
            }
            return schur_weyl(a + b, b, tau_->lambda(p));
        case SourceKind::UserTable: break;
    }
    throw std::logic_error("local factor unavailable for user tables");
}

double CoefficientSource::A(u64 n) const { return lambda(1, n); }

double CoefficientSource::lambda(u64 m, u64 n) const {
    if (m < 1 || n < 1) throw std::invalid_argument("lambda: arguments must be positive");
    if (kind_ == SourceKind::UserTable) {
        if (user_two_col_ && m != 1) throw std::out_of_range("user table has only Lambda(1,n)");
        auto it = user_.find({m, n});
        if (it == user_.end()) throw std::out_of_range("user table: entry missing");
        return it->second;
    }
    if (kind_ == SourceKind::TripleDivisor && m == 1 && n <= limit_) return d3_[n];
    if (std::max(m, n) > limit_) throw std::out_of_range("coefficient: argument beyond table limit");
    auto fm = factor(m), fn = factor(n);
    double r = 1.0;
    std::size_t i = 0, j = 0;
    while (i < fm.size() || j < fn.size()) {
        u64 p;
        int a = 0, b = 0;
        if (j == fn.size() || (i < fm.size() && fm[i].first < fn[j].first)) {
            p = fm[i].first;
            a = fm[i++].second;
        } else if (i == fm.size() || fn[j].first < fm[i].first) {
            p = fn[j].first;
            b = fn[j++].second;
        } else {
            p = fm[i].first;
            a = fm[i++].second;
            b = fn[j++].second;
        }
        r *= local(p, a, b);
    }
    return r;
}

L2Ratio l2_ratio(u64 X, const CoefficientSource& src, double w) {
    double s = 0;
    for (u64 m = 1; m * m <= X; ++m)
        for (u64 n = 1; m * m * n <= X; ++n) {
            double v = src.lambda(m, n);
            s += v * v / std::pow(double(m * m * n), w);
        }
    double ratio = w < 1 ? s / std::pow(double(X), 1 - w) : std::nan("");
    return {s, ratio};
}

}  // namespace ntv
