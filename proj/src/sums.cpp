#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

#include "ntv/sums.hpp"

namespace ntv {

std::string to_string(WindowMode m) { return m == WindowMode::sharp ? "sharp" : "smooth"; }
std::string to_string(Weight w) {
    switch (w) {
        case Weight::unit: return "unit";
        case Weight::mobius: return "mobius";
        default: return "vonMangoldt";
    }
}

double WindowConfig::Y() const { return theta == 0 ? std::pow(X, 1.0 / k) : std::pow(X, theta); }
double WindowConfig::Q() const { return theta == 0 ? std::sqrt(X) : X; }

void WindowConfig::validate() const {
    if (!(X >= 1)) throw std::invalid_argument("window: X must be at least 1");
    if (k < 3) throw std::invalid_argument("window: k must be at least 3");
    if (theta < 0 || theta > 1) throw std::invalid_argument("window: theta must lie in (0,1]");
}

double weight_value(Weight w, u64 n) {
    if (w == Weight::unit) return 1;
    if (n == 1) return w == Weight::mobius ? 1 : 0;
    auto f = factorize(n);
    if (w == Weight::mobius) return moebius(f);
    return f.entries.size() == 1 ? std::log(double(f.entries[0].p)) : 0;
}

double weight_l2(u64 X, Weight w) {
    double s = 0;
    for (u64 n = 1; n <= X; ++n) {
        double a = weight_value(w, n);
        s += a * a;
    }
    return s / double(X);
}

namespace {

// integer ranges and weights of one window axis
struct Axis {
    std::vector<u64> n;
    std::vector<double> w;
};

// sharp: 1 <= n <= floor(L); smooth: W(n/L) on its support
Axis make_axis(double L, u64 sharp_max, WindowMode mode, const BumpFunction& W) {
    Axis a;
    if (mode == WindowMode::sharp) {
        for (u64 n = 1; n <= sharp_max; ++n) {
            a.n.push_back(n);
            a.w.push_back(1);
        }
        return a;
    }
    const u64 lo = static_cast<u64>(std::ceil(W.lo() * L)), hi = static_cast<u64>(std::floor(W.hi() * L));
    for (u64 n = std::max<u64>(lo, 1); n <= hi; ++n) {
        double v = W(double(n) / L);
        if (v == 0) continue;
        a.n.push_back(n);
        a.w.push_back(v);
    }
    return a;
}

u64 ipow(u64 b, int k) {
    u64 r = 1;
    for (int i = 0; i < k; ++i) r *= b;
    return r;
}

// floor(X^{1/k}) without rounding drift
u64 floor_root(double X, int k) {
    u64 r = static_cast<u64>(std::floor(std::pow(X, 1.0 / k)));
    while (r > 0 && double(ipow(r, k)) > X) --r;
    while (double(ipow(r + 1, k)) <= X) ++r;
    return r;
}

struct SkLayout {
    Axis a1, a2, a3;
    std::vector<u64> n3k;
    std::vector<double> w3;  // window times a(n3)
};

SkLayout sk_layout(const WindowConfig& cfg, Weight w) {
    cfg.validate();
    SkLayout L;
    const double sx = std::sqrt(cfg.X), Y = cfg.Y();
    L.a1 = make_axis(sx, floor_root(cfg.X, 2), cfg.mode, cfg.W1);
    L.a2 = make_axis(sx, floor_root(cfg.X, 2), cfg.mode, cfg.W2);
    L.a3 = make_axis(Y, floor_root(cfg.X, cfg.k), cfg.mode, cfg.W3);
    for (std::size_t i = 0; i < L.a3.n.size(); ++i) {
        L.n3k.push_back(ipow(L.a3.n[i], cfg.k));
        L.w3.push_back(L.a3.w[i] * weight_value(w, L.a3.n[i]));
    }
    return L;
}

void check_limit(u64 need, const CoefficientSource& src) {
    if (src.kind() != SourceKind::UserTable && need > src.limit())
        throw std::out_of_range("sum: argument " + std::to_string(need) + " beyond coefficient table limit " +
                                std::to_string(src.limit()));
}

}  // namespace

u64 sk_max_argument(const WindowConfig& cfg) {
    auto L = sk_layout(cfg, Weight::unit);
    if (L.a1.n.empty() || L.a2.n.empty() || L.a3.n.empty()) return 0;
    return L.a1.n.back() * L.a1.n.back() + L.a2.n.back() * L.a2.n.back() + L.n3k.back();
}

double eval_Sk(const WindowConfig& cfg, const CoefficientSource& src, Weight w) {
    const auto L = sk_layout(cfg, w);
    check_limit(sk_max_argument(cfg), src);
    const std::size_t n1c = L.a1.n.size();
    std::vector<double> rows(n1c, 0.0);
#pragma omp parallel for schedule(dynamic, 4)
    for (std::size_t i = 0; i < n1c; ++i) {
        const u64 s1 = L.a1.n[i] * L.a1.n[i];
        double r = 0;
        for (std::size_t j = 0; j < L.a2.n.size(); ++j) {
            const u64 s2 = s1 + L.a2.n[j] * L.a2.n[j];
            double c = 0;
            for (std::size_t l = 0; l < L.n3k.size(); ++l)
                if (L.w3[l] != 0) c += L.w3[l] * src.A(s2 + L.n3k[l]);
            r += L.a2.w[j] * c;
        }
        rows[i] = L.a1.w[i] * r;
    }
    double s = 0;
    for (double r : rows) s += r;
    return s;
}

double eval_Sk_serial(const WindowConfig& cfg, const CoefficientSource& src, Weight w) {
    const auto L = sk_layout(cfg, w);
    check_limit(sk_max_argument(cfg), src);
    double s = 0;
    for (std::size_t i = 0; i < L.a1.n.size(); ++i)
        for (std::size_t j = 0; j < L.a2.n.size(); ++j)
            for (std::size_t l = 0; l < L.n3k.size(); ++l)
                s += L.a1.w[i] * L.a2.w[j] * L.w3[l] *
                     src.A(L.a1.n[i] * L.a1.n[i] + L.a2.n[j] * L.a2.n[j] + L.n3k[l]);
    return s;
}

double eval_Sk_enumerate_d3(const WindowConfig& cfg, Weight w) {
    cfg.validate();
    if (cfg.mode != WindowMode::sharp) throw std::invalid_argument("enumeration oracle covers sharp windows only");
    const u64 r2 = floor_root(cfg.X, 2), rk = floor_root(cfg.X, cfg.k);
    double s = 0;
    for (u64 a = 1; a <= r2; ++a)
        for (u64 b = 1; b <= r2; ++b)
            for (u64 c = 1; c <= rk; ++c) {
                double a3 = weight_value(w, c);
                if (a3 == 0) continue;
                s += a3 * double(n_divisors3(factorize(a * a + b * b + ipow(c, cfg.k))));
            }
    return s;
}

namespace {

struct QuadLayout {
    Axis a1, a2;
};

QuadLayout quad_layout(const WindowConfig& cfg) {
    cfg.validate();
    if (cfg.theta == 0) throw std::invalid_argument("binary-form sum needs theta in (0,1]");
    QuadLayout L;
    const double Y = cfg.Y();
    L.a1 = make_axis(cfg.X, static_cast<u64>(std::floor(cfg.X)), cfg.mode, cfg.W1);
    L.a2 = make_axis(Y, static_cast<u64>(std::floor(Y + 1e-9)), cfg.mode, cfg.W2);
    return L;
}

}  // namespace

u64 quad_max_argument(const WindowConfig& cfg, const QuadraticForm& Q) {
    auto L = quad_layout(cfg);
    i64 m = 0;
    for (u64 x : {L.a1.n.front(), L.a1.n.back()})
        for (u64 y : {L.a2.n.front(), L.a2.n.back()}) m = std::max(m, Q.value(i64(x), i64(y)));
    return static_cast<u64>(m);
}

double eval_S_quad(const WindowConfig& cfg, const QuadraticForm& Q, const CoefficientSource& src) {
    const auto L = quad_layout(cfg);
    check_limit(quad_max_argument(cfg, Q), src);
    const std::size_t n1c = L.a1.n.size();
    std::vector<double> rows(n1c, 0.0);
#pragma omp parallel for schedule(dynamic, 4)
    for (std::size_t i = 0; i < n1c; ++i) {
        double r = 0;
        for (std::size_t j = 0; j < L.a2.n.size(); ++j)
            r += L.a2.w[j] * src.A(static_cast<u64>(Q.value(i64(L.a1.n[i]), i64(L.a2.n[j]))));
        rows[i] = L.a1.w[i] * r;
    }
    double s = 0;
    for (double r : rows) s += r;
    return s;
}

double eval_S_quad_serial(const WindowConfig& cfg, const QuadraticForm& Q, const CoefficientSource& src) {
    const auto L = quad_layout(cfg);
    check_limit(quad_max_argument(cfg, Q), src);
    double s = 0;
    for (std::size_t i = 0; i < L.a1.n.size(); ++i)
        for (std::size_t j = 0; j < L.a2.n.size(); ++j)
            s += L.a1.w[i] * L.a2.w[j] * src.A(static_cast<u64>(Q.value(i64(L.a1.n[i]), i64(L.a2.n[j]))));
    return s;
}

ExponentFit exponent_fit(const std::vector<std::pair<double, double>>& series) {
    if (series.size() < 3) throw std::invalid_argument("exponent_fit: need at least 3 points");
    ExponentFit f;
    const std::size_t n = series.size();
    double mx = 0, my = 0;
    for (auto [x, v] : series) {
        if (!(x > 0) || v == 0 || !std::isfinite(v)) throw std::invalid_argument("exponent_fit: degenerate point");
        f.X.push_back(x);
        f.value.push_back(v);
        mx += std::log(x);
        my += std::log(std::fabs(v));
    }
    mx /= double(n);
    my /= double(n);
    double sxx = 0, sxy = 0;
    for (auto [x, v] : series) {
        double dx = std::log(x) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(std::fabs(v)) - my);
    }
    if (!(sxx > 0)) throw std::invalid_argument("exponent_fit: sample points coincide");
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double rss = 0;
    for (auto [x, v] : series) {
        double r = std::log(std::fabs(v)) - f.intercept - f.slope * std::log(x);
        rss += r * r;
    }
    f.stderr_slope = n > 2 ? std::sqrt(rss / double(n - 2) / sxx) : 0;
    return f;
}

MainTermFit main_term_fit(const std::vector<std::pair<double, double>>& series, int k) {
    if (series.size() < 6) throw std::invalid_argument("main_term_fit: need at least 6 points");
    const int n = static_cast<int>(series.size());
    Eigen::MatrixXd A(n, 3);
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i) {
        double X = series[i].first, L = std::log(X), s = std::pow(X, 1 + 1.0 / k);
        A(i, 0) = s;
        A(i, 1) = s * L;
        A(i, 2) = s * L * L;
        b(i) = series[i].second;
    }
    // column scaling keeps the normal equations well conditioned
    Eigen::VectorXd scale = A.colwise().norm().cwiseInverse().transpose();
    Eigen::VectorXd c = (A * scale.asDiagonal()).colPivHouseholderQr().solve(b);
    c = c.cwiseProduct(scale);
    MainTermFit m;
    m.c0 = c(0);
    m.c1 = c(1);
    m.c2 = c(2);
    std::vector<std::pair<double, double>> res;
    for (int i = 0; i < n; ++i) {
        double r = b(i) - (A.row(i) * c)(0);
        m.residual.push_back(r);
        if (r != 0) res.push_back({series[i].first, r});
    }
    if (res.size() >= 3)
        m.residual_fit = exponent_fit(res);
    else
        m.residual_fit.slope = m.residual_fit.stderr_slope = std::numeric_limits<double>::quiet_NaN();
    return m;
}

TheoremExponents theorem_exponents(int k, int theorem, double theta) {
    if (theorem == 2) return {2, 1 + theta, 2 - 1.0 / 68, 7.0 / 4, 0};
    if (theorem != 1) throw std::invalid_argument("theorem must be 1 or 2");
    if (k < 3) throw std::invalid_argument("theorem_exponents: k must be at least 3");
    double d;
    if (k == 3)
        d = 1.0 / 15;
    else if (k <= 7)
        d = 1.0 / (k * std::pow(2.0, k - 1));
    else
        d = 1.0 / (2.0 * k * k * (k - 1));
    const double triv = 1 + 1.0 / k;
    const double mine = k == 3 ? 7.0 / 8 + 1.0 / 3 : 1 + 1.0 / (2 * k);
    return {1, triv, triv - d, mine, d};
}

}  // namespace ntv
