#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <fftw3.h>
#include <stdexcept>

#include "ntv/analytic.hpp"

namespace ntv {

double Constants::euler_gamma() { return boost::math::constants::euler<double>(); }
double Constants::stieltjes_gamma1() { return -0.0728158454836767248605863758749547; }

double euler_gamma_series(int n) {
    // H_n - log n - 1/(2n) + 1/(12n^2) - 1/(120n^4) + 1/(252n^6)
    long double h = 0;
    for (int k = n; k >= 1; --k) h += 1.0L / k;
    long double x = n;
    return double(h - std::log(x) - 1 / (2 * x) + 1 / (12 * x * x) - 1 / (120 * x * x * x * x) +
                  1 / (252 * x * x * x * x * x * x));
}

double stieltjes_gamma1_series(int n) {
    // sum_{k<=n} log k / k - (log n)^2/2, Euler-Maclaurin tail at n
    long double s = 0;
    for (int k = n; k >= 2; --k) s += std::log((long double)k) / k;
    long double x = n, L = std::log(x);
    long double f = L / x;
    long double f1 = -(L - 1) / (x * x);
    long double f3 = -6 * (L - 11.0L / 6) / (x * x * x * x);
    long double f5 = -120 * (L - 137.0L / 60) / (x * x * x * x * x * x);
    return double(s - L * L / 2 - f / 2 - f1 / 12 + f3 / 720 - f5 / 30240);
}

cplx log_gamma(cplx z) {
    cplx shift = 0;
    while (z.real() < 15) {
        shift += std::log(z);
        z += 1.0;
    }
    const cplx zi = 1.0 / z, zi2 = zi * zi;
    static const double B[] = {1.0 / 12,        -1.0 / 360,  1.0 / 1260,         -1.0 / 1680,
                               1.0 / 1188,      -691.0 / 360360, 1.0 / 156,      -3617.0 / 122400};
    cplx ser = 0;
    for (int k = 7; k >= 0; --k) ser = ser * zi2 + B[k];
    ser *= zi;
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2 * M_PI) + ser - shift;
}

QuadResult integrate_gk(const std::function<cplx(double)>& f, double a, double b, double tol, int panels) {
    using boost::math::quadrature::gauss_kronrod;
    panels = std::max(panels, 1);
    double h = (b - a) / panels;
    cplx total = 0;
    double err = 0;
    for (int p = 0; p < panels; ++p) {
        double lo = a + p * h, hi = p + 1 == panels ? b : a + (p + 1) * h;
        double e1 = 0, e2 = 0, l1 = 0, l2 = 0;
        double re = gauss_kronrod<double, 61>::integrate([&](double x) { return f(x).real(); }, lo, hi, 15, tol, &e1, &l1);
        double im = gauss_kronrod<double, 61>::integrate([&](double x) { return f(x).imag(); }, lo, hi, 15, tol, &e2, &l2);
        total += cplx(re, im);
        // boost reports the estimate on the reference interval [-1,1]
        err += (e1 + e2) * (hi - lo) / 2;
    }
    return {total, err};
}

double integrate_simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n % 2) ++n;
    double h = (b - a) / n, s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4 : 2);
    return s * h / 3;
}

QuadResult mellin(const BumpFunction& g, cplx s, double tol) {
    auto f = [&](double x) { return g(x) * std::exp((s - 1.0) * std::log(x)); };
    int panels = 1 + static_cast<int>(std::fabs(s.imag()) * std::log(g.hi() / g.lo()) / (2 * M_PI) / 4);
    QuadResult r = integrate_gk(f, g.lo(), g.hi(), tol, panels);
    if (!(r.error <= 1e-8 * std::max(std::abs(r.value), 1e-300)))
        throw std::runtime_error("mellin: quadrature error " + std::to_string(r.error));
    return r;
}

double mellin_simpson(const BumpFunction& g, double s, int n) {
    return integrate_simpson([&](double x) { return g(x) * std::pow(x, s - 1); }, g.lo(), g.hi(), n);
}

double mellin_deriv(const BumpFunction& g, double s, int k) {
    auto f = [&](double x) { return cplx(g(x) * std::pow(std::log(x), k) * std::pow(x, s - 1), 0); };
    return integrate_gk(f, g.lo(), g.hi(), 1e-13).value.real();
}

// g~(-sigma - it) = int g(e^v) e^{-sigma v} e^{-itv} dv on a uniform v grid
namespace {

struct VGrid {
    std::vector<double> v, f;
    VGrid(const BumpFunction& g, double sigma, double t_max) {
        double a = std::log(g.lo()), b = std::log(g.hi());
        int n = static_cast<int>((b - a) * (t_max + 400) / M_PI) + 256;
        double h = (b - a) / n;
        for (int j = 1; j < n; ++j) {
            double vj = a + j * h;
            v.push_back(vj);
            f.push_back(g(std::exp(vj)) * std::exp(-sigma * vj) * h);
        }
    }
};

std::vector<cplx> line_values(const VGrid& G, double dt, std::size_t count) {
    std::vector<cplx> out(count);
    const std::size_t m = G.v.size();
    std::vector<double> pr(m), pi(m), sr(m), si(m);
    for (std::size_t j = 0; j < m; ++j) {
        pr[j] = G.f[j];
        pi[j] = 0;
        sr[j] = std::cos(dt * G.v[j]);
        si[j] = -std::sin(dt * G.v[j]);
    }
    for (std::size_t k = 0; k < count; ++k) {
        if (k % 512 == 0 && k) {
            for (std::size_t j = 0; j < m; ++j) {
                double ph = -double(k) * dt * G.v[j];
                pr[j] = G.f[j] * std::cos(ph);
                pi[j] = G.f[j] * std::sin(ph);
            }
        }
        double re = 0, im = 0;
        for (std::size_t j = 0; j < m; ++j) {
            re += pr[j];
            im += pi[j];
            double a = pr[j] * sr[j] - pi[j] * si[j];
            pi[j] = pr[j] * si[j] + pi[j] * sr[j];
            pr[j] = a;
        }
        out[k] = {re, im};
    }
    return out;
}

}  // namespace

MellinLine::MellinLine(const BumpFunction& g, double sigma, double dt, double t_max) : sigma_(sigma), dt_(dt) {
    VGrid G(g, sigma, t_max);
    vals_ = line_values(G, dt, static_cast<std::size_t>(t_max / dt) + 1);
}

cplx gamma_ratio_cubed(int ell, cplx s) {
    cplx den = (-s + double(ell)) / 2.0;
    // 1/Gamma vanishes at the non-positive integers
    if (std::fabs(den.imag()) < 1e-300 && den.real() <= 0 && den.real() == std::floor(den.real())) return 0;
    cplx l = log_gamma((1.0 + s + double(ell)) / 2.0) - log_gamma((-s + double(ell)) / 2.0);
    return std::exp(3.0 * l);
}

double kernel_cutoff(const BumpFunction& g, double y, double sigma, double tol) {
    // beyond the stationary range the integrand is governed by the decay of g~; the grid
    // transform bottoms out near 1e-13 relative, past which the samples are noise
    const double t_stat = y > 0 ? 2 * std::cbrt(M_PI * M_PI * M_PI * y * g.hi()) : 0;
    double T = std::max(200.0, 1.5 * t_stat + 100);
    for (int iter = 0; iter < 8; ++iter) {
        MellinLine L(g, sigma, 1.0, T);
        const double g0 = std::abs(L[0]);
        std::vector<double> gm(L.size()), mag(L.size());
        double peak = 0;
        for (std::size_t k = 0; k < L.size(); ++k) {
            gm[k] = std::abs(L[k]);
            mag[k] = gm[k] * std::abs(gamma_ratio_cubed(0, cplx(sigma, double(k))));
            peak = std::max(peak, mag[k]);
        }
        // first t past the stationary range after which 50 consecutive samples are quiet
        std::size_t run = 0;
        for (std::size_t k = 0; k < L.size(); ++k) {
            bool quiet = double(k) > t_stat + 50 && (mag[k] < tol * peak || gm[k] < 1e-13 * g0);
            run = quiet ? run + 1 : 0;
            if (run == 50) return double(k - 49);
        }
        T *= 1.5;
    }
    throw std::runtime_error("kernel_cutoff: tail tolerance not reached");
}

KernelValue g_ell(int ell, double y, const BumpFunction& g, const KernelOptions& opt) {
    if (!(y > 0)) throw std::invalid_argument("g_ell: y must be positive");
    const double T = opt.t_max > 0 ? opt.t_max : kernel_cutoff(g, y, opt.sigma, opt.tail_tol);
    MellinLine L(g, opt.sigma, opt.dt, T);
    const double ly = std::log(M_PI * M_PI * M_PI * y);
    cplx s1 = 0, s2 = 0;
    double last = 0;
    for (std::size_t k = 0; k < L.size(); ++k) {
        double t = k * opt.dt;
        cplx s(opt.sigma, t);
        cplx F = std::exp(-s * ly) * gamma_ratio_cubed(ell, s) * L[k];
        double w = k == 0 ? 0.5 : 1.0;
        s1 += w * F;
        if (k % 2 == 0) s2 += w * F;
        if (t > T - 20) last = std::max(last, std::abs(F));
    }
    double v1 = (s1 * opt.dt).real() / M_PI, v2 = (s2 * 2.0 * opt.dt).real() / M_PI;
    double disc = (v1 - v2) * (v1 - v2) / std::max(std::fabs(v1), 1e-300);
    double tail = last * 20 / M_PI;
    return {cplx(v1, 0), disc + tail + 1e-15 * std::fabs(v1), T};
}

KernelValue g_kernel(double y, int sign, const BumpFunction& g, const KernelOptions& opt) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("g_kernel: sign must be +1 or -1");
    KernelValue a = g_ell(0, y, g, opt), b = g_ell(1, y, g, opt);
    const double c = 1 / (2 * std::pow(M_PI, 1.5));
    cplx v = c * (a.value - double(sign) * cplx(0, 1) * b.value);
    return {v, c * (a.error + b.error), std::max(a.T, b.T)};
}

double g0_asymptotic(double y, const BumpFunction& g, double prefactor_power) {
    auto f = [&](double z) {
        double w = std::cbrt(y * z);
        return cplx(g(z) * kD1 * std::sin(6 * M_PI * w) / std::cbrt(M_PI * M_PI * M_PI * y * z), 0);
    };
    double cycles = 3 * (std::cbrt(y * g.hi()) - std::cbrt(y * g.lo()));
    QuadResult r = integrate_gk(f, g.lo(), g.hi(), 1e-11, 4 + static_cast<int>(2 * cycles));
    return std::pow(M_PI, prefactor_power) * y * r.value.real();
}

KernelGrid::KernelGrid(const BumpFunction& g, double y_min, double y_max, double sigma, double dt, double T,
                       int oversample)
    : T_(T) {
    const double period = 2 * M_PI / dt;
    u0_ = std::log(y_min) - 1.0;
    if (std::log(y_max) + 1.0 - u0_ > 0.8 * period) throw std::invalid_argument("KernelGrid: y range exceeds the alias period");
    std::size_t N = 1;
    while (double(N) < 2.0 * oversample * T / dt) N <<= 1;
    du_ = period / double(N);
    MellinLine L(g, sigma, dt, T);
    const double c = 3 * std::log(M_PI);
    fftw_complex* buf = fftw_alloc_complex(N);
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(N), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    for (int ell = 0; ell < 2; ++ell) {
        for (std::size_t k = 0; k < N; ++k) buf[k][0] = buf[k][1] = 0;
        for (std::size_t k = 0; k < L.size() && k < N; ++k) {
            double t = k * dt;
            cplx s(sigma, t);
            cplx a = (k == 0 ? 0.5 : 1.0) * gamma_ratio_cubed(ell, s) * L[k] * std::exp(cplx(0, -t * (u0_ + c)));
            buf[k][0] = a.real();
            buf[k][1] = a.imag();
        }
        fftw_execute(plan);
        auto& out = ell == 0 ? g0_ : g1_;
        out.resize(N);
        for (std::size_t j = 0; j < N; ++j) {
            double u = u0_ + j * du_;
            out[j] = dt / M_PI * std::exp(-sigma * (u + c)) * buf[j][0];
        }
    }
    fftw_destroy_plan(plan);
    fftw_free(buf);
}

double KernelGrid::value(int ell, double y) const {
    const auto& v = ell == 0 ? g0_ : g1_;
    const double p = (std::log(y) - u0_) / du_;
    constexpr int W = 10;
    long i0 = static_cast<long>(std::floor(p)) - W / 2 + 1;
    if (i0 < 0 || i0 + W > static_cast<long>(v.size())) throw std::out_of_range("KernelGrid: y outside grid");
    double x = p - double(i0), s = 0;
    for (int i = 0; i < W; ++i) {
        double w = 1;
        for (int j = 0; j < W; ++j)
            if (j != i) w *= (x - j) / double(i - j);
        s += w * v[static_cast<std::size_t>(i0 + i)];
    }
    return s;
}

std::pair<double, double> KernelGrid::values(double y) const {
    const double p = (std::log(y) - u0_) / du_;
    constexpr int W = 10;
    long i0 = static_cast<long>(std::floor(p)) - W / 2 + 1;
    if (i0 < 0 || i0 + W > static_cast<long>(g0_.size())) throw std::out_of_range("KernelGrid: y outside grid");
    const double x = p - double(i0);
    // barycentric form on equispaced nodes: w_i = (-1)^i C(W-1, i)
    static const double bw[W] = {1, -9, 36, -84, 126, -126, 84, -36, 9, -1};
    double num0 = 0, num1 = 0, den = 0;
    for (int i = 0; i < W; ++i) {
        double d = x - i;
        if (d == 0) return {g0_[i0 + i], g1_[i0 + i]};
        double c = bw[i] / d;
        num0 += c * g0_[i0 + i];
        num1 += c * g1_[i0 + i];
        den += c;
    }
    return {num0 / den, num1 / den};
}

std::vector<KernelRow> kernel_table(const std::vector<double>& ys, int sign, const BumpFunction& g,
                                    const KernelOptions& opt) {
    std::vector<KernelRow> rows;
    for (double y : ys) {
        KernelValue v = g_kernel(y, sign, g, opt);
        rows.push_back({y, v.value.real(), v.value.imag(), v.error});
    }
    return rows;
}

}  // namespace ntv
