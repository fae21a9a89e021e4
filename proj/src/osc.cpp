#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <fftw3.h>
#include <stdexcept>

#include "ntv/analytic.hpp"
#include "ntv/expsum.hpp"

namespace ntv {

double OscSpec::K() const { return q * q * q / X + std::sqrt(X) * std::fabs(u * u * u); }
double OscSpec::Kprime() const { return q * q * q / (X * X) + X * std::fabs(u * u * u); }
double OscSpec::M() const { return double(n) * q / K(); }

double c0_constant() { return -2 * M_PI * M_PI * M_PI / std::sqrt(3 * M_PI); }

namespace {

template <int N>
struct GLRule {
    std::vector<double> x, w;
    GLRule() {
        using G = boost::math::quadrature::gauss<double, N>;
        const auto& a = G::abscissa();
        const auto& ww = G::weights();
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) {
                x.push_back(0);
                w.push_back(ww[i]);
                continue;
            }
            x.push_back(a[i]);
            w.push_back(ww[i]);
            x.push_back(-a[i]);
            w.push_back(ww[i]);
        }
    }
};

// int_{-1}^{1} F(x) e^{i om x} dx with F projected on Legendre polynomials at the rule's nodes
template <int N>
cplx filon_panel(const GLRule<N>& R, const std::vector<cplx>& F, double om) {
    std::vector<cplx> a(N, 0.0);
    std::vector<double> P(N);
    for (std::size_t i = 0; i < R.x.size(); ++i) {
        double x = R.x[i];
        P[0] = 1;
        if (N > 1) P[1] = x;
        for (int k = 1; k + 1 < N; ++k) P[k + 1] = ((2 * k + 1) * x * P[k] - k * P[k - 1]) / (k + 1);
        for (int k = 0; k < N; ++k) a[k] += R.w[i] * F[i] * P[k];
    }
    cplx s = 0, ik = 1;
    const double ao = std::fabs(om);
    for (int k = 0; k < N; ++k) {
        double jk = std::sph_bessel(static_cast<unsigned>(k), ao);
        if (om < 0 && k % 2) jk = -jk;
        s += a[k] * double(2 * k + 1) * ik * jk;
        ik *= cplx(0, 1);
    }
    return s;
}

}  // namespace

QuadResult filon(const std::function<double(double)>& f, const std::function<double(double)>& phi,
                 const std::function<double(double)>& dphi, const std::function<double(double)>& d2phi, double a,
                 double b, int min_panels) {
    static const GLRule<24> R1;
    static const GLRule<16> R2;
    double curv = 0;
    for (int i = 0; i <= 64; ++i) curv = std::max(curv, std::fabs(d2phi(a + (b - a) * i / 64.0)));
    // residual phase pi |phi''| h^2 below 2 radians on each panel
    const double hmax = curv > 0 ? std::sqrt(2 / (M_PI * curv)) : b - a;
    const int P = std::max(min_panels, static_cast<int>(std::ceil((b - a) / (2 * hmax))));
    const double H = (b - a) / P;
    cplx total = 0;
    double err = 0;
    for (int p = 0; p < P; ++p) {
        const double c = a + (p + 0.5) * H, h = H / 2;
        const double pc = phi(c), dc = dphi(c);
        auto sample = [&](const auto& R) {
            std::vector<cplx> F(R.x.size());
            for (std::size_t i = 0; i < R.x.size(); ++i) {
                double x = c + h * R.x[i];
                double r = 2 * M_PI * (phi(x) - pc - dc * h * R.x[i]);
                F[i] = f(x) * std::polar(1.0, r);
            }
            return F;
        };
        const double om = 2 * M_PI * dc * h;
        cplx v1 = filon_panel(R1, sample(R1), om), v2 = filon_panel(R2, sample(R2), om);
        cplx ph = h * std::polar(1.0, 2 * M_PI * (pc - std::floor(pc)));
        total += ph * v1;
        err += std::abs(ph * (v1 - v2));
    }
    return {total, err};
}

namespace {

struct Phase {
    std::function<double(double)> f, phi, dphi, d2phi;
};

QuadResult composite_gauss(const std::function<cplx(double)>& g, double a, double b, int panels) {
    static const GLRule<24> R1;
    static const GLRule<16> R2;
    const double H = (b - a) / panels;
    cplx total = 0;
    double err = 0;
    for (int p = 0; p < panels; ++p) {
        const double c = a + (p + 0.5) * H, h = H / 2;
        cplx v1 = 0, v2 = 0;
        for (std::size_t i = 0; i < R1.x.size(); ++i) v1 += R1.w[i] * g(c + h * R1.x[i]);
        for (std::size_t i = 0; i < R2.x.size(); ++i) v2 += R2.w[i] * g(c + h * R2.x[i]);
        total += h * v1;
        err += h * std::abs(v1 - v2);
    }
    return {total, err};
}

OscResult osc_integrate(const Phase& P, double a, double b, const OscOptions& o) {
    double maxf = 0, cyc = 0, prev = P.phi(a);
    for (int i = 0; i <= 256; ++i) {
        double x = a + (b - a) * i / 256.0;
        maxf = std::max(maxf, 2 * M_PI * std::fabs(P.dphi(x)));
        double ph = P.phi(x);
        cyc += std::fabs(ph - prev);
        prev = ph;
    }
    OscScheme sc = o.scheme;
    if (sc == OscScheme::automatic) sc = maxf > o.filon_threshold ? OscScheme::filon : OscScheme::adaptive;
    OscResult r{};
    r.asymptotic = maxf > 1e4;
    auto absf = [&](double x) { return cplx(std::fabs(P.f(x)), 0); };
    r.trivial = integrate_gk(absf, a, b, 1e-10).value.real();
    QuadResult q;
    if (sc == OscScheme::filon) {
        q = filon(P.f, P.phi, P.dphi, P.d2phi, a, b);
    } else {
        // composite Gauss-Legendre, doubling the panels until the 24/16-point gap is below tol * trivial
        auto g = [&](double x) { return P.f(x) * std::polar(1.0, 2 * M_PI * P.phi(x)); };
        for (int panels = std::max(8, static_cast<int>(4 * cyc)), it = 0; it < 8; ++it, panels *= 2) {
            q = composite_gauss(g, a, b, panels);
            if (q.error <= o.tol * r.trivial) break;
        }
    }
    r.value = q.value;
    r.error = q.error;
    return r;
}

}  // namespace

OscResult osc_voronoi_kernel(const OscSpec& s, const OscOptions& o) {
    const double A = s.X * s.u / (s.q * s.Q);
    const double B = s.sign * 3 * std::cbrt(s.X * s.nm2) / s.q;
    Phase P;
    P.f = [&](double z) { return s.sign * s.V(z) / std::cbrt(z); };
    P.phi = [=](double z) { return A * z + B * std::cbrt(z); };
    P.dphi = [=](double z) { return A + B / (3 * std::cbrt(z * z)); };
    P.d2phi = [=](double z) { return -2 * B / (9 * z * std::cbrt(z * z)); };
    OscResult r = osc_integrate(P, s.V.lo(), s.V.hi(), o);
    const double c0 = c0_constant();
    r.value *= c0;
    r.error *= std::fabs(c0);
    r.trivial *= std::fabs(c0);
    return r;
}

OscResult osc_poisson_kernel(const OscSpec& s, const OscOptions& o) {
    auto one = [&](const BumpFunction& W, double m) {
        const double L = m * std::sqrt(s.X) / s.q, Cq = s.u * s.X / (s.q * s.Q);
        Phase P;
        P.f = [&](double x) { return W(x); };
        P.phi = [=](double x) { return -L * x - Cq * x * x; };
        P.dphi = [=](double x) { return -L - 2 * Cq * x; };
        P.d2phi = [=](double) { return -2 * Cq; };
        return osc_integrate(P, W.lo(), W.hi(), o);
    };
    OscResult a = one(s.W1, s.m1), b = one(s.W2, s.m2);
    OscResult r{};
    r.value = a.value * b.value;
    r.error = std::abs(a.value) * b.error + std::abs(b.value) * a.error;
    r.asymptotic = a.asymptotic || b.asymptotic;
    r.trivial = a.trivial * b.trivial;
    return r;
}

OscResult stationary_p(const OscSpec& s, const OscOptions& o) {
    const double n3k = std::pow(double(s.n3), s.k);
    const double Cc = s.sign * 3 * std::cbrt(s.nm2) / s.q, L = s.m1 * std::sqrt(s.X) / s.q;
    auto g = [=, &s](double x) { return s.X * (x * x + s.v * s.v) + n3k; };
    Phase P;
    P.f = [&](double x) { return s.W1(x); };
    P.phi = [=](double x) { return Cc * std::cbrt(g(x)) - L * x; };
    P.dphi = [=, &s](double x) {
        double G = g(x);
        return Cc * 2 * s.X * x / (3 * std::cbrt(G * G)) - L;
    };
    P.d2phi = [=, &s](double x) {
        double G = g(x), G23 = std::cbrt(G * G);
        double gp = 2 * s.X * x;
        return Cc * (2 * s.X / (3 * G23) - 2 * gp * gp / (9 * G * G23));
    };
    return osc_integrate(P, s.W1.lo(), s.W1.hi(), o);
}

// ---- composite integrals on a uniform grid

namespace {

// full linear convolution of a and b via FFTW
std::vector<cplx> convolve(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    const std::size_t n = a.size() + b.size() - 1;
    std::size_t N = 1;
    while (N < n) N <<= 1;
    fftw_complex* A = fftw_alloc_complex(N);
    fftw_complex* B = fftw_alloc_complex(N);
    fftw_plan pa = fftw_plan_dft_1d(static_cast<int>(N), A, A, FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_plan pb = fftw_plan_dft_1d(static_cast<int>(N), B, B, FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_plan pi = fftw_plan_dft_1d(static_cast<int>(N), A, A, FFTW_BACKWARD, FFTW_ESTIMATE);
    for (std::size_t i = 0; i < N; ++i) {
        A[i][0] = i < a.size() ? a[i].real() : 0;
        A[i][1] = i < a.size() ? a[i].imag() : 0;
        B[i][0] = i < b.size() ? b[i].real() : 0;
        B[i][1] = i < b.size() ? b[i].imag() : 0;
    }
    fftw_execute(pa);
    fftw_execute(pb);
    for (std::size_t i = 0; i < N; ++i) {
        double re = A[i][0] * B[i][0] - A[i][1] * B[i][1];
        double im = A[i][0] * B[i][1] + A[i][1] * B[i][0];
        A[i][0] = re;
        A[i][1] = im;
    }
    fftw_execute(pi);
    std::vector<cplx> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = cplx(A[i][0], A[i][1]) / double(N);
    fftw_destroy_plan(pa);
    fftw_destroy_plan(pb);
    fftw_destroy_plan(pi);
    fftw_free(A);
    fftw_free(B);
    return out;
}

// density of s = x^2 under W(x) dx, twisted by e(-m sqrt(X) x / q)
std::vector<cplx> square_density(const BumpFunction& W, double m, double X, double q, double h, double& s0) {
    s0 = W.lo() * W.lo();
    const std::size_t n = static_cast<std::size_t>((W.hi() * W.hi() - s0) / h) + 1;
    std::vector<cplx> g(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = s0 + j * h, x = std::sqrt(s);
        g[j] = W(x) / (2 * x) * e_real(-m * std::sqrt(X) * x / q);
    }
    return g;
}

}  // namespace

LEngine::LEngine(const OscSpec& s, const DeltaExpansion& d, const CompositeOptions& o) : s_(s), h_(o.h) {
    const double h = h_;
    qQ_ = s.q * d.Q();
    double s1, s2;
    auto g1 = square_density(s.W1, s.m1, s.X, s.q, h, s1);
    auto g2 = square_density(s.W2, s.m2, s.X, s.q, h, s2);
    auto G = convolve(g1, g2);
    for (auto& v : G) v *= h;
    const double Smin = s1 + s2;
    const std::size_t NG = G.size();
    z0_ = s.V.lo();
    const std::size_t NZ = static_cast<std::size_t>((s.V.hi() - z0_) / h) + 1;
    const double d0 = z0_ - (Smin + double(NG - 1) * h);
    const std::size_t ND = NG - 1 + NZ;
    const double n3k = std::pow(double(s.n3), s.k);
    const i64 q = static_cast<i64>(std::llround(s.q));
    std::vector<cplx> phi(ND);
    for (std::size_t j = 0; j < ND; ++j) phi[j] = d.kernel(q, s.X * (d0 + j * h) - n3k);
    auto C = convolve(G, phi);
    gphi_.resize(NZ);
    amp_.resize(NZ);
    cz_.resize(NZ);
    for (std::size_t k = 0; k < NZ; ++k) {
        gphi_[k] = C[NG - 1 + k] * h;
        double z = z0_ + k * h;
        amp_[k] = s.V(z) / std::cbrt(z);
        cz_[k] = std::cbrt(z);
    }
}

cplx LEngine::operator()(double nm2, int sign) const {
    const double B = sign * 3 * std::cbrt(s_.X * nm2) / s_.q;
    CSum acc;
    for (std::size_t k = 0; k < gphi_.size(); ++k)
        if (amp_[k] != 0) acc += amp_[k] * e_real(B * cz_[k]) * gphi_[k];
    return c0_constant() * qQ_ * h_ * double(sign) * acc.value();
}

cplx osc_L(const OscSpec& s, const DeltaExpansion& d, const CompositeOptions& o) {
    return LEngine(s, d, o)(s.nm2, s.sign);
}

cplx osc_W(const OscSpec& s, const DeltaExpansion& d, i64 A, i64 B, i64 C, double theta, int nodes,
           const CompositeOptions& o) {
    const double h = o.h, X = s.X, Y = std::pow(X, theta);
    auto sig = [&](double u, double v) { return (A * u * u * X * X + B * v * v * Y * Y + 2.0 * C * u * v * X * Y) / (X * X); };
    double smin = 1e300, smax = -1e300;
    for (int i = 0; i <= 64; ++i)
        for (int j = 0; j <= 64; ++j) {
            double u = s.W1.lo() + (s.W1.hi() - s.W1.lo()) * i / 64.0;
            double v = s.W2.lo() + (s.W2.hi() - s.W2.lo()) * j / 64.0;
            smin = std::min(smin, sig(u, v));
            smax = std::max(smax, sig(u, v));
        }
    smin -= 10 * h;
    smax += 10 * h;
    // F(sigma) = int f(z) Delta_q(X^2 (z - sigma)) dz on a sigma grid
    const double z0 = s.V.lo();
    const std::size_t NZ = static_cast<std::size_t>((s.V.hi() - z0) / h) + 1;
    const std::size_t NS = static_cast<std::size_t>((smax - smin) / h) + 1;
    const double B3 = s.sign * 3 * std::cbrt(X * X * s.nm2) / s.q;
    std::vector<cplx> f(NZ);
    for (std::size_t k = 0; k < NZ; ++k) {
        double z = z0 + k * h;
        f[k] = double(s.sign) * s.V(z) / std::cbrt(z) * e_real(B3 * std::cbrt(z));
    }
    // delta = z - sigma on [z0 - smax, zhi - smin]; reversed f turns correlation into convolution
    const double dlo = z0 - (smin + double(NS - 1) * h);
    const std::size_t ND = NZ + NS - 1;
    const i64 q = static_cast<i64>(std::llround(s.q));
    std::vector<cplx> kern(ND), fr(f.rbegin(), f.rend());
    for (std::size_t j = 0; j < ND; ++j) kern[j] = d.kernel(q, X * X * (dlo + j * h));
    auto conv = convolve(fr, kern);
    // F at sigma_i = smin + i h: sum_k f_k kern[(z_k - sigma_i - dlo)/h], index k + NS-1-i
    std::vector<cplx> F(NS);
    for (std::size_t i = 0; i < NS; ++i) F[i] = conv[NZ - 1 + (NS - 1 - i)] * h;
    auto Fat = [&](double sg) {
        double p = (sg - smin) / h;
        long i0 = static_cast<long>(std::floor(p)) - 2;
        i0 = std::clamp<long>(i0, 0, static_cast<long>(NS) - 6);
        double x = p - double(i0);
        cplx r = 0;
        for (int i = 0; i < 6; ++i) {
            double w = 1;
            for (int j = 0; j < 6; ++j)
                if (j != i) w *= (x - j) / double(i - j);
            r += w * F[static_cast<std::size_t>(i0 + i)];
        }
        return r;
    };
    // Gauss-Legendre in u and v over the window supports, split into panels
    static const GLRule<24> R;
    const int panels = std::max(1, nodes / 24);
    CSum acc;
    auto rule = [&](const BumpFunction& W, std::vector<double>& xs, std::vector<double>& ws) {
        double H = (W.hi() - W.lo()) / panels;
        for (int p = 0; p < panels; ++p)
            for (std::size_t i = 0; i < R.x.size(); ++i) {
                xs.push_back(W.lo() + (p + 0.5 + 0.5 * R.x[i]) * H);
                ws.push_back(0.5 * H * R.w[i]);
            }
    };
    std::vector<double> ux, uw, vx, vw;
    rule(s.W1, ux, uw);
    rule(s.W2, vx, vw);
    for (std::size_t i = 0; i < ux.size(); ++i) {
        double wu = s.W1(ux[i]);
        if (wu == 0) continue;
        for (std::size_t j = 0; j < vx.size(); ++j) {
            double wv = s.W2(vx[j]);
            if (wv == 0) continue;
            cplx ph = e_real(-s.m1 * X * ux[i] / s.q - s.m2 * Y * vx[j] / s.q);
            acc += uw[i] * vw[j] * wu * wv * ph * Fat(sig(ux[i], vx[j]));
        }
    }
    return c0_constant() * s.q * d.Q() * acc.value();
}

std::vector<cplx> osc_Z(const OscSpec& s, const DeltaExpansion& d, const std::vector<double>& ms, i64 n3p, int nodes,
                        const CompositeOptions& o) {
    LEngine L1(s, d, o);
    OscSpec sp = s;
    if (n3p >= 0) sp.n3 = n3p;
    LEngine L2(sp, d, o);
    const double K = s.K(), lo = s.W.lo(), hi = s.W.hi();
    // Chebyshev points of the second kind
    std::vector<double> xs(nodes + 1);
    std::vector<cplx> P(nodes + 1);
    for (int j = 0; j <= nodes; ++j) {
        xs[j] = 0.5 * (lo + hi) + 0.5 * (hi - lo) * std::cos(M_PI * j / nodes);
        double nm2 = K * xs[j];
        P[j] = L1(nm2, s.sign) * std::conj(n3p >= 0 ? L2(nm2, s.sign) : L1(nm2, s.sign));
    }
    auto interp = [&](double x) {
        cplx num = 0;
        double den = 0;
        for (int j = 0; j <= nodes; ++j) {
            double dx = x - xs[j];
            if (dx == 0) return P[j];
            double w = (j % 2 ? -1.0 : 1.0) * (j == 0 || j == nodes ? 0.5 : 1.0) / dx;
            num += w * P[j];
            den += w;
        }
        return num / den;
    };
    const int NF = 4096;
    const double hw = (hi - lo) / NF;
    std::vector<cplx> Pw(NF + 1);
    std::vector<double> Ww(NF + 1);
    for (int i = 0; i <= NF; ++i) {
        double w = lo + i * hw;
        Ww[i] = s.W(w);
        Pw[i] = Ww[i] != 0 ? interp(w) : 0.0;
    }
    std::vector<cplx> out;
    const double Mq = double(s.n) * s.q;
    for (double m : ms) {
        CSum acc;
        for (int i = 0; i <= NF; ++i)
            if (Ww[i] != 0) acc += Ww[i] * Pw[i] * e_real(-K * m * (lo + i * hw) / Mq);
        out.push_back(acc.value() * hw);
    }
    return out;
}

}  // namespace ntv
