#pragma once
#include <functional>
#include <string>
#include <vector>

#include "ntv/arith.hpp"
#include "ntv/bump.hpp"

namespace ntv {

// ---- constants
struct Constants {
    static double euler_gamma();
    static double stieltjes_gamma1();
};
// Euler-Maclaurin evaluations used as oracles
double euler_gamma_series(int n = 1000);
double stieltjes_gamma1_series(int n = 1000);

// principal-ish log Gamma for complex argument (branch irrelevant after exponentiation)
cplx log_gamma(cplx z);

// ---- quadrature helpers
struct QuadResult {
    cplx value;
    double error;
};
// adaptive Gauss-Kronrod on [a,b], real and imaginary parts separately
QuadResult integrate_gk(const std::function<cplx(double)>& f, double a, double b, double tol = 1e-12, int panels = 1);
// composite Simpson on a fixed grid
double integrate_simpson(const std::function<double(double)>& f, double a, double b, int n);

// ---- Mellin transform: int g(x) x^{s-1} dx
QuadResult mellin(const BumpFunction& g, cplx s, double tol = 1e-12);
double mellin_simpson(const BumpFunction& g, double s, int n = 20000);
// d^k/ds^k at real s: int g(x) (log x)^k x^{s-1} dx
double mellin_deriv(const BumpFunction& g, double s, int k);

// ---- Voronoi kernels G_ell, G_pm for Langlands parameters (0,0,0)
struct KernelOptions {
    double sigma = 0.5;
    double dt = 0.1;  // trapezoid aliasing period 2 pi/dt in log y; 0.25 is too coarse for y < 10
    double tail_tol = 1e-10;  // relative size of the integrand where |t| is cut
    double t_max = 0;         // 0: choose from the tail rule
};
struct KernelValue {
    cplx value;
    double error;
    double T;
};

// samples of the Mellin transform on a vertical line, g~(-sigma - i t) for t = k dt
class MellinLine {
public:
    MellinLine(const BumpFunction& g, double sigma, double dt, double t_max);
    std::size_t size() const { return vals_.size(); }
    cplx operator[](std::size_t k) const { return vals_[k]; }
    double dt() const { return dt_; }
    double sigma() const { return sigma_; }

private:
    double sigma_, dt_;
    std::vector<cplx> vals_;
};

// gamma ratio Gamma((1+s+l)/2)/Gamma((-s+l)/2), cubed
cplx gamma_ratio_cubed(int ell, cplx s);
// t beyond which |R^3 g~| stays below tol * peak
double kernel_cutoff(const BumpFunction& g, double y, double sigma, double tol);

KernelValue g_ell(int ell, double y, const BumpFunction& g, const KernelOptions& opt = {});
// (G0 -+ i G1) / (2 pi^{3/2}); sign = +1 or -1
KernelValue g_kernel(double y, int sign, const BumpFunction& g, const KernelOptions& opt = {});
// leading term pi^4 y int g(z) d1 sin(6 pi (yz)^{1/3}) / (pi^3 y z)^{1/3} dz; prefactor selectable
double g0_asymptotic(double y, const BumpFunction& g, double prefactor_power = 4.0);
constexpr double kD1 = -1.1283791670955126 / 1.7320508075688772;  // -2/sqrt(3 pi)

struct KernelRow {
    double y, re, im, err;
};
std::vector<KernelRow> kernel_table(const std::vector<double>& ys, int sign, const BumpFunction& g,
                                    const KernelOptions& opt = {});

// ---- d3 Voronoi verification
struct VoronoiOptions {
    double sigma = 0.0;     // abscissa for the dual sums
    double dt = 0.2;
    double tail_tol = 1e-9;
    double y_margin = 1.0;  // truncation at y_max = margin (T/2)^3 / (pi^3 lo)
    int oversample = 16;    // kernel grid spacing pi / (oversample T) in log y
};

// G_0 and G_1 on a uniform grid in log y, from one FFT of the line integrand each.
// The grid functions are band-limited by T, so local Lagrange interpolation is accurate.
class KernelGrid {
public:
    KernelGrid(const BumpFunction& g, double y_min, double y_max, double sigma, double dt, double T, int oversample);
    double value(int ell, double y) const;
    // G_0(y), G_1(y) sharing the interpolation weights
    std::pair<double, double> values(double y) const;
    double T() const { return T_; }

private:
    double u0_, du_, T_;
    std::vector<double> g0_, g1_;
};
struct MainTerms {
    // coefficient of h~(1), h~'(1), h~''(1) summed over n1 | q
    double c0, c1, c2;
    double value;
};
struct VoronoiReport {
    i64 q, a;
    double X;
    cplx lhs;
    cplx dual;              // Kloosterman-weighted kernel sum
    MainTerms stated;       // normalization as stated
    MainTerms corrected;    // normalization after the residue bisection
    cplx rhs_stated, rhs_corrected;
    double discrepancy_stated, discrepancy_corrected;  // relative to |lhs|
    // classical residue coefficients for q = 1 divided by the stated ones
    double ratio_c0, ratio_c1, ratio_c2;
    double T;
    i64 n2_terms;
    double mellin0, mellin1, mellin2;
    std::vector<double> ram_check;  // |S(abar,0;q/n1) - c_{q/n1}(1)| per n1
};
double P1(u64 n1, u64 q);
double P2(u64 n1, u64 q);
MainTerms voronoi_main_terms(i64 a, i64 q, double m0, double m1, double m2, double scale);
VoronoiReport voronoi_d3_check(i64 a, i64 q, const BumpFunction& h, const VoronoiOptions& opt = {});

// ---- DFI delta symbol
class DeltaExpansion {
public:
    DeltaExpansion(double Q, const BumpFunction& shape);
    // default shape: plateau on [Q, 2Q] with quarter-length ramps
    explicit DeltaExpansion(double Q);
    double Q() const { return Q_; }
    double w(double x) const { return shape_(x) / norm_; }
    // Delta_q(u)
    double kernel(i64 q, double u) const;
    i64 q_max(double n) const;
    double norm() const { return norm_; }

private:
    double Q_;
    BumpFunction shape_;
    double norm_;
    std::vector<double> cq_;  // Delta_q(u) for |u| < qQ
};
DeltaExpansion dfi_delta(double Q, const BumpFunction& shape);
double delta_eval(const DeltaExpansion& d, i64 n);
// q Q Delta_q(0), the size of the implied psi near the origin
std::vector<double> delta_average_profile(const DeltaExpansion& d);

// ---- oscillatory integrals
struct OscSpec {
    double X = 1e4, Q = 100, q = 1, u = 0;
    i64 n = 1, n3 = 1;
    int k = 3;
    double nm2 = 0;  // n^2 m
    double m1 = 0, m2 = 0;
    int sign = 1;
    double v = 1.5;  // second Poisson variable, stationary-phase integral only
    BumpFunction V = BumpFunction::plateau(0.5, 1, 2, 3);
    BumpFunction W1 = BumpFunction::classic(1, 2);
    BumpFunction W2 = BumpFunction::classic(1, 2);
    BumpFunction W = BumpFunction::classic(1, 2);
    double K() const;
    double Kprime() const;
    double M() const;
};

enum class OscScheme { automatic, adaptive, filon };
struct OscResult {
    cplx value;
    double error;
    bool asymptotic;     // phase frequency beyond the quadrature regime
    double trivial;      // integral of the absolute integrand
};
struct OscOptions {
    OscScheme scheme = OscScheme::automatic;
    double filon_threshold = 50;  // radians per unit of the local phase derivative
    double tol = 1e-12;
};

// Filon-Legendre: int_a^b f(x) e^{i 2 pi phi(x)} dx on panels with linearized phase
QuadResult filon(const std::function<double(double)>& f, const std::function<double(double)>& phi,
                 const std::function<double(double)>& dphi, const std::function<double(double)>& d2phi, double a,
                 double b, int min_panels = 32);

double c0_constant();  // -2 pi^3 / sqrt(3 pi)

OscResult osc_voronoi_kernel(const OscSpec& s, const OscOptions& o = {});
OscResult osc_poisson_kernel(const OscSpec& s, const OscOptions& o = {});
OscResult stationary_p(const OscSpec& s, const OscOptions& o = {});

struct CompositeOptions {
    double h = 1e-4;  // grid step in z
};

// L(m1,m2,n,m,n3,q) for fixed (q, m1, m2, n3) and varying n^2 m and sign; psi is replaced by
// the Delta_q weight, so the u-integral becomes q Q Delta_q(X(z - u^2 - v^2) - n3^k)
class LEngine {
public:
    LEngine(const OscSpec& s, const DeltaExpansion& d, const CompositeOptions& o = {});
    cplx operator()(double nm2, int sign) const;

private:
    OscSpec s_;
    double h_, z0_, qQ_;
    std::vector<cplx> gphi_;
    std::vector<double> amp_, cz_;
};

cplx osc_L(const OscSpec& s, const DeltaExpansion& d, const CompositeOptions& o = {});
// W for Q(uX, vY) with Y = X^theta, Gauss-Legendre in (u, v)
cplx osc_W(const OscSpec& s, const DeltaExpansion& d, i64 A, i64 B, i64 C, double theta, int nodes = 48,
           const CompositeOptions& o = {});
// Z at each frequency m, with L evaluated at n^2 m = K w; n3p < 0 means n3' = n3
std::vector<cplx> osc_Z(const OscSpec& s, const DeltaExpansion& d, const std::vector<double>& ms, i64 n3p = -1,
                        int nodes = 64, const CompositeOptions& o = {});

}  // namespace ntv
