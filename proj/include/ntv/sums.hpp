#pragma once
#include <string>
#include <vector>

#include "ntv/bump.hpp"
#include "ntv/coeffs.hpp"
#include "ntv/expsum.hpp"

namespace ntv {

enum class WindowMode { sharp, smooth };
enum class Weight { unit, mobius, von_mangoldt };
std::string to_string(WindowMode m);
std::string to_string(Weight w);

// theta == 0 selects the cubic-sum layout Y = X^{1/k}; otherwise Y = X^theta for the binary-form sum
struct WindowConfig {
    double X = 64;
    int k = 3;
    double theta = 0;
    WindowMode mode = WindowMode::sharp;
    BumpFunction W1 = BumpFunction::classic(1, 2);
    BumpFunction W2 = BumpFunction::classic(1, 2);
    BumpFunction W3 = BumpFunction::classic(1, 2);
    double Y() const;
    // delta scale: sqrt(X) for the cubic sum, X for the binary-form sum
    double Q() const;
    void validate() const;
};

double weight_value(Weight w, u64 n);
// sum_{n <= X} |a(n)|^2 / X
double weight_l2(u64 X, Weight w);

// largest argument n1^2 + n2^2 + n3^k reached by the windows
u64 sk_max_argument(const WindowConfig& cfg);
u64 quad_max_argument(const WindowConfig& cfg, const QuadraticForm& Q);

// OpenMP over n1; one partial per n1, summed in index order, so the value does not depend on the thread count
double eval_Sk(const WindowConfig& cfg, const CoefficientSource& src, Weight w);
// single loop nest, one accumulator
double eval_Sk_serial(const WindowConfig& cfg, const CoefficientSource& src, Weight w);
// factorizes every argument afresh; d3 only
double eval_Sk_enumerate_d3(const WindowConfig& cfg, Weight w);

double eval_S_quad(const WindowConfig& cfg, const QuadraticForm& Q, const CoefficientSource& src);
double eval_S_quad_serial(const WindowConfig& cfg, const QuadraticForm& Q, const CoefficientSource& src);

struct ExponentFit {
    std::vector<double> X, value;
    double slope = 0, stderr_slope = 0, intercept = 0;
};
ExponentFit exponent_fit(const std::vector<std::pair<double, double>>& series);

// S ~ X^{1+1/k}(c0 + c1 log X + c2 log^2 X) by least squares; the residual is fitted on its nonzero
// points (slope NaN when fewer than 3 remain)
struct MainTermFit {
    double c0 = 0, c1 = 0, c2 = 0;
    std::vector<double> residual;
    ExponentFit residual_fit;
};
MainTermFit main_term_fit(const std::vector<std::pair<double, double>>& series, int k);

struct TheoremExponents {
    int theorem;
    double trivial, prior, target;
    double delta;  // prior saving, theorem 1 only
};
TheoremExponents theorem_exponents(int k, int theorem, double theta = 1);

}  // namespace ntv
