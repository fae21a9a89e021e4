#pragma once
#include <array>

namespace ntv {

// truncated Taylor series: c[k] = f^(k)(x0)/k!
constexpr int kJetOrder = 8;
struct Jet {
    std::array<double, kJetOrder + 1> c{};
    static Jet constant(double v) {
        Jet j;
        j.c[0] = v;
        return j;
    }
    static Jet variable(double x0, double slope = 1.0) {
        Jet j;
        j.c[0] = x0;
        j.c[1] = slope;
        return j;
    }
    double deriv(int k) const;
};
Jet operator+(const Jet& a, const Jet& b);
Jet operator-(const Jet& a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator*(double s, const Jet& a);
Jet recip(const Jet& a);
Jet exp(const Jet& a);

// C-infinity bump. classic: exp(-1/(1-t^2)) mapped onto [a,d].
// plateau: 0 outside [a,d], 1 on [b,c], smooth-step ramps in between.
class BumpFunction {
public:
    enum class Shape { classic, plateau };
    static BumpFunction classic(double a, double b);
    static BumpFunction plateau(double a, double b, double c, double d);

    double operator()(double x) const;
    double deriv(double x, int j) const;
    Jet jet(double x) const;

    double lo() const { return a_; }
    double hi() const { return d_; }
    Shape shape() const { return shape_; }
    // g(x/s): support scaled by s
    BumpFunction scaled(double s) const;
    // stored sup_x |x^j g^(j)(x)| for j <= kJetOrder, from a dense grid plus 1% margin
    double derivative_bound(int j) const { return bounds_[static_cast<std::size_t>(j)]; }
    double integral() const;

private:
    BumpFunction(Shape s, double a, double b, double c, double d);
    void compute_bounds();
    Shape shape_;
    double a_, b_, c_, d_;
    std::array<double, kJetOrder + 1> bounds_{};
};

}  // namespace ntv
