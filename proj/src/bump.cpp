#include "ntv/bump.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <stdexcept>

namespace ntv {

double Jet::deriv(int k) const {
    double f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return c[static_cast<std::size_t>(k)] * f;
}

Jet operator+(const Jet& a, const Jet& b) {
    Jet r;
    for (int k = 0; k <= kJetOrder; ++k) r.c[k] = a.c[k] + b.c[k];
    return r;
}
Jet operator-(const Jet& a, const Jet& b) {
    Jet r;
    for (int k = 0; k <= kJetOrder; ++k) r.c[k] = a.c[k] - b.c[k];
    return r;
}
Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (int k = 0; k <= kJetOrder; ++k)
        for (int j = 0; j <= k; ++j) r.c[k] += a.c[j] * b.c[k - j];
    return r;
}
Jet operator*(double s, const Jet& a) {
    Jet r;
    for (int k = 0; k <= kJetOrder; ++k) r.c[k] = s * a.c[k];
    return r;
}
Jet recip(const Jet& a) {
    Jet r;
    r.c[0] = 1.0 / a.c[0];
    for (int k = 1; k <= kJetOrder; ++k) {
        double s = 0;
        for (int j = 1; j <= k; ++j) s += a.c[j] * r.c[k - j];
        r.c[k] = -s * r.c[0];
    }
    return r;
}
Jet exp(const Jet& a) {
    Jet r;
    r.c[0] = std::exp(a.c[0]);
    for (int k = 1; k <= kJetOrder; ++k) {
        double s = 0;
        for (int j = 1; j <= k; ++j) s += j * a.c[j] * r.c[k - j];
        r.c[k] = s / k;
    }
    return r;
}

namespace {

// exp(-1/x) for x > 0, else 0
Jet edge(const Jet& x) {
    if (x.c[0] <= 0) return Jet{};
    return exp(-1.0 * recip(x));
}

// f(x)/(f(x)+f(1-x))
Jet smooth_step(const Jet& x) {
    if (x.c[0] <= 0) return Jet{};
    if (x.c[0] >= 1) return Jet::constant(1.0);
    Jet f = edge(x), g = edge(Jet::constant(1.0) - x);
    return f * recip(f + g);
}

}  // namespace

BumpFunction::BumpFunction(Shape s, double a, double b, double c, double d) : shape_(s), a_(a), b_(b), c_(c), d_(d) {
    compute_bounds();
}

BumpFunction BumpFunction::classic(double a, double b) {
    if (!(a < b)) throw std::invalid_argument("bump: need a < b");
    return BumpFunction(Shape::classic, a, a, b, b);
}

BumpFunction BumpFunction::plateau(double a, double b, double c, double d) {
    if (!(a < b && b <= c && c < d)) throw std::invalid_argument("bump: need a < b <= c < d");
    return BumpFunction(Shape::plateau, a, b, c, d);
}

BumpFunction BumpFunction::scaled(double s) const {
    if (!(s > 0)) throw std::invalid_argument("bump: scale must be positive");
    BumpFunction r = *this;
    r.a_ *= s;
    r.b_ *= s;
    r.c_ *= s;
    r.d_ *= s;
    return r;  // x^j g^(j) bounds are dilation invariant
}

Jet BumpFunction::jet(double x) const {
    if (x <= a_ || x >= d_) return Jet{};
    if (shape_ == Shape::classic) {
        Jet t = Jet::variable((2 * x - (a_ + d_)) / (d_ - a_), 2 / (d_ - a_));
        Jet u = Jet::constant(1.0) - t * t;
        return exp(-1.0 * recip(u));
    }
    Jet left = smooth_step(Jet::variable((x - a_) / (b_ - a_), 1 / (b_ - a_)));
    Jet right = smooth_step(Jet::variable((d_ - x) / (d_ - c_), -1 / (d_ - c_)));
    return left * right;
}

double BumpFunction::operator()(double x) const {
    if (x <= a_ || x >= d_) return 0;
    if (shape_ == Shape::classic) {
        double t = (2 * x - (a_ + d_)) / (d_ - a_);
        return std::exp(-1 / (1 - t * t));
    }
    auto step = [](double v) {
        if (v <= 0) return 0.0;
        if (v >= 1) return 1.0;
        double f = std::exp(-1 / v), g = std::exp(-1 / (1 - v));
        return f / (f + g);
    };
    return step((x - a_) / (b_ - a_)) * step((d_ - x) / (d_ - c_));
}

double BumpFunction::deriv(double x, int j) const {
    if (j < 0 || j > kJetOrder) throw std::out_of_range("bump: derivative order");
    return jet(x).deriv(j);
}

void BumpFunction::compute_bounds() {
    const int n = 10000;
    bounds_.fill(0);
    for (int i = 1; i < n; ++i) {
        double x = a_ + (d_ - a_) * i / n;
        Jet jt = jet(x);
        double xp = 1;
        for (int j = 0; j <= kJetOrder; ++j) {
            bounds_[j] = std::max(bounds_[j], std::fabs(xp * jt.deriv(j)));
            xp *= x;
        }
    }
    for (auto& b : bounds_) b *= 1.01;
}

double BumpFunction::integral() const {
    using boost::math::quadrature::gauss_kronrod;
    auto f = [this](double x) { return (*this)(x); };
    return gauss_kronrod<double, 61>::integrate(f, a_, d_, 15, 1e-13);
}

}  // namespace ntv
