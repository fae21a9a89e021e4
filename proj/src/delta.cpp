#include <cmath>
#include <stdexcept>

#include "ntv/analytic.hpp"
#include "ntv/expsum.hpp"

namespace ntv {

DeltaExpansion::DeltaExpansion(double Q, const BumpFunction& shape) : Q_(Q), shape_(shape), norm_(0) {
    if (!(Q >= 1)) throw std::invalid_argument("delta: Q must be at least 1");
    if (shape.lo() < Q - 1e-9 || shape.hi() > 2 * Q + 1e-9) throw std::invalid_argument("delta: w must live in [Q,2Q]");
    for (i64 c = static_cast<i64>(std::floor(shape.lo())); c <= static_cast<i64>(std::ceil(shape.hi())); ++c)
        if (c > 0) norm_ += shape_(double(c));
    if (!(norm_ > 0)) throw std::invalid_argument("delta: shape has no integer mass");
    const i64 qm = static_cast<i64>(std::ceil(2 * Q));
    cq_.assign(static_cast<std::size_t>(qm + 1), 0.0);
    for (i64 q = 1; q <= qm; ++q)
        for (i64 c = q; double(c) <= 2 * Q; c += q) cq_[q] += w(double(c)) / double(c);
}

DeltaExpansion::DeltaExpansion(double Q) : DeltaExpansion(Q, BumpFunction::plateau(Q, 1.25 * Q, 1.75 * Q, 2 * Q)) {}

DeltaExpansion dfi_delta(double Q, const BumpFunction& shape) { return DeltaExpansion(Q, shape); }

double DeltaExpansion::kernel(i64 q, double u) const {
    if (q < 1) throw std::invalid_argument("delta: q must be positive");
    double s = static_cast<std::size_t>(q) < cq_.size() ? cq_[q] : 0.0;
    const double au = std::fabs(u);
    if (au >= Q_ * double(q)) {
        // r with |u|/(qr) in [Q, 2Q]
        i64 r0 = std::max<i64>(1, static_cast<i64>(std::ceil(au / (2 * Q_ * double(q)))));
        i64 r1 = static_cast<i64>(std::floor(au / (Q_ * double(q))));
        for (i64 r = r0; r <= r1; ++r) {
            double c = double(q) * double(r);
            s -= w(au / c) / c;
        }
    }
    return s;
}

i64 DeltaExpansion::q_max(double n) const {
    return static_cast<i64>(std::ceil(std::max(2 * Q_, std::fabs(n) / Q_))) + 1;
}

double delta_eval(const DeltaExpansion& d, i64 n) {
    const i64 qm = d.q_max(double(n));
    double s = 0, c = 0;
    for (i64 q = 1; q <= qm; ++q) {
        double k = d.kernel(q, double(n));
        if (k == 0) continue;
        double term = ramanujan_sum(n, q) * k;
        double t = s + term;
        c += std::fabs(s) >= std::fabs(term) ? (s - t) + term : (term - t) + s;
        s = t;
    }
    return s + c;
}

std::vector<double> delta_average_profile(const DeltaExpansion& d) {
    std::vector<double> out;
    const i64 qm = static_cast<i64>(std::ceil(2 * d.Q()));
    for (i64 q = 1; q <= qm; ++q) out.push_back(double(q) * d.Q() * d.kernel(q, 0));
    return out;
}

}  // namespace ntv
