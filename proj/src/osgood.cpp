#include "machlab/osgood.hpp"

#include <cmath>
#include <stdexcept>

namespace machlab {
namespace {

// Adaptive Simpson on [a, b].
double simpson(const std::function<double(double)>& f, double a, double m,
               double b, double fa, double fm, double fb, double whole,
               double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate_panel(const std::function<double(double)>& f, double a,
                       double b, double tol) {
    if (b <= a) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson(f, a, m, b, fa, fm, fb, whole, tol, 40);
}

// Doubling panels keep the adaptive rule well scaled on huge ranges.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-11) {
    if (b <= a) return 0.0;
    double total = 0.0;
    double lo = a, hi = std::min(b, a + 1.0);
    while (true) {
        total += integrate_panel(f, lo, hi, tol);
        if (hi >= b) break;
        lo = hi;
        hi = std::min(b, 2.0 * hi);
    }
    return total;
}

} // namespace

double osgood_M(const ClassF& F, double C, double x) {
    if (!F.is_class_F)
        throw std::invalid_argument("osgood_M: F not verified class-F");
    if (x < 0.0) throw std::invalid_argument("osgood_M: x < 0");
    return integrate([&](double y) { return 1.0 / F(std::exp(C * y)); }, 0.0, x);
}

double osgood_M_inverse(const ClassF& F, double C, double t) {
    if (t < 0.0) throw std::invalid_argument("osgood_M_inverse: t < 0");
    // M is strictly increasing with M(0)=0; bracket then bisect.
    double hi = 1.0;
    int guard = 0;
    while (osgood_M(F, C, hi) < t) {
        hi *= 2.0;
        if (++guard > 60)
            throw std::out_of_range("osgood_M_inverse: t beyond computable range");
    }
    double lo = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (osgood_M(F, C, mid) < t)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-13 * std::max(1.0, hi)) break;
    }
    return 0.5 * (lo + hi);
}

double osgood_M_inverse_derivative(const ClassF& F, double C, double t) {
    return F(std::exp(C * osgood_M_inverse(F, C, t)));
}

double osgood_solve(const ClassF& F, double C, double x_or_t,
                    OsgoodDirection direction) {
    switch (direction) {
    case OsgoodDirection::M:
        return osgood_M(F, C, x_or_t);
    case OsgoodDirection::M_inverse:
        return osgood_M_inverse(F, C, x_or_t);
    case OsgoodDirection::M_inverse_derivative:
        return osgood_M_inverse_derivative(F, C, x_or_t);
    }
    throw std::invalid_argument("osgood_solve: bad direction");
}

double osgood_bound(double C, const std::function<double(double)>& gamma,
                    const std::function<double(double)>& mu, double a,
                    double t) {
    if (C < a) throw std::invalid_argument("osgood_bound: C below mu's domain");
    auto M_mu = [&](double y) {
        return integrate([&](double x) { return 1.0 / mu(x); }, a, y);
    };
    const double target = M_mu(C) + integrate(gamma, 0.0, t);
    double hi = std::max(C, a) + 1.0;
    int guard = 0;
    while (M_mu(hi) < target) {
        hi = a + 2.0 * (hi - a);
        if (++guard > 200)
            throw std::out_of_range("osgood_bound: bound exceeds M range");
    }
    double lo = a;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (M_mu(mid) < target)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-12 * std::max(1.0, hi)) break;
    }
    return 0.5 * (lo + hi);
}

} // namespace machlab
