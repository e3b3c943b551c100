#include "fiwi/quadrature.hpp"

#include <cmath>

namespace fiwi {

namespace {

double simpson(double h, double fa, double fm, double fb) {
    return (fa + 4.0 * fm + fb) * (h / 6.0);
}

double recurse(const std::function<double(double)>& f, double a, double m, double b,
               double fa, double fm, double fb, double whole, double tol, int depth,
               double noise_per_len) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(m - a, fa, flm, fm);
    const double right = simpson(b - m, fm, frm, fb);
    const double err = left + right - whole;
    // Refinement cannot push the estimate below the evaluation noise of f
    // or below rounding level.
    const double floor = 8.0 * noise_per_len * (b - a) +
                         1e-14 * (std::abs(left) + std::abs(right) + std::abs(whole));
    if (std::abs(err) <= 15.0 * tol || std::abs(err) <= floor)
        return left + right + err / 15.0;
    if (depth <= 0)
        throw IntegrationFailure("adaptive_simpson: depth cap reached before tolerance");
    return recurse(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1, noise_per_len) +
           recurse(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1, noise_per_len);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth, double noise_per_len) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = simpson(b - a, fa, fm, fb);
    return recurse(f, a, m, b, fa, fm, fb, whole, tol, max_depth, noise_per_len);
}

}  // namespace fiwi
