#pragma once

// Scalar math kernels shared across the library: standard normal CDF,
// regularized incomplete gamma (for chi-squared CDFs), log-gamma, and a
// recursive adaptive Simpson integrator used by the AUC quadrature.

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace winratio::detail {

inline double normal_cdf(double z) {
    return 0.5 * std::erfc(-z * M_SQRT1_2);
}

inline double normal_pdf(double z) {
    static const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * M_PI);
    return inv_sqrt_2pi * std::exp(-0.5 * z * z);
}

// Regularized lower incomplete gamma P(a, x).
// Series expansion for x < a + 1, Lentz continued fraction otherwise.
inline double gamma_p(double a, double x) {
    if (a <= 0.0) throw std::domain_error("gamma_p: a must be positive");
    if (x < 0.0) throw std::domain_error("gamma_p: x must be non-negative");
    if (x == 0.0) return 0.0;

    const double lg = std::lgamma(a);
    if (x < a + 1.0) {
        double ap = a;
        double sum = 1.0 / a;
        double term = sum;
        for (int n = 0; n < 500; ++n) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
        }
        return sum * std::exp(-x + a * std::log(x) - lg);
    }
    // continued fraction for Q(a, x), P = 1 - Q
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    const double q = std::exp(-x + a * std::log(x) - lg) * h;
    return 1.0 - q;
}

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = true;
};

// Adaptive Simpson on [lo, hi]. Splits tolerance between halves; the
// error estimate accumulates the final per-interval discrepancies.
class AdaptiveSimpson {
public:
    AdaptiveSimpson(std::function<double(double)> f, double abs_tol, int max_depth = 48)
        : f_(std::move(f)), abs_tol_(abs_tol), max_depth_(max_depth) {}

    QuadratureResult integrate(double lo, double hi, int initial_cells = 8) {
        QuadratureResult out;
        const double w = (hi - lo) / initial_cells;
        for (int k = 0; k < initial_cells; ++k) {
            const double a = lo + k * w;
            const double b = (k + 1 == initial_cells) ? hi : a + w;
            const double m = 0.5 * (a + b);
            const double fa = f_(a), fm = f_(m), fb = f_(b);
            const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
            out.value += recurse(a, b, fa, fm, fb, whole,
                                 abs_tol_ / initial_cells, max_depth_, out);
        }
        return out;
    }

private:
    double recurse(double a, double b, double fa, double fm, double fb,
                   double whole, double tol, int depth, QuadratureResult& out) {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        const double flm = f_(lm), frm = f_(rm);
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const double delta = left + right - whole;
        if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
            if (depth <= 0 && std::fabs(delta) > 15.0 * tol) out.converged = false;
            out.error_estimate += std::fabs(delta) / 15.0;
            return left + right + delta / 15.0;
        }
        return recurse(a, m, fa, flm, fm, left, tol / 2.0, depth - 1, out) +
               recurse(m, b, fm, frm, fb, right, tol / 2.0, depth - 1, out);
    }

    std::function<double(double)> f_;
    double abs_tol_;
    int max_depth_;
};

}  // namespace winratio::detail
