#include "ldpcbounds/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <map>
#include <mutex>

namespace ldpcbounds {

namespace {

// Weighted Hermite functions psi_j = (orthonormal H_j) * e^{-x^2/2}; they
// obey the same three-term recurrence and stay O(1) throughout the
// oscillatory region, so root finding needs no overflow guards.
struct PsiPair {
    double psi_n;
    double psi_nm1;
};

PsiPair hermite_psi(int n, double x) {
    constexpr double kPiQuarterInv = 0.7511255444649425;  // pi^{-1/4}
    double prev = 0.0;
    double cur = kPiQuarterInv * std::exp(-0.5 * x * x);
    for (int j = 0; j < n; ++j) {
        const double next =
            x * std::sqrt(2.0 / (j + 1)) * cur - std::sqrt(static_cast<double>(j) / (j + 1)) * prev;
        prev = cur;
        cur = next;
    }
    return {cur, prev};
}

// Positive roots of H_n located by a sign-change scan (the oscillation scale
// is pi/sqrt(2n+1), so a sixth of it cannot skip a root), refined by
// bisection-safeguarded Newton.
GaussHermiteRule compute_gauss_hermite(int n) {
    GaussHermiteRule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);

    const double upper = std::sqrt(2.0 * n + 2.0);
    const double scan_step = std::acos(-1.0) / std::sqrt(2.0 * n + 1.0) / 6.0;

    int found = 0;
    double x_prev = (n % 2 == 0) ? 0.0 : scan_step * 1e-3;  // odd n has a root at 0
    double f_prev = hermite_psi(n, x_prev).psi_n;
    if (n % 2 == 1) {
        const int mid = n / 2;
        rule.nodes[mid] = 0.0;
        const double psi = hermite_psi(n, 0.0).psi_nm1;
        rule.weights[mid] = 1.0 / (n * psi * psi);  // e^{-x^2} = 1 at x = 0
    }
    const int wanted = n / 2;
    for (double x = x_prev + scan_step; found < wanted && x < upper + scan_step;
         x += scan_step) {
        const double f = hermite_psi(n, x).psi_n;
        if ((f_prev < 0.0) != (f < 0.0)) {
            double lo = x_prev, hi = x, flo = f_prev;
            double z = 0.5 * (lo + hi);
            for (int iter = 0; iter < 100; ++iter) {
                const PsiPair p = hermite_psi(n, z);
                // psi_n'(z) = sqrt(2n) psi_{n-1} - z psi_n
                const double deriv = std::sqrt(2.0 * n) * p.psi_nm1 - z * p.psi_n;
                if ((p.psi_n < 0.0) == (flo < 0.0)) {
                    lo = z;
                    flo = p.psi_n;
                } else {
                    hi = z;
                }
                double step = deriv != 0.0 ? p.psi_n / deriv : 0.0;
                double zn = z - step;
                if (!(zn > lo && zn < hi)) zn = 0.5 * (lo + hi);
                if (std::abs(zn - z) <= 1e-16 * (1.0 + std::abs(z))) {
                    z = zn;
                    break;
                }
                z = zn;
            }
            const double psi = hermite_psi(n, z).psi_nm1;
            // w = e^{-x^2} / (n * p_{n-1}(x)^2) with p_{n-1} = psi_{n-1} e^{x^2/2}
            const double w = std::exp(-z * z) / (n * psi * psi);
            const int hi_idx = (n + 1) / 2 + found;
            const int lo_idx = n / 2 - 1 - found;
            rule.nodes[hi_idx] = z;
            rule.nodes[lo_idx] = -z;
            rule.weights[hi_idx] = w;
            rule.weights[lo_idx] = w;
            ++found;
        }
        x_prev = x;
        f_prev = f;
    }
    if (found != wanted)
        throw std::runtime_error("gauss_hermite: failed to locate all quadrature nodes");
    return rule;
}

}  // namespace

const GaussHermiteRule& gauss_hermite(int n) {
    if (n < 2 || n > 512)
        throw std::invalid_argument("gauss_hermite: order must lie in [2, 512]");
    static std::mutex mutex;
    static std::map<int, GaussHermiteRule> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gauss_hermite(n)).first;
    return it->second;
}

double integrate_interval(const std::function<double(double)>& f, double a, double b,
                          double tol, double* error_estimate) {
    double err = 0.0;
    const double value =
        boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, tol, &err);
    if (error_estimate != nullptr) *error_estimate = err;
    return value;
}

QuadResult gaussian_expectation(const std::function<double(double)>& f, double mean,
                                double sd, const QuadratureConfig& cfg) {
    if (!(sd > 0.0)) throw std::invalid_argument("gaussian_expectation: sd must be positive");
    const double inv_sqrt_pi = 0.5641895835477563;
    const double scale = std::sqrt(2.0) * sd;

    auto eval = [&](int n) {
        const GaussHermiteRule& rule = gauss_hermite(n);
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            acc += rule.weights[i] * f(mean + scale * rule.nodes[i]);
        }
        return acc * inv_sqrt_pi;
    };

    QuadResult result;
    const int n = std::max(cfg.nodes, 4);
    const double fine = eval(n);
    const double coarse = eval(n / 2);
    result.value = fine;
    result.error_estimate = std::abs(fine - coarse);
    result.nodes_used = n;
    if (result.error_estimate <= cfg.abs_tol) return result;

    // Fallback: adaptive Gauss-Kronrod against the explicit Gaussian density
    // on a truncated interval (the tail mass beyond 13 sd is ~1e-38).
    const double span = 13.0 * sd;
    const double norm = 1.0 / (sd * std::sqrt(2.0 * std::acos(-1.0)));
    auto integrand = [&](double x) {
        const double u = (x - mean) / sd;
        return f(x) * norm * std::exp(-0.5 * u * u);
    };
    double err = 0.0;
    result.value = integrate_interval(integrand, mean - span, mean + span, cfg.abs_tol * 0.1, &err);
    result.error_estimate = err;
    result.used_fallback = true;
    if (err > cfg.abs_tol) {
        throw QuadratureError("gaussian_expectation: quadrature failed to converge", err);
    }
    return result;
}

}  // namespace ldpcbounds
