#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace ldpcbounds {

/// Settings for the Gaussian-weight quadrature used throughout the library.
/// `nodes` is the Gauss-Hermite order of the primary rule; the error estimate
/// compares it against the rule of half the order. If the estimate exceeds
/// `abs_tol`, an adaptive Gauss-Kronrod fallback is used.
struct QuadratureConfig {
    int nodes = 128;
    double abs_tol = 1e-10;
};

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int nodes_used = 0;
    bool used_fallback = false;
};

struct QuadratureError : std::runtime_error {
    double error_estimate;
    QuadratureError(const std::string& msg, double estimate)
        : std::runtime_error(msg), error_estimate(estimate) {}
};

/// Nodes and weights for the physicists' Gauss-Hermite rule (weight e^{-t^2}).
/// The weights sum to sqrt(pi). Rules are computed once and cached.
struct GaussHermiteRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussHermiteRule& gauss_hermite(int n);

/// E[f(X)] for X ~ N(mean, sd^2). Primary path: Gauss-Hermite at cfg.nodes
/// with the half-order rule as error reference; adaptive fallback on a
/// truncated interval if that estimate misses cfg.abs_tol. Throws
/// QuadratureError if the fallback cannot reach the tolerance either.
QuadResult gaussian_expectation(const std::function<double(double)>& f, double mean,
                                double sd, const QuadratureConfig& cfg = {});

/// Adaptive Gauss-Kronrod integral of f over [a, b].
double integrate_interval(const std::function<double(double)>& f, double a, double b,
                          double tol, double* error_estimate = nullptr);

}  // namespace ldpcbounds
