#pragma once

#include <limits>
#include <optional>
#include <string>

#include "ldpcbounds/channel.hpp"
#include "ldpcbounds/ensemble.hpp"
#include "ldpcbounds/quantizer.hpp"

namespace ldpcbounds {

enum class MethodKind { two_level, quantized, unquantized };

/// Bound family selector; `d` is the quantization depth (2^d levels) and is
/// meaningful for quantized methods only.
struct Method {
    MethodKind kind = MethodKind::two_level;
    int d = 0;

    static Method two_level() { return {MethodKind::two_level, 0}; }
    static Method quantized(int depth) { return {MethodKind::quantized, depth}; }
    static Method unquantized() { return {MethodKind::unquantized, 0}; }

    std::string name() const;
    /// Parses "2level", "quantized:D" or "unquantized".
    static Method parse(const std::string& text);
};

/// Truncation policy for the infinite series of the un-quantized bounds: stop
/// once a term drops below term_tol, or at max_terms. The tail estimate uses
/// the monotone decay of the moments M_{2p}.
struct SeriesConfig {
    double term_tol = 1e-14;
    int max_terms = 2000;
    double tail_tol = 1e-10;
};

struct NumericConfig {
    QuadratureConfig quadrature;
    SeriesConfig series;
};

struct Diagnostics {
    int series_terms = 0;
    double series_tail = 0.0;
    double quadrature_error = 0.0;
    double solver_residual = std::numeric_limits<double>::quiet_NaN();
    bool clamped = false;
    bool vacuous = false;
    bool flagged = false;
    char active_term = '\0';  // 'A' (entropy term) or 'B' for the quantized rate bound
};

/// K1, K2 of a density bound; x_star is the maximizing free parameter of the
/// un-quantized bound and NaN otherwise.
struct DensityConstants {
    double k1 = 0.0;
    double k2 = 0.0;
    double x_star = std::numeric_limits<double>::quiet_NaN();
};

struct BoundResult {
    double value = 0.0;
    Method method;
    Diagnostics diagnostics;
    std::optional<DensityConstants> constants;
    std::optional<QuantizationScheme> scheme;
};

/// Normalized conditional-entropy lower bound under 2^d-level quantization:
/// 1 - C - (1-R) * sum_k d_k E[h2(...)] with the multinomial expectation over
/// quantizer bin pairs.
BoundResult entropy_lb_quantized(const Channel& channel, const QuantizationScheme& scheme,
                                 double rate, const CheckProfile& profile,
                                 const NumericConfig& cfg = {});

/// Un-quantized counterpart, evaluated through the moment series.
BoundResult entropy_lb_unquantized(const Channel& channel, double rate,
                                   const CheckProfile& profile, const NumericConfig& cfg = {});

/// R <= 1 - (1-C) / sum_k d_k h2((1-(1-2w)^k)/2).
BoundResult rate_ub_two_level(const Channel& channel, const CheckProfile& profile,
                              const NumericConfig& cfg = {});

/// 2^d-level rate bound; optimizes the quantizer for the profile when no
/// scheme is supplied. Records which of the two max-terms was active.
BoundResult rate_ub_quantized(const Channel& channel, int d, const CheckProfile& profile,
                              const std::optional<QuantizationScheme>& scheme = std::nullopt,
                              const NumericConfig& cfg = {});

BoundResult rate_ub_unquantized(const Channel& channel, const CheckProfile& profile,
                                const NumericConfig& cfg = {});

/// Density bounds (K1 + K2 ln(1/eps)) / (1-eps); returned raw (possibly
/// negative) with the vacuous flag set when nonpositive.
BoundResult density_lb_two_level(const Channel& channel, double epsilon,
                                 const NumericConfig& cfg = {});

BoundResult density_lb_quantized(const Channel& channel, int d, double epsilon,
                                 const std::optional<QuantizationScheme>& scheme = std::nullopt,
                                 const NumericConfig& cfg = {});

/// Un-quantized density bound: sup over the free parameter x in (0, A] with
/// A = M_2; pass `x` to pin the parameter instead of maximizing.
BoundResult density_lb_unquantized(const Channel& channel, double epsilon,
                                   std::optional<double> x = std::nullopt,
                                   const NumericConfig& cfg = {});

}  // namespace ldpcbounds
