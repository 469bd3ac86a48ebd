#pragma once

#include <stdexcept>
#include <vector>

#include "ldpcbounds/channel.hpp"
#include "ldpcbounds/ensemble.hpp"

namespace ldpcbounds {

/// Symmetric 2^d-level quantizer of the LLR axis. The positive half-axis is
/// cut by levels l_1 >= ... >= l_{2^{d-1}-1} >= 0 (l_0 = +inf implied); the
/// negative half mirrors them.
struct QuantizationScheme {
    int d;
    std::vector<double> levels;

    /// Throws unless levels are nonnegative, nonincreasing and 2^{d-1}-1 many.
    void validate() const;
};

/// Bin probabilities p_0 ... p_{2^d - 1} given X = 0. Bin s < 2^{d-1} covers
/// (l_{s+1}, l_s] on the positive side, bin 2^d-1-s its mirror image; any mass
/// at LLR = 0 is split evenly between the two innermost bins.
struct BinProbabilities {
    int d;
    std::vector<double> p;

    int pair_count() const { return static_cast<int>(p.size()) / 2; }
    double pair_mass(int i) const { return p[i] + p[p.size() - 1 - i]; }
    /// Mass of the lower half of the axis: sum of p_s for s >= 2^{d-1}.
    double lower_half_mass() const;
};

BinProbabilities bin_probabilities(const Channel& channel, const QuantizationScheme& scheme);

/// Pairwise divergence S = sum_i (p_i - p_{2^d-1-i})^2 / (p_i + p_{2^d-1-i}),
/// the quantity whose log drives the quantized density bound. Zero-mass pairs
/// contribute nothing.
double pair_divergence(const BinProbabilities& bins);

/// Stationarity defects of the level vector for the pair-divergence objective:
/// one value per level, zero at an optimal quantizer. Entries whose adjacent
/// pairs carry no mass are reported as zero.
std::vector<double> stationarity_residuals(const Channel& channel,
                                           const QuantizationScheme& scheme);

struct LevelOptimum {
    QuantizationScheme scheme;
    double objective = 0.0;
    /// max |stationarity residual|; meaningful only when residual_checked.
    double residual = 0.0;
    /// False for purely discrete channels, where the objective is piecewise
    /// constant in the levels and the stationarity system is uninformative.
    bool residual_checked = false;
    long evaluations = 0;
};

struct OptimizerError : std::runtime_error {
    QuantizationScheme best_levels;
    double residual;
    OptimizerError(const std::string& msg, QuantizationScheme best, double res)
        : std::runtime_error(msg), best_levels(std::move(best)), residual(res) {}
};

/// Levels maximizing the pair divergence S (density-bound objective).
LevelOptimum optimize_levels_density(const Channel& channel, int d);

/// Levels minimizing the multinomial entropy term of the quantized rate bound,
/// i.e. the levels giving the tightest rate bound for the profile.
LevelOptimum optimize_levels_rate(const Channel& channel, int d, const CheckProfile& profile);

}  // namespace ldpcbounds
