#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ldpcbounds/bounds.hpp"

namespace ldpcbounds {

/// Eb/N0 in dB for a BiAWGN channel of deviation sigma at code rate R.
double ebno_db_from_sigma(double sigma, double rate);
double sigma_from_ebno_db(double ebno_db, double rate);

struct BracketError : std::runtime_error {
    double lo_value;
    double hi_value;
    BracketError(const std::string& msg, double lo, double hi)
        : std::runtime_error(msg), lo_value(lo), hi_value(hi) {}
};

struct ThresholdOptions {
    double sigma_lo = 0.2;
    double sigma_hi = 3.0;
    /// Bisection stops once the Eb/N0 interval is below this (dB). For the
    /// BSC/BEC families the tolerance is absolute in the channel parameter.
    double tolerance = 1e-4;
    /// The rate bound is sampled at this many points across the bracket and
    /// must decrease monotonically before bisection starts.
    int monotonicity_samples = 16;
    NumericConfig numerics;
};

struct ThresholdResult {
    /// Eb/N0 in dB for BiAWGN queries, the channel parameter otherwise.
    double value = 0.0;
    double sigma = 0.0;  // BiAWGN only
    int iterations = 0;
};

struct ThresholdQuery {
    CheckProfile profile;
    Method method;
    ChannelKind family = ChannelKind::BiAWGN;
    ThresholdOptions options;
};

/// Largest noise level at which the selected rate bound still reaches the
/// profile's design rate, reported as Eb/N0 (BiAWGN) or as the channel
/// parameter (BSC/BEC). Throws BracketError when the bound does not cross the
/// rate inside the bracket.
ThresholdResult threshold(const ThresholdQuery& query);

/// Eb/N0 in dB at which BiAWGN capacity equals the given rate.
ThresholdResult capacity_limit_db(double rate, const ThresholdOptions& options = {});

/// One row of the threshold-vs-rate sweep (check-regular profiles of a fixed
/// right degree): per rate, Eb/N0 thresholds for all five bound families.
struct ThresholdSweepRow {
    double rate = 0.0;
    std::optional<double> capacity_db;
    std::optional<double> two_level_db;
    std::optional<double> quantized4_db;
    std::optional<double> quantized8_db;
    std::optional<double> unquantized_db;
    std::string status = "ok";
};

/// One row of the density-vs-Eb/N0 sweep at a fixed code rate: the capacity
/// gap fraction and the two density bounds (raw values, possibly negative).
struct DensitySweepRow {
    double ebno_db = 0.0;
    std::optional<double> epsilon;
    std::optional<double> two_level;
    std::optional<double> unquantized;
    std::string status = "ok";
};

struct SweepGrid {
    double start = 0.0;
    double stop = 0.0;
    double step = 0.0;

    std::vector<double> points() const;  // validates: nonempty monotone grid
};

std::vector<ThresholdSweepRow> sweep_thresholds(int right_degree, const SweepGrid& rates,
                                                const ThresholdOptions& options = {});

std::vector<DensitySweepRow> sweep_density(double rate, const SweepGrid& ebno_db_grid,
                                           const ThresholdOptions& options = {});

}  // namespace ldpcbounds
