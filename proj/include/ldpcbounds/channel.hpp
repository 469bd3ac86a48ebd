#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ldpcbounds/quadrature.hpp"

namespace ldpcbounds {

enum class ChannelKind { BEC, BSC, BiAWGN };

std::string to_string(ChannelKind kind);

/// Point mass of the LLR law. `llr` may be +infinity (e.g. the unerased
/// output of a BEC).
struct LlrAtom {
    double llr;
    double mass;
};

/// Smooth component of the LLR law, a weighted Gaussian density.
struct GaussianComponent {
    double mean;
    double stddev;
    double weight;
};

/// Conditional law of LLR(Y) given X = 0 for a symmetric channel: a finite
/// list of atoms plus an optional Gaussian part. Symmetry means
/// a(-l) = e^{-l} a(l), which the constructor verifies along with unit mass.
class LlrDistribution {
  public:
    LlrDistribution(std::vector<LlrAtom> atoms, std::optional<GaussianComponent> gaussian);

    const std::vector<LlrAtom>& atoms() const { return atoms_; }
    const std::optional<GaussianComponent>& gaussian() const { return gaussian_; }
    bool is_discrete() const { return !gaussian_.has_value(); }

    double total_mass() const;
    double mass_at(double llr) const;

    /// Probability of an LLR interval; each endpoint may be +-infinity and is
    /// included or excluded per the flags (relevant for atoms only).
    double mass_interval(double lo, double hi, bool include_lo, bool include_hi) const;

    /// Density of the smooth part at l (0 if there is none).
    double continuous_density(double l) const;

    /// Even moment M_{2p} = E[tanh^{2p}(L/2)], the quantity whose p = 1 case
    /// is the parameter A of the un-quantized density bound.
    QuadResult moment(int p, const QuadratureConfig& cfg = {}) const;

  private:
    std::vector<LlrAtom> atoms_;
    std::optional<GaussianComponent> gaussian_;
};

/// A memoryless binary-input output-symmetric channel. BEC(p) with erasure
/// probability p in [0,1), BSC(w) with crossover w in [0,1/2), BiAWGN(sigma)
/// with unit-energy antipodal signaling and noise deviation sigma > 0.
class Channel {
  public:
    static Channel bec(double erasure_prob);
    static Channel bsc(double crossover_prob);
    static Channel biawgn(double sigma);

    ChannelKind kind() const { return kind_; }
    double parameter() const { return parameter_; }

    /// Capacity in bits per channel use.
    double capacity(const QuadratureConfig& cfg = {}) const;
    QuadResult capacity_info(const QuadratureConfig& cfg = {}) const;

    /// w = (1/2) integral of min(f(y), f(-y)) dy, the crossover probability of
    /// the BSC obtained by sign-quantizing the output. Computed as
    /// Pr{LLR < 0 | X=0} + Pr{LLR = 0 | X=0}/2.
    double hard_decision_w() const;

    LlrDistribution llr_distribution() const;

  private:
    Channel(ChannelKind kind, double parameter) : kind_(kind), parameter_(parameter) {}

    ChannelKind kind_;
    double parameter_;
};

/// M_{2p} of a channel's LLR law (p >= 1).
QuadResult moment_m(const LlrDistribution& dist, int p, const QuadratureConfig& cfg = {});

/// Binary entropy to base 2; h2(0) = h2(1) = 0 by continuity.
double binary_entropy(double x);

}  // namespace ldpcbounds
