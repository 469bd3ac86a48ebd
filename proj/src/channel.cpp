#include "ldpcbounds/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ldpcbounds {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLn2 = 0.6931471805599453;

// log2(1 + e^{-l}), stable for l of either sign.
double log2_one_plus_exp_neg(double l) {
    if (l >= 0.0) return std::log1p(std::exp(-l)) / kLn2;
    return (-l + std::log1p(std::exp(l))) / kLn2;
}

double tanh_half_pow(double l, int two_p) {
    if (std::isinf(l)) return 1.0;
    const double t = std::tanh(0.5 * std::abs(l));
    return std::pow(t * t, two_p / 2);
}

}  // namespace

std::string to_string(ChannelKind kind) {
    switch (kind) {
        case ChannelKind::BEC: return "bec";
        case ChannelKind::BSC: return "bsc";
        case ChannelKind::BiAWGN: return "biawgn";
    }
    return "?";
}

LlrDistribution::LlrDistribution(std::vector<LlrAtom> atoms,
                                 std::optional<GaussianComponent> gaussian)
    : atoms_(std::move(atoms)), gaussian_(std::move(gaussian)) {
    double mass = 0.0;
    for (const LlrAtom& a : atoms_) {
        if (!(a.mass >= 0.0)) throw std::invalid_argument("LlrDistribution: negative atom mass");
        mass += a.mass;
    }
    if (gaussian_) {
        if (!(gaussian_->stddev > 0.0) || !(gaussian_->weight >= 0.0))
            throw std::invalid_argument("LlrDistribution: invalid Gaussian component");
        mass += gaussian_->weight;
    }
    if (std::abs(mass - 1.0) > 1e-10)
        throw std::invalid_argument("LlrDistribution: total mass differs from 1");

    // Symmetry check: every finite atom at l > 0 must have a mirror of mass
    // e^{-l} times its own (an atom at +inf has none), and a Gaussian part
    // must satisfy variance = 2 * mean.
    for (const LlrAtom& a : atoms_) {
        if (std::isinf(a.llr) || a.llr == 0.0 || a.mass == 0.0) continue;
        const double l = std::abs(a.llr);
        const double expected = (a.llr > 0.0) ? mass_at(-l) : mass_at(l) * std::exp(-l);
        const double actual = (a.llr > 0.0) ? a.mass * std::exp(-l) : a.mass;
        if (std::abs(expected - actual) > 1e-10)
            throw std::invalid_argument("LlrDistribution: atoms violate channel symmetry");
    }
    if (gaussian_ && std::abs(gaussian_->stddev * gaussian_->stddev - 2.0 * gaussian_->mean) >
                         1e-9 * std::max(1.0, gaussian_->mean))
        throw std::invalid_argument("LlrDistribution: Gaussian part violates channel symmetry");
}

double LlrDistribution::total_mass() const {
    double mass = gaussian_ ? gaussian_->weight : 0.0;
    for (const LlrAtom& a : atoms_) mass += a.mass;
    return mass;
}

double LlrDistribution::mass_at(double llr) const {
    double mass = 0.0;
    for (const LlrAtom& a : atoms_)
        if (a.llr == llr) mass += a.mass;
    return mass;
}

double LlrDistribution::continuous_density(double l) const {
    if (!gaussian_) return 0.0;
    const double u = (l - gaussian_->mean) / gaussian_->stddev;
    const double norm = gaussian_->weight / (gaussian_->stddev * std::sqrt(2.0 * std::acos(-1.0)));
    return norm * std::exp(-0.5 * u * u);
}

double LlrDistribution::mass_interval(double lo, double hi, bool include_lo,
                                      bool include_hi) const {
    if (lo > hi) return 0.0;
    double mass = 0.0;
    for (const LlrAtom& a : atoms_) {
        const bool above = include_lo ? (a.llr >= lo) : (a.llr > lo);
        const bool below = include_hi ? (a.llr <= hi) : (a.llr < hi);
        if (above && below) mass += a.mass;
    }
    if (gaussian_ && gaussian_->weight > 0.0) {
        // Phi differences written through erfc for far-tail accuracy.
        const double s = gaussian_->stddev * std::sqrt(2.0);
        const double zlo = std::isinf(lo) ? -kInf : (lo - gaussian_->mean) / s;
        const double zhi = std::isinf(hi) ? kInf : (hi - gaussian_->mean) / s;
        const double upper_lo = std::isinf(zlo) ? (zlo > 0 ? 0.0 : 2.0) : std::erfc(zlo);
        const double upper_hi = std::isinf(zhi) ? (zhi > 0 ? 0.0 : 2.0) : std::erfc(zhi);
        mass += 0.5 * gaussian_->weight * (upper_lo - upper_hi);
    }
    return mass;
}

QuadResult LlrDistribution::moment(int p, const QuadratureConfig& cfg) const {
    if (p < 1) throw std::invalid_argument("moment: p must be >= 1");
    QuadResult result;
    double discrete = 0.0;
    for (const LlrAtom& a : atoms_) discrete += a.mass * tanh_half_pow(a.llr, 2 * p);
    result.value = discrete;
    result.nodes_used = 0;
    if (gaussian_ && gaussian_->weight > 0.0) {
        QuadResult g = gaussian_expectation(
            [p](double l) { return tanh_half_pow(l, 2 * p); }, gaussian_->mean,
            gaussian_->stddev, cfg);
        result.value += gaussian_->weight * g.value;
        result.error_estimate = gaussian_->weight * g.error_estimate;
        result.nodes_used = g.nodes_used;
        result.used_fallback = g.used_fallback;
    }
    return result;
}

QuadResult moment_m(const LlrDistribution& dist, int p, const QuadratureConfig& cfg) {
    return dist.moment(p, cfg);
}

Channel Channel::bec(double erasure_prob) {
    if (!(erasure_prob >= 0.0 && erasure_prob < 1.0))
        throw std::invalid_argument("bec: erasure probability must lie in [0, 1)");
    return Channel(ChannelKind::BEC, erasure_prob);
}

Channel Channel::bsc(double crossover_prob) {
    if (!(crossover_prob >= 0.0 && crossover_prob < 0.5))
        throw std::invalid_argument("bsc: crossover probability must lie in [0, 1/2)");
    return Channel(ChannelKind::BSC, crossover_prob);
}

Channel Channel::biawgn(double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("biawgn: sigma must be positive");
    return Channel(ChannelKind::BiAWGN, sigma);
}

LlrDistribution Channel::llr_distribution() const {
    switch (kind_) {
        case ChannelKind::BEC: {
            const double p = parameter_;
            std::vector<LlrAtom> atoms{{kInf, 1.0 - p}};
            if (p > 0.0) atoms.push_back({0.0, p});
            return LlrDistribution(std::move(atoms), std::nullopt);
        }
        case ChannelKind::BSC: {
            const double w = parameter_;
            if (w == 0.0) return LlrDistribution({{kInf, 1.0}}, std::nullopt);
            const double llr = std::log((1.0 - w) / w);
            return LlrDistribution({{llr, 1.0 - w}, {-llr, w}}, std::nullopt);
        }
        case ChannelKind::BiAWGN: {
            const double sigma = parameter_;
            const double mean = 2.0 / (sigma * sigma);
            return LlrDistribution({}, GaussianComponent{mean, std::sqrt(2.0 * mean), 1.0});
        }
    }
    throw std::logic_error("llr_distribution: unknown channel kind");
}

QuadResult Channel::capacity_info(const QuadratureConfig& cfg) const {
    QuadResult result;
    switch (kind_) {
        case ChannelKind::BEC:
            result.value = 1.0 - parameter_;
            return result;
        case ChannelKind::BSC:
            result.value = 1.0 - binary_entropy(parameter_);
            return result;
        case ChannelKind::BiAWGN: {
            const double sigma = parameter_;
            const double mean = 2.0 / (sigma * sigma);
            QuadResult g = gaussian_expectation(log2_one_plus_exp_neg, mean,
                                                std::sqrt(2.0 * mean), cfg);
            result = g;
            result.value = 1.0 - g.value;
            return result;
        }
    }
    throw std::logic_error("capacity: unknown channel kind");
}

double Channel::capacity(const QuadratureConfig& cfg) const { return capacity_info(cfg).value; }

double Channel::hard_decision_w() const {
    switch (kind_) {
        case ChannelKind::BEC: return 0.5 * parameter_;
        case ChannelKind::BSC: return parameter_;
        case ChannelKind::BiAWGN: {
            // Pr{LLR < 0} = Q(1/sigma) for the N(2/s^2, 4/s^2) LLR.
            return 0.5 * std::erfc(1.0 / (parameter_ * std::sqrt(2.0)));
        }
    }
    throw std::logic_error("hard_decision_w: unknown channel kind");
}

double binary_entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("binary_entropy: argument outside [0, 1]");
    if (x == 0.0 || x == 1.0) return 0.0;
    return -(x * std::log2(x) + (1.0 - x) * std::log2(1.0 - x));
}

}  // namespace ldpcbounds
