#include "ldpcbounds/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "ldpcbounds/multinomial.hpp"

namespace ldpcbounds {

namespace {

constexpr double kLn2 = 0.6931471805599453;
constexpr double kTwoLn2 = 2.0 * kLn2;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// sum_{p>=1} x^{2p} / (p(2p-1)) = 2 ln2 (1 - h2((1-x)/2)) for |x| <= 1.
double power_series_closed_form(double x) {
    const double ax = std::abs(x);
    if (ax >= 1.0) return kTwoLn2;
    return kTwoLn2 * (1.0 - binary_entropy(0.5 * (1.0 - ax)));
}

struct SeriesSum {
    double value = 0.0;  // sum_p (1/(p(2p-1))) sum_k d_k M_{2p}^k
    int terms = 0;
    double tail = 0.0;
    bool flagged = false;
    double quad_error = 0.0;
};

// Purely discrete LLR law: the moment sequence is a finite mixture of
// geometric sequences, M_{2p} = sum_j beta_j x_j^{2p} with x_j = tanh(l_j/2)
// over the positive atoms (x = 1 for the atom at +inf). Expanding M_{2p}^k
// per degree turns the p-series into the closed form above, so the sum is
// exact with no truncation.
SeriesSum series_sum_discrete(const LlrDistribution& dist, const CheckProfile& profile) {
    std::vector<double> beta, x;
    for (const LlrAtom& a : dist.atoms()) {
        if (a.mass <= 0.0 || a.llr <= 0.0) continue;  // mirrors are folded in below
        if (std::isinf(a.llr)) {
            beta.push_back(a.mass);
            x.push_back(1.0);
        } else {
            beta.push_back(a.mass * (1.0 + std::exp(-a.llr)));
            x.push_back(std::tanh(0.5 * a.llr));
        }
    }
    const int terms = static_cast<int>(beta.size());

    SeriesSum out;
    for (const auto& [degree, fraction] : profile.fractions) {
        if (fraction == 0.0) continue;
        if (terms == 0) continue;  // M_{2p} = 0: the series vanishes
        double acc = 0.0;
        for_each_composition(degree, terms, [&](const std::vector<int>& counts) {
            double weight = multinomial_coefficient(degree, counts);
            double x_prod = 1.0;
            for (int j = 0; j < terms; ++j) {
                if (counts[j] == 0) continue;
                weight *= std::pow(beta[j], counts[j]);
                x_prod *= std::pow(x[j], counts[j]);
            }
            acc += weight * power_series_closed_form(x_prod);
        });
        out.value += fraction * acc;
        out.terms += static_cast<int>(composition_count(degree, terms));
    }
    return out;
}

SeriesSum series_sum_continuous(const LlrDistribution& dist, const CheckProfile& profile,
                                const NumericConfig& cfg) {
    const GaussianComponent& g = *dist.gaussian();
    const GaussHermiteRule& rule = gauss_hermite(std::max(cfg.quadrature.nodes, 4));
    const double inv_sqrt_pi = 0.5641895835477563;
    const double scale = std::sqrt(2.0) * g.stddev;

    const int n = static_cast<int>(rule.nodes.size());
    std::vector<double> t2(n), running(n, 1.0);
    for (int i = 0; i < n; ++i) {
        const double t = std::tanh(0.5 * (g.mean + scale * rule.nodes[i]));
        t2[i] = t * t;
    }

    SeriesSum out;
    double m2p = 1.0;
    double term = 0.0;
    bool reached_tol = false;
    for (int p = 1; p <= cfg.series.max_terms; ++p) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            running[i] *= t2[i];
            acc += rule.weights[i] * running[i];
        }
        m2p = g.weight * acc * inv_sqrt_pi;
        double degree_sum = 0.0;
        for (const auto& [degree, fraction] : profile.fractions)
            degree_sum += fraction * std::pow(m2p, degree);
        term = degree_sum / (static_cast<double>(p) * (2.0 * p - 1.0));
        out.value += term;
        out.terms = p;
        if (term < cfg.series.term_tol) {
            reached_tol = true;
            break;
        }
    }
    out.tail = m2p < 1.0 ? term * m2p / (1.0 - m2p) : term;
    out.flagged = !reached_tol || out.tail > cfg.series.tail_tol;
    return out;
}

SeriesSum series_sum(const LlrDistribution& dist, const CheckProfile& profile,
                     const NumericConfig& cfg) {
    if (dist.is_discrete()) return series_sum_discrete(dist, profile);
    return series_sum_continuous(dist, profile, cfg);
}

// Denominator of the un-quantized rate bound, 1 - (1/(2 ln2)) * series.
double unquantized_denominator(const SeriesSum& series) {
    return 1.0 - series.value / kTwoLn2;
}

struct PairStats {
    std::vector<double> mass;
    std::vector<double> bias;
    double lower_half = 0.0;
};

PairStats pair_stats(const BinProbabilities& bins) {
    PairStats st;
    const int n = bins.pair_count();
    st.mass.resize(n);
    st.bias.resize(n);
    for (int i = 0; i < n; ++i) {
        const double a = bins.p[i];
        const double b = bins.p[bins.p.size() - 1 - i];
        st.mass[i] = a + b;
        st.bias[i] = st.mass[i] > 0.0 ? (a - b) / st.mass[i] : 0.0;
    }
    st.lower_half = bins.lower_half_mass();
    return st;
}

double quantized_entropy_term(const PairStats& st, const CheckProfile& profile) {
    double acc = 0.0;
    for (const auto& [degree, fraction] : profile.fractions) {
        if (fraction == 0.0) continue;
        acc += fraction * multinomial_pair_entropy(st.mass, st.bias, degree);
    }
    return acc;
}

void check_epsilon(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("density bound: epsilon must lie in (0, 1)");
}

void check_rate(double rate) {
    // R = 1 is admitted: the (1-R) term vanishes and the bound reduces to 1-C.
    if (!(rate > 0.0 && rate <= 1.0))
        throw std::invalid_argument("entropy bound: rate must lie in (0, 1]");
}

double density_value(double k1, double k2, double epsilon) {
    return (k1 + k2 * std::log(1.0 / epsilon)) / (1.0 - epsilon);
}

// K1/K2 of the two-level density bound; the BEC has the sharper dedicated
// constants.
DensityConstants two_level_constants(const Channel& channel) {
    const double capacity = channel.capacity();
    DensityConstants constants;
    if (channel.kind() == ChannelKind::BEC) {
        const double p = channel.parameter();
        constants.k2 = p / ((1.0 - p) * std::log(1.0 / (1.0 - p)));
        constants.k1 = constants.k2 * std::log(p / (1.0 - p));
        return constants;
    }
    const double w = channel.hard_decision_w();
    constants.k2 = (1.0 - capacity) / (2.0 * capacity * std::log(1.0 / (1.0 - 2.0 * w)));
    constants.k1 =
        constants.k2 * std::log((1.0 / kTwoLn2) * (1.0 - capacity) / capacity);
    return constants;
}

}  // namespace

std::string Method::name() const {
    switch (kind) {
        case MethodKind::two_level: return "2level";
        case MethodKind::quantized: return "quantized:" + std::to_string(d);
        case MethodKind::unquantized: return "unquantized";
    }
    return "?";
}

Method Method::parse(const std::string& text) {
    if (text == "2level" || text == "two_level") return two_level();
    if (text == "unquantized") return unquantized();
    const std::string prefix = "quantized:";
    if (text.rfind(prefix, 0) == 0) {
        const int d = std::stoi(text.substr(prefix.size()));
        if (d < 2) throw std::invalid_argument("method: quantization depth must be >= 2");
        return quantized(d);
    }
    throw std::invalid_argument("method: expected 2level, quantized:D or unquantized");
}

BoundResult entropy_lb_quantized(const Channel& channel, const QuantizationScheme& scheme,
                                 double rate, const CheckProfile& profile,
                                 const NumericConfig& cfg) {
    check_rate(rate);
    BoundResult result;
    result.method = Method::quantized(scheme.d);
    result.scheme = scheme;
    const QuadResult cap = channel.capacity_info(cfg.quadrature);
    const PairStats st = pair_stats(bin_probabilities(channel, scheme));
    const double term = quantized_entropy_term(st, profile);
    result.value = 1.0 - cap.value - (1.0 - rate) * term;
    result.diagnostics.quadrature_error = cap.error_estimate;
    return result;
}

BoundResult entropy_lb_unquantized(const Channel& channel, double rate,
                                   const CheckProfile& profile, const NumericConfig& cfg) {
    check_rate(rate);
    BoundResult result;
    result.method = Method::unquantized();
    const QuadResult cap = channel.capacity_info(cfg.quadrature);
    const SeriesSum series = series_sum(channel.llr_distribution(), profile, cfg);
    result.value = 1.0 - cap.value - (1.0 - rate) * unquantized_denominator(series);
    result.diagnostics.series_terms = series.terms;
    result.diagnostics.series_tail = series.tail;
    result.diagnostics.quadrature_error = cap.error_estimate;
    result.diagnostics.flagged = series.flagged;
    return result;
}

BoundResult rate_ub_two_level(const Channel& channel, const CheckProfile& profile,
                              const NumericConfig& cfg) {
    BoundResult result;
    result.method = Method::two_level();
    const QuadResult cap = channel.capacity_info(cfg.quadrature);
    result.diagnostics.quadrature_error = cap.error_estimate;
    if (cap.value >= 1.0) {  // noiseless: 0/0 resolved as bound 1
        result.value = 1.0;
        return result;
    }
    const double w = channel.hard_decision_w();
    double denom = 0.0;
    for (const auto& [degree, fraction] : profile.fractions)
        denom += fraction * binary_entropy(0.5 * (1.0 - std::pow(1.0 - 2.0 * w, degree)));
    result.value = 1.0 - (1.0 - cap.value) / denom;
    return result;
}

BoundResult rate_ub_quantized(const Channel& channel, int d, const CheckProfile& profile,
                              const std::optional<QuantizationScheme>& scheme,
                              const NumericConfig& cfg) {
    BoundResult result;
    result.method = Method::quantized(d);
    QuantizationScheme used = scheme ? *scheme : optimize_levels_rate(channel, d, profile).scheme;
    used.validate();
    result.scheme = used;

    const QuadResult cap = channel.capacity_info(cfg.quadrature);
    result.diagnostics.quadrature_error = cap.error_estimate;
    if (cap.value >= 1.0) {
        result.value = 1.0;
        return result;
    }
    const PairStats st = pair_stats(bin_probabilities(channel, used));
    const double term_a = (1.0 - cap.value) / quantized_entropy_term(st, profile);

    double geo = 0.0;
    for (const auto& [degree, fraction] : profile.fractions)
        geo += fraction * std::pow(1.0 - 2.0 * st.lower_half, degree);
    const double term_b = st.lower_half > 0.0 ? 2.0 * st.lower_half / (1.0 - geo) : 0.0;

    result.diagnostics.active_term = term_a >= term_b ? 'A' : 'B';
    result.value = 1.0 - std::max(term_a, term_b);
    return result;
}

BoundResult rate_ub_unquantized(const Channel& channel, const CheckProfile& profile,
                                const NumericConfig& cfg) {
    BoundResult result;
    result.method = Method::unquantized();
    const QuadResult cap = channel.capacity_info(cfg.quadrature);
    result.diagnostics.quadrature_error = cap.error_estimate;
    if (cap.value >= 1.0) {
        result.value = 1.0;
        return result;
    }
    const SeriesSum series = series_sum(channel.llr_distribution(), profile, cfg);
    result.diagnostics.series_terms = series.terms;
    result.diagnostics.series_tail = series.tail;
    result.diagnostics.flagged = series.flagged;
    result.value = 1.0 - (1.0 - cap.value) / unquantized_denominator(series);
    return result;
}

BoundResult density_lb_two_level(const Channel& channel, double epsilon,
                                 const NumericConfig& cfg) {
    check_epsilon(epsilon);
    BoundResult result;
    result.method = Method::two_level();
    const QuadResult cap = channel.capacity_info(cfg.quadrature);
    result.diagnostics.quadrature_error = cap.error_estimate;
    if (channel.kind() != ChannelKind::BEC && !(channel.hard_decision_w() < 0.5))
        throw std::invalid_argument("density_lb_two_level: requires w < 1/2");
    if (cap.value >= 1.0) {  // noiseless channel admits empty parity checks
        result.value = 0.0;
        result.diagnostics.vacuous = true;
        result.constants = DensityConstants{0.0, 0.0, kNaN};
        return result;
    }
    const DensityConstants constants = two_level_constants(channel);
    result.constants = constants;
    result.value = density_value(constants.k1, constants.k2, epsilon);
    result.diagnostics.vacuous = result.value <= 0.0;
    return result;
}

BoundResult density_lb_quantized(const Channel& channel, int d, double epsilon,
                                 const std::optional<QuantizationScheme>& scheme,
                                 const NumericConfig& cfg) {
    check_epsilon(epsilon);
    BoundResult result;
    result.method = Method::quantized(d);
    const QuadResult cap = channel.capacity_info(cfg.quadrature);
    result.diagnostics.quadrature_error = cap.error_estimate;

    QuantizationScheme used{d, {}};
    if (scheme) {
        used = *scheme;
        used.validate();
    } else {
        const LevelOptimum opt = optimize_levels_density(channel, d);
        used = opt.scheme;
        if (opt.residual_checked) result.diagnostics.solver_residual = opt.residual;
    }
    result.scheme = used;

    if (cap.value >= 1.0) {
        result.value = 0.0;
        result.diagnostics.vacuous = true;
        result.constants = DensityConstants{0.0, 0.0, kNaN};
        return result;
    }
    const double divergence = pair_divergence(bin_probabilities(channel, used));
    const double capacity = cap.value;
    DensityConstants constants;
    constants.k2 = -(1.0 - capacity) / (capacity * std::log(divergence));
    constants.k1 = constants.k2 * std::log((1.0 / kTwoLn2) * (1.0 - capacity) / capacity);
    result.constants = constants;
    result.value = density_value(constants.k1, constants.k2, epsilon);
    result.diagnostics.vacuous = result.value <= 0.0;
    return result;
}

BoundResult density_lb_unquantized(const Channel& channel, double epsilon,
                                   std::optional<double> x, const NumericConfig& cfg) {
    check_epsilon(epsilon);
    BoundResult result;
    result.method = Method::unquantized();
    const QuadResult cap = channel.capacity_info(cfg.quadrature);
    const double capacity = cap.value;
    result.diagnostics.quadrature_error = cap.error_estimate;
    if (capacity >= 1.0) {
        result.value = 0.0;
        result.diagnostics.vacuous = true;
        result.constants = DensityConstants{0.0, 0.0, kNaN};
        return result;
    }

    const QuadResult a_moment = moment_m(channel.llr_distribution(), 1, cfg.quadrature);
    const double a_param = a_moment.value;
    result.diagnostics.quadrature_error =
        std::max(result.diagnostics.quadrature_error, a_moment.error_estimate);
    const double xi = channel.kind() == ChannelKind::BEC ? 1.0 : 1.0 / kTwoLn2;
    const double bracket = std::log(xi * (1.0 - capacity) / capacity) + std::log(1.0 / epsilon);

    auto value_at = [&](double xv) {
        return (1.0 - capacity) / capacity * bracket / (std::log(1.0 / xv) * (1.0 - epsilon));
    };

    double x_star;
    if (x) {
        if (!(*x > 0.0 && *x <= a_param))
            throw std::invalid_argument("density_lb_unquantized: x must lie in (0, A]");
        x_star = *x;
    } else {
        // Log-spaced grid over (0, A] followed by a golden-section refinement;
        // the interval endpoint A is kept as a candidate so that boundary
        // optima are hit exactly.
        constexpr int kGrid = 512;
        int best = 0;
        double best_val = -std::numeric_limits<double>::infinity();
        std::vector<double> xs(kGrid);
        for (int j = 0; j < kGrid; ++j) {
            xs[j] = a_param * std::pow(10.0, -12.0 * j / (kGrid - 1.0));
            const double v = value_at(xs[j]);
            if (v > best_val) {
                best_val = v;
                best = j;
            }
        }
        const double lo = xs[std::min(best + 1, kGrid - 1)];
        const double hi = xs[std::max(best - 1, 0)];
        long evals = 0;
        double a = lo, b = hi;
        constexpr double kInvPhi = 0.6180339887498949;
        double x1 = b - kInvPhi * (b - a), x2 = a + kInvPhi * (b - a);
        double f1 = value_at(x1), f2 = value_at(x2);
        while (b - a > 1e-13 * a_param) {
            if (f1 < f2) {
                a = x1; x1 = x2; f1 = f2;
                x2 = a + kInvPhi * (b - a); f2 = value_at(x2);
            } else {
                b = x2; x2 = x1; f2 = f1;
                x1 = b - kInvPhi * (b - a); f1 = value_at(x1);
            }
            ++evals;
        }
        (void)evals;
        x_star = 0.5 * (a + b);
        if (value_at(a_param) >= value_at(x_star)) x_star = a_param;
        if (value_at(xs[best]) > value_at(x_star)) x_star = xs[best];
    }

    DensityConstants constants;
    constants.k2 = (1.0 - capacity) / (capacity * std::log(1.0 / x_star));
    constants.k1 = constants.k2 * std::log(xi * (1.0 - capacity) / capacity);
    constants.x_star = x_star;
    result.constants = constants;
    result.value = density_value(constants.k1, constants.k2, epsilon);
    result.diagnostics.vacuous = result.value <= 0.0;
    return result;
}

}  // namespace ldpcbounds
