#include "ldpcbounds/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "ldpcbounds/multinomial.hpp"

namespace ldpcbounds {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_depth(int d) {
    if (d < 2 || d > 16) throw std::invalid_argument("quantizer: d must lie in [2, 16]");
}

// Bin probabilities straight from the interval conventions: positive bin s
// covers (l_{s+1}, l_s], its mirror covers [-l_s, -l_{s+1}), and mass at
// LLR = 0 is split between the two innermost bins.
BinProbabilities bins_from_distribution(const LlrDistribution& dist, int d,
                                        const std::vector<double>& levels) {
    const int nb = 1 << (d - 1);
    std::vector<double> cuts(nb + 1);
    cuts[0] = kInf;
    for (int i = 0; i < nb - 1; ++i) cuts[i + 1] = levels[i];
    cuts[nb] = 0.0;

    BinProbabilities bins;
    bins.d = d;
    bins.p.assign(2 * nb, 0.0);
    const double half_zero = 0.5 * dist.mass_at(0.0);
    for (int s = 0; s < nb; ++s) {
        bins.p[s] = dist.mass_interval(cuts[s + 1], cuts[s], false, true);
        bins.p[2 * nb - 1 - s] = dist.mass_interval(-cuts[s], -cuts[s + 1], true, false);
    }
    bins.p[nb - 1] += half_zero;
    bins.p[nb] += half_zero;
    return bins;
}

struct PairStats {
    std::vector<double> mass;  // p_i + p_{2^d-1-i}
    std::vector<double> bias;  // (p_i - p_{2^d-1-i}) / mass, 0 for empty pairs
};

PairStats pair_stats(const BinProbabilities& bins) {
    const int n = bins.pair_count();
    PairStats st;
    st.mass.resize(n);
    st.bias.resize(n);
    for (int i = 0; i < n; ++i) {
        const double a = bins.p[i];
        const double b = bins.p[bins.p.size() - 1 - i];
        st.mass[i] = a + b;
        st.bias[i] = st.mass[i] > 0.0 ? (a - b) / st.mass[i] : 0.0;
    }
    return st;
}

double level_search_limit(const LlrDistribution& dist) {
    double limit = 1.0;
    for (const LlrAtom& a : dist.atoms())
        if (std::isfinite(a.llr)) limit = std::max(limit, std::abs(a.llr) * 1.5 + 1.0);
    if (dist.gaussian())
        limit = std::max(limit, dist.gaussian()->mean + 8.0 * dist.gaussian()->stddev);
    return limit;
}

std::vector<double> residuals_impl(const LlrDistribution& dist, int d,
                                   const std::vector<double>& levels) {
    const BinProbabilities bins = bins_from_distribution(dist, d, levels);
    const int n = bins.pair_count();
    auto q = [&](int j) { return bins.p[bins.p.size() - 1 - j]; };
    std::vector<double> res(levels.size(), 0.0);
    for (int i = 1; i < n; ++i) {
        // Level l_i separates pair i-1 from pair i; at an optimal level the
        // two expressions below agree.
        const double pi = bins.p[i], qi = q(i);
        const double pm = bins.p[i - 1], qm = q(i - 1);
        if (pi + qi <= 0.0 || pm + qm <= 0.0) continue;
        const double e = std::exp(-levels[i - 1]);
        const double lhs = (qi * qi + e * pi * pi) / ((pi + qi) * (pi + qi));
        const double rhs = (qm * qm + e * pm * pm) / ((pm + qm) * (pm + qm));
        res[i - 1] = lhs - rhs;
    }
    return res;
}

using Objective = std::function<double(const std::vector<double>&)>;

// Golden-section maximization over [lo, hi]. Exact ties shrink toward lo,
// which keeps plateau results deterministic and lexicographically small.
double golden_max(const std::function<double(double)>& f, double lo, double hi, double tol,
                  long& evals) {
    constexpr double kInvPhi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    evals += 2;
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = f(x1);
        }
        ++evals;
    }
    return 0.5 * (a + b);
}

struct SearchCandidate {
    std::vector<double> levels;
    double objective = -kInf;
    bool converged = false;
};

SearchCandidate coordinate_search(const Objective& objective, std::vector<double> v,
                                  double lmax, double level_tol, int max_sweeps, long& evals) {
    const int m = static_cast<int>(v.size());
    SearchCandidate cand;
    double best = objective(v);
    ++evals;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double moved = 0.0;
        for (int i = 0; i < m; ++i) {
            const double lo = (i + 1 < m) ? v[i + 1] : 0.0;
            const double hi = (i == 0) ? lmax : v[i - 1];
            if (hi - lo <= level_tol) continue;
            auto slice = [&](double x) {
                std::vector<double> u = v;
                u[i] = x;
                return objective(u);
            };
            const double x = golden_max(slice, lo, hi, level_tol, evals);
            const double fx = slice(x);
            ++evals;
            if (fx > best || (fx == best && x < v[i])) {
                moved = std::max(moved, std::abs(x - v[i]));
                v[i] = x;
                best = fx;
            }
        }
        if (moved < level_tol) {
            cand.converged = true;
            break;
        }
    }
    cand.levels = std::move(v);
    cand.objective = best;
    return cand;
}

std::vector<std::vector<double>> start_points(int m, double lmax) {
    std::vector<std::vector<double>> starts;
    for (double t : {0.15, 0.3, 0.5, 0.7, 0.9}) {
        std::vector<double> v(m);
        for (int i = 0; i < m; ++i) v[i] = t * lmax * (m - i) / (m + 1.0);
        starts.push_back(std::move(v));
    }
    for (double t : {0.4, 0.8}) {
        std::vector<double> v(m);
        for (int i = 0; i < m; ++i) v[i] = t * lmax * std::pow(0.5, i);
        starts.push_back(std::move(v));
    }
    starts.emplace_back(m, 0.0);
    return starts;
}

// Duplicating each cut of a depth d-1 scheme yields a depth d scheme with the
// same nonempty pairs, so cascaded starts never lose to the coarser depth.
std::vector<double> refine_levels(const std::vector<double>& coarse) {
    std::vector<double> fine;
    fine.reserve(coarse.size() * 2 + 1);
    for (double l : coarse) {
        fine.push_back(l);
        fine.push_back(l);
    }
    fine.push_back(coarse.back());
    return fine;
}

// Cyclic safeguarded Newton on the stationarity system, used to polish the
// pair-divergence optimum on continuous channels.
void polish_stationarity(const LlrDistribution& dist, int d, std::vector<double>& levels,
                         double lmax, long& evals) {
    const int m = static_cast<int>(levels.size());
    for (int cycle = 0; cycle < 50; ++cycle) {
        double worst = 0.0;
        for (int i = 0; i < m; ++i) {
            const double lo = (i + 1 < m) ? levels[i + 1] : 0.0;
            const double hi = (i == 0) ? lmax : levels[i - 1];
            const double r0 = residuals_impl(dist, d, levels)[i];
            evals += 1;
            worst = std::max(worst, std::abs(r0));
            if (std::abs(r0) < 1e-14) continue;
            const double h = 1e-6 * (1.0 + std::abs(levels[i]));
            std::vector<double> probe = levels;
            probe[i] = std::min(levels[i] + h, hi);
            const double r1 = residuals_impl(dist, d, probe)[i];
            evals += 1;
            const double slope = (r1 - r0) / (probe[i] - levels[i]);
            if (slope == 0.0 || !std::isfinite(slope)) continue;
            double step = -r0 / slope;
            step = std::clamp(step, -0.25 * (hi - lo), 0.25 * (hi - lo));
            levels[i] = std::clamp(levels[i] + step, lo, hi);
        }
        if (worst < 1e-13) break;
    }
}

using ObjectiveFactory = std::function<Objective(int depth)>;

LevelOptimum optimize_impl(const Channel& channel, int d, const ObjectiveFactory& make_objective,
                           bool maximize, bool polish, double level_tol) {
    const LlrDistribution dist = channel.llr_distribution();
    const double lmax = level_search_limit(dist);
    const int m = (1 << (d - 1)) - 1;

    const Objective objective = make_objective(d);
    Objective signed_obj =
        maximize ? objective
                 : Objective([objective](const std::vector<double>& v) { return -objective(v); });

    long evals = 0;
    std::vector<std::vector<double>> starts = start_points(m, lmax);
    if (d > 2) {
        // Seed with the refined optimum of the coarser quantizer.
        LevelOptimum coarse =
            optimize_impl(channel, d - 1, make_objective, maximize, false, level_tol);
        starts.push_back(refine_levels(coarse.scheme.levels));
    }

    std::vector<SearchCandidate> candidates;
    for (const auto& start : starts)
        candidates.push_back(coordinate_search(signed_obj, start, lmax, level_tol, 60, evals));

    const SearchCandidate* best = nullptr;
    for (const SearchCandidate& c : candidates) {
        if (best == nullptr) {
            best = &c;
            continue;
        }
        const double tol = 1e-12 * (1.0 + std::abs(best->objective));
        if (c.objective > best->objective + tol ||
            (std::abs(c.objective - best->objective) <= tol &&
             std::lexicographical_compare(c.levels.begin(), c.levels.end(),
                                          best->levels.begin(), best->levels.end())))
            best = &c;
    }

    bool any_converged = false;
    for (const SearchCandidate& c : candidates) any_converged |= c.converged;

    LevelOptimum result;
    result.scheme = QuantizationScheme{d, best->levels};
    result.objective = maximize ? best->objective : -best->objective;
    result.evaluations = evals;
    result.residual_checked = !dist.is_discrete() && polish;
    if (result.residual_checked) {
        std::vector<double> polished = best->levels;
        polish_stationarity(dist, d, polished, lmax, evals);
        const double obj_polished = signed_obj(polished);
        if (obj_polished >= best->objective - 1e-12 * (1.0 + std::abs(best->objective))) {
            result.scheme.levels = polished;
            result.objective = maximize ? obj_polished : -obj_polished;
        }
        double worst = 0.0;
        for (double r : residuals_impl(dist, d, result.scheme.levels))
            worst = std::max(worst, std::abs(r));
        result.residual = worst;
        result.evaluations = evals;
    }
    if (!any_converged) {
        throw OptimizerError("quantizer optimization did not converge", result.scheme,
                             result.residual);
    }
    return result;
}

}  // namespace

void QuantizationScheme::validate() const {
    check_depth(d);
    const size_t expected = (1u << (d - 1)) - 1;
    if (levels.size() != expected)
        throw std::invalid_argument("quantizer: expected " + std::to_string(expected) +
                                    " levels for d = " + std::to_string(d));
    double prev = kInf;
    for (double l : levels) {
        if (!(l >= 0.0) || !std::isfinite(l))
            throw std::invalid_argument("quantizer: levels must be finite and nonnegative");
        if (l > prev) throw std::invalid_argument("quantizer: levels must be nonincreasing");
        prev = l;
    }
}

double BinProbabilities::lower_half_mass() const {
    double acc = 0.0;
    for (size_t s = p.size() / 2; s < p.size(); ++s) acc += p[s];
    return acc;
}

BinProbabilities bin_probabilities(const Channel& channel, const QuantizationScheme& scheme) {
    scheme.validate();
    return bins_from_distribution(channel.llr_distribution(), scheme.d, scheme.levels);
}

double pair_divergence(const BinProbabilities& bins) {
    double acc = 0.0;
    const int n = bins.pair_count();
    for (int i = 0; i < n; ++i) {
        const double a = bins.p[i];
        const double b = bins.p[bins.p.size() - 1 - i];
        if (a + b > 0.0) acc += (a - b) * (a - b) / (a + b);
    }
    return acc;
}

std::vector<double> stationarity_residuals(const Channel& channel,
                                           const QuantizationScheme& scheme) {
    scheme.validate();
    return residuals_impl(channel.llr_distribution(), scheme.d, scheme.levels);
}

LevelOptimum optimize_levels_density(const Channel& channel, int d) {
    check_depth(d);
    const LlrDistribution dist = channel.llr_distribution();
    ObjectiveFactory factory = [dist](int depth) {
        return Objective([dist, depth](const std::vector<double>& levels) {
            return pair_divergence(bins_from_distribution(dist, depth, levels));
        });
    };
    return optimize_impl(channel, d, factory, /*maximize=*/true, /*polish=*/true,
                         /*level_tol=*/1e-11);
}

LevelOptimum optimize_levels_rate(const Channel& channel, int d, const CheckProfile& profile) {
    check_depth(d);
    if (profile.fractions.empty())
        throw std::invalid_argument("optimize_levels_rate: empty check profile");
    const LlrDistribution dist = channel.llr_distribution();
    CheckProfile prof = profile;
    ObjectiveFactory factory = [dist, prof](int depth) {
        return Objective([dist, prof, depth](const std::vector<double>& levels) {
            const PairStats st = pair_stats(bins_from_distribution(dist, depth, levels));
            double acc = 0.0;
            for (const auto& [degree, fraction] : prof.fractions) {
                if (fraction == 0.0) continue;
                acc += fraction * multinomial_pair_entropy(st.mass, st.bias, degree);
            }
            return acc;
        });
    };
    return optimize_impl(channel, d, factory, /*maximize=*/false, /*polish=*/false,
                         /*level_tol=*/1e-7);
}

}  // namespace ldpcbounds
