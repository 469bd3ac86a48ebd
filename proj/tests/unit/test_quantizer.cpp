#include "doctest.h"

#include <cmath>
#include <random>

#include "ldpcbounds/quantizer.hpp"

using namespace ldpcbounds;

namespace {

// Deterministic feasible level vectors: sorted nonincreasing draws in [0, hi].
std::vector<std::vector<double>> random_level_vectors(int count, int m, double hi,
                                                      unsigned seed) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> unif(0.0, hi);
    std::vector<std::vector<double>> out;
    for (int i = 0; i < count; ++i) {
        std::vector<double> v(m);
        for (double& x : v) x = unif(gen);
        std::sort(v.rbegin(), v.rend());
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace

TEST_SUITE("quantizer") {

TEST_CASE("scheme validation") {
    CHECK_NOTHROW((QuantizationScheme{2, {1.0}}.validate()));
    CHECK_NOTHROW((QuantizationScheme{3, {3.0, 1.0, 1.0}}.validate()));
    CHECK_THROWS_AS((QuantizationScheme{3, {1.0, 2.0, 0.5}}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((QuantizationScheme{3, {1.0, -0.5, -1.0}}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((QuantizationScheme{2, {1.0, 0.5}}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((QuantizationScheme{1, {}}.validate()), std::invalid_argument);
}

TEST_CASE("bin probabilities: BSC atoms land in the outer bins") {
    const double w = 0.11;
    const double llr = std::log((1.0 - w) / w);
    const BinProbabilities bins =
        bin_probabilities(Channel::bsc(w), QuantizationScheme{2, {0.5 * llr}});
    REQUIRE(bins.p.size() == 4);
    CHECK(bins.p[0] == doctest::Approx(1.0 - w).epsilon(1e-15));
    CHECK(bins.p[1] == 0.0);
    CHECK(bins.p[2] == 0.0);
    CHECK(bins.p[3] == doctest::Approx(w).epsilon(1e-15));
}

TEST_CASE("bin probabilities: BEC splits the zero-LLR mass") {
    const BinProbabilities bins =
        bin_probabilities(Channel::bec(0.3), QuantizationScheme{2, {1.0}});
    CHECK(bins.p[0] == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(bins.p[1] == doctest::Approx(0.15).epsilon(1e-15));
    CHECK(bins.p[2] == doctest::Approx(0.15).epsilon(1e-15));
    CHECK(bins.p[3] == 0.0);
}

TEST_CASE("bin probabilities partition the axis and respect pair symmetry") {
    std::mt19937 gen(777);
    std::uniform_real_distribution<double> unif(0.0, 6.0);
    for (const Channel& ch : {Channel::biawgn(0.9), Channel::bsc(0.2), Channel::bec(0.4)}) {
        for (int d : {2, 3, 4}) {
            for (int trial = 0; trial < 20; ++trial) {
                std::vector<double> levels((1 << (d - 1)) - 1);
                for (double& l : levels) l = unif(gen);
                std::sort(levels.rbegin(), levels.rend());
                const BinProbabilities bins = bin_probabilities(ch, {d, levels});
                double sum = 0.0;
                for (double p : bins.p) {
                    CHECK(p >= 0.0);
                    sum += p;
                }
                CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
                for (int i = 0; i < bins.pair_count(); ++i)
                    CHECK(bins.p[i] >= bins.p[bins.p.size() - 1 - i] - 1e-12);
            }
        }
    }
}

TEST_CASE("lower-half mass is level-independent and equals w") {
    std::mt19937 gen(31415);
    std::uniform_real_distribution<double> unif(0.0, 5.0);
    for (const Channel& ch : {Channel::biawgn(0.8), Channel::bsc(0.11), Channel::bec(0.5)}) {
        const double w = ch.hard_decision_w();
        for (int d : {2, 3, 4}) {
            for (int trial = 0; trial < 10; ++trial) {
                std::vector<double> levels((1 << (d - 1)) - 1);
                for (double& l : levels) l = unif(gen);
                std::sort(levels.rbegin(), levels.rend());
                CHECK(bin_probabilities(ch, {d, levels}).lower_half_mass() ==
                      doctest::Approx(w).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("pair divergence closed forms on discrete channels") {
    // BSC: S = (1-2w)^2 for any level placement
    for (double l1 : {0.1, 1.0, 1.9, 3.0}) {
        const BinProbabilities bins =
            bin_probabilities(Channel::bsc(0.11), QuantizationScheme{2, {l1}});
        CHECK(pair_divergence(bins) == doctest::Approx(0.78 * 0.78).epsilon(1e-13));
    }
    // BEC: S = 1-p, the mirrored halves of the erasure mass cancel
    for (double l1 : {0.2, 1.5, 8.0}) {
        const BinProbabilities bins =
            bin_probabilities(Channel::bec(0.35), QuantizationScheme{2, {l1}});
        CHECK(pair_divergence(bins) == doctest::Approx(0.65).epsilon(1e-13));
    }
}

TEST_CASE("density-objective optimum on BiAWGN") {
    const Channel ch = Channel::biawgn(0.93);
    const LevelOptimum opt = optimize_levels_density(ch, 2);
    CHECK(opt.residual_checked);
    CHECK(opt.residual < 1e-8);
    // frozen from an independent scalar optimization of the same objective
    CHECK(opt.scheme.levels[0] == doctest::Approx(1.3930633).epsilon(1e-5));
    CHECK(opt.objective == doctest::Approx(0.5790489761).epsilon(1e-9));

    // optimizer beats deterministic random probes
    for (const auto& probe : random_level_vectors(100, 1, 12.0, 2024)) {
        CHECK(opt.objective >=
              pair_divergence(bin_probabilities(ch, {2, probe})) - 1e-12);
    }
}

TEST_CASE("pair divergence is nondecreasing in the quantization depth") {
    const Channel ch = Channel::biawgn(0.93);
    const LevelOptimum d2 = optimize_levels_density(ch, 2);
    const LevelOptimum d3 = optimize_levels_density(ch, 3);
    CHECK(d3.objective >= d2.objective - 1e-12);
    CHECK(d3.residual < 1e-8);
    CHECK(d3.objective == doctest::Approx(0.5925133693).epsilon(1e-9));
}

TEST_CASE("discrete channels skip the residual check and break ties lexicographically") {
    const LevelOptimum bsc = optimize_levels_density(Channel::bsc(0.11), 2);
    CHECK_FALSE(bsc.residual_checked);
    CHECK(bsc.objective == doctest::Approx(0.78 * 0.78).epsilon(1e-13));
    // every feasible level gives the same objective; the zero vector is the
    // lexicographically smallest representative
    CHECK(bsc.scheme.levels[0] == doctest::Approx(0.0).epsilon(1e-9));

    const LevelOptimum bec = optimize_levels_density(Channel::bec(0.35), 2);
    CHECK(bec.objective == doctest::Approx(0.65).epsilon(1e-13));
}

TEST_CASE("rate-objective optimization is deterministic and repeatable") {
    const Channel ch = Channel::biawgn(0.95);
    const CheckProfile profile = check_regular_profile(6, 0.5);
    const LevelOptimum a = optimize_levels_rate(ch, 2, profile);
    const LevelOptimum b = optimize_levels_rate(ch, 2, profile);
    CHECK(a.scheme.levels == b.scheme.levels);
    CHECK(a.objective == b.objective);

    // degenerate profile edge: a zero-mass pair must not break anything
    const LevelOptimum c = optimize_levels_rate(Channel::bsc(0.11), 3, profile);
    CHECK(std::isfinite(c.objective));
}

}
