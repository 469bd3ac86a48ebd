#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include "ldpcbounds/ensemble.hpp"

using namespace ldpcbounds;

TEST_SUITE("ensembles") {

TEST_CASE("design rate of the standard pairs") {
    // Gallager (4,6): lambda = x^3, rho = x^5
    CHECK(DegreeDistribution({{4, 1.0}}, {{6, 1.0}}).design_rate() ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    // Gallager (3,6)
    CHECK(DegreeDistribution({{3, 1.0}}, {{6, 1.0}}).design_rate() ==
          doctest::Approx(0.5).epsilon(1e-14));
    // lambda = rho gives rate 0
    CHECK(DegreeDistribution({{5, 1.0}}, {{5, 1.0}}).design_rate() ==
          doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("regular pairs reduce to 1 - a_L/a_R") {
    for (int al = 2; al <= 5; ++al)
        for (int ar = al + 1; ar <= 9; ++ar)
            CHECK(DegreeDistribution({{al, 1.0}}, {{ar, 1.0}}).design_rate() ==
                  doctest::Approx(1.0 - double(al) / ar).epsilon(1e-12));
}

TEST_CASE("check fractions") {
    const CheckProfile regular =
        DegreeDistribution({{3, 1.0}}, {{6, 1.0}}).check_fractions();
    CHECK(regular.fractions.at(6) == doctest::Approx(1.0).epsilon(1e-15));

    // rho with degrees 5 and 6 at edge fraction 1/2 each:
    // d_5 = 0.1/(0.1 + 1/12), d_6 = (1/12)/(0.1 + 1/12)
    const CheckProfile mixed =
        DegreeDistribution({{3, 1.0}}, {{5, 0.5}, {6, 0.5}}).check_fractions();
    CHECK(mixed.fractions.at(5) == doctest::Approx(6.0 / 11.0).epsilon(1e-13));
    CHECK(mixed.fractions.at(6) == doctest::Approx(5.0 / 11.0).epsilon(1e-13));
}

TEST_CASE("check fractions sum to 1 and average degree is 1/int(rho)") {
    std::mt19937 gen(12345);
    std::uniform_real_distribution<double> unif(0.05, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::map<int, double> rho;
        double total = 0.0;
        for (int deg = 2; deg <= 2 + trial % 7; ++deg) {
            rho[deg] = unif(gen);
            total += rho[deg];
        }
        for (auto& [deg, frac] : rho) frac /= total;
        DegreeDistribution dist({{3, 1.0}}, rho);
        const CheckProfile profile = dist.check_fractions();
        double sum = 0.0;
        double rho_int = 0.0;
        for (const auto& [deg, frac] : profile.fractions) sum += frac;
        for (const auto& [deg, frac] : rho) rho_int += frac / deg;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(profile.average_degree() == doctest::Approx(1.0 / rho_int).epsilon(1e-12));
    }
}

TEST_CASE("parity-check density") {
    CHECK(parity_check_density(check_regular_profile(6, 0.5)) ==
          doctest::Approx(6.0).epsilon(1e-14));
    CheckProfile p;
    p.fractions[12] = 1.0;
    p.rate = 0.75;
    CHECK(parity_check_density(p) == doctest::Approx(4.0).epsilon(1e-14));
    // density vanishes as the rate approaches 1 with the degree held fixed
    CHECK(parity_check_density(check_regular_profile(8, 1.0 - 1e-9)) < 1e-7);
    CHECK_THROWS_AS(parity_check_density(check_regular_profile(6, 1.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(parity_check_density(check_regular_profile(6, 0.0)),
                    std::invalid_argument);
}

TEST_CASE("validation and renormalization") {
    CHECK_THROWS_AS(DegreeDistribution({}, {{6, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(DegreeDistribution({{3, 1.0}}, {}), std::invalid_argument);
    CHECK_THROWS_AS(DegreeDistribution({{1, 1.0}}, {{6, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(DegreeDistribution({{3, -0.1}, {4, 1.1}}, {{6, 1.0}}),
                    std::invalid_argument);
    // off by 1e-3: too far to renormalize silently
    CHECK_THROWS_AS(DegreeDistribution({{3, 1.001}}, {{6, 1.0}}), std::invalid_argument);
    // off by 1e-8: renormalized with the flag set
    DegreeDistribution d({{3, 1.0 + 1e-8}}, {{6, 1.0}});
    CHECK(d.renormalized());
    CHECK(d.lambda().at(3) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_FALSE(DegreeDistribution({{3, 1.0}}, {{6, 1.0}}).renormalized());
}

TEST_CASE("json parsing") {
    const DegreeDistribution d = DegreeDistribution::from_json_text(
        R"({"lambda": {"3": 1.0}, "rho": {"5": 0.5, "6": 0.5}})");
    CHECK(d.rho().at(5) == 0.5);
    CHECK(d.design_rate() == doctest::Approx(1.0 - (0.5 / 5 + 0.5 / 6) / (1.0 / 3)));
    CHECK_THROWS_AS(DegreeDistribution::from_json_text(R"({"lambda": {"3": 1.0}})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        DegreeDistribution::from_json_text(R"({"lambda": {"x": 1.0}, "rho": {"6": 1.0}})"),
        std::invalid_argument);
}

}
