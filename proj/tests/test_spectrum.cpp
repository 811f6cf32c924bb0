#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "gravdec/constants.hpp"
#include "gravdec/spectrum.hpp"
#include "oracles.hpp"

using namespace gravdec;
using doctest::Approx;

TEST_CASE("make_harmonic lays out an arithmetic progression") {
    const auto s = make_harmonic(1e-21, 3);
    REQUIRE(s.size() == 3);
    CHECK(s.levels()[0] == 0.0);
    CHECK(s.levels()[1] == 1e-21);
    CHECK(s.levels()[2] == 2e-21);

    const auto single = make_harmonic(1.0, 1);
    CHECK(single.levels() == std::vector<double>{0.0});

    const auto wide = make_harmonic(2.0e-20, 50);
    CHECK(wide.levels()[49] == Approx(9.8e-19).epsilon(1e-15));

    CHECK_THROWS_AS(make_harmonic(0.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(make_harmonic(-1.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(make_harmonic(1.0, 0), std::invalid_argument);
}

TEST_CASE("spectrum constructors normalize and convert units") {
    const EnergySpectrum s({3e-21, 1e-21, 2e-21});
    CHECK(s.levels() == std::vector<double>{1e-21, 2e-21, 3e-21});

    const EnergySpectrum ev({1.0}, EnergyUnit::electron_volt);
    CHECK(ev.levels()[0] == constants::electron_volt);

    const EnergySpectrum th({2.0}, EnergyUnit::thermal, 300.0);
    CHECK(th.levels()[0] == Approx(2.0 * constants::k_B * 300.0).epsilon(1e-15));
    CHECK_THROWS_AS(EnergySpectrum({1.0}, EnergyUnit::thermal, 0.0),
                    std::invalid_argument);

    CHECK_THROWS_AS(EnergySpectrum(std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(EnergySpectrum({std::nan("")}), std::invalid_argument);
}

TEST_CASE("commensurate_gcd recovers the quantum of a harmonic ladder") {
    const auto s = make_harmonic(1e-21, 3);
    const auto eps = commensurate_gcd(s, 1e-9);
    REQUIRE(eps.has_value());
    CHECK(*eps == 1e-21); // exact: the ladder is built from this double

    // Doubling the divisor must break divisibility of the odd multiple.
    const double doubled = 2.0 * *eps;
    const double ratio = 1e-21 / doubled;
    CHECK(std::fabs(ratio - std::round(ratio)) > 1e-9);
}

TEST_CASE("commensurate_gcd of {3, 5} x 1e-21 matches the integer-GCD oracle") {
    const EnergySpectrum s({3e-21, 5e-21});
    const auto eps = commensurate_gcd(s, 1e-9);
    REQUIRE(eps.has_value());
    CHECK(oracles::int_gcd(3, 5) == 1);
    CHECK(*eps == Approx(1e-21).epsilon(1e-9));
}

TEST_CASE("commensurate_gcd rejects an incommensurate pair") {
    const double root2 = std::sqrt(2.0);
    const EnergySpectrum s({1.0, root2});
    const double rel_tol = 1e-9;
    CHECK_FALSE(commensurate_gcd(s, rel_tol).has_value());

    // Continued-fraction oracle: the Euclid remainder sequence of
    // (sqrt(2), 1) decays geometrically; the last remainder at or above the
    // admissibility floor rel_tol * sqrt(2) still has a division defect
    // above rel_tol, so no admissible common divisor survives.
    const long double floor = static_cast<long double>(rel_tol) * root2;
    const auto remainders = oracles::euclid_remainders(root2, 1.0L, floor);
    long double last_above = 0.0L;
    for (const long double r : remainders) {
        if (r >= floor) last_above = r;
    }
    REQUIRE(last_above > 0.0L);
    const long double defect_1 =
        std::fabs(1.0L / last_above - std::round(1.0L / last_above));
    const long double defect_r2 =
        std::fabs(root2 / last_above - std::round(root2 / last_above));
    CHECK(std::max(defect_1, defect_r2) > rel_tol);
}

TEST_CASE("commensurate_gcd validates its inputs") {
    CHECK_THROWS_AS(commensurate_gcd(EnergySpectrum({0.0, 0.0}), 1e-9),
                    std::invalid_argument);
    CHECK_THROWS_AS(commensurate_gcd(make_harmonic(1.0, 2), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(commensurate_gcd(make_harmonic(1.0, 2), 1e-2), std::invalid_argument);
}

TEST_CASE("gcd divides every level and is maximal, over random integer spectra") {
    auto gen = oracles::rng(0x5eed0001);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> levels;
        std::vector<std::int64_t> ints;
        const int n = 2 + static_cast<int>(oracles::uniform(gen, 0.0, 5.0));
        for (int i = 0; i < n; ++i) {
            const auto k = static_cast<std::int64_t>(oracles::uniform(gen, 1.0, 40.0));
            ints.push_back(k);
            levels.push_back(static_cast<double>(k) * 1e-21);
        }
        const auto eps = commensurate_gcd(EnergySpectrum(levels), 1e-9);
        REQUIRE(eps.has_value());

        std::int64_t g = 0;
        for (auto k : ints) g = oracles::int_gcd(g, k);
        CHECK(*eps == Approx(static_cast<double>(g) * 1e-21).epsilon(1e-9));

        for (double e : levels) {
            const double ratio = e / *eps;
            CHECK(std::fabs(ratio - std::round(ratio)) <= 1e-9);
        }
        bool doubled_fails = false;
        for (double e : levels) {
            const double ratio = e / (2.0 * *eps);
            doubled_fails = doubled_fails || std::fabs(ratio - std::round(ratio)) > 1e-9;
        }
        CHECK(doubled_fails);
    }
}

TEST_CASE("partition_function basics") {
    CHECK(partition_function(EnergySpectrum({0.0}), {0.3, -1.2}) ==
          std::complex<double>(1.0, 0.0));

    // Harmonic ladder vs geometric closed form, N beta eps > 30.
    const double eps = 1e-21;
    const double beta = 31.0 / (40.0 * eps);
    const auto s = make_harmonic(eps, 40);
    const auto z = partition_function(s, {beta, 0.0});
    const auto closed = 1.0 / (1.0 - std::exp(-beta * eps));
    CHECK(std::abs(z - closed) <= 1e-12 * std::abs(closed));
    const auto finite = oracles::geometric_partition({beta, 0.0}, eps, 40);
    CHECK(std::abs(z - finite) <= 1e-13 * std::abs(finite));

    // Two levels at phase pi cancel.
    const EnergySpectrum two({0.0, eps});
    const auto cancel = partition_function(two, {0.0, std::numbers::pi / eps});
    CHECK(std::abs(cancel) < 1e-15);
}

TEST_CASE("partition_function matches the geometric oracle at complex beta") {
    auto gen = oracles::rng(0x5eed0002);
    for (int trial = 0; trial < 25; ++trial) {
        const double eps = oracles::uniform(gen, 0.5e-21, 4e-21);
        const std::size_t n =
            2 + static_cast<std::size_t>(oracles::uniform(gen, 0.0, 30.0));
        const std::complex<double> beta{oracles::uniform(gen, 0.0, 2.0) / eps,
                                        oracles::uniform(gen, -3.0, 3.0) / eps};
        const auto z = partition_function(make_harmonic(eps, n), beta);
        const auto oracle = oracles::geometric_partition(beta, eps, n);
        CHECK(std::abs(z - oracle) <= 1e-12 * (1.0 + std::abs(oracle)));
    }
}

TEST_CASE("thermal_moments closed forms") {
    // Two-level system at eps = k_B T: (Delta E)^2 = eps^2 e / (1+e)^2.
    const double T = 300.0;
    const double eps = constants::k_B * T;
    const auto two = thermal_moments(EnergySpectrum({0.0, eps}), T);
    const double e = std::exp(1.0);
    CHECK(two.energy_std * two.energy_std ==
          Approx(eps * eps * e / ((1.0 + e) * (1.0 + e))).epsilon(1e-12));

    // Single level: no fluctuations.
    const auto single = thermal_moments(EnergySpectrum({7e-21}), T);
    CHECK(single.energy_std == 0.0);
    CHECK(single.heat_capacity == 0.0);

    // Einstein ladder at eps = k_B T: C = k_B e/(e-1)^2.
    const auto ladder = thermal_moments(make_harmonic(eps, 60), T);
    CHECK(ladder.heat_capacity ==
          Approx(constants::k_B * e / ((e - 1.0) * (e - 1.0))).epsilon(1e-10));
    CHECK(ladder.heat_capacity == Approx(0.9206 * constants::k_B).epsilon(1e-4));

    CHECK_THROWS_AS(thermal_moments(EnergySpectrum({0.0}), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(thermal_moments(EnergySpectrum({0.0}), -5.0), std::invalid_argument);
}

TEST_CASE("heat capacity equals k_B T^2 d^2 ln Z / d beta^2") {
    auto gen = oracles::rng(0x5eed0003);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<double> levels;
        const int n = 2 + static_cast<int>(oracles::uniform(gen, 0.0, 8.0));
        for (int i = 0; i < n; ++i) levels.push_back(oracles::uniform(gen, 0.0, 6e-21));
        const double T = oracles::uniform(gen, 100.0, 600.0);
        const auto m = thermal_moments(EnergySpectrum(levels), T);

        const long double beta = 1.0L / (static_cast<long double>(constants::k_B) * T);
        const long double var = oracles::d2_ln_partition(levels, beta, 1e-5L);
        const double c_fd = static_cast<double>(var) / (constants::k_B * T * T);
        CHECK(m.heat_capacity == Approx(c_fd).epsilon(1e-6));
    }
}

TEST_CASE("level shifts leave Delta E and C invariant and rescale Z") {
    auto gen = oracles::rng(0x5eed0004);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<double> levels;
        const int n = 1 + static_cast<int>(oracles::uniform(gen, 0.0, 8.0));
        for (int i = 0; i < n; ++i) levels.push_back(oracles::uniform(gen, 0.0, 6e-21));
        const double T = oracles::uniform(gen, 100.0, 600.0);
        const double shift = oracles::uniform(gen, -3e-21, 3e-21);

        std::vector<double> shifted = levels;
        for (double& e : shifted) e += shift;

        const auto base = thermal_moments(EnergySpectrum(levels), T);
        const auto moved = thermal_moments(EnergySpectrum(shifted), T);
        CHECK(moved.energy_std ==
              Approx(base.energy_std).epsilon(1e-12).scale(1e-21));
        CHECK(moved.heat_capacity == Approx(base.heat_capacity).epsilon(1e-11));

        const double beta = 1.0 / (constants::k_B * T);
        const auto z_ratio = moved.partition_value / base.partition_value;
        CHECK(std::abs(z_ratio - std::exp(-beta * shift)) <= 1e-11 * std::abs(z_ratio));
    }
}
