#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "gravdec/constants.hpp"
#include "gravdec/errors.hpp"
#include "gravdec/metric.hpp"

using namespace gravdec;
using doctest::Approx;

namespace {

double central_fd(const MetricProfile& p, double x) {
    const double h = std::max(std::fabs(x), 1.0) * 1e-6;
    return (p.redshift(x + h) - p.redshift(x - h)) / (2.0 * h);
}

} // namespace

TEST_CASE("weak_field_profile") {
    const auto p = weak_field_profile(9.8, 0.0);
    CHECK(p.redshift(0.0) == 1.0);
    CHECK(p.redshift_slope(17.0) == 9.8 / constants::c_squared);
    CHECK(p.redshift_slope(0.0) == Approx(1.0903e-16).epsilon(1e-3));
    CHECK(p.potential(3.0) == 0.0);

    const auto flat = weak_field_profile(0.0);
    CHECK(flat.redshift(123.0) == 1.0);
    CHECK(flat.redshift_difference(5.0, -2.0) == 0.0);
}

TEST_CASE("schwarzschild_profile") {
    const double m_earth = 5.972e24;
    const auto p = schwarzschild_profile(m_earth);
    const double r = 6.371e6;
    const double u = constants::G * m_earth / (r * constants::c_squared);
    CHECK(1.0 - p.redshift(r) == Approx(u).epsilon(1e-3));
    CHECK(1.0 - p.redshift(r) == Approx(6.95e-10).epsilon(2e-2));

    // asymptotic flatness
    CHECK(p.redshift(1e20) == Approx(1.0).epsilon(1e-14));

    const double rs = 2.0 * constants::G * m_earth / constants::c_squared;
    CHECK_THROWS_AS(p.redshift(rs), ProfileDomainError);
    CHECK_THROWS_AS(p.redshift(0.5 * rs), ProfileDomainError);
    CHECK_THROWS_AS(schwarzschild_profile(-1.0), std::invalid_argument);

    // Df = GM / (c^2 r^2 f)
    const double df = p.redshift_slope(r);
    CHECK(df == Approx(constants::G * m_earth /
                       (constants::c_squared * r * r * p.redshift(r)))
                    .epsilon(1e-14));
}

TEST_CASE("custom_profile interpolation") {
    // constant table
    const auto flat = custom_profile({{0.0, 1.0, 0.0}, {1.0, 1.0, 0.0}, {2.0, 1.0, 0.0}});
    CHECK(flat.redshift(0.3) == 1.0);
    CHECK(flat.redshift_slope(1.7) == 0.0);

    // linear table: cubic interpolation is exact on linear data
    const double a = 0.25;
    std::vector<std::array<double, 3>> rows;
    for (double x : {0.0, 0.5, 1.0, 1.5, 2.0}) rows.push_back({x, 1.0 + a * x, 0.0});
    const auto lin = custom_profile(rows);
    for (double x : {0.1, 0.77, 1.5, 1.98}) {
        CHECK(lin.redshift(x) == Approx(1.0 + a * x).epsilon(1e-14));
        CHECK(lin.redshift_slope(x) == Approx(a).epsilon(1e-10));
    }

    CHECK_THROWS_AS(lin.redshift(-0.5), ProfileDomainError);
    CHECK_THROWS_AS(lin.redshift(2.5), ProfileDomainError);
    CHECK_THROWS_AS(custom_profile({{0.0, 1.0, 0.0}, {0.0, 1.1, 0.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(custom_profile({{0.0, 1.0, 0.0}, {1.0, -0.2, 0.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(custom_profile({{0.0, 1.0, 0.0}}), std::invalid_argument);
}

TEST_CASE("analytic slope matches a central finite difference") {
    const auto weak = weak_field_profile(9.8);
    for (double x : {-5.0, 0.0, 3.0, 1e3}) {
        CHECK(std::fabs(central_fd(weak, x) - weak.redshift_slope(x)) <=
              std::max(1e-6, 1e-4 * std::fabs(weak.redshift_slope(x))));
    }

    // strong-field profile with rs = 1 m so the difference is well resolved
    const auto strong = schwarzschild_profile(constants::c_squared / (2.0 * constants::G));
    for (double r : {2.5, 3.0, 5.0, 10.0}) {
        CHECK(std::fabs(central_fd(strong, r) - strong.redshift_slope(r)) <=
              std::max(1e-6, 1e-4 * std::fabs(strong.redshift_slope(r))));
    }

    std::vector<std::array<double, 3>> rows;
    for (int i = 0; i <= 60; ++i) {
        const double x = i / 6.0;
        rows.push_back({x, 1.0 + 0.1 * std::sin(x), 0.0});
    }
    const auto curvy = custom_profile(rows);
    for (double x : {0.4, 2.2, 4.9, 8.3}) {
        CHECK(std::fabs(central_fd(curvy, x) - curvy.redshift_slope(x)) <=
              std::max(1e-6, 1e-4 * std::fabs(curvy.redshift_slope(x))));
    }
}

TEST_CASE("redshift_difference") {
    const auto p = weak_field_profile(9.8, 0.0);
    CHECK(redshift_difference(p, 4.0, 4.0) == 0.0);
    CHECK(redshift_difference(p, 1.0, 0.0) == 9.8 / constants::c_squared);
    CHECK(redshift_difference(p, 1.0, 0.0) == Approx(1.0903e-16).epsilon(1e-3));

    // antisymmetry, for every profile kind
    const auto schw = schwarzschild_profile(5.972e24);
    std::vector<std::array<double, 3>> rows;
    for (double x : {0.0, 1.0, 2.0, 3.0}) rows.push_back({x, 1.0 + 0.01 * x * x, 0.0});
    const auto cust = custom_profile(rows);
    CHECK(p.redshift_difference(3.0, -1.0) == -p.redshift_difference(-1.0, 3.0));
    CHECK(schw.redshift_difference(7e6, 8e6) == -schw.redshift_difference(8e6, 7e6));
    CHECK(cust.redshift_difference(0.5, 2.5) == -cust.redshift_difference(2.5, 0.5));

    // consistency with direct evaluation where the difference is resolvable
    CHECK(schw.redshift_difference(7e6, 8e6) ==
          Approx(schw.redshift(7e6) - schw.redshift(8e6)).epsilon(1e-9));
}

TEST_CASE("local_temperature and the Tolman product") {
    const auto flat = custom_profile({{0.0, 1.0, 0.0}, {1.0, 1.0, 0.0}});
    CHECK(local_temperature(flat, 300.0, 0.5) == 300.0);
    CHECK_THROWS_AS(local_temperature(flat, 0.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(local_temperature(flat, -3.0, 0.5), std::invalid_argument);

    const double T_global = 300.0;
    const auto weak = weak_field_profile(9.8);
    const auto strong = schwarzschild_profile(constants::c_squared / (2.0 * constants::G));
    for (double x : {1e5, 1e6, 5e6}) {
        const double t = local_temperature(weak, T_global, x);
        CHECK(std::fabs(weak.redshift(x) * t - T_global) <= 1.2e-13);
    }
    for (double r : {2.5, 4.0, 50.0}) {
        const double t = local_temperature(strong, T_global, r);
        CHECK(std::fabs(strong.redshift(r) * t - T_global) <= 1.2e-13);
    }

    // f T is the same at any two points of a Tolman field
    const double ta = local_temperature(strong, T_global, 2.5);
    const double tb = local_temperature(strong, T_global, 40.0);
    CHECK(strong.redshift(2.5) * ta == Approx(strong.redshift(40.0) * tb).epsilon(1e-15));

    // first-order weak-field shift: T(1 m) = 300 (1 - g/c^2) to sub-ulp
    const double t1 = local_temperature(weak, 300.0, 1.0);
    CHECK(std::fabs(t1 - 300.0 * (1.0 - 1.0903e-16)) <= 6e-14);
}

TEST_CASE("entropy_exchange_rate") {
    // power-of-two redshift samples: the Tolman zero is bitwise exact
    const auto pow2 = custom_profile({{0.0, 0.5, 0.0}, {1.0, 2.0, 0.0}});
    const double t1 = local_temperature(pow2, 300.0, 0.0); // 600
    const double t2 = local_temperature(pow2, 300.0, 1.0); // 150
    CHECK(t1 == 600.0);
    CHECK(t2 == 150.0);
    CHECK(entropy_exchange_rate(pow2, 0.0, 1.0, t1, t2, 1.0) == 0.0);
    CHECK(entropy_exchange_rate(pow2, 0.0, 1.0, t1, t2, -7.3) == 0.0);

    // flat profile, equal temperatures
    const auto flat = custom_profile({{0.0, 1.0, 0.0}, {1.0, 1.0, 0.0}});
    CHECK(entropy_exchange_rate(flat, 0.0, 1.0, 300.0, 300.0, 2.0) == 0.0);

    // any Tolman field zeroes the exchange at machine rounding
    const auto strong = schwarzschild_profile(constants::c_squared / (2.0 * constants::G));
    for (double r2 : {3.0, 7.0, 29.0}) {
        const double ta = local_temperature(strong, 300.0, 2.5);
        const double tb = local_temperature(strong, 300.0, r2);
        const double ds = entropy_exchange_rate(strong, 2.5, r2, ta, tb, 1.0);
        CHECK(std::fabs(ds) <= 1e-15 * (1.0 / ta));
    }

    // off-equilibrium: Delta S = (Delta_1/T)(1 - f1/f2) to first order
    const auto tilted = custom_profile({{0.0, 1.0, 0.0}, {1.0, 1.0 + 1e-12, 0.0}});
    const double ds = entropy_exchange_rate(tilted, 0.0, 1.0, 300.0, 300.0, 1.0);
    CHECK(ds == Approx((1.0 / 300.0) * 1e-12).epsilon(1e-3));

    // linear in Delta_1 (doubling is exact; general scaling near-exact)
    const auto weak = weak_field_profile(9.8);
    const double base = entropy_exchange_rate(weak, 0.0, 1e6, 300.0, 310.0, 1.3);
    CHECK(entropy_exchange_rate(weak, 0.0, 1e6, 300.0, 310.0, 2.6) == 2.0 * base);
    CHECK(entropy_exchange_rate(weak, 0.0, 1e6, 300.0, 310.0, 1.3 * 3.7) ==
          Approx(3.7 * base).epsilon(1e-14));

    CHECK_THROWS_AS(entropy_exchange_rate(weak, 0.0, 1.0, -1.0, 300.0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(entropy_exchange_rate(weak, 0.0, 1.0, 300.0, 0.0, 1.0),
                    std::invalid_argument);
}

TEST_CASE("with_potential replaces V only") {
    const auto bare = weak_field_profile(9.8);
    const auto dressed = bare.with_potential([](double x) { return 2e-22 * x; });
    CHECK(dressed.potential(3.0) == 6e-22);
    CHECK(bare.potential(3.0) == 0.0);
    CHECK(dressed.redshift(3.0) == bare.redshift(3.0));
    CHECK(dressed.redshift_difference(3.0, 1.0) == bare.redshift_difference(3.0, 1.0));
    CHECK(dressed.descriptor().has_custom_potential);

    // tabulated V rides the same spline machinery
    const auto tab =
        custom_profile({{0.0, 1.0, 0.0}, {1.0, 1.0, 3e-22}, {2.0, 1.0, 6e-22}});
    CHECK(tab.potential(0.5) == Approx(1.5e-22).epsilon(1e-12));
}
