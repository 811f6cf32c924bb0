#include "gravdec/thermal.hpp"

#include <cmath>
#include <stdexcept>

#include "gravdec/constants.hpp"
#include "gravdec/errors.hpp"

namespace gravdec {

namespace {

struct ShiftedSums {
    double beta_mean;   // [f(x) + f(x')] / (2 k_B T), 1/J
    double geo_mean;    // sqrt(S1 S2) over energies shifted by E_min
    double e_min;
    std::vector<double> weights; // exp(-beta_mean (E_n - E_min))
};

// Partition sums over ground-shifted energies so nothing under- or
// overflows for physical inputs.
ShiftedSums shifted_sums(const ThermalScenario& s) {
    const double f1 = s.profile.redshift(s.x);
    const double f2 = s.profile.redshift(s.x_prime);
    const double beta1 = f1 / (constants::k_B * s.T_global);
    const double beta2 = f2 / (constants::k_B * s.T_global);
    const double beta_mean = 0.5 * (beta1 + beta2);
    const double e_min = s.spectrum.min_level();

    double s1 = 0.0, s2 = 0.0;
    std::vector<double> w(s.spectrum.size());
    const auto& levels = s.spectrum.levels();
    for (std::size_t n = 0; n < levels.size(); ++n) {
        const double e = levels[n] - e_min;
        s1 += std::exp(-beta1 * e);
        s2 += std::exp(-beta2 * e);
        w[n] = std::exp(-beta_mean * e);
    }
    return {beta_mean, std::sqrt(s1 * s2), e_min, std::move(w)};
}

} // namespace

void validate(const ThermalScenario& scenario) {
    if (!(scenario.T_global > 0.0) || !std::isfinite(scenario.T_global)) {
        throw std::invalid_argument("ThermalScenario: T_global must be positive");
    }
    if (scenario.A0 == std::complex<double>(0.0, 0.0)) {
        throw std::invalid_argument("ThermalScenario: pair weight A0 must be nonzero");
    }
    // Evaluation throws ProfileDomainError if either point is invalid.
    scenario.profile.redshift(scenario.x);
    scenario.profile.redshift(scenario.x_prime);
}

ComplexTemperature complex_temperature(const ThermalScenario& scenario, double t) {
    validate(scenario);
    const double f1 = scenario.profile.redshift(scenario.x);
    const double f2 = scenario.profile.redshift(scenario.x_prime);
    const double delta_f = scenario.profile.redshift_difference(scenario.x, scenario.x_prime);
    return {{0.5 * (f1 + f2) / scenario.T_global,
             constants::k_B * delta_f * t / constants::hbar}};
}

PairState thermal_pair_state(const ThermalScenario& scenario) {
    validate(scenario);
    const ShiftedSums sums = shifted_sums(scenario);
    std::vector<std::complex<double>> diag(sums.weights.size());
    for (std::size_t n = 0; n < diag.size(); ++n) {
        diag[n] = scenario.A0 * (sums.weights[n] / sums.geo_mean);
    }
    return PairState(scenario.spectrum, scenario.x, scenario.x_prime, std::move(diag));
}

std::vector<double> thermal_pair_weights(const ThermalScenario& scenario) {
    validate(scenario);
    const ShiftedSums sums = shifted_sums(scenario);
    std::vector<double> a(sums.weights.size());
    for (std::size_t n = 0; n < a.size(); ++n) {
        a[n] = sums.weights[n] / sums.geo_mean;
    }
    return a;
}

std::complex<double> gamma_thermal_closed_form(const ThermalScenario& scenario, double t) {
    validate(scenario);
    const ShiftedSums sums = shifted_sums(scenario);
    const double delta_f =
        scenario.profile.redshift_difference(scenario.x, scenario.x_prime);
    const double beta_imag = delta_f * t / constants::hbar; // Im beta_c, 1/J
    const auto& levels = scenario.spectrum.levels();

    // Z(T_c)/Z(T; x, x') with the common exp(-beta E_min) factor cancelled
    // analytically; only its time-dependent phase survives.
    std::complex<double> z = 0.0;
    for (std::size_t n = 0; n < levels.size(); ++n) {
        const double e = levels[n] - sums.e_min;
        const double angle = -beta_imag * e;
        z += sums.weights[n] * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    const double ground_angle = -beta_imag * sums.e_min;
    return std::complex<double>(std::cos(ground_angle), std::sin(ground_angle)) * z /
           sums.geo_mean;
}

double local_heat_capacity(const ThermalScenario& scenario, double x) {
    validate(scenario);
    const double t_local = local_temperature(scenario.profile, scenario.T_global, x);
    return thermal_moments(scenario.spectrum, t_local).heat_capacity;
}

std::optional<double> thermal_tau2(const ThermalScenario& scenario) {
    validate(scenario);
    if (scenario.x_prime == scenario.x) {
        throw NoDephasingError("thermal_tau2: coincident points");
    }
    const double df = scenario.profile.redshift_slope(scenario.x);
    if (df == 0.0) {
        throw NoDephasingError("thermal_tau2: Df(x) = 0");
    }
    const double capacity = local_heat_capacity(scenario, scenario.x);
    if (capacity <= 0.0) return std::nullopt;
    const double f = scenario.profile.redshift(scenario.x);
    const double d = scenario.x_prime - scenario.x;
    return constants::h * f * f /
           (std::fabs(d * df) * std::sqrt(constants::k_B * capacity) * scenario.T_global);
}

double tau2_weak_field_estimate(double T, double C, double g, double delta_x) {
    if (!(T > 0.0) || !(C > 0.0) || !(g > 0.0) || !(delta_x > 0.0)) {
        throw std::invalid_argument("tau2_weak_field_estimate: arguments must be positive");
    }
    return constants::h / (constants::k_B * T) * std::sqrt(constants::k_B / C) *
           constants::c_squared / (g * delta_x);
}

bool truncation_adequate(const EnergySpectrum& spectrum, double T) {
    if (!(T > 0.0)) {
        throw std::invalid_argument("truncation_adequate: temperature must be positive");
    }
    return std::exp(-spectrum.spread() / (constants::k_B * T)) < 1e-15;
}

} // namespace gravdec
