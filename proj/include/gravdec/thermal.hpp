#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "gravdec/coherence.hpp"
#include "gravdec/metric.hpp"
#include "gravdec/spectrum.hpp"

namespace gravdec {

/// Thermal-equilibrium setup: a global temperature (position-independent in
/// the Tolman sense), a redshift profile, an internal spectrum and the two
/// delocalization points. A0 is the dimensionless pair weight A(x, x') of
/// the equilibrium correlation block; it cancels in the visibility.
struct ThermalScenario {
    double T_global;        //K
    MetricProfile profile;
    EnergySpectrum spectrum;
    double x;               // m
    double x_prime;         // m
    std::complex<double> A0 = 1.0;
};

/// 1/T_c = [f(x) + f(x')] / (2 T_global) + i k_B [f(x) - f(x')] t / hbar,
/// in 1/K. The real part is positive for any valid scenario.
struct ComplexTemperature {
    std::complex<double> inverse_kelvin;
};

/// Throws std::invalid_argument if the scenario is unusable.
void validate(const ThermalScenario& scenario);

ComplexTemperature complex_temperature(const ThermalScenario& scenario, double t);

/// The diagonal equilibrium choice
///   rho(x, x'; n, n') = A0 / Z(T; x, x')
///       * exp{-E_n [f(x) + f(x')] / (2 k_B T_global)} delta_{n n'},
/// with Z(T; x, x') the geometric mean of the two local partition
/// functions. Its decomposition has chi_n = 0 for every level.
PairState thermal_pair_state(const ThermalScenario& scenario);

/// The weights a_n = exp{-E_n [f + f'] / (2 k_B T)} / Z(T; x, x') of the
/// equilibrium block (normalized against the pair weight A0, so the sum is
/// below one whenever f(x) != f(x')).
std::vector<double> thermal_pair_weights(const ThermalScenario& scenario);

/// gamma(t) = Z(T_c) / Z(T_global; x, x') evaluated at the complex
/// temperature above. Equals the direct phase sum over the equilibrium
/// weights; at t = 0 it is <= 1 with equality iff f(x) = f(x').
std::complex<double> gamma_thermal_closed_form(const ThermalScenario& scenario, double t);

/// Local heat capacity C(x) of the internal spectrum at the Tolman
/// temperature T(x) = T_global / f(x).
double local_heat_capacity(const ThermalScenario& scenario, double x);

/// Proper-time quadratic-decoherence scale
///   tau2 = h f(x)^2 / (|(x'-x) Df(x)| sqrt(k_B C(x)) T_global).
/// nullopt when the heat capacity vanishes (single effective level);
/// throws NoDephasingError when Df(x) = 0 or x' = x.
std::optional<double> thermal_tau2(const ThermalScenario& scenario);

/// Weak-field approximation
///   tau2 ~ (h / (k_B T)) sqrt(k_B / C) c^2 / (g delta_x),
/// valid when f is close to one everywhere.
double tau2_weak_field_estimate(double T, double C, double g, double delta_x);

/// Tail-bound check that a finite spectrum is an adequate truncation at
/// temperature T: exp(-(E_max - E_min)/(k_B T)) < 1e-15.
bool truncation_adequate(const EnergySpectrum& spectrum, double T);

} // namespace gravdec
