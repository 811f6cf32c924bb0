#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

namespace gravdec {

/// Unit tag for energy inputs. `thermal` means multiples of
/// k_B * reference_temperature.
enum class EnergyUnit { joule, electron_volt, thermal };

double to_joules(double value, EnergyUnit unit, double reference_temperature = 0.0);

/// Finite list of internal energy levels, stored in joules and sorted
/// ascending. Repeated entries represent degenerate states; sums over the
/// spectrum are sums over states, not over distinct energies.
class EnergySpectrum {
public:
    explicit EnergySpectrum(std::vector<double> levels_joules);
    EnergySpectrum(std::vector<double> values, EnergyUnit unit,
                   double reference_temperature = 0.0);

    const std::vector<double>& levels() const noexcept { return levels_; }
    std::size_t size() const noexcept { return levels_.size(); }
    double min_level() const noexcept { return levels_.front(); }
    double max_level() const noexcept { return levels_.back(); }
    /// E_max - E_min; zero for a fully degenerate spectrum.
    double spread() const noexcept { return levels_.back() - levels_.front(); }

private:
    std::vector<double> levels_;
};

/// Thermal statistics of a spectrum at a fixed temperature.
/// energy_std^2 = k_B T^2 heat_capacity holds by construction.
struct ThermalMoments {
    double mean_energy;                  // <E>, J
    double energy_std;                   // Delta E, J
    double heat_capacity;                // C, J/K
    std::complex<double> partition_value; // Z; real and positive for real T
};

/// Equally spaced levels {0, q, 2q, ..., (n-1) q}.
EnergySpectrum make_harmonic(double quantum, std::size_t n_levels);

/// Greatest common divisor of the nonzero |E_n| within a relative
/// tolerance, found by floating-point Euclid with cutoff
/// rel_tol * max|E_n|. Returns nullopt when the levels share no common
/// divisor above the cutoff (incommensurate spectrum).
std::optional<double> commensurate_gcd(const EnergySpectrum& spectrum, double rel_tol);

/// Z(beta) = sum_n exp(-beta E_n), beta in 1/J, complex in general.
/// Terms are accumulated in descending magnitude order.
std::complex<double> partition_function(const EnergySpectrum& spectrum,
                                        std::complex<double> beta);

/// Boltzmann occupations at temperature T (kelvin): mean energy, energy
/// standard deviation and heat capacity C = (Delta E)^2 / (k_B T^2).
ThermalMoments thermal_moments(const EnergySpectrum& spectrum, double temperature);

} // namespace gravdec
