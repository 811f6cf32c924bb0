#include "gravdec/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gravdec/constants.hpp"

namespace gravdec {

double to_joules(double value, EnergyUnit unit, double reference_temperature) {
    switch (unit) {
    case EnergyUnit::joule:
        return value;
    case EnergyUnit::electron_volt:
        return value * constants::electron_volt;
    case EnergyUnit::thermal:
        if (!(reference_temperature > 0.0)) {
            throw std::invalid_argument(
                "to_joules: thermal unit requires a positive reference temperature");
        }
        return value * constants::k_B * reference_temperature;
    }
    throw std::invalid_argument("to_joules: unknown energy unit");
}

EnergySpectrum::EnergySpectrum(std::vector<double> levels_joules)
    : levels_(std::move(levels_joules)) {
    if (levels_.empty()) {
        throw std::invalid_argument("EnergySpectrum: at least one level required");
    }
    for (double e : levels_) {
        if (!std::isfinite(e)) {
            throw std::invalid_argument("EnergySpectrum: all levels must be finite");
        }
    }
    std::sort(levels_.begin(), levels_.end());
}

EnergySpectrum::EnergySpectrum(std::vector<double> values, EnergyUnit unit,
                               double reference_temperature)
    : EnergySpectrum([&] {
          for (double& v : values) v = to_joules(v, unit, reference_temperature);
          return std::move(values);
      }()) {}

EnergySpectrum make_harmonic(double quantum, std::size_t n_levels) {
    if (!(quantum > 0.0) || !std::isfinite(quantum)) {
        throw std::invalid_argument("make_harmonic: quantum must be positive and finite");
    }
    if (n_levels == 0) {
        throw std::invalid_argument("make_harmonic: need at least one level");
    }
    std::vector<double> levels(n_levels);
    for (std::size_t n = 0; n < n_levels; ++n) {
        levels[n] = static_cast<double>(n) * quantum;
    }
    return EnergySpectrum(std::move(levels));
}

namespace {

// Euclid on magnitudes, stopping once the remainder drops to the cutoff.
double float_gcd(double a, double b, double cutoff) {
    if (a < b) std::swap(a, b);
    while (b > cutoff) {
        const double r = std::fmod(a, b);
        a = b;
        b = r;
    }
    return a;
}

} // namespace

std::optional<double> commensurate_gcd(const EnergySpectrum& spectrum, double rel_tol) {
    if (!(rel_tol > 0.0) || rel_tol > 1e-3) {
        throw std::invalid_argument("commensurate_gcd: rel_tol must lie in (0, 1e-3]");
    }
    std::vector<double> mags;
    mags.reserve(spectrum.size());
    for (double e : spectrum.levels()) {
        if (e != 0.0) mags.push_back(std::fabs(e));
    }
    if (mags.empty()) {
        throw std::invalid_argument("commensurate_gcd: spectrum has no nonzero level");
    }
    const double e_max = *std::max_element(mags.begin(), mags.end());
    const double cutoff = rel_tol * e_max;

    double g = 0.0;
    for (double m : mags) g = float_gcd(g, m, cutoff);
    if (!(g > cutoff)) return std::nullopt;

    auto max_defect = [&](double candidate) {
        double worst = 0.0;
        for (double m : mags) {
            const double ratio = m / candidate;
            worst = std::max(worst, std::fabs(ratio - std::round(ratio)));
        }
        return worst;
    };

    double defect = max_defect(g);
    if (defect > 1e-13) {
        // Polish the Euclid candidate: least-squares fit of the common
        // divisor through the rounded integer multiples.
        double num = 0.0, den = 0.0;
        for (double m : mags) {
            const double k = std::round(m / g);
            num += k * m;
            den += k * k;
        }
        if (den > 0.0) {
            const double refined = num / den;
            if (refined > cutoff && max_defect(refined) < defect) {
                g = refined;
                defect = max_defect(g);
            }
        }
    }
    if (defect > rel_tol) return std::nullopt;
    return g;
}

std::complex<double> partition_function(const EnergySpectrum& spectrum,
                                        std::complex<double> beta) {
    const auto& levels = spectrum.levels();
    std::complex<double> z = 0.0;
    // |exp(-beta E)| = exp(-Re(beta) E): with levels ascending, ascending
    // index order is descending magnitude for Re(beta) >= 0.
    if (beta.real() >= 0.0) {
        for (double e : levels) z += std::exp(-beta * e);
    } else {
        for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
            z += std::exp(-beta * (*it));
        }
    }
    return z;
}

ThermalMoments thermal_moments(const EnergySpectrum& spectrum, double temperature) {
    if (!(temperature > 0.0) || !std::isfinite(temperature)) {
        throw std::invalid_argument("thermal_moments: temperature must be positive");
    }
    const double beta = 1.0 / (constants::k_B * temperature);
    const double e0 = spectrum.min_level();
    const auto& levels = spectrum.levels();

    // Work with energies shifted by the ground level so the weights stay
    // representable for any physical scale.
    std::vector<double> w(levels.size());
    double norm = 0.0;
    for (std::size_t n = 0; n < levels.size(); ++n) {
        w[n] = std::exp(-beta * (levels[n] - e0));
        norm += w[n];
    }
    double mean_shifted = 0.0;
    for (std::size_t n = 0; n < levels.size(); ++n) {
        mean_shifted += w[n] * (levels[n] - e0);
    }
    mean_shifted /= norm;
    double variance = 0.0;
    for (std::size_t n = 0; n < levels.size(); ++n) {
        const double d = (levels[n] - e0) - mean_shifted;
        variance += w[n] * d * d;
    }
    variance /= norm;

    ThermalMoments out;
    out.mean_energy = e0 + mean_shifted;
    out.energy_std = std::sqrt(variance);
    out.heat_capacity = variance / (constants::k_B * temperature * temperature);
    out.partition_value = std::exp(-beta * e0) * norm;
    return out;
}

} // namespace gravdec
