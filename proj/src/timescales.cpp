#include "gravdec/timescales.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "gravdec/constants.hpp"
#include "gravdec/errors.hpp"

namespace gravdec {

ExpansionCoefficients expansion_coefficients(const PairState& state,
                                             const MetricProfile& profile) {
    const Decomposition dec = decompose(state);
    const auto& levels = state.spectrum().levels();
    double linear = 0.0;
    std::complex<double> first_moment = 0.0;
    double second_moment = 0.0;
    for (std::size_t n = 0; n < levels.size(); ++n) {
        const double a = dec.magnitudes[n];
        const double chi = dec.phases[n];
        linear += levels[n] * a * std::sin(chi);
        first_moment += levels[n] * a * std::complex<double>(std::cos(chi), std::sin(chi));
        second_moment += levels[n] * levels[n] * a * std::cos(chi);
    }
    const double rate = profile.redshift_difference(state.x(), state.x_prime()) /
                        constants::hbar;
    return {2.0 * linear * rate,
            (std::norm(first_moment) - second_moment) * rate * rate};
}

double expand_visibility(const PairState& state, const MetricProfile& profile, double t) {
    const auto coeff = expansion_coefficients(state, profile);
    return 1.0 + coeff.slope * t + coeff.curvature * t * t;
}

CoincidenceMoments moments_at_coincidence(const StateFamily& family, double x,
                                          double dx_step) {
    const PairState base = family(x, x);
    const Decomposition base_dec = decompose(base);
    const auto& levels = base.spectrum().levels();

    double weight_sum = 0.0;
    for (double a : base_dec.magnitudes) weight_sum += a;
    if (std::fabs(weight_sum - 1.0) > 1e-9) {
        throw std::invalid_argument(
            "moments_at_coincidence: coincident weights must sum to one");
    }

    double mean = 0.0, mean_sq = 0.0;
    for (std::size_t n = 0; n < levels.size(); ++n) {
        mean += levels[n] * base_dec.magnitudes[n];
        mean_sq += levels[n] * levels[n] * base_dec.magnitudes[n];
    }
    const double variance = std::max(0.0, mean_sq - mean * mean);

    double dx = dx_step > 0.0 ? dx_step : std::max(std::fabs(x), 1.0) * 1e-6;
    bool widened = false;
    std::vector<double> dchi(levels.size(), 0.0);
    for (int attempt = 0;; ++attempt) {
        const Decomposition plus = decompose(family(x, x + dx));
        const Decomposition minus = decompose(family(x, x - dx));
        double max_contrast = 0.0;
        for (std::size_t n = 0; n < levels.size(); ++n) {
            // Wrap the phase difference before dividing; chi is only
            // defined mod 2 pi.
            const double d = std::remainder(plus.phases[n] - minus.phases[n],
                                            2.0 * std::numbers::pi);
            dchi[n] = d / (2.0 * dx);
            max_contrast = std::max(max_contrast, std::fabs(d));
        }
        if (max_contrast >= 1e-13 || attempt >= 3) break;
        dx *= 10.0; // phase contrast below rounding; widen the step
        widened = true;
    }

    double e_dchi = 0.0;
    for (std::size_t n = 0; n < levels.size(); ++n) {
        e_dchi += levels[n] * base_dec.magnitudes[n] * dchi[n];
    }
    return {e_dchi, std::sqrt(variance), dx, widened};
}

ShortTimeReport decoherence_timescales(const MetricProfile& profile, double x,
                                       double x_prime, double E_Dchi, double delta_E) {
    if (x_prime == x) {
        throw NoDephasingError("decoherence_timescales: coincident points");
    }
    const double df = profile.redshift_slope(x);
    if (df == 0.0) {
        throw NoDephasingError("decoherence_timescales: Df(x) = 0");
    }
    const double f = profile.redshift(x);
    const double d = x_prime - x;

    ShortTimeReport report;
    report.E_Dchi = E_Dchi;
    report.delta_E = delta_E;
    report.slope_linear = -2.0 * d * d * df * E_Dchi / constants::hbar;
    const double rate = d * df / constants::hbar;
    report.curvature = -rate * rate * delta_E * delta_E;
    if (E_Dchi != 0.0) {
        report.t1 = constants::h / std::fabs(d * d * df * E_Dchi);
        report.tau1 = f * *report.t1;
    }
    if (delta_E > 0.0) {
        report.t2 = constants::h / (std::fabs(d * df) * delta_E);
        report.tau2 = f * *report.t2;
    }
    return report;
}

double expansion_validity_radius(const PairState& state, const MetricProfile& profile,
                                 double rel_err) {
    if (!(rel_err > 0.0)) {
        throw std::invalid_argument("expansion_validity_radius: rel_err must be positive");
    }
    const double delta_f = profile.redshift_difference(state.x(), state.x_prime());
    const double spread = state.spectrum().spread();
    if (delta_f == 0.0 || spread == 0.0) {
        // All phases advance together; the quadratic model is exact.
        return std::numeric_limits<double>::infinity();
    }
    const double t_char = 2.0 * std::numbers::pi * constants::hbar /
                          (std::fabs(delta_f) * spread);
    double cap = 64.0 * t_char;
    try {
        if (auto t0 = revival_period(state, profile, 1e-9)) cap = *t0;
    } catch (const NoDephasingError&) {
        // delta_f checked above; not reachable
    } catch (const std::invalid_argument&) {
        // all-zero spectrum has spread 0 and returned already
    }

    auto violated = [&](double t) {
        const double exact = std::norm(visibility(state, profile, t));
        const double approx = expand_visibility(state, profile, t);
        return std::fabs(exact - approx) > rel_err * std::fabs(exact);
    };

    double hi = t_char / 32.0;
    while (hi < cap && !violated(hi)) hi *= 2.0;
    if (hi >= cap) {
        if (!violated(cap)) return cap;
        hi = cap;
    }
    double lo = hi / 2.0;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (violated(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace gravdec
