#pragma once

#include <functional>
#include <optional>

#include "gravdec/coherence.hpp"
#include "gravdec/metric.hpp"

namespace gravdec {

/// Short-time behaviour of |gamma|^2 around t = 0 together with the two
/// dephasing scales. slope_linear and curvature are the coefficients of t
/// and t^2 in the coincidence expansion
///   |gamma|^2 = 1 - (x'-x)^2 [ 2 Df(x) t/hbar <E Dchi>
///                              + (Df(x) t/hbar)^2 (Delta E)^2 ] + ...
/// so the curvature carries only the energy-fluctuation term and is never
/// positive.
struct ShortTimeReport {
    double slope_linear = 0.0;  // 1/s
    double curvature = 0.0;     // 1/s^2
    double E_Dchi = 0.0;        // <E Dchi>(x; 0), J/m
    double delta_E = 0.0;       // Delta E(x; 0), J
    std::optional<double> t1;   // h / |(x'-x)^2 Df(x) <E Dchi>|, s
    std::optional<double> t2;   // h / (|(x'-x) Df(x)| Delta E), s
    std::optional<double> tau1; // f(x) t1
    std::optional<double> tau2; // f(x) t2
    std::optional<double> validity_radius; // s, where the quadratic is good to 1%
};

/// Map (x, x') to the correlation state prepared for that pair of points.
using StateFamily = std::function<PairState(double x, double x_prime)>;

struct CoincidenceMoments {
    double E_Dchi;   // J/m
    double delta_E;  // J
    double dx_used;  // m, actual central-difference step
    bool widened;    // step was grown because the phase contrast was too small
};

/// Coefficients of t and t^2 in the quadratic short-time model of
/// |gamma(t)|^2 for a concrete state:
///   slope     = 2 (delta_f/hbar) sum E_n a_n sin chi_n            (1/s)
///   curvature = (delta_f/hbar)^2 (|sum E_n a_n e^{i chi_n}|^2
///                                  - sum E_n^2 a_n cos chi_n)     (1/s^2)
struct ExpansionCoefficients {
    double slope;
    double curvature;
};

ExpansionCoefficients expansion_coefficients(const PairState& state,
                                             const MetricProfile& profile);

/// Quadratic short-time model 1 + slope t + curvature t^2 of |gamma(t)|^2.
/// Agrees with the exact |gamma|^2 up to O(t^3).
double expand_visibility(const PairState& state, const MetricProfile& profile, double t);

/// <E Dchi>(x; 0) and Delta E(x; 0) from a state family near coincidence.
/// D2 chi_n is a central difference in the second position with the phase
/// difference wrapped to (-pi, pi]; if the contrast is below 1e-13 rad the
/// step is widened (up to three decades) before accepting a flat phase.
/// dx_step <= 0 selects the default max(|x|, 1) * 1e-6.
CoincidenceMoments moments_at_coincidence(const StateFamily& family, double x,
                                          double dx_step = 0.0);

/// The two dephasing scales and their proper-time versions tau_i = f(x) t_i.
/// t1 is absent when <E Dchi> = 0, t2 when Delta E = 0. Throws
/// NoDephasingError when Df(x) = 0 or x' = x. validity_radius is left
/// unset; see expansion_validity_radius.
ShortTimeReport decoherence_timescales(const MetricProfile& profile, double x,
                                       double x_prime, double E_Dchi, double delta_E);

/// Largest t below which the quadratic model tracks the exact |gamma|^2
/// within rel_err, found by doubling + bisection. Capped at one revival
/// period for commensurate spectra (64 characteristic periods otherwise);
/// returns infinity when the expansion is exact (no spread or no redshift
/// contrast).
double expansion_validity_radius(const PairState& state, const MetricProfile& profile,
                                 double rel_err = 0.01);

} // namespace gravdec
