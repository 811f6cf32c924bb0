#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gravdec/metric.hpp"
#include "gravdec/spectrum.hpp"

namespace gravdec {

/// Dense row-major N x N complex matrix; just enough for carrying the full
/// internal block rho(n, n').
class ComplexMatrix {
public:
    explicit ComplexMatrix(std::size_t n) : n_(n), data_(n * n) {}

    std::size_t dim() const noexcept { return n_; }
    std::complex<double>& operator()(std::size_t i, std::size_t j) {
        return data_[i * n_ + j];
    }
    const std::complex<double>& operator()(std::size_t i, std::size_t j) const {
        return data_[i * n_ + j];
    }

private:
    std::size_t n_;
    std::vector<std::complex<double>> data_;
};

/// Two-point correlation block of a density matrix: positions (x, x') and
/// the internal-diagonal weights rho_n = rho(x, x'; n, n; 0), optionally
/// the full internal matrix rho(n, n').
///
/// At coincidence (x' == x) the diagonal weights must be real and
/// nonnegative; the constructor enforces this.
class PairState {
public:
    PairState(EnergySpectrum spectrum, double x, double x_prime,
              std::vector<std::complex<double>> rho_diag,
              std::optional<ComplexMatrix> rho_full = std::nullopt);

    const EnergySpectrum& spectrum() const noexcept { return spectrum_; }
    double x() const noexcept { return x_; }
    double x_prime() const noexcept { return x_prime_; }
    const std::vector<std::complex<double>>& rho_diag() const noexcept {
        return rho_diag_;
    }
    const std::optional<ComplexMatrix>& rho_full() const noexcept { return rho_full_; }

    /// A(0) = sum_n rho_n.
    std::complex<double> weight_sum() const;

private:
    EnergySpectrum spectrum_;
    double x_, x_prime_;
    std::vector<std::complex<double>> rho_diag_;
    std::optional<ComplexMatrix> rho_full_;
};

/// rho_n = trace * a_n * exp(i chi_n) with a_n >= 0, chi_n in (-pi, pi],
/// normalized so that sum_n a_n exp(i chi_n) = 1. Levels with zero weight
/// get a_n = 0, chi_n = 0.
struct Decomposition {
    std::complex<double> trace;     // A(0)
    std::vector<double> magnitudes; // a_n
    std::vector<double> phases;     // chi_n
};

/// Time series of the visibility.
struct VisibilityTrace {
    std::vector<double> times;                 // s
    std::vector<std::complex<double>> gamma;   // gamma(t)
    std::vector<double> magnitude;             // |gamma(t)|
    std::vector<std::vector<double>> phases;   // optional, [level][time], unwrapped
};

/// Correlation block of alpha |x> chi + beta |x'> chi with internal state
/// chi = sum_n c_n |n>: rho_n = alpha conj(beta) |c_n|^2 and
/// rho(n, n') = alpha conj(beta) c_n conj(c_{n'}).
PairState pure_superposition_state(const EnergySpectrum& spectrum, double x,
                                   double x_prime, std::complex<double> alpha,
                                   std::complex<double> beta,
                                   const std::vector<std::complex<double>>& amplitudes);

/// Throws DegenerateStateError when A(0) = 0.
Decomposition decompose(const PairState& state);

/// Exact unitary evolution under the global Hamiltonian f(X) H + V(X):
/// every entry picks up the unimodular phase
/// exp{[E_n f(x) + V(x) - E_n' f(x') - V(x')] t / (i hbar)}.
PairState evolve_density(const PairState& state, const MetricProfile& profile, double t);

/// A(x, x'; t) = sum_n rho_n exp{[f(x) - f(x')] E_n t / (i hbar)} -- the
/// internal trace without the external-potential phase.
std::complex<double> internal_trace(const PairState& state, const MetricProfile& profile,
                                    double t);

/// A-tilde(x, x'; t): same trace with the V(x) - V(x') phase folded into
/// each level. |A-tilde| = |A| identically; external potentials shift the
/// overall phase only.
std::complex<double> internal_trace_with_potential(const PairState& state,
                                                   const MetricProfile& profile,
                                                   double t);

/// gamma(t) = A(t)/A(0); gamma(0) = 1 exactly. Throws DegenerateStateError
/// when A(0) = 0.
std::complex<double> visibility(const PairState& state, const MetricProfile& profile,
                                double t);

/// phi_n(t) = chi_n(0) - [f(x) - f(x')] E_n t / hbar, affine in t and not
/// reduced mod 2 pi. Result is indexed [level][time].
std::vector<std::vector<double>> phase_trajectories(const PairState& state,
                                                    const MetricProfile& profile,
                                                    const std::vector<double>& times);

/// t0 = h / (|f(x) - f(x')| eps) with eps the commensurability quantum of
/// the spectrum; nullopt for incommensurate spectra. Throws
/// NoDephasingError when the redshift difference vanishes.
std::optional<double> revival_period(const PairState& state, const MetricProfile& profile,
                                     double rel_tol = 1e-9);

VisibilityTrace visibility_trace(const PairState& state, const MetricProfile& profile,
                                 const std::vector<double>& times,
                                 bool with_phases = false);

/// CSV with header "t,re_gamma,im_gamma,abs_gamma"; the scenario hash rides
/// in a comment line above the header. Floats carry 17 significant digits.
std::string trace_to_csv(const VisibilityTrace& trace, std::string_view scenario_hash);

} // namespace gravdec
