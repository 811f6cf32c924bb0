#include "gravdec/coherence.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "gravdec/constants.hpp"
#include "gravdec/errors.hpp"

namespace gravdec {

namespace {

inline std::complex<double> unit_phase(double angle) {
    return {std::cos(angle), std::sin(angle)};
}

// Phase angle of a diagonal entry: -[E_n (f - f') + (V - V')] t / hbar.
inline double diagonal_angle(double delta_f, double energy, double delta_v, double t) {
    return -((delta_f * energy + delta_v) * t) / constants::hbar;
}

void append_float(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

} // namespace

PairState::PairState(EnergySpectrum spectrum, double x, double x_prime,
                     std::vector<std::complex<double>> rho_diag,
                     std::optional<ComplexMatrix> rho_full)
    : spectrum_(std::move(spectrum)), x_(x), x_prime_(x_prime),
      rho_diag_(std::move(rho_diag)), rho_full_(std::move(rho_full)) {
    if (!std::isfinite(x_) || !std::isfinite(x_prime_)) {
        throw std::invalid_argument("PairState: positions must be finite");
    }
    if (rho_diag_.size() != spectrum_.size()) {
        throw std::invalid_argument("PairState: one diagonal weight per level required");
    }
    if (rho_full_ && rho_full_->dim() != spectrum_.size()) {
        throw std::invalid_argument("PairState: full matrix dimension mismatch");
    }
    double scale = 0.0;
    for (const auto& r : rho_diag_) {
        if (!std::isfinite(r.real()) || !std::isfinite(r.imag())) {
            throw std::invalid_argument("PairState: weights must be finite");
        }
        scale = std::max(scale, std::abs(r));
    }
    if (x_ == x_prime_) {
        // Diagonal-in-position blocks of a density matrix are real and
        // nonnegative.
        for (const auto& r : rho_diag_) {
            if (std::fabs(r.imag()) > 1e-12 * scale || r.real() < -1e-12 * scale) {
                throw std::invalid_argument(
                    "PairState: coincident weights must be real and nonnegative");
            }
        }
    }
}

std::complex<double> PairState::weight_sum() const {
    std::complex<double> s = 0.0;
    for (const auto& r : rho_diag_) s += r;
    return s;
}

PairState pure_superposition_state(const EnergySpectrum& spectrum, double x,
                                   double x_prime, std::complex<double> alpha,
                                   std::complex<double> beta,
                                   const std::vector<std::complex<double>>& amplitudes) {
    if (amplitudes.size() != spectrum.size()) {
        throw std::invalid_argument(
            "pure_superposition_state: one amplitude per level required");
    }
    const double pos_norm = std::norm(alpha) + std::norm(beta);
    if (std::fabs(pos_norm - 1.0) > 1e-12) {
        throw std::invalid_argument(
            "pure_superposition_state: |alpha|^2 + |beta|^2 must equal 1");
    }
    double int_norm = 0.0;
    for (const auto& c : amplitudes) int_norm += std::norm(c);
    if (std::fabs(int_norm - 1.0) > 1e-12) {
        throw std::invalid_argument(
            "pure_superposition_state: internal amplitudes must be normalized");
    }
    const std::complex<double> weight = alpha * std::conj(beta);
    const std::size_t n = spectrum.size();
    std::vector<std::complex<double>> diag(n);
    ComplexMatrix full(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            full(i, j) = weight * amplitudes[i] * std::conj(amplitudes[j]);
        }
        diag[i] = weight * std::norm(amplitudes[i]);
    }
    return PairState(spectrum, x, x_prime, std::move(diag), std::move(full));
}

Decomposition decompose(const PairState& state) {
    const std::complex<double> trace = state.weight_sum();
    if (std::norm(trace) == 0.0) {
        throw DegenerateStateError("decompose: A(0) = 0, visibility undefined");
    }
    Decomposition out;
    out.trace = trace;
    out.magnitudes.reserve(state.rho_diag().size());
    out.phases.reserve(state.rho_diag().size());
    for (const auto& rho : state.rho_diag()) {
        if (rho == std::complex<double>(0.0, 0.0)) {
            out.magnitudes.push_back(0.0);
            out.phases.push_back(0.0);
            continue;
        }
        const std::complex<double> q = rho / trace;
        out.magnitudes.push_back(std::abs(q));
        double chi = std::arg(q);
        if (chi <= -std::numbers::pi) chi = std::numbers::pi; // convention: (-pi, pi]
        out.phases.push_back(chi);
    }
    return out;
}

PairState evolve_density(const PairState& state, const MetricProfile& profile, double t) {
    const double x = state.x();
    const double xp = state.x_prime();
    const double delta_f = profile.redshift_difference(x, xp);
    const double sum_f = profile.redshift(x) + profile.redshift(xp);
    const double delta_v = profile.potential(x) - profile.potential(xp);
    const auto& levels = state.spectrum().levels();
    const std::size_t n = levels.size();

    std::vector<std::complex<double>> diag(n);
    for (std::size_t i = 0; i < n; ++i) {
        diag[i] = state.rho_diag()[i] *
                  unit_phase(diagonal_angle(delta_f, levels[i], delta_v, t));
    }
    std::optional<ComplexMatrix> full;
    if (state.rho_full()) {
        full.emplace(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                // E_i f(x) - E_j f(x') rewritten as
                // [(E_i - E_j)(f + f') + (E_i + E_j)(f - f')]/2 so the
                // redshift difference enters through the safe path.
                const double bracket = 0.5 * ((levels[i] - levels[j]) * sum_f +
                                              (levels[i] + levels[j]) * delta_f) +
                                       delta_v;
                (*full)(i, j) = (*state.rho_full())(i, j) *
                                unit_phase(-bracket * t / constants::hbar);
            }
        }
    }
    return PairState(state.spectrum(), x, xp, std::move(diag), std::move(full));
}

std::complex<double> internal_trace(const PairState& state, const MetricProfile& profile,
                                    double t) {
    const double delta_f = profile.redshift_difference(state.x(), state.x_prime());
    const auto& levels = state.spectrum().levels();
    std::complex<double> a = 0.0;
    for (std::size_t n = 0; n < levels.size(); ++n) {
        a += state.rho_diag()[n] * unit_phase(diagonal_angle(delta_f, levels[n], 0.0, t));
    }
    return a;
}

std::complex<double> internal_trace_with_potential(const PairState& state,
                                                   const MetricProfile& profile,
                                                   double t) {
    const double delta_f = profile.redshift_difference(state.x(), state.x_prime());
    const double delta_v =
        profile.potential(state.x()) - profile.potential(state.x_prime());
    const auto& levels = state.spectrum().levels();
    std::complex<double> a = 0.0;
    for (std::size_t n = 0; n < levels.size(); ++n) {
        a += state.rho_diag()[n] *
             unit_phase(diagonal_angle(delta_f, levels[n], delta_v, t));
    }
    return a;
}

std::complex<double> visibility(const PairState& state, const MetricProfile& profile,
                                double t) {
    const std::complex<double> a0 = state.weight_sum();
    const double a0_norm = std::norm(a0);
    if (a0_norm == 0.0) {
        throw DegenerateStateError("visibility: A(0) = 0");
    }
    const std::complex<double> at = internal_trace(state, profile, t);
    // Divide through conj(a0)/|a0|^2: at t = 0 the numerator and
    // denominator round identically and gamma comes out exactly 1.
    const std::complex<double> num = at * std::conj(a0);
    return {num.real() / a0_norm, num.imag() / a0_norm};
}

std::vector<std::vector<double>> phase_trajectories(const PairState& state,
                                                    const MetricProfile& profile,
                                                    const std::vector<double>& times) {
    const Decomposition dec = decompose(state);
    const double delta_f = profile.redshift_difference(state.x(), state.x_prime());
    const auto& levels = state.spectrum().levels();
    std::vector<std::vector<double>> phi(levels.size(),
                                         std::vector<double>(times.size()));
    for (std::size_t n = 0; n < levels.size(); ++n) {
        const double rate = delta_f * levels[n] / constants::hbar;
        for (std::size_t k = 0; k < times.size(); ++k) {
            phi[n][k] = dec.phases[n] - rate * times[k];
        }
    }
    return phi;
}

std::optional<double> revival_period(const PairState& state, const MetricProfile& profile,
                                     double rel_tol) {
    const double delta_f = profile.redshift_difference(state.x(), state.x_prime());
    if (delta_f == 0.0) {
        throw NoDephasingError("revival_period: zero redshift difference");
    }
    const auto eps = commensurate_gcd(state.spectrum(), rel_tol);
    if (!eps) return std::nullopt;
    return constants::h / (std::fabs(delta_f) * *eps);
}

VisibilityTrace visibility_trace(const PairState& state, const MetricProfile& profile,
                                 const std::vector<double>& times, bool with_phases) {
    VisibilityTrace out;
    out.times = times;
    out.gamma.reserve(times.size());
    out.magnitude.reserve(times.size());
    for (double t : times) {
        const auto g = visibility(state, profile, t);
        out.gamma.push_back(g);
        out.magnitude.push_back(std::abs(g));
    }
    if (with_phases) {
        out.phases = phase_trajectories(state, profile, times);
    }
    return out;
}

std::string trace_to_csv(const VisibilityTrace& trace, std::string_view scenario_hash) {
    std::string out;
    out.reserve(64 + 80 * trace.times.size());
    out += "# scenario ";
    out += scenario_hash;
    out += "\nt,re_gamma,im_gamma,abs_gamma\n";
    for (std::size_t k = 0; k < trace.times.size(); ++k) {
        append_float(out, trace.times[k]);
        out += ',';
        append_float(out, trace.gamma[k].real());
        out += ',';
        append_float(out, trace.gamma[k].imag());
        out += ',';
        append_float(out, trace.magnitude[k]);
        out += '\n';
    }
    return out;
}

} // namespace gravdec
