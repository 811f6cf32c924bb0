// Test-side oracles, independent of the library implementation paths they
// check.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace oracles {

// Exact integer GCD, for spectra whose levels are small integer multiples
// of a common scale.
inline std::int64_t int_gcd(std::int64_t a, std::int64_t b) {
    while (b != 0) {
        const std::int64_t r = a % b;
        a = b;
        b = r;
    }
    return a < 0 ? -a : a;
}

// Remainder sequence of the continued-fraction (Euclid) expansion of the
// pair (a, b), in long double. For incommensurate pairs the remainders
// never vanish; the first remainder at or above `floor` bounds how well any
// admissible common divisor can do.
inline std::vector<long double> euclid_remainders(long double a, long double b,
                                                  long double floor) {
    if (a < b) std::swap(a, b);
    std::vector<long double> out{a, b};
    while (out.back() > 0.0L && out.back() > floor * 1e-6L) {
        const long double r = std::fmod(out[out.size() - 2], out.back());
        out.push_back(r);
        if (out.size() > 200) break;
    }
    return out;
}

// Closed form for the finite geometric partition sum of a harmonic ladder
// {0, eps, ..., (N-1) eps}: sum_{n<N} exp(-beta eps n).
inline std::complex<double> geometric_partition(std::complex<double> beta, double eps,
                                                std::size_t n_levels) {
    const std::complex<double> q = std::exp(-beta * eps);
    if (std::abs(q - 1.0) < 1e-14) return {static_cast<double>(n_levels), 0.0};
    return (1.0 - std::pow(q, static_cast<double>(n_levels))) / (1.0 - q);
}

// ln Z in long double with ground-state shift; used for finite-difference
// derivatives of the free energy where double precision would drown in
// rounding noise.
inline long double ln_partition(const std::vector<double>& levels, long double beta) {
    long double e0 = levels.front();
    for (double e : levels) e0 = std::min<long double>(e0, e);
    long double s = 0.0L;
    for (double e : levels) s += std::exp(-beta * (static_cast<long double>(e) - e0));
    return std::log(s) - beta * e0;
}

// Second derivative of ln Z w.r.t. beta by central differences; equals the
// energy variance.
inline long double d2_ln_partition(const std::vector<double>& levels, long double beta,
                                   long double rel_step) {
    const long double h = beta * rel_step;
    const long double up = ln_partition(levels, beta + h);
    const long double mid = ln_partition(levels, beta);
    const long double dn = ln_partition(levels, beta - h);
    return (up - 2.0L * mid + dn) / (h * h);
}

// Mean thermal energy in long double, for d<E>/dT finite differences.
inline long double mean_energy(const std::vector<double>& levels, long double beta) {
    long double e0 = levels.front();
    for (double e : levels) e0 = std::min<long double>(e0, e);
    long double z = 0.0L, num = 0.0L;
    for (double e : levels) {
        const long double w = std::exp(-beta * (static_cast<long double>(e) - e0));
        z += w;
        num += w * static_cast<long double>(e);
    }
    return num / z;
}

// Deterministic RNG helpers; every property test pins its seed.
inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& gen, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen);
}

inline std::complex<double> random_phase_weight(std::mt19937_64& gen, double mag_lo,
                                                double mag_hi) {
    const double mag = uniform(gen, mag_lo, mag_hi);
    const double phase = uniform(gen, -3.0, 3.0);
    return std::polar(mag, phase);
}

} // namespace oracles
