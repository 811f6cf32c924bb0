#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace gravdec {

/// Machine-readable description of how a profile was built, echoed into
/// run manifests.
struct ProfileDescriptor {
    std::string kind;                              // "weak_field" | "schwarzschild" | "custom"
    std::map<std::string, double> scalars;         // kind parameters
    std::vector<std::array<double, 3>> samples;    // custom profiles: (x, f, V)
    bool has_custom_potential = false;
};

/// Static-metric redshift profile: the factor f(x) relating proper time to
/// coordinate time (d tau = f dt), its spatial derivative, and an optional
/// external potential V(x) in joules.
///
/// Positions are a single coordinate in metres. All evaluators throw
/// ProfileDomainError outside the valid domain.
class MetricProfile {
public:
    MetricProfile(std::function<double(double)> f,
                  std::function<double(double)> df,
                  std::function<double(double)> v,
                  std::function<double(double, double)> delta_f,
                  ProfileDescriptor descriptor);

    /// f(x) > 0.
    double redshift(double x) const { return f_(x); }
    /// Df(x), units 1/m.
    double redshift_slope(double x) const { return df_(x); }
    /// V(x), joules. Zero unless a potential was attached.
    double potential(double x) const { return v_(x); }

    /// f(x) - f(x_prime) through a cancellation-safe path. For the
    /// built-in analytic profiles this stays accurate even when the
    /// difference is far below one ulp of f itself.
    double redshift_difference(double x, double x_prime) const {
        return delta_f_(x, x_prime);
    }

    /// Copy of this profile with the external potential replaced.
    MetricProfile with_potential(std::function<double(double)> v) const;

    const ProfileDescriptor& descriptor() const { return descriptor_; }

private:
    std::function<double(double)> f_, df_, v_;
    std::function<double(double, double)> delta_f_;
    ProfileDescriptor descriptor_;
};

/// Uniform acceleration g: f(x) = 1 + g (x - x_ref)/c^2, Df = g/c^2.
MetricProfile weak_field_profile(double g, double x_ref = 0.0);

/// f(r) = sqrt(1 - 2GM/(r c^2)); valid for r above the Schwarzschild radius.
MetricProfile schwarzschild_profile(double mass);

/// Piecewise-cubic interpolation of tabulated (x, f, V) rows. Sample
/// positions must be strictly increasing and f positive at every sample.
MetricProfile custom_profile(std::vector<std::array<double, 3>> samples);

double redshift_difference(const MetricProfile& profile, double x, double x_prime);

/// Tolman temperature T(x) = T_global / f(x).
double local_temperature(const MetricProfile& profile, double T_global, double x);

/// Entropy change when energy Delta_1 leaves the point x1 and the
/// blueshift-adjusted amount -f(x1)/f(x2) Delta_1 arrives at x2:
/// Delta S = Delta_1/T1 + Delta_2/T2. Vanishes exactly on a Tolman
/// temperature field f(x) T(x) = const.
double entropy_exchange_rate(const MetricProfile& profile, double x1, double x2,
                             double T1, double T2, double delta1);

} // namespace gravdec
