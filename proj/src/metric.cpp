#include "gravdec/metric.hpp"

#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "gravdec/constants.hpp"
#include "gravdec/errors.hpp"

namespace gravdec {

namespace {

// Natural cubic spline through strictly increasing abscissae. Exact on
// linear data (all second derivatives vanish).
class CubicSpline {
public:
    CubicSpline(std::vector<double> xs, std::vector<double> ys)
        : x_(std::move(xs)), y_(std::move(ys)), m_(x_.size(), 0.0) {
        const std::size_t n = x_.size();
        if (n < 2) return; // constant fallback handled by caller
        // Thomas solve for the interior second derivatives; natural ends.
        std::vector<double> diag(n, 2.0), rhs(n, 0.0), sub(n, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double h0 = x_[i] - x_[i - 1];
            const double h1 = x_[i + 1] - x_[i];
            sub[i] = h0 / (h0 + h1);
            rhs[i] = 6.0 / (h0 + h1) *
                     ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
        }
        std::vector<double> c(n, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double upper = 1.0 - sub[i];
            const double denom = diag[i] - sub[i] * c[i - 1];
            c[i] = upper / denom;
            rhs[i] = (rhs[i] - sub[i] * rhs[i - 1]) / denom;
        }
        for (std::size_t i = n - 2; i >= 1; --i) {
            m_[i] = rhs[i] - c[i] * m_[i + 1];
            if (i == 1) break;
        }
    }

    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }

    double value(double x) const {
        const std::size_t i = interval(x);
        const double h = x_[i + 1] - x_[i];
        const double a = (x_[i + 1] - x) / h;
        const double b = (x - x_[i]) / h;
        return a * y_[i] + b * y_[i + 1] +
               ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
    }

    double derivative(double x) const {
        const std::size_t i = interval(x);
        const double h = x_[i + 1] - x_[i];
        const double a = (x_[i + 1] - x) / h;
        const double b = (x - x_[i]) / h;
        return (y_[i + 1] - y_[i]) / h +
               ((3.0 * b * b - 1.0) * m_[i + 1] - (3.0 * a * a - 1.0) * m_[i]) * h / 6.0;
    }

private:
    std::size_t interval(double x) const {
        if (!(x >= x_.front() && x <= x_.back())) {
            std::ostringstream os;
            os << "position " << x << " outside tabulated range [" << x_.front()
               << ", " << x_.back() << "]";
            throw ProfileDomainError(os.str());
        }
        std::size_t lo = 0, hi = x_.size() - 1;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            (x_[mid] <= x ? lo : hi) = mid;
        }
        return lo;
    }

    std::vector<double> x_, y_, m_;
};

double checked_redshift(double f, double x) {
    if (!(f > 0.0)) {
        std::ostringstream os;
        os << "redshift factor non-positive at x = " << x;
        throw ProfileDomainError(os.str());
    }
    return f;
}

} // namespace

MetricProfile::MetricProfile(std::function<double(double)> f,
                             std::function<double(double)> df,
                             std::function<double(double)> v,
                             std::function<double(double, double)> delta_f,
                             ProfileDescriptor descriptor)
    : f_(std::move(f)), df_(std::move(df)), v_(std::move(v)),
      delta_f_(std::move(delta_f)), descriptor_(std::move(descriptor)) {}

MetricProfile MetricProfile::with_potential(std::function<double(double)> v) const {
    ProfileDescriptor desc = descriptor_;
    desc.has_custom_potential = true;
    return MetricProfile(f_, df_, std::move(v), delta_f_, std::move(desc));
}

MetricProfile weak_field_profile(double g, double x_ref) {
    if (!std::isfinite(g) || !std::isfinite(x_ref)) {
        throw std::invalid_argument("weak_field_profile: parameters must be finite");
    }
    const double slope = g / constants::c_squared;
    auto f = [g, x_ref](double x) {
        return checked_redshift(1.0 + g * (x - x_ref) / constants::c_squared, x);
    };
    auto df = [slope](double) { return slope; };
    auto v = [](double) { return 0.0; };
    // The difference in closed form: the 1's cancel analytically, keeping
    // redshift contrasts ~1e-16 fully resolved.
    auto delta = [g](double x, double xp) { return g * (x - xp) / constants::c_squared; };
    ProfileDescriptor desc;
    desc.kind = "weak_field";
    desc.scalars = {{"g", g}, {"x_ref", x_ref}};
    return MetricProfile(f, df, v, delta, std::move(desc));
}

MetricProfile schwarzschild_profile(double mass) {
    if (!(mass > 0.0) || !std::isfinite(mass)) {
        throw std::invalid_argument("schwarzschild_profile: mass must be positive");
    }
    const double rs = 2.0 * constants::G * mass / constants::c_squared;
    auto f = [rs](double r) {
        if (!(r > rs)) {
            std::ostringstream os;
            os << "r = " << r << " at or inside the Schwarzschild radius " << rs;
            throw ProfileDomainError(os.str());
        }
        return std::sqrt(1.0 - rs / r);
    };
    auto df = [f, rs](double r) {
        const double fr = f(r);
        return rs / (2.0 * r * r * fr);
    };
    auto v = [](double) { return 0.0; };
    // f(r) - f(r') = (f^2 - f'^2)/(f + f') = rs (r - r') / (r r' (f + f')).
    auto delta = [f, rs](double r, double rp) {
        const double fr = f(r);
        const double frp = f(rp);
        return rs * (r - rp) / (r * rp * (fr + frp));
    };
    ProfileDescriptor desc;
    desc.kind = "schwarzschild";
    desc.scalars = {{"mass", mass}, {"schwarzschild_radius", rs}};
    return MetricProfile(f, df, v, delta, std::move(desc));
}

MetricProfile custom_profile(std::vector<std::array<double, 3>> samples) {
    if (samples.size() < 2) {
        throw std::invalid_argument("custom_profile: need at least two samples");
    }
    std::vector<double> xs, fs, vs;
    xs.reserve(samples.size());
    fs.reserve(samples.size());
    vs.reserve(samples.size());
    for (const auto& row : samples) {
        if (!std::isfinite(row[0]) || !std::isfinite(row[1]) || !std::isfinite(row[2])) {
            throw std::invalid_argument("custom_profile: samples must be finite");
        }
        if (!xs.empty() && !(row[0] > xs.back())) {
            throw std::invalid_argument("custom_profile: sample positions must be strictly increasing");
        }
        if (!(row[1] > 0.0)) {
            throw std::invalid_argument("custom_profile: redshift samples must be positive");
        }
        xs.push_back(row[0]);
        fs.push_back(row[1]);
        vs.push_back(row[2]);
    }
    auto f_spline = std::make_shared<CubicSpline>(xs, fs);
    auto v_spline = std::make_shared<CubicSpline>(xs, vs);
    auto f = [f_spline](double x) { return checked_redshift(f_spline->value(x), x); };
    auto df = [f_spline](double x) { return f_spline->derivative(x); };
    auto v = [v_spline](double x) { return v_spline->value(x); };
    auto delta = [f](double x, double xp) { return f(x) - f(xp); };
    ProfileDescriptor desc;
    desc.kind = "custom";
    desc.samples = std::move(samples);
    bool any_v = false;
    for (const auto& row : desc.samples) any_v = any_v || row[2] != 0.0;
    desc.has_custom_potential = any_v;
    return MetricProfile(f, df, v, delta, std::move(desc));
}

double redshift_difference(const MetricProfile& profile, double x, double x_prime) {
    return profile.redshift_difference(x, x_prime);
}

double local_temperature(const MetricProfile& profile, double T_global, double x) {
    if (!(T_global > 0.0) || !std::isfinite(T_global)) {
        throw std::invalid_argument("local_temperature: global temperature must be positive");
    }
    return T_global / profile.redshift(x);
}

double entropy_exchange_rate(const MetricProfile& profile, double x1, double x2,
                             double T1, double T2, double delta1) {
    if (!(T1 > 0.0) || !(T2 > 0.0)) {
        throw std::invalid_argument("entropy_exchange_rate: temperatures must be positive");
    }
    const double f1 = profile.redshift(x1);
    const double f2 = profile.redshift(x2);
    // Delta_1/T1 - (f1/f2) Delta_1/T2 factored so a Tolman field
    // (f1 T1 == f2 T2) yields exactly zero and linearity in Delta_1 is
    // manifest.
    return delta1 * (f2 * T2 - f1 * T1) / (T1 * T2 * f2);
}

} // namespace gravdec
