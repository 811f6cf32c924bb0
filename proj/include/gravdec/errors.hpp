#pragma once

#include <stdexcept>

namespace gravdec {

/// Evaluation outside a profile's valid domain (at or inside the
/// Schwarzschild radius, outside the sampled range of a tabulated profile,
/// or where the redshift factor is non-positive).
class ProfileDomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The pair correlation carries no weight, A(0) = 0, so the visibility
/// gamma(t) = A(t)/A(0) is undefined.
class DegenerateStateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// No redshift contrast between the two points (f(x) = f(x') or Df = 0):
/// the coherence is constant in time and no dephasing scale exists.
class NoDephasingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace gravdec
