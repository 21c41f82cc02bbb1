#pragma once

#include <complex>
#include <cstdint>

#include <boost/rational.hpp>

namespace circprop {

using Complex = std::complex<double>;
using Rational = boost::rational<std::int64_t>;

namespace numerics {

/// Arguments of the truncated theta sum
///   theta(xi, tau) = sum_M exp(-i*pi*M^2*tau + i*2*pi*M*xi),
/// which converges only for Im(tau) < 0.
struct ThetaArgs {
    double xi = 0.0;
    Complex tau{0.0, -1.0};
    double tol = 1e-15;
    std::int64_t max_terms = 1'000'000;
};

struct ThetaResult {
    Complex value;
    std::int64_t cutoff = 0;        ///< largest |M| kept
    double truncation_error = 0.0;  ///< bound on the omitted tail
};

/// Symmetric truncation at |M| <= cutoff, where cutoff is the smallest index
/// whose first omitted term has magnitude below tol.
/// Throws DomainError if Im(tau) >= 0, ToleranceError if the cutoff would
/// exceed max_terms.
ThetaResult theta(const ThetaArgs& args);

/// (1/sqrt(q)) * sum_{M=0}^{q-1} exp(-i*pi*M^2/q), q even and >= 2.
/// Equals exp(-i*pi/4) for every even q.
Complex gauss_sum_unit(std::int64_t q);

/// Same sum for any q >= 1 with no parity check; used to report odd-q values.
Complex gauss_sum_unit_unchecked(std::int64_t q);

/// (1/2)(1/sqrt(q)) * sum_{M=-q}^{q-1} exp(-i*pi*p*M^2/q + i*2*pi*M*delta_xi)
/// by direct summation. Requires gcd(p, q) == 1.
Complex gauss_sum_general(std::int64_t p, std::int64_t q, Rational delta_xi);

/// Fresnel integrals C(x) = int_0^x cos(pi t^2/2) dt, S(x) = int_0^x sin(pi t^2/2) dt.
double fresnel_c(double x);
double fresnel_s(double x);

struct FresnelPair {
    double c;
    double s;
};
FresnelPair fresnel(double x);

/// Branch boundaries used by fresnel(); exposed for seam tests.
inline constexpr double kFresnelSeriesLimit = 3.0;
inline constexpr double kFresnelAsymptoticStart = 8.0;

namespace detail {
FresnelPair fresnel_series(double x);
FresnelPair fresnel_quadrature(double x);
FresnelPair fresnel_asymptotic(double x);
Complex erf_series(Complex z);
Complex erf_continued_fraction(Complex z);
Complex erfc_continued_fraction(Complex z);
}  // namespace detail

inline constexpr double kErfDefaultCap = 30.0;

/// Complex error function. Throws DomainError when |z| > cap or when z is not
/// finite.
Complex erf_complex(Complex z, double cap = kErfDefaultCap);
/// 1 - erf(z), without the cancellation for large Re(z) > 0. Same errors.
Complex erfc_complex(Complex z, double cap = kErfDefaultCap);

}  // namespace numerics
}  // namespace circprop
