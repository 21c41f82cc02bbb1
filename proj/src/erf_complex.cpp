#include <cmath>
#include <numbers>
#include <sstream>

#include "circprop/error.hpp"
#include "circprop/numerics.hpp"

namespace circprop::numerics {

namespace {

void check_argument(Complex z, double cap) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw DomainError("erf_complex: non-finite argument");
    }
    if (std::abs(z) > cap) {
        std::ostringstream msg;
        msg << "erf_complex: |z| = " << std::abs(z) << " exceeds cap " << cap;
        throw DomainError(msg.str());
    }
}

void check_result(Complex z, Complex result) {
    if (!std::isfinite(result.real()) || !std::isfinite(result.imag())) {
        std::ostringstream msg;
        msg << "erf_complex: result overflows at z = " << z;
        throw DomainError(msg.str());
    }
}

using LComplex = std::complex<long double>;

// Below this real part the Maclaurin series is used; its relative error grows
// like exp(2 Re(z)^2) times the long double epsilon.
constexpr double kSeriesRealLimit = 2.5;
constexpr double kSeriesModulusLimit = 3.0;

}  // namespace

namespace detail {

// erf(z) = 2/sqrt(pi) * sum_n z (-z^2)^n / (n! (2n+1))
Complex erf_series(Complex z) {
    const LComplex zl(z.real(), z.imag());
    const LComplex mz2 = -zl * zl;
    LComplex power = zl;  // z (-z^2)^n / n!
    LComplex sum = zl;
    const long double scale = std::abs(zl);
    long double largest = scale;
    for (int n = 1; n < 20000; ++n) {
        power *= mz2 / static_cast<long double>(n);
        const LComplex term = power / static_cast<long double>(2 * n + 1);
        sum += term;
        const long double mag = std::abs(term);
        largest = std::max(largest, mag);
        if (n > 4 && mag < 1e-21L * std::abs(sum) && mag < largest) break;
    }
    const LComplex result = sum * (2.0L / std::sqrt(std::numbers::pi_v<long double>));
    return {static_cast<double>(result.real()), static_cast<double>(result.imag())};
}

// Laplace continued fraction for erfc, valid for Re(z) > 0:
//   erfc(z) = exp(-z^2)/sqrt(pi) * 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + ...))))
// evaluated with the modified Lentz algorithm.
Complex erfc_continued_fraction(Complex z) {
    const LComplex zl(z.real(), z.imag());
    constexpr long double tiny = 1e-300L;
    LComplex f = zl;
    LComplex c = zl;
    LComplex d = 0.0L;
    int n = 1;
    for (; n < 200000; ++n) {
        const long double a = 0.5L * n;
        d = zl + a * d;
        if (std::abs(d) < tiny) d = tiny;
        c = zl + a / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0L / d;
        const LComplex delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0L) < 1e-19L) break;
    }
    if (n >= 200000) throw ToleranceError("erf_complex: continued fraction did not converge");

    // exp(-z^2) with Re(z^2) formed as (x - y)(x + y)
    const long double x = zl.real();
    const long double y = zl.imag();
    const long double re = -(x - y) * (x + y);
    const long double im = -2.0L * x * y;
    const LComplex expo = std::exp(re) * LComplex(std::cos(im), std::sin(im));
    const LComplex erfc = expo / (std::sqrt(std::numbers::pi_v<long double>) * f);
    return {static_cast<double>(erfc.real()), static_cast<double>(erfc.imag())};
}

Complex erf_continued_fraction(Complex z) { return 1.0 - erfc_continued_fraction(z); }

}  // namespace detail

static bool use_series(Complex z) { return z.real() < kSeriesRealLimit || std::abs(z) < kSeriesModulusLimit; }

Complex erf_complex(Complex z, double cap) {
    check_argument(z, cap);
    if (z == Complex{0.0, 0.0}) return {0.0, 0.0};
    if (z.real() < 0.0) return -erf_complex(-z, cap);

    const Complex result = use_series(z) ? detail::erf_series(z) : detail::erf_continued_fraction(z);
    check_result(z, result);
    return result;
}

Complex erfc_complex(Complex z, double cap) {
    check_argument(z, cap);
    if (z.real() < 0.0 || use_series(z)) {
        const Complex result = 1.0 - erf_complex(z, cap);
        check_result(z, result);
        return result;
    }
    const Complex result = detail::erfc_continued_fraction(z);
    check_result(z, result);
    return result;
}

}  // namespace circprop::numerics
