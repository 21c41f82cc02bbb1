#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "circprop/error.hpp"
#include "circprop/numerics.hpp"

namespace circprop::numerics {

namespace detail {

// Power series, summed in long double. Cancellation grows like exp(pi x^2 / 2),
// about 1.4e6 at the series limit, which the extra precision absorbs.
FresnelPair fresnel_series(double x) {
    const long double xl = x;
    const long double t = std::numbers::pi_v<long double> / 2.0L * xl * xl;
    const long double t2 = t * t;

    long double c_sum = 0.0L;
    long double s_sum = 0.0L;
    long double c_pow = 1.0L;  // (-1)^n t^{2n} / (2n)!
    long double s_pow = t;     // (-1)^n t^{2n+1} / (2n+1)!
    for (int n = 0; n < 500; ++n) {
        const long double c_term = c_pow / (4.0L * n + 1.0L);
        const long double s_term = s_pow / (4.0L * n + 3.0L);
        c_sum += c_term;
        s_sum += s_term;
        if (std::fabs(c_term) < 1e-22L * (1.0L + std::fabs(c_sum)) &&
            std::fabs(s_term) < 1e-22L * (1.0L + std::fabs(s_sum)) && n > 2) {
            break;
        }
        const long double k = 2.0L * n;
        c_pow *= -t2 / ((k + 1.0L) * (k + 2.0L));
        s_pow *= -t2 / ((k + 2.0L) * (k + 3.0L));
    }
    return {static_cast<double>(xl * c_sum), static_cast<double>(xl * s_sum)};
}

// Integrate the definition from the series limit outwards.
FresnelPair fresnel_quadrature(double x) {
    const double a = kFresnelSeriesLimit;
    const FresnelPair base = fresnel_series(a);
    using Integrator = boost::math::quadrature::gauss_kronrod<double, 61>;
    const double half_pi = std::numbers::pi / 2.0;
    const double dc = Integrator::integrate([=](double t) { return std::cos(half_pi * t * t); }, a, x, 15, 1e-15);
    const double ds = Integrator::integrate([=](double t) { return std::sin(half_pi * t * t); }, a, x, 15, 1e-15);
    return {base.c + dc, base.s + ds};
}

// C = 1/2 + f sin(pi x^2/2) - g cos(pi x^2/2)
// S = 1/2 - f cos(pi x^2/2) - g sin(pi x^2/2)
// with the auxiliary functions f, g from their asymptotic series, truncated at
// the smallest term.
FresnelPair fresnel_asymptotic(double x) {
    const long double xl = x;
    const long double pi = std::numbers::pi_v<long double>;
    const long double z = pi * xl * xl;
    const long double inv_z2 = 1.0L / (z * z);

    long double f_sum = 0.0L;
    long double g_sum = 0.0L;
    long double f_term = 1.0L;  // (-1)^n (1*3*...*(4n-1)) / z^{2n}
    long double g_term = 1.0L;  // (-1)^n (1*3*...*(4n+1)) / z^{2n}
    long double f_prev = INFINITY;
    long double g_prev = INFINITY;
    bool f_done = false;
    bool g_done = false;
    for (int n = 0; n < 200 && !(f_done && g_done); ++n) {
        if (!f_done) {
            if (std::fabs(f_term) > f_prev) {
                f_done = true;
            } else {
                f_sum += f_term;
                f_prev = std::fabs(f_term);
                if (f_prev < 1e-21L * std::fabs(f_sum)) f_done = true;
            }
        }
        if (!g_done) {
            if (std::fabs(g_term) > g_prev) {
                g_done = true;
            } else {
                g_sum += g_term;
                g_prev = std::fabs(g_term);
                if (g_prev < 1e-21L * std::fabs(g_sum)) g_done = true;
            }
        }
        const long double k = 4.0L * n;
        f_term *= -(k + 1.0L) * (k + 3.0L) * inv_z2;
        g_term *= -(k + 3.0L) * (k + 5.0L) * inv_z2;
    }
    const long double f = f_sum / (pi * xl);
    const long double g = g_sum / (pi * pi * xl * xl * xl);

    // pi x^2 / 2 reduced modulo 2 pi: x^2 = hi + lo exactly, then hi mod 4.
    const double hi = x * x;
    const double lo = std::fma(x, x, -hi);
    const long double y = static_cast<long double>(std::fmod(hi, 4.0)) + lo;
    const long double arg = pi / 2.0L * y;
    const long double sn = std::sin(arg);
    const long double cs = std::cos(arg);
    return {static_cast<double>(0.5L + f * sn - g * cs), static_cast<double>(0.5L - f * cs - g * sn)};
}

}  // namespace detail

FresnelPair fresnel(double x) {
    if (!std::isfinite(x)) {
        if (std::isinf(x)) return x > 0 ? FresnelPair{0.5, 0.5} : FresnelPair{-0.5, -0.5};
        throw DomainError("fresnel: argument is NaN");
    }
    const double ax = std::fabs(x);
    FresnelPair r{};
    if (ax <= kFresnelSeriesLimit) {
        r = detail::fresnel_series(ax);
    } else if (ax < kFresnelAsymptoticStart) {
        r = detail::fresnel_quadrature(ax);
    } else {
        r = detail::fresnel_asymptotic(ax);
    }
    if (x < 0) return {-r.c, -r.s};
    return r;
}

double fresnel_c(double x) { return fresnel(x).c; }
double fresnel_s(double x) { return fresnel(x).s; }

}  // namespace circprop::numerics
