#include "circprop/numerics.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "circprop/error.hpp"

namespace circprop::numerics {

namespace {

// exp(i*2*pi*num/den) with the numerator already reduced modulo den.
Complex unit_phase(__int128 num, __int128 den) {
    __int128 r = num % den;
    if (r < 0) r += den;
    // map to (-den/2, den/2] so the angle stays in (-pi, pi]
    if (2 * r > den) r -= den;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(den);
    return {std::cos(angle), std::sin(angle)};
}

constexpr std::int64_t kMaxGaussDenominator = 1'000'000'000;

}  // namespace

ThetaResult theta(const ThetaArgs& args) {
    const double im_tau = args.tau.imag();
    if (!(im_tau < 0.0) || !std::isfinite(args.tau.real()) || !std::isfinite(args.xi)) {
        throw DomainError("theta: requires finite arguments with Im(tau) < 0, got Im(tau) = " +
                          std::to_string(im_tau));
    }
    if (!(args.tol > 0.0)) {
        throw InvalidArgument("theta: tolerance must be positive");
    }

    // |term(M)| = exp(pi*M^2*Im(tau)); find the first M whose term is below tol.
    const auto magnitude = [im_tau](double m) { return std::exp(std::numbers::pi * m * m * im_tau); };
    const double log_tol = std::log(args.tol);
    const double m_star_real = std::sqrt(std::max(0.0, log_tol / (std::numbers::pi * im_tau)));
    if (m_star_real > static_cast<double>(args.max_terms)) {
        throw ToleranceError("theta: truncation needs more than " + std::to_string(args.max_terms) +
                             " terms");
    }
    std::int64_t first_omitted = static_cast<std::int64_t>(std::ceil(m_star_real));
    while (first_omitted > 0 && magnitude(static_cast<double>(first_omitted - 1)) < args.tol) {
        --first_omitted;
    }
    while (magnitude(static_cast<double>(first_omitted)) >= args.tol) ++first_omitted;
    const std::int64_t cutoff = std::max<std::int64_t>(first_omitted - 1, 0);

    const Complex tau = args.tau;
    const auto term = [&](std::int64_t m) {
        const double md = static_cast<double>(m);
        return std::exp(Complex(0.0, -std::numbers::pi * md * md) * tau +
                        Complex(0.0, 2.0 * std::numbers::pi * md * args.xi));
    };

    // smallest terms first
    Complex sum{0.0, 0.0};
    for (std::int64_t m = cutoff; m >= 1; --m) sum += term(m) + term(-m);
    sum += 1.0;

    // tail bound: geometric majorant of sum_{|M| > cutoff} |term(M)|
    const double first = magnitude(static_cast<double>(cutoff + 1));
    const double ratio = std::exp(std::numbers::pi * (2.0 * static_cast<double>(cutoff) + 3.0) * im_tau);
    const double tail = 2.0 * first / (1.0 - ratio);

    return {sum, cutoff, tail};
}

Complex gauss_sum_unit_unchecked(std::int64_t q) {
    if (q < 1) throw InvalidArgument("gauss_sum_unit: q must be positive");
    if (q > kMaxGaussDenominator) throw InvalidArgument("gauss_sum_unit: q too large");
    Complex sum{0.0, 0.0};
    const __int128 den = 2 * static_cast<__int128>(q);
    for (std::int64_t m = 0; m < q; ++m) {
        // exp(-i*pi*m^2/q) = exp(i*2*pi*(-m^2)/(2q))
        sum += unit_phase(-static_cast<__int128>(m) * m, den);
    }
    return sum / std::sqrt(static_cast<double>(q));
}

Complex gauss_sum_unit(std::int64_t q) {
    if (q < 2 || q % 2 != 0) {
        throw InvalidArgument("gauss_sum_unit: q must be even and >= 2, got " + std::to_string(q));
    }
    return gauss_sum_unit_unchecked(q);
}

Complex gauss_sum_general(std::int64_t p, std::int64_t q, Rational delta_xi) {
    if (q < 1) throw InvalidArgument("gauss_sum_general: q must be positive");
    if (q > kMaxGaussDenominator) throw InvalidArgument("gauss_sum_general: q too large");
    if (std::gcd(p, q) != 1) {
        throw InvalidArgument("gauss_sum_general: p and q must be coprime");
    }
    const __int128 a = delta_xi.numerator();
    const __int128 b = delta_xi.denominator();
    // phase/(2*pi) = (-p*M^2*b + 2*q*M*a) / (2*q*b)
    const __int128 den = 2 * static_cast<__int128>(q) * b;
    Complex sum{0.0, 0.0};
    for (std::int64_t m = -q; m < q; ++m) {
        const __int128 mm = m;
        sum += unit_phase(-static_cast<__int128>(p) * mm * mm * b + 2 * static_cast<__int128>(q) * mm * a, den);
    }
    return 0.5 * sum / std::sqrt(static_cast<double>(q));
}

}  // namespace circprop::numerics
