#include "circprop/qubit.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "circprop/error.hpp"

namespace circprop::qubit {

namespace {

constexpr double kPi = std::numbers::pi;
// |exp(-z^2)| = 1 on the diagonal, so large arguments cannot overflow there
constexpr double kDiagonalCap = 1e8;

double wrap_angle(double a) {
    a = std::remainder(a, 2.0 * kPi);
    if (a <= -kPi) a += 2.0 * kPi;
    return a;
}

void require_even(int m) {
    if (m < 0 || m % 2 != 0) throw InvalidArgument("i_function: m must be even and non-negative, got " + std::to_string(m));
}

long double i_series(int m, long double x) {
    const long double x2 = x * x;
    long double power = 1.0L;  // (-1)^n x^{2n} / (2n)!
    long double sum = 0.0L;
    for (int n = 0; n < 400; ++n) {
        const long double term = power / (2.0L * n + 1.0L + m);
        sum += term;
        if (n > 2 && std::fabs(term) < 1e-21L * std::fabs(sum)) break;
        power *= -x2 / ((2.0L * n + 1.0L) * (2.0L * n + 2.0L));
    }
    return sum;
}

}  // namespace

Complex qubit_direct(std::int64_t n_sites, std::int64_t delta_j, double tau) {
    if (n_sites < 2 || n_sites % 2 != 0) throw InvalidArgument("qubit_direct: N must be even and >= 2");
    if (!std::isfinite(tau)) throw DomainError("qubit_direct: tau must be finite");
    Complex sum{0.0, 0.0};
    const double n = static_cast<double>(n_sites);
    // k dJ = 2 pi m dJ / N is reduced modulo N in integers
    for (std::int64_t m = -n_sites / 2; m < n_sites / 2; ++m) {
        const double k = 2.0 * kPi * static_cast<double>(m) / n;
        std::int64_t r = (m * delta_j) % n_sites;
        if (r < 0) r += n_sites;
        const double arg = -k * k * tau / 2.0 + 2.0 * kPi * static_cast<double>(r) / n;
        sum += Complex(std::cos(arg), std::sin(arg));
    }
    return sum / n;
}

Complex qubit_closed(double delta_j, double tau) {
    if (!(tau > 0.0) || !std::isfinite(tau) || !std::isfinite(delta_j)) {
        throw DomainError("qubit_closed: requires finite dJ and tau > 0");
    }
    const Complex a = std::sqrt(Complex(0.0, tau / 2.0));  // sqrt(i tau / 2)
    // the sum is even in dJ; with |dJ| both arguments sit on the e^{i pi/4} ray
    const Complex shift = Complex(0.0, std::abs(delta_j)) / (2.0 * a);
    const Complex upper = kPi * a + shift;
    const Complex lower = kPi * a - shift;
    // outside the cone erf(upper) and -erf(-lower) both approach 1
    const Complex sum = std::abs(delta_j) > kPi * tau
                            ? numerics::erfc_complex(-lower, kDiagonalCap) - numerics::erfc_complex(upper, kDiagonalCap)
                            : numerics::erf_complex(upper, kDiagonalCap) + numerics::erf_complex(lower, kDiagonalCap);
    const Complex action_phase = std::polar(1.0, delta_j * delta_j / (2.0 * tau));
    return (1.0 / (2.0 * kPi)) * (std::sqrt(kPi) / 2.0) * action_phase / a * sum;
}

Complex qubit_fresnel_form(double delta_j, double tau) {
    if (!(tau > 0.0) || !std::isfinite(tau) || !std::isfinite(delta_j)) {
        throw DomainError("qubit_fresnel_form: requires finite dJ and tau > 0");
    }
    // erf(e^{i pi/4} r) = sqrt(2i) (C(r sqrt(2/pi)) - i S(r sqrt(2/pi))) for real r, odd in r,
    // with r = pi sqrt(tau/2) +- |dJ| / sqrt(2 tau). r^2 (2/pi) = pi tau + 2S/pi +- 2 sqrt(2 tau S).
    const double s_action = delta_j * delta_j / (2.0 * tau);
    const double base = kPi * tau + 2.0 * s_action / kPi;
    const double cross = 2.0 * std::sqrt(2.0 * tau * s_action);
    const double upper = std::sqrt(base + cross);
    const double lower = std::sqrt(std::max(0.0, base - cross));
    const auto fu = numerics::fresnel(upper);
    const auto fl = numerics::fresnel(lower);
    const double sign = std::abs(delta_j) <= kPi * tau ? 1.0 : -1.0;
    const Complex bracket(fu.c + sign * fl.c, -(fu.s + sign * fl.s));
    return std::polar(1.0, s_action) / (2.0 * std::sqrt(kPi * tau)) * bracket;
}

double i_function(int m, double x) {
    require_even(m);
    if (!std::isfinite(x)) throw DomainError("i_function: x must be finite");
    const double ax = std::fabs(x);
    // exact multiples of pi use the closed form
    const double ratio = ax / kPi;
    const double nearest = std::round(ratio);
    if (nearest <= 1e6 && ax == nearest * kPi) return i_function_lattice(m, static_cast<std::int64_t>(nearest));

    // the recursion divides by x^2 once per order; keep the series where that loses digits
    const double series_limit = std::max(1.0, 2.0 * m);
    if (ax < series_limit) return static_cast<double>(i_series(m, ax));

    const long double xl = ax;
    const long double x2 = xl * xl;
    const long double i0 = std::sin(xl) / xl;
    const long double j0 = (1.0L - std::cos(xl)) / x2;
    long double prev = i0;
    for (int k = 1; 2 * k <= m; ++k) {
        const long double two_k = 2.0L * k;
        prev = i0 - two_k * j0 - two_k * (two_k - 1.0L) / x2 * (prev - 1.0L / (two_k - 1.0L));
    }
    return static_cast<double>(prev);
}

double i_function_lattice(int m, std::int64_t delta_j) {
    require_even(m);
    const int half = m / 2;
    if (delta_j == 0) return 1.0 / (m + 1.0);
    const double x = kPi * static_cast<double>(delta_j);
    const double x2 = x * x;
    const double cos_x = (delta_j % 2 == 0) ? 1.0 : -1.0;
    // cos(x)/x^2 * sum_{n=0}^{half-1} (-1)^{half-1-n} m! / ((2n+1)! x^{2(half-1-n)})
    double sum = 0.0;
    for (int n = 0; n < half; ++n) {
        double term = std::tgamma(m + 1.0) / std::tgamma(2.0 * n + 2.0);
        term /= std::pow(x2, half - 1 - n);
        sum += ((half - 1 - n) % 2 == 0 ? 1.0 : -1.0) * term;
    }
    return cos_x / x2 * sum;
}

SmallTimeValue qubit_small_time(std::int64_t delta_j, double tau) {
    if (!std::isfinite(tau)) throw DomainError("qubit_small_time: tau must be finite");
    const double i0 = i_function_lattice(0, delta_j);
    const double i2 = i_function_lattice(2, delta_j);
    const double i4 = i_function_lattice(4, delta_j);
    const double pi2 = kPi * kPi;
    const Complex value(i0 - pi2 * pi2 / 8.0 * i4 * tau * tau, -pi2 / 2.0 * i2 * tau);
    return {value, std::abs(tau) > kSmallTimeWindow};
}

double return_probability_bound() { return std::sqrt(45.0) / (kPi * kPi); }

std::vector<LightconeRow> lightcone_profile(double tau, std::int64_t dj_max) {
    if (!(tau >= 1.0) || !std::isfinite(tau)) throw DomainError("lightcone_profile: requires tau >= 1");
    if (dj_max < 0) throw InvalidArgument("lightcone_profile: dj_max must be non-negative");
    std::vector<LightconeRow> rows;
    rows.reserve(static_cast<std::size_t>(2 * dj_max + 1));
    const double uniform = 1.0 / std::sqrt(2.0 * kPi * tau);
    for (std::int64_t dj = -dj_max; dj <= dj_max; ++dj) {
        const double d = static_cast<double>(dj);
        const Complex v = qubit_closed(d, tau);
        rows.push_back({dj, v, std::abs(v), uniform, std::abs(d) <= kPi * tau,
                        wrap_angle(std::arg(v) - d * d / (2.0 * tau))});
    }
    return rows;
}

}  // namespace circprop::qubit
