#include <doctest.h>

#include <cmath>
#include <numbers>

#include "circprop/error.hpp"
#include "circprop/numerics.hpp"
#include "circprop/qubit.hpp"

using namespace circprop;
using namespace circprop::qubit;

namespace {

constexpr double pi = std::numbers::pi;

// (1/2pi) int_{-pi}^{pi} exp(-i k^2 tau/2 + i k dJ) dk by composite Simpson in long double
Complex band_integral(double dj, double tau, int n = 400000) {
    const long double a = -std::numbers::pi_v<long double>;
    const long double h = 2 * std::numbers::pi_v<long double> / n;
    std::complex<long double> acc = 0;
    for (int i = 0; i <= n; ++i) {
        const long double k = a + i * h;
        const long double w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
        const long double ph = -k * k * tau / 2 + k * dj;
        acc += w * std::complex<long double>(std::cos(ph), std::sin(ph));
    }
    acc *= h / 3 / (2 * std::numbers::pi_v<long double>);
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

long double i_reference(int m, long double x) {
    long double term = 1, sum = 0;
    for (int n = 0; n < 200; ++n) {
        sum += term / (2 * n + 1 + m);
        term *= -x * x / ((2 * n + 1) * (2 * n + 2));
    }
    return sum;
}

}  // namespace

TEST_CASE("direct sum basics") {
    for (std::int64_t dj = -5; dj <= 5; ++dj) {
        CHECK(std::abs(qubit_direct(64, dj, 0.0) - Complex(dj == 0 ? 1.0 : 0.0)) < 1e-14);
        CHECK(std::abs(qubit_direct(64, dj, 0.7) - qubit_direct(64, -dj, 0.7)) < 1e-14);
    }
    for (std::int64_t n : {8, 120}) {
        for (double tau : {0.3, 10.0}) {
            double total = 0;
            for (std::int64_t dj = -n / 2; dj < n / 2; ++dj) total += std::norm(qubit_direct(n, dj, tau));
            CHECK(std::abs(total - 1.0) < 1e-12);
        }
    }
    CHECK_THROWS_AS(qubit_direct(7, 0, 1.0), InvalidArgument);
}

TEST_CASE("closed form against band quadrature") {
    for (double tau : {0.05, 1.0, 10.0}) {
        for (double dj : {0.0, 1.0, 2.5, -7.0, 40.0}) {
            CAPTURE(tau);
            CAPTURE(dj);
            CHECK(std::abs(qubit_closed(dj, tau) - band_integral(dj, tau)) < 1e-10);
        }
    }
    CHECK_THROWS_AS(qubit_closed(0.0, 0.0), DomainError);
    CHECK_THROWS_AS(qubit_closed(0.0, -1.0), DomainError);
}

TEST_CASE("closed form at dJ = 0") {
    for (double tau : {0.01, 0.5, 3.0, 10.0}) {
        const Complex a = std::sqrt(Complex(0.0, tau / 2));
        const Complex ref = numerics::erf_complex(pi * a) / std::sqrt(Complex(0.0, 2 * pi * tau));
        CHECK(std::abs(qubit_closed(0.0, tau) - ref) < 1e-14);
        const double r = std::sqrt(pi * tau);
        const auto f = numerics::fresnel(r);
        CHECK(std::abs(qubit_closed(0.0, tau) - Complex(f.c, -f.s) / r) < 1e-10);
    }
}

TEST_CASE("fresnel form agrees with the erf form on both sides of the cone") {
    for (double tau : {0.5, 2.0, 10.0}) {
        for (double dj : {0.0, 1.0, 5.0, 31.0, 32.0, 60.0}) {
            CAPTURE(tau);
            CAPTURE(dj);
            CHECK(std::abs(qubit_fresnel_form(dj, tau) - qubit_closed(dj, tau)) < 1e-10);
        }
    }
}

TEST_CASE("direct sum converges to the closed form") {
    for (double tau : {0.5, 1.0, 2.0}) {
        double prev = INFINITY;
        for (std::int64_t n = 128; n <= 1024; n *= 2) {
            double err = 0;
            for (std::int64_t dj = -20; dj <= 20; ++dj) {
                err = std::max(err, std::abs(qubit_direct(n, dj, tau) - qubit_closed(static_cast<double>(dj), tau)));
            }
            CAPTURE(tau);
            CAPTURE(n);
            CHECK(err < prev);
            prev = err;
        }
    }
    // N = 512, tau = 1: the finite sum carries an O(tau / N^2) endpoint correction, a few 1e-5
    double err = 0;
    for (std::int64_t dj = -20; dj <= 20; ++dj) {
        err = std::max(err, std::abs(qubit_direct(512, dj, 1.0) - qubit_closed(static_cast<double>(dj), 1.0)));
    }
    CHECK(err < 2e-5);
}

TEST_CASE("I functions") {
    CHECK(i_function(0, 0.0) == 1.0);
    CHECK(std::abs(i_function(0, 1.3) - std::sin(1.3) / 1.3) < 1e-15);
    CHECK(std::abs(i_function(0, 2 * pi)) < 1e-15);
    CHECK(i_function(2, pi) == doctest::Approx(-2.0 / (pi * pi)).epsilon(1e-14));
    CHECK(i_function(4, 0.0) == doctest::Approx(0.2));
    CHECK(i_function_lattice(4, 0) == doctest::Approx(0.2));
    CHECK(i_function_lattice(2, 1) == doctest::Approx(-2.0 / (pi * pi)).epsilon(1e-14));
    for (int m : {0, 2, 4, 6, 8}) {
        for (double x : {0.01, 0.5, 0.99, 1.5, 3.0, 7.5, 12.0, 20.0}) {
            CAPTURE(m);
            CAPTURE(x);
            const double ref = static_cast<double>(i_reference(m, x));
            CHECK(std::abs(i_function(m, x) - ref) < 1e-12 * std::max(1.0, std::abs(ref)) + 1e-14);
        }
        for (std::int64_t k = -4; k <= 4; ++k) {
            const double ref = static_cast<double>(i_reference(m, std::numbers::pi_v<long double> * k));
            CHECK(std::abs(i_function_lattice(m, k) - ref) < 1e-13);
        }
    }
    CHECK_THROWS_AS(i_function(3, 1.0), InvalidArgument);
    CHECK_THROWS_AS(i_function_lattice(-2, 1), InvalidArgument);
}

TEST_CASE("small-time expansion") {
    const double tau = 0.05;
    const auto at0 = qubit_small_time(0, tau);
    CHECK(std::abs(at0.value - Complex(1.0 - pow(pi, 4) * tau * tau / 40.0, -pi * pi / 6.0 * tau)) < 1e-14);
    CHECK_FALSE(at0.outside_window);
    CHECK(qubit_small_time(0, 0.3).outside_window);

    const auto worst = [](double t) {
        double err = 0;
        for (std::int64_t dj = -5; dj <= 5; ++dj) {
            err = std::max(err, std::abs(std::abs(qubit_small_time(dj, t).value) -
                                         std::abs(qubit_closed(static_cast<double>(dj), t))));
        }
        return err;
    };
    CHECK(worst(0.01) < 1e-5);
    CHECK(worst(0.05) < 1e-3);
    // the first dropped term is i (pi^6 / 48) I_6 tau^3, about 2.5e-3 at tau = 0.1, dJ = 1
    CHECK(worst(0.1) / worst(0.05) == doctest::Approx(8.0).epsilon(0.05));
    // |D|^2 at dJ = n is tau^2 / n^4 to leading order
    for (std::int64_t n = 1; n <= 5; ++n) {
        const double p = std::norm(qubit_small_time(n, 0.01).value);
        CHECK(std::abs(p / (1e-4 / std::pow(n, 4)) - 1.0) < 0.05);
    }
}

TEST_CASE("return-probability bound") {
    CHECK(return_probability_bound() == doctest::Approx(0.679683162555).epsilon(1e-11));
    const double tb = return_probability_bound();
    CHECK(std::abs(1.0 - pow(pi, 4) * tb * tb / 45.0) < 1e-14);
    CHECK(std::norm(qubit_closed(0.0, tb)) > 0.1);
}

TEST_CASE("light cone") {
    const double tau = 10.0;
    const auto rows = lightcone_profile(tau, 62);
    CHECK(rows.size() == 125);
    double sum = 0;
    int inside = 0;
    for (const auto& r : rows) {
        if (r.inside) {
            sum += r.modulus;
            ++inside;
        }
        CHECK(r.phase_minus_s > -pi);
        CHECK(r.phase_minus_s <= pi);
    }
    CHECK(inside == 63);  // |dJ| <= 31
    CHECK(std::abs(sum / inside / rows.front().uniform - 1.0) < 0.1);
    // beyond the cone the modulus falls off
    CHECK(std::abs(qubit_closed(2 * pi * tau, tau)) < 0.2 * std::abs(qubit_closed(pi * tau - 3, tau)));
    CHECK_THROWS_AS(lightcone_profile(0.5, 3), DomainError);
}
