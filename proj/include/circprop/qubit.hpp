#pragma once

#include <cstdint>
#include <vector>

#include "circprop/numerics.hpp"

namespace circprop::qubit {

/// Propagator of the bounded kinetic term K_N = sum_k k^2/2 |k><k| with
/// k in {-pi, -pi + 2pi/N, ..., pi - 2pi/N}.
struct QubitPropagatorPoint {
    double delta_j;
    double tau;
    Complex value;
};

/// (1/N) sum_k exp(-i k^2 tau / 2 + i k dJ), summed directly.
Complex qubit_direct(std::int64_t n_sites, std::int64_t delta_j, double tau);

/// N -> infinity limit, (1/2pi) int_{-pi}^{pi} dk exp(-i k^2 tau/2 + i k dJ), in
/// the symmetric erf form. Accepts non-integer dJ. Requires tau > 0.
Complex qubit_closed(double delta_j, double tau);

/// The same limit written with Fresnel integrals, split at |dJ| = pi tau.
/// Diagnostic route; qubit_closed is the reference.
Complex qubit_fresnel_form(double delta_j, double tau);

/// I_m(x) = sum_n (-1)^n x^{2n} / ((2n)! (2n + 1 + m)) for even m >= 0.
double i_function(int m, double x);
/// I_m(pi * dJ) for integer dJ in closed form.
double i_function_lattice(int m, std::int64_t delta_j);

struct SmallTimeValue {
    Complex value;
    bool outside_window = false;  ///< |tau| > kSmallTimeWindow
};

inline constexpr double kSmallTimeWindow = 0.2;

/// (I_0 - pi^4/8 I_4 tau^2) - i pi^2/2 I_2 tau at x = pi dJ.
SmallTimeValue qubit_small_time(std::int64_t delta_j, double tau);

/// Zero of the quadratic return-probability model 1 - pi^4 tau^2 / 45.
double return_probability_bound();

struct LightconeRow {
    std::int64_t delta_j;
    Complex value;
    double modulus;
    double uniform;        ///< 1 / sqrt(2 pi tau)
    bool inside;           ///< |dJ| <= pi tau
    double phase_minus_s;  ///< arg(value) - dJ^2/(2 tau), wrapped to (-pi, pi]
};

/// Rows for dJ in [-dj_max, dj_max] from qubit_closed. Requires tau >= 1.
std::vector<LightconeRow> lightcone_profile(double tau, std::int64_t dj_max);

}  // namespace circprop::qubit
