#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "circprop/evolution.hpp"
#include "circprop/lattice.hpp"

namespace circprop {

/// Per-snapshot position of the probability maximum.
struct Trajectory {
    std::vector<double> taus;
    std::vector<double> xi_max;
    std::vector<double> prob_max;
};

/// Sentinel for cells whose amplitude vanishes (destructive interference).
inline constexpr double kUndefinedPhase = std::numeric_limits<double>::quiet_NaN();
inline bool phase_defined(double v) { return !std::isnan(v); }

/// Amplitudes below this fraction of the row maximum have no phase.
inline constexpr double kPhaseAmplitudeFloor = 1e-10;

/// |arg psi| over (tau, xi) cells, row-major with one row per tau.
struct PhaseMap {
    std::vector<double> taus;
    std::vector<double> xis;
    std::vector<double> phase;  ///< in [0, pi], or kUndefinedPhase
    std::vector<double> prob;

    double phase_at(std::size_t row, std::size_t col) const { return phase[row * xis.size() + col]; }
    double prob_at(std::size_t row, std::size_t col) const { return prob[row * xis.size() + col]; }
};

/// Argmax of |psi|^2 per snapshot. Values within a relative 1e-12 of the
/// maximum count as ties; ties go to the smallest |xi|, then to the negative side.
Trajectory probability_max(const EvolutionRecord& record);

PhaseMap phase_map(const EvolutionRecord& record);

/// Free propagator kernel D(dJ) at tau = k/N for k = 0..k_max; xi is dJ/N.
PhaseMap propagator_phase_map(const Grid& grid, std::int64_t k_max);

/// max over tau <= window of the circular distance |xi_max(tau) - velocity * tau|.
double trajectory_deviation(const Trajectory& traj, double velocity, double window = 0.05);

/// trajectory_deviation against the semi-classical line xi = M0 tau / 2.
/// Requires M0 != 0.
double semiclassical_deviation(const Trajectory& traj, std::int64_t m0, double window = 0.05);

/// Number of sign changes of the (circularly wrapped) step xi_max(k+1) - xi_max(k),
/// ignoring zero steps.
int direction_reversals(const Trajectory& traj, double t_max = std::numeric_limits<double>::infinity());

/// Distance on the unit circle, in [0, 1/2].
double circular_distance(double a, double b);

}  // namespace circprop
