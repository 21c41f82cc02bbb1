#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "circprop/lattice.hpp"

namespace circprop {

/// Gaussian packet on the circle: centre xi0 = x0/L, peak momentum
/// kappa0 = 2 pi M0 / L and dimensionless width sigma * L.
struct PacketParams {
    double x0_over_L = 0.0;
    std::int64_t m0 = 0;
    double sigma_L = 10.0;
};

/// Momentum amplitudes exp(-(kappa - kappa0)^2 / (2 sigma^2) - i kappa x0) over
/// the N grid momenta, normalised numerically over that truncated set.
Wavefunction build_packet_momentum(const Grid& grid, const PacketParams& params);
/// Position-basis packet (inverse DFT of build_packet_momentum).
Wavefunction build_packet(const Grid& grid, const PacketParams& params);

/// Free evolution of the packet, done exactly in the momentum basis.
Wavefunction analytic_free_evolution(const Grid& grid, const PacketParams& params, double tau);

enum class PotentialKind { none, cosine, random };

std::string_view to_string(PotentialKind kind);
PotentialKind potential_kind_from_string(std::string_view name);

/// Dimensionless potential u_J on the grid. The Trotter phase per step is
/// exp(-i u_J tau_step).
struct PotentialGrid {
    Grid grid;
    std::vector<double> u;
    PotentialKind kind = PotentialKind::none;
    double eta = 0.0;
    std::uint64_t seed = 0;
};

PotentialGrid zero_potential(const Grid& grid);

/// u_J = A (1 - cos(2 pi J / N)) with max_J u_J * tau_step = eta.
PotentialGrid cosine_potential(const Grid& grid, double eta, double tau_step);

/// u_J drawn i.i.d. uniform on [0, 1) from std::mt19937_64(seed), using the
/// top 53 bits of each draw (u = (x >> 11) * 2^-53), then rescaled so that
/// max_J u_J * tau_step = eta. The generator and conversion are part of the
/// reproducibility contract.
PotentialGrid random_potential(const Grid& grid, double eta, double tau_step, std::uint64_t seed);

enum class TrotterOrder { potential_first, kinetic_first };

struct SplitStepOptions {
    std::int64_t stride = 1;  ///< snapshot every stride steps (the last step is always kept)
    TrotterOrder order = TrotterOrder::potential_first;
};

struct EvolutionRecord {
    Grid grid;
    double tau_step = 0.0;
    std::vector<std::int64_t> steps;
    std::vector<double> times;
    std::vector<Wavefunction> states;
    std::vector<double> conservation_residuals;  ///< |1 - ||psi||^2| per snapshot
};

inline constexpr double kNormDriftLimit = 1e-8;

/// First-order Trotter evolution. tau_step must be a positive integer multiple
/// of 1/N, for which the kinetic factor exp(-i pi M^2 tau_step) is applied
/// exactly. Throws NormDriftError if any step drifts beyond kNormDriftLimit.
EvolutionRecord split_step(const Wavefunction& psi, const PotentialGrid& pot, double tau_step, std::int64_t n_steps,
                           const SplitStepOptions& options = {});

}  // namespace circprop
