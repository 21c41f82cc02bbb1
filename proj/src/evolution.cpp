#include "circprop/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "circprop/error.hpp"

namespace circprop {

namespace {

constexpr double kPi = std::numbers::pi;

void validate(const Grid& grid, const PacketParams& p) {
    if (!(p.sigma_L > 0.0) || !std::isfinite(p.sigma_L)) throw InvalidArgument("packet: sigma_L must be positive");
    if (!std::isfinite(p.x0_over_L)) throw InvalidArgument("packet: x0 must be finite");
    if (p.m0 < grid.min_index() || p.m0 > grid.max_index()) {
        throw InvalidArgument("packet: M0 = " + std::to_string(p.m0) + " outside the grid momentum range");
    }
}

// exp(-i pi M^2 k / N) in integer arithmetic
Complex kinetic_phase(std::int64_t m, std::int64_t k, std::int64_t n) {
    const __int128 den = 2 * static_cast<__int128>(n);
    __int128 r = (-static_cast<__int128>(m) * m * k) % den;
    if (r < 0) r += den;
    const double a = 2.0 * kPi * static_cast<double>(r) / static_cast<double>(den);
    return {std::cos(a), std::sin(a)};
}

void check_step(double tau_step) {
    if (!(tau_step > 0.0) || !std::isfinite(tau_step)) throw InvalidArgument("potential: tau_step must be positive");
}

}  // namespace

Wavefunction build_packet_momentum(const Grid& grid, const PacketParams& params) {
    validate(grid, params);
    auto psi = Wavefunction::zeros(grid, Basis::momentum);
    const double s2 = params.sigma_L * params.sigma_L;
    for (std::int64_t m = grid.min_index(); m <= grid.max_index(); ++m) {
        const double dk = 2.0 * kPi * static_cast<double>(m - params.m0);  // (kappa - kappa0) L
        const double weight = std::exp(-dk * dk / (2.0 * s2));
        const double shift = -2.0 * kPi * static_cast<double>(m) * params.x0_over_L;
        psi.at(m) = std::polar(weight, shift);
    }
    psi.normalize();
    return psi;
}

Wavefunction build_packet(const Grid& grid, const PacketParams& params) {
    return dft_inverse(build_packet_momentum(grid, params));
}

Wavefunction analytic_free_evolution(const Grid& grid, const PacketParams& params, double tau) {
    if (!std::isfinite(tau)) throw DomainError("analytic_free_evolution: time must be finite");
    auto mom = build_packet_momentum(grid, params);
    for (std::int64_t m = grid.min_index(); m <= grid.max_index(); ++m) {
        const double md = static_cast<double>(m);
        const double a = -kPi * std::fmod(md * md * tau, 2.0);
        mom.at(m) *= Complex(std::cos(a), std::sin(a));
    }
    return dft_inverse(mom);
}

std::string_view to_string(PotentialKind kind) {
    switch (kind) {
        case PotentialKind::none: return "none";
        case PotentialKind::cosine: return "cosine";
        case PotentialKind::random: return "random";
    }
    return "none";
}

PotentialKind potential_kind_from_string(std::string_view name) {
    if (name == "none") return PotentialKind::none;
    if (name == "cosine") return PotentialKind::cosine;
    if (name == "random") return PotentialKind::random;
    throw InvalidArgument("unknown potential kind '" + std::string(name) + "'");
}

PotentialGrid zero_potential(const Grid& grid) {
    return {grid, std::vector<double>(static_cast<std::size_t>(grid.size()), 0.0), PotentialKind::none, 0.0, 0};
}

PotentialGrid cosine_potential(const Grid& grid, double eta, double tau_step) {
    check_step(tau_step);
    if (eta < 0.0 || !std::isfinite(eta)) throw InvalidArgument("cosine_potential: eta must be non-negative");
    // 1 - cos peaks at J = -N/2 with value 2
    const double amplitude = eta / (2.0 * tau_step);
    PotentialGrid pot{grid, {}, PotentialKind::cosine, eta, 0};
    pot.u.resize(static_cast<std::size_t>(grid.size()));
    for (std::size_t s = 0; s < pot.u.size(); ++s) {
        pot.u[s] = amplitude * (1.0 - std::cos(2.0 * kPi * grid.xi(grid.label(s))));
    }
    return pot;
}

PotentialGrid random_potential(const Grid& grid, double eta, double tau_step, std::uint64_t seed) {
    check_step(tau_step);
    if (eta < 0.0 || !std::isfinite(eta)) throw InvalidArgument("random_potential: eta must be non-negative");
    std::mt19937_64 rng(seed);
    std::vector<double> draws(static_cast<std::size_t>(grid.size()));
    for (auto& d : draws) d = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const double top = *std::max_element(draws.begin(), draws.end());
    const double u_max = eta / tau_step;
    PotentialGrid pot{grid, std::vector<double>(draws.size(), 0.0), PotentialKind::random, eta, seed};
    if (top > 0.0 && u_max > 0.0) {
        for (std::size_t s = 0; s < draws.size(); ++s) pot.u[s] = draws[s] == top ? u_max : u_max * (draws[s] / top);
    }
    return pot;
}

EvolutionRecord split_step(const Wavefunction& psi, const PotentialGrid& pot, double tau_step, std::int64_t n_steps,
                           const SplitStepOptions& options) {
    const Grid& grid = psi.grid();
    if (pot.grid != grid) throw InvalidArgument("split_step: potential and wavefunction grids differ");
    if (psi.basis() != Basis::position) throw InvalidArgument("split_step: state must be in position basis");
    if (n_steps < 0) throw InvalidArgument("split_step: n_steps must be non-negative");
    if (options.stride < 1) throw InvalidArgument("split_step: stride must be >= 1");
    if (!(tau_step > 0.0) || !std::isfinite(tau_step)) throw InvalidArgument("split_step: tau_step must be positive");

    const std::int64_t n = grid.size();
    const double multiple = tau_step * static_cast<double>(n);
    const auto k = static_cast<std::int64_t>(std::llround(multiple));
    if (k < 1 || std::abs(multiple - static_cast<double>(k)) > 1e-9 * std::max(1.0, multiple)) {
        throw InvalidArgument("split_step: tau_step must be a positive integer multiple of 1/N");
    }

    std::vector<Complex> potential_phase(static_cast<std::size_t>(n));
    for (std::size_t s = 0; s < potential_phase.size(); ++s) {
        potential_phase[s] = std::polar(1.0, -pot.u[s] * tau_step);
    }
    std::vector<Complex> kinetic(static_cast<std::size_t>(n));
    for (std::size_t s = 0; s < kinetic.size(); ++s) kinetic[s] = kinetic_phase(grid.label(s), k, n);

    const auto apply_potential = [&](Wavefunction& f) {
        auto a = f.amps();
        for (std::size_t s = 0; s < a.size(); ++s) a[s] *= potential_phase[s];
    };
    const auto apply_kinetic = [&](Wavefunction& f) {
        auto mom = dft_forward(f);
        auto a = mom.amps();
        for (std::size_t s = 0; s < a.size(); ++s) a[s] *= kinetic[s];
        f = dft_inverse(mom);
    };

    EvolutionRecord rec{grid, tau_step, {}, {}, {}, {}};
    const auto snapshot = [&](std::int64_t step, const Wavefunction& f, double residual) {
        rec.steps.push_back(step);
        rec.times.push_back(static_cast<double>(step * k) / static_cast<double>(n));
        rec.states.push_back(f);
        rec.conservation_residuals.push_back(residual);
    };

    Wavefunction f = psi;
    const double norm0 = psi.norm_squared();
    snapshot(0, f, std::abs(1.0 - norm0));
    for (std::int64_t step = 1; step <= n_steps; ++step) {
        if (options.order == TrotterOrder::potential_first) {
            apply_potential(f);
            apply_kinetic(f);
        } else {
            apply_kinetic(f);
            apply_potential(f);
        }
        const double residual = std::abs(1.0 - f.norm_squared());
        if (std::abs(f.norm_squared() - norm0) > kNormDriftLimit) {
            throw NormDriftError("split_step: norm drifted by " + std::to_string(residual) + " at step " +
                                 std::to_string(step));
        }
        if (step % options.stride == 0 || step == n_steps) snapshot(step, f, residual);
    }
    return rec;
}

}  // namespace circprop
