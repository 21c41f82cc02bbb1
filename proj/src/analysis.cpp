#include "circprop/analysis.hpp"

#include <algorithm>
#include <complex>

#include "circprop/error.hpp"
#include "circprop/propagator.hpp"

namespace circprop {

namespace {

constexpr double kTieTolerance = 1e-12;

void fill_phase_row(std::span<const Complex> amps, std::span<double> phase, std::span<double> prob) {
    double peak = 0.0;
    for (const auto& a : amps) peak = std::max(peak, std::abs(a));
    for (std::size_t i = 0; i < amps.size(); ++i) {
        prob[i] = std::norm(amps[i]);
        phase[i] = std::abs(amps[i]) > kPhaseAmplitudeFloor * peak ? std::abs(std::arg(amps[i])) : kUndefinedPhase;
    }
}

std::vector<double> grid_xis(const Grid& grid) {
    std::vector<double> xs(static_cast<std::size_t>(grid.size()));
    for (std::size_t s = 0; s < xs.size(); ++s) xs[s] = grid.xi(grid.label(s));
    return xs;
}

}  // namespace

double circular_distance(double a, double b) {
    double d = std::fmod(a - b, 1.0);
    if (d < 0.0) d += 1.0;
    return std::min(d, 1.0 - d);
}

Trajectory probability_max(const EvolutionRecord& record) {
    if (record.states.empty()) throw InvalidArgument("probability_max: empty record");
    Trajectory traj;
    for (std::size_t i = 0; i < record.states.size(); ++i) {
        const auto& psi = record.states[i];
        const auto dens = psi.density();
        const double top = *std::max_element(dens.begin(), dens.end());
        std::int64_t best = 0;
        bool found = false;
        for (std::size_t s = 0; s < dens.size(); ++s) {
            if (dens[s] < top * (1.0 - kTieTolerance)) continue;
            const std::int64_t j = psi.grid().label(s);
            // smaller |J| wins; at equal |J| the negative label wins
            if (!found || std::abs(j) < std::abs(best) || (std::abs(j) == std::abs(best) && j < best)) {
                best = j;
                found = true;
            }
        }
        traj.taus.push_back(record.times[i]);
        traj.xi_max.push_back(psi.grid().xi(best));
        traj.prob_max.push_back(std::norm(psi.at(best)));
    }
    return traj;
}

PhaseMap phase_map(const EvolutionRecord& record) {
    if (record.states.empty()) throw InvalidArgument("phase_map: empty record");
    PhaseMap map;
    map.taus = record.times;
    map.xis = grid_xis(record.grid);
    const std::size_t cols = map.xis.size();
    map.phase.resize(map.taus.size() * cols);
    map.prob.resize(map.taus.size() * cols);
    for (std::size_t r = 0; r < record.states.size(); ++r) {
        if (record.states[r].grid() != record.grid) throw InvalidArgument("phase_map: inconsistent grids");
        fill_phase_row(record.states[r].amps(), std::span(map.phase).subspan(r * cols, cols),
                       std::span(map.prob).subspan(r * cols, cols));
    }
    return map;
}

PhaseMap propagator_phase_map(const Grid& grid, std::int64_t k_max) {
    if (k_max < 0) throw InvalidArgument("propagator_phase_map: k_max must be non-negative");
    PhaseMap map;
    map.xis = grid_xis(grid);
    const std::size_t cols = map.xis.size();
    const auto rows = static_cast<std::size_t>(k_max + 1);
    map.taus.resize(rows);
    map.phase.resize(rows * cols);
    map.prob.resize(rows * cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const auto k = static_cast<std::int64_t>(r);
        map.taus[r] = static_cast<double>(k) / static_cast<double>(grid.size());
        const auto d = direct_propagator(grid, RationalTime::make(k, grid.size()));
        fill_phase_row(d.kernel(), std::span(map.phase).subspan(r * cols, cols),
                       std::span(map.prob).subspan(r * cols, cols));
    }
    return map;
}

double trajectory_deviation(const Trajectory& traj, double velocity, double window) {
    double worst = -1.0;
    for (std::size_t i = 0; i < traj.taus.size(); ++i) {
        if (traj.taus[i] > window + 1e-12) continue;
        worst = std::max(worst, circular_distance(traj.xi_max[i], velocity * traj.taus[i]));
    }
    if (worst < 0.0) throw InvalidArgument("trajectory_deviation: no snapshot inside the time window");
    return worst;
}

double semiclassical_deviation(const Trajectory& traj, std::int64_t m0, double window) {
    if (m0 == 0) {
        throw InvalidArgument("semiclassical_deviation: M0 = 0 has no semi-classical trajectory to compare with");
    }
    return trajectory_deviation(traj, 0.5 * static_cast<double>(m0), window);
}

int direction_reversals(const Trajectory& traj, double t_max) {
    int reversals = 0;
    int last_sign = 0;
    for (std::size_t i = 1; i < traj.xi_max.size(); ++i) {
        if (traj.taus[i] > t_max + 1e-12) break;
        double step = std::fmod(traj.xi_max[i] - traj.xi_max[i - 1], 1.0);
        if (step >= 0.5) step -= 1.0;
        if (step < -0.5) step += 1.0;
        if (step == 0.0) continue;
        const int sign = step > 0.0 ? 1 : -1;
        if (last_sign != 0 && sign != last_sign) ++reversals;
        last_sign = sign;
    }
    return reversals;
}

}  // namespace circprop
