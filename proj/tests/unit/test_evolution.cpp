#include <doctest.h>

#include <cmath>
#include <numbers>

#include "circprop/error.hpp"
#include "circprop/evolution.hpp"
#include "circprop/numerics.hpp"
#include "circprop/propagator.hpp"

using namespace circprop;

namespace {

constexpr double pi = std::numbers::pi;

double max_diff(std::span<const Complex> a, std::span<const Complex> b) {
    double d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

double density_diff(const Wavefunction& a, const Wavefunction& b) {
    const auto da = a.density();
    const auto db = b.density();
    double d = 0;
    for (std::size_t i = 0; i < da.size(); ++i) d = std::max(d, std::abs(da[i] - db[i]));
    return d;
}

}  // namespace

TEST_CASE("packet shape") {
    const auto g = Grid::from_qubits(7);
    const auto psi = build_packet(g, {0.0, 0, 10.0});
    CHECK(std::abs(psi.norm() - 1.0) < 1e-12);
    const auto dens = psi.density();
    const auto peak = std::max_element(dens.begin(), dens.end()) - dens.begin();
    CHECK(g.label(static_cast<std::size_t>(peak)) == 0);
    for (std::int64_t j = 1; j < 64; ++j) CHECK(std::abs(dens[g.slot(j)] - dens[g.slot(-j)]) < 1e-14);

    // a very narrow momentum weight leaves the single M = 0 mode: flat density
    const auto flat = build_packet(g, {0.0, 0, 1e-3});
    for (double d : flat.density()) CHECK(std::abs(d - 1.0 / 128.0) < 1e-12);

    CHECK_THROWS_AS(build_packet(g, {0.0, 0, 0.0}), InvalidArgument);
    CHECK_THROWS_AS(build_packet(g, {0.0, 64, 1.0}), InvalidArgument);
}

TEST_CASE("momentum packet matches the theta normalisation for wide grids") {
    // sum_M exp(-(2 pi M)^2 / s^2) = theta(0, -i 4 pi / s^2)
    const double s = 5.0;
    const auto g = Grid::from_qubits(8);
    numerics::ThetaArgs args{0.0, Complex(0.0, -4.0 * pi / (s * s))};
    const double norm2 = numerics::theta(args).value.real();
    const auto mom = build_packet_momentum(g, {0.0, 0, s});
    CHECK(std::abs(std::norm(mom.at(0)) - 1.0 / norm2) < 1e-12);
}

TEST_CASE("potentials") {
    const auto g = Grid::from_qubits(6);
    const double step = 1.0 / 64.0;
    const auto cosp = cosine_potential(g, 0.75, step);
    CHECK(cosp.u[g.slot(0)] == 0.0);
    CHECK(*std::max_element(cosp.u.begin(), cosp.u.end()) * step == doctest::Approx(0.75).epsilon(1e-15));
    for (std::int64_t j = 1; j < 32; ++j) CHECK(std::abs(cosp.u[g.slot(j)] - cosp.u[g.slot(-j)]) < 1e-12);

    const auto r1 = random_potential(g, 0.75, step, 42);
    const auto r2 = random_potential(g, 0.75, step, 42);
    const auto r3 = random_potential(g, 0.75, step, 43);
    CHECK(r1.u == r2.u);
    CHECK(r1.u != r3.u);
    CHECK(*std::max_element(r1.u.begin(), r1.u.end()) * step == 0.75);
    for (double u : r1.u) {
        CHECK(u >= 0.0);
        CHECK(u <= 0.75 / step);
    }
    for (double u : random_potential(g, 0.0, step, 1).u) CHECK(u == 0.0);
    CHECK(potential_kind_from_string("cosine") == PotentialKind::cosine);
    CHECK(to_string(PotentialKind::random) == "random");
    CHECK_THROWS_AS(potential_kind_from_string("square"), InvalidArgument);
}

TEST_CASE("free split-step is exact") {
    const auto g = Grid::from_qubits(7);
    const PacketParams params{0.1, 2, 4.0};
    const auto rec = split_step(build_packet(g, params), zero_potential(g), 1.0 / 128.0, 64, {8});
    CHECK(rec.states.size() == 9);
    for (std::size_t i = 0; i < rec.states.size(); ++i) {
        CHECK(max_diff(rec.states[i].amps(), analytic_free_evolution(g, params, rec.times[i]).amps()) < 1e-10);
        CHECK(rec.conservation_residuals[i] < 1e-10);
    }
    CHECK(rec.times.back() == 0.5);
}

TEST_CASE("free split-step agrees with repeated exact propagators") {
    const auto g = Grid::from_qubits(6);
    const PacketParams params{0.0, 1, 3.0};
    auto psi = build_packet(g, params);
    const auto d = exact_propagator(g, RationalTime::make(1, 64));
    for (int k = 0; k < 10; ++k) psi = d.apply(psi);
    CHECK(max_diff(psi.amps(), analytic_free_evolution(g, params, 10.0 / 64.0).amps()) < 1e-9);
}

TEST_CASE("periodicity and identity") {
    const auto g = Grid::from_qubits(5);
    const PacketParams params{-0.2, 1, 6.0};
    const auto psi = build_packet(g, params);
    const auto rec = split_step(psi, zero_potential(g), 2.0 / 32.0, 32, {32});
    CHECK(rec.times.back() == 2.0);
    CHECK(max_diff(rec.states.back().amps(), psi.amps()) < 1e-10);
    CHECK(max_diff(analytic_free_evolution(g, params, 0.3).amps(), analytic_free_evolution(g, params, 2.3).amps()) <
          1e-12);

    const auto cosp = cosine_potential(g, 0.75, 1.0 / 32.0);
    const auto zero = split_step(psi, cosp, 1.0 / 32.0, 0);
    CHECK(zero.states.size() == 1);
    CHECK(max_diff(zero.states[0].amps(), psi.amps()) < 1e-15);
}

TEST_CASE("free packet width follows the time-dependent variance") {
    // position-density variance of a wide free Gaussian: (1/(2 s^2)) (1 + (t s^2 / (2 pi))^2)
    const auto g = Grid::from_qubits(7);
    const double s = 10.0;
    const auto rec = split_step(build_packet(g, {0.0, 0, s}), zero_potential(g), 1.0 / 128.0, 6);
    for (std::size_t i = 0; i < rec.states.size(); ++i) {
        const auto dens = rec.states[i].density();
        double var = 0;
        for (std::size_t k = 0; k < dens.size(); ++k) var += dens[k] * std::pow(g.xi(g.label(k)), 2);
        const double t = rec.times[i];
        const double model = (1.0 / (2.0 * s * s)) * (1.0 + std::pow(t * s * s / (2.0 * pi), 2));
        CAPTURE(t);
        CHECK(std::abs(var / model - 1.0) < 0.05);
    }
}

TEST_CASE("potential runs conserve the norm and depend on ordering") {
    const auto g = Grid::from_qubits(6);
    const double step = 1.0 / 64.0;
    const auto psi = build_packet(g, {-0.125, 0, 10.0});
    const auto pot = cosine_potential(g, 0.75, step);
    const auto a = split_step(psi, pot, step, 128, {16});
    SplitStepOptions kin;
    kin.stride = 16;
    kin.order = TrotterOrder::kinetic_first;
    const auto b = split_step(psi, pot, step, 128, kin);
    for (double r : a.conservation_residuals) CHECK(r < 1e-10);
    CHECK(max_diff(a.states.back().amps(), b.states.back().amps()) > 1e-6);
    CHECK(density_diff(a.states.back(), b.states.back()) < 0.5);
}

TEST_CASE("split-step preconditions") {
    const auto g = Grid::from_qubits(4);
    const auto psi = build_packet(g, {});
    CHECK_THROWS_AS(split_step(psi, zero_potential(g), 0.01, 3), InvalidArgument);
    CHECK_THROWS_AS(split_step(psi, zero_potential(g), 1.0 / 16.0, -1), InvalidArgument);
    CHECK_THROWS_AS(split_step(psi, zero_potential(Grid::from_qubits(5)), 1.0 / 16.0, 1), InvalidArgument);
    CHECK_THROWS_AS(split_step(dft_forward(psi), zero_potential(g), 1.0 / 16.0, 1), InvalidArgument);
}
