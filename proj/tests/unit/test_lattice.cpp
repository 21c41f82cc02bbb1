#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "circprop/error.hpp"
#include "circprop/lattice.hpp"

using namespace circprop;

namespace {

constexpr double pi = std::numbers::pi;

Wavefunction random_state(const Grid& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    auto psi = Wavefunction::zeros(g);
    for (auto& a : psi.amps()) a = Complex(nd(rng), nd(rng));
    psi.normalize();
    return psi;
}

// plain O(N^2) sum over centred labels, independent of the library
std::vector<Complex> oracle_forward(const Wavefunction& psi) {
    const auto& g = psi.grid();
    const auto n = g.size();
    std::vector<Complex> out(static_cast<std::size_t>(n));
    for (std::int64_t m = g.min_index(); m <= g.max_index(); ++m) {
        Complex acc = 0;
        for (std::int64_t j = g.min_index(); j <= g.max_index(); ++j) {
            const std::int64_t r = ((m * j) % n + n) % n;
            acc += psi.at(j) * std::polar(1.0, -2.0 * pi * static_cast<double>(r) / static_cast<double>(n));
        }
        out[g.slot(m)] = acc / std::sqrt(static_cast<double>(n));
    }
    return out;
}

double max_diff(std::span<const Complex> a, std::span<const Complex> b) {
    double d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

}  // namespace

TEST_CASE("grid construction and labels") {
    const auto g = Grid::from_qubits(3);
    CHECK(g.size() == 8);
    CHECK(g.min_index() == -4);
    CHECK(g.max_index() == 3);
    CHECK(g.is_power_of_two());
    CHECK(g.label(0) == -4);
    CHECK(g.slot(-4) == 0);
    CHECK(g.xi(2) == 0.25);
    CHECK(g.wrap(4) == -4);
    CHECK(g.wrap(-5) == 3);
    CHECK(g.wrap(17) == 1);
    CHECK_FALSE(Grid::from_sites(6).is_power_of_two());
    CHECK(Grid::from_sites(10, 2.0).spacing() == doctest::Approx(0.2));

    CHECK_THROWS_AS(Grid::from_sites(7), InvalidArgument);
    CHECK_THROWS_AS(Grid::from_sites(0), InvalidArgument);
    CHECK_THROWS_AS(Grid::from_sites(4, -1.0), InvalidArgument);
    CHECK_THROWS_AS(Grid::from_qubits(0), InvalidArgument);
    CHECK_THROWS_AS(Grid::from_qubits(31), InvalidArgument);
}

TEST_CASE("momentum index map round-trips") {
    for (std::int64_t n : {2, 6, 16}) {
        const MomentumIndexMap map(Grid::from_sites(n));
        for (std::int64_t k = 0; k < n; ++k) CHECK(map.register_index(map.momentum(k)) == k);
        for (std::int64_t m = -n / 2; m < n / 2; ++m) CHECK(map.momentum(map.register_index(m)) == m);
    }
    const MomentumIndexMap map(Grid::from_sites(8));
    CHECK(map.momentum(3) == 3);
    CHECK(map.momentum(4) == -4);
    CHECK(map.momentum(7) == -1);
}

TEST_CASE("wavefunction basics") {
    const auto g = Grid::from_sites(4);
    CHECK_THROWS_AS(Wavefunction(g, std::vector<Complex>(3)), InvalidArgument);
    auto z = Wavefunction::zeros(g);
    CHECK_THROWS_AS(z.normalize(), DomainError);
    Wavefunction psi(g, {1, 1, 1, 1});
    CHECK(psi.norm_squared() == doctest::Approx(4.0));
    psi.normalize();
    CHECK(psi.norm() == doctest::Approx(1.0));
    CHECK(psi.density()[2] == doctest::Approx(0.25));
}

TEST_CASE("delta and plane wave transforms") {
    const auto g = Grid::from_sites(16);
    auto delta = Wavefunction::zeros(g);
    delta.at(0) = 1.0;
    const auto f = dft_forward(delta);
    CHECK(f.basis() == Basis::momentum);
    for (const auto& a : f.amps()) CHECK(std::abs(a - Complex(0.25, 0.0)) < 1e-15);

    const std::int64_t m0 = 3;
    auto plane = Wavefunction::zeros(g);
    for (std::int64_t j = g.min_index(); j <= g.max_index(); ++j) {
        plane.at(j) = std::polar(0.25, 2.0 * pi * static_cast<double>(m0 * j) / 16.0);
    }
    const auto p = dft_forward(plane);
    for (std::int64_t m = g.min_index(); m <= g.max_index(); ++m) {
        CHECK(std::abs(p.at(m) - Complex(m == m0 ? 1.0 : 0.0, 0.0)) < 1e-14);
    }
    CHECK_THROWS_AS(dft_inverse(delta), InvalidArgument);
    CHECK_THROWS_AS(dft_forward(f), InvalidArgument);
}

TEST_CASE("fast transform matches the direct sum") {
    for (std::int64_t n = 2; n <= 4096; n *= 2) {
        const auto g = Grid::from_sites(n);
        const auto psi = random_state(g, static_cast<std::uint64_t>(n));
        CAPTURE(n);
        CHECK(max_diff(detail::centred_dft_fast(psi.amps(), -1), detail::centred_dft_direct(psi.amps(), -1)) < 1e-11);
        CHECK(max_diff(detail::centred_dft_fast(psi.amps(), +1), detail::centred_dft_direct(psi.amps(), +1)) < 1e-11);
        if (n <= 512) {
            const auto ref = oracle_forward(psi);
            CHECK(max_diff(dft_forward(psi).amps(), ref) < 1e-11);
        }
    }
    for (std::int64_t n : {6, 10, 12, 120}) {
        const auto g = Grid::from_sites(n);
        const auto psi = random_state(g, 7);
        CAPTURE(n);
        CHECK(max_diff(dft_forward(psi).amps(), oracle_forward(psi)) < 1e-12);
    }
}

TEST_CASE("unitarity and round trip") {
    for (std::int64_t n : {2, 6, 64, 120, 1000, 1 << 14}) {
        const auto g = Grid::from_sites(n);
        const auto psi = random_state(g, 11);
        const auto f = dft_forward(psi);
        CAPTURE(n);
        CHECK(std::abs(f.norm() - psi.norm()) < 1e-12);
        if (n <= 4096) CHECK(max_diff(dft_inverse(f).amps(), psi.amps()) < 1e-12);
    }
}
