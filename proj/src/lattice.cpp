#include "circprop/lattice.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "circprop/error.hpp"

namespace circprop {

Grid Grid::from_sites(std::int64_t n_sites, double length) {
    if (n_sites < 2 || n_sites % 2 != 0) {
        throw InvalidArgument("grid: number of sites must be even and >= 2, got " + std::to_string(n_sites));
    }
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw InvalidArgument("grid: length must be positive");
    }
    return Grid(n_sites, length);
}

Grid Grid::from_qubits(int n_qubits, double length) {
    if (n_qubits < 1 || n_qubits > 30) {
        throw InvalidArgument("grid: number of qubits must be in [1, 30], got " + std::to_string(n_qubits));
    }
    return from_sites(std::int64_t{1} << n_qubits, length);
}

std::int64_t Grid::wrap(std::int64_t j) const {
    std::int64_t r = (j + n_ / 2) % n_;
    if (r < 0) r += n_;
    return r - n_ / 2;
}

std::int64_t MomentumIndexMap::momentum(std::int64_t k) const {
    const std::int64_t n = grid_.size();
    if (k < 0 || k >= n) throw InvalidArgument("momentum index out of range");
    return k < n / 2 ? k : k - n;
}

std::int64_t MomentumIndexMap::register_index(std::int64_t m) const {
    const std::int64_t n = grid_.size();
    if (m < -n / 2 || m >= n / 2) throw InvalidArgument("momentum label out of range");
    return m >= 0 ? m : m + n;
}

Wavefunction::Wavefunction(Grid grid, std::vector<Complex> amps, Basis basis)
    : grid_(grid), amps_(std::move(amps)), basis_(basis) {
    if (static_cast<std::int64_t>(amps_.size()) != grid_.size()) {
        throw InvalidArgument("wavefunction: " + std::to_string(amps_.size()) + " amplitudes for a grid of " +
                              std::to_string(grid_.size()) + " sites");
    }
}

Wavefunction Wavefunction::zeros(Grid grid, Basis basis) {
    return Wavefunction(grid, std::vector<Complex>(static_cast<std::size_t>(grid.size())), basis);
}

double Wavefunction::norm_squared() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
}

double Wavefunction::norm() const { return std::sqrt(norm_squared()); }

void Wavefunction::normalize() {
    const double n = norm();
    if (!(n > 0.0)) throw DomainError("wavefunction: cannot normalize the zero vector");
    for (auto& a : amps_) a /= n;
}

std::vector<double> Wavefunction::density() const {
    std::vector<double> out(amps_.size());
    for (std::size_t i = 0; i < amps_.size(); ++i) out[i] = std::norm(amps_[i]);
    return out;
}

namespace detail {

std::vector<Complex> centred_dft_direct(std::span<const Complex> in, int sign) {
    const std::int64_t n = static_cast<std::int64_t>(in.size());
    // exp(sign * i 2 pi r / n) for r = 0..n-1
    std::vector<Complex> table(static_cast<std::size_t>(n));
    for (std::int64_t r = 0; r < n; ++r) {
        const double a = sign * 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
        table[static_cast<std::size_t>(r)] = {std::cos(a), std::sin(a)};
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<Complex> out(static_cast<std::size_t>(n));
    for (std::int64_t a = 0; a < n; ++a) {
        const std::int64_t m = a - n / 2;
        Complex acc{0.0, 0.0};
        for (std::int64_t b = 0; b < n; ++b) {
            const std::int64_t j = b - n / 2;
            std::int64_t r = (m * j) % n;
            if (r < 0) r += n;
            acc += in[static_cast<std::size_t>(b)] * table[static_cast<std::size_t>(r)];
        }
        out[static_cast<std::size_t>(a)] = acc * scale;
    }
    return out;
}

namespace {

void fft_radix2(std::vector<Complex>& a, int sign) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    std::vector<Complex> twiddle(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
        const double ang = sign * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        twiddle[k] = {std::cos(ang), std::sin(ang)};
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const Complex u = a[i + k];
                const Complex v = a[i + k + len / 2] * twiddle[k * stride];
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
}

}  // namespace

// With J = j - N/2 and M = m - N/2 the centred kernel factorises as
// exp(s i 2pi mj/N) (-1)^m (-1)^j (-1)^{N/2}.
std::vector<Complex> centred_dft_fast(std::span<const Complex> in, int sign) {
    const std::size_t n = in.size();
    std::vector<Complex> a(in.begin(), in.end());
    for (std::size_t j = 1; j < n; j += 2) a[j] = -a[j];
    fft_radix2(a, sign);
    const double scale = ((n / 2) % 2 == 0 ? 1.0 : -1.0) / std::sqrt(static_cast<double>(n));
    for (std::size_t m = 0; m < n; ++m) a[m] *= (m % 2 == 0) ? scale : -scale;
    return a;
}

}  // namespace detail

namespace {

Wavefunction transform(const Wavefunction& psi, int sign, Basis out_basis) {
    const Grid& g = psi.grid();
    auto out = g.is_power_of_two() ? detail::centred_dft_fast(psi.amps(), sign)
                                   : detail::centred_dft_direct(psi.amps(), sign);
    return Wavefunction(g, std::move(out), out_basis);
}

}  // namespace

Wavefunction dft_forward(const Wavefunction& psi) {
    if (psi.basis() != Basis::position) throw InvalidArgument("dft_forward: input must be in position basis");
    return transform(psi, -1, Basis::momentum);
}

Wavefunction dft_inverse(const Wavefunction& psi) {
    if (psi.basis() != Basis::momentum) throw InvalidArgument("dft_inverse: input must be in momentum basis");
    return transform(psi, +1, Basis::position);
}

}  // namespace circprop
