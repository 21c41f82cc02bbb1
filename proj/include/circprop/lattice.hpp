#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "circprop/numerics.hpp"

namespace circprop {

/// N equally spaced sites on a circle of length L, labelled by the centred
/// index J in {-N/2, ..., N/2 - 1}. Storage index is J + N/2.
class Grid {
public:
    /// Throws InvalidArgument for odd or non-positive N, or L <= 0.
    static Grid from_sites(std::int64_t n_sites, double length = 1.0);
    /// N = 2^n_qubits.
    static Grid from_qubits(int n_qubits, double length = 1.0);

    std::int64_t size() const { return n_; }
    double length() const { return length_; }
    double spacing() const { return length_ / static_cast<double>(n_); }
    bool is_power_of_two() const { return (n_ & (n_ - 1)) == 0; }

    std::int64_t min_index() const { return -n_ / 2; }
    std::int64_t max_index() const { return n_ / 2 - 1; }

    /// Centred label of storage slot i.
    std::int64_t label(std::size_t i) const { return static_cast<std::int64_t>(i) - n_ / 2; }
    std::size_t slot(std::int64_t label) const { return static_cast<std::size_t>(label + n_ / 2); }

    /// Wraps any integer onto the centred range.
    std::int64_t wrap(std::int64_t j) const;

    /// x_J / L = J / N
    double xi(std::int64_t j) const { return static_cast<double>(j) / static_cast<double>(n_); }
    double position(std::int64_t j) const { return length_ * xi(j); }

    bool operator==(const Grid&) const = default;

private:
    Grid(std::int64_t n, double length) : n_(n), length_(length) {}
    std::int64_t n_;
    double length_;
};

/// Bijection between the register index k in {0, ..., N-1} and the centred
/// momentum label M in {-N/2, ..., N/2 - 1}: M = k for k < N/2, k - N otherwise.
class MomentumIndexMap {
public:
    explicit MomentumIndexMap(Grid grid) : grid_(grid) {}
    std::int64_t momentum(std::int64_t k) const;
    std::int64_t register_index(std::int64_t m) const;

private:
    Grid grid_;
};

enum class Basis { position, momentum };

/// N complex amplitudes on a grid, stored by slot (label + N/2) in either basis.
class Wavefunction {
public:
    Wavefunction(Grid grid, std::vector<Complex> amps, Basis basis = Basis::position);
    static Wavefunction zeros(Grid grid, Basis basis = Basis::position);

    const Grid& grid() const { return grid_; }
    Basis basis() const { return basis_; }
    std::span<const Complex> amps() const { return amps_; }
    std::span<Complex> amps() { return amps_; }

    Complex at(std::int64_t label) const { return amps_[grid_.slot(label)]; }
    Complex& at(std::int64_t label) { return amps_[grid_.slot(label)]; }

    double norm_squared() const;
    double norm() const;
    /// Scales to unit norm; throws DomainError for the zero vector.
    void normalize();
    std::vector<double> density() const;

private:
    Grid grid_;
    std::vector<Complex> amps_;
    Basis basis_;
};

/// F_M = N^{-1/2} sum_J f_J exp(-i 2 pi M J / N) over centred labels.
/// Radix-2 for power-of-two N, direct summation otherwise.
Wavefunction dft_forward(const Wavefunction& psi);
/// f_J = N^{-1/2} sum_M F_M exp(+i 2 pi M J / N)
Wavefunction dft_inverse(const Wavefunction& psi);

namespace detail {
/// Centred-label transform on raw slot-ordered data; sign = -1 forward, +1 inverse.
std::vector<Complex> centred_dft_direct(std::span<const Complex> in, int sign);
std::vector<Complex> centred_dft_fast(std::span<const Complex> in, int sign);
}  // namespace detail

}  // namespace circprop
