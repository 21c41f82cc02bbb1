#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "circprop/lattice.hpp"
#include "circprop/numerics.hpp"

namespace circprop {

/// Simulation time p/q. make() reduces to lowest terms and folds into
/// [-1, 1) using the period 2 of free evolution. Floats are never snapped to
/// rationals; a RationalTime only comes from integer input.
class RationalTime {
public:
    static RationalTime make(std::int64_t p, std::int64_t q);
    /// Keeps (p, q) as given, so coprimality preconditions can be exercised.
    static RationalTime unreduced(std::int64_t p, std::int64_t q);

    std::int64_t p() const { return p_; }
    std::int64_t q() const { return q_; }
    bool reduced() const { return reduced_; }
    double value() const { return static_cast<double>(p_) / static_cast<double>(q_); }
    Rational as_rational() const { return {p_, q_}; }

    bool operator==(const RationalTime&) const = default;

private:
    RationalTime(std::int64_t p, std::int64_t q, bool reduced) : p_(p), q_(q), reduced_(reduced) {}
    std::int64_t p_;
    std::int64_t q_;
    bool reduced_;
};

/// Allowed and physical displacements at a rational time. Phases follow the
/// propagator convention: D(delta_xi) = amplitude * exp(i * phase).
struct DisplacementSet {
    RationalTime time;
    std::vector<Rational> allowed;
    std::vector<Rational> physical;
    double amplitude = 0.0;
    std::vector<double> phases;
    /// |D| at each physical point; only filled by classify_displacements
    std::vector<double> magnitudes;
};

enum class PropagatorKind { direct, exact_rational, composed };

/// Free propagator D_J^{J'} on an N-site circle. The matrix is circulant, so
/// only the kernel D(dJ), dJ = J' - J wrapped onto the grid, is stored.
class PropagatorMatrix {
public:
    PropagatorMatrix(Grid grid, double time, std::vector<Complex> kernel, PropagatorKind kind);

    const Grid& grid() const { return grid_; }
    double time() const { return time_; }
    PropagatorKind kind() const { return kind_; }

    /// Entry for arrival site j_to and departure site j_from.
    Complex operator()(std::int64_t j_to, std::int64_t j_from) const;
    Complex kernel(std::int64_t dj) const;
    /// Kernel by slot, slot = dJ + N/2.
    std::span<const Complex> kernel() const { return kernel_; }

    /// Row-major N x N materialisation (row = arrival slot).
    std::vector<Complex> dense() const;

    Wavefunction apply(const Wavefunction& psi) const;
    PropagatorMatrix conj() const;

    /// max over rows a, b of |<row_a, row_b> - delta_ab|
    double unitarity_defect() const;

private:
    Grid grid_;
    double time_;
    std::vector<Complex> kernel_;
    PropagatorKind kind_;
};

/// Matrix product; the result represents evolution by the summed times.
PropagatorMatrix operator*(const PropagatorMatrix& lhs, const PropagatorMatrix& rhs);
PropagatorMatrix power(const PropagatorMatrix& d, std::int64_t exponent);

/// D(dJ) = (1/N) sum_M exp(-i pi M^2 tau + i 2 pi M dJ / N), tau folded into [-1, 1).
PropagatorMatrix direct_propagator(const Grid& grid, double tau);
/// Same sum with the quadratic phase reduced in exact integer arithmetic.
PropagatorMatrix direct_propagator(const Grid& grid, const RationalTime& t);

/// {-q, ..., q-1} / (2q)
std::vector<Rational> allowed_displacements(const RationalTime& t);

/// Closed-form physical set: numerators n in [-q, q-1] of n/(2q) that are even
/// for even q, and of the parity of p for odd q. Exactly q entries.
DisplacementSet physical_displacements(const RationalTime& t);

/// Interference oracle: sums exp(-i phi_M), phi_M = -2 pi M (dxi - M t / 2),
/// over M in [-q, q-1] and keeps allowed points with |sum| > q * 1e-9.
DisplacementSet classify_displacements(const RationalTime& t);

inline constexpr double kPhysicalThresholdPerTerm = 1e-9;

/// sign(t) (pi dxi^2 / |t| - pi/4) for t = +-1/q. Throws DomainError when dxi
/// is not physical or |p| != 1.
double conjectured_phase(Rational delta_xi, const RationalTime& t);

/// Closed-form propagator at t = +-1/q with q dividing N: magnitude 1/sqrt(q)
/// on the q physical displacements, phase from conjectured_phase.
PropagatorMatrix exact_propagator(const Grid& grid, const RationalTime& t);

/// <J'| exp(-i K t) |x> for all J', continuum departure point x = x_over_L * L.
std::vector<Complex> mixed_propagator(const Grid& grid, const RationalTime& t, double x_over_L);

struct PeakScalingRow {
    std::int64_t n_sites;
    double peak;   ///< max_J' |<J'| exp(-iKt) |x_0>|
    double ratio;  ///< peak / sqrt(N / (L q))
};

/// Peak growth of the mixed propagator at t = 1/q; every N must be a multiple of q.
std::vector<PeakScalingRow> peak_scaling_check(std::int64_t q, std::span<const std::int64_t> n_list,
                                               double length = 1.0);

namespace detail {
/// Every entry summed independently; test oracle for the circulant build.
std::vector<Complex> direct_propagator_full(const Grid& grid, double tau);
}  // namespace detail

}  // namespace circprop
