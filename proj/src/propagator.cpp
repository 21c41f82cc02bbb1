#include "circprop/propagator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "circprop/error.hpp"
#include "circprop/parallel.hpp"

namespace circprop {

namespace {

std::atomic<int> g_threads{1};

constexpr double kPi = std::numbers::pi;

double fold_time(double tau) {
    if (!std::isfinite(tau)) throw DomainError("propagator: time must be finite");
    double r = std::fmod(tau + 1.0, 2.0);
    if (r < 0.0) r += 2.0;
    return r - 1.0;
}

// exp(i 2 pi r / n) for r = 0..n-1
std::vector<Complex> roots_of_unity(std::int64_t n) {
    std::vector<Complex> t(static_cast<std::size_t>(n));
    for (std::int64_t r = 0; r < n; ++r) {
        const double a = 2.0 * kPi * static_cast<double>(r) / static_cast<double>(n);
        t[static_cast<std::size_t>(r)] = {std::cos(a), std::sin(a)};
    }
    return t;
}

Complex phase_of_fraction(__int128 num, __int128 den) {
    __int128 r = num % den;
    if (r < 0) r += den;
    if (2 * r > den) r -= den;
    const double a = 2.0 * kPi * static_cast<double>(r) / static_cast<double>(den);
    return {std::cos(a), std::sin(a)};
}

// kernel(dJ) = (1/N) sum_M c_M exp(i 2 pi M dJ / N)
std::vector<Complex> kernel_from_quadratic(const Grid& grid, const std::vector<Complex>& c) {
    const std::int64_t n = grid.size();
    const auto roots = roots_of_unity(n);
    std::vector<Complex> kernel(static_cast<std::size_t>(n));
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t slot) {
        const std::int64_t dj = grid.label(slot);
        Complex acc{0.0, 0.0};
        for (std::size_t ms = 0; ms < c.size(); ++ms) {
            const std::int64_t m = grid.label(ms);
            std::int64_t r = (m * dj) % n;
            if (r < 0) r += n;
            acc += c[ms] * roots[static_cast<std::size_t>(r)];
        }
        kernel[slot] = acc / static_cast<double>(n);
    });
    return kernel;
}

std::int64_t sign_of(std::int64_t v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

std::string describe(const RationalTime& t) { return std::to_string(t.p()) + "/" + std::to_string(t.q()); }

void require_reduced(const RationalTime& t, const char* where) {
    if (!t.reduced() || std::gcd(t.p(), t.q()) != 1) {
        throw InvalidArgument(std::string(where) + ": time " + describe(t) + " is not in lowest terms");
    }
}

}  // namespace

void set_thread_count(int n) { g_threads.store(std::max(1, n)); }
int thread_count() { return g_threads.load(); }

RationalTime RationalTime::make(std::int64_t p, std::int64_t q) {
    if (q == 0) throw InvalidArgument("rational time: zero denominator");
    if (q < 0) {
        p = -p;
        q = -q;
    }
    const std::int64_t g = std::gcd(p, q);
    p /= g;
    q /= g;
    // fold p/q into [-1, 1)
    std::int64_t r = (p + q) % (2 * q);
    if (r < 0) r += 2 * q;
    return RationalTime(r - q, q, true);
}

RationalTime RationalTime::unreduced(std::int64_t p, std::int64_t q) {
    if (q <= 0) throw InvalidArgument("rational time: denominator must be positive");
    return RationalTime(p, q, false);
}

// ---------------------------------------------------------------------------

PropagatorMatrix::PropagatorMatrix(Grid grid, double time, std::vector<Complex> kernel, PropagatorKind kind)
    : grid_(grid), time_(time), kernel_(std::move(kernel)), kind_(kind) {
    if (static_cast<std::int64_t>(kernel_.size()) != grid_.size()) {
        throw InvalidArgument("propagator: kernel length does not match grid");
    }
}

Complex PropagatorMatrix::operator()(std::int64_t j_to, std::int64_t j_from) const {
    return kernel(j_to - j_from);
}

Complex PropagatorMatrix::kernel(std::int64_t dj) const { return kernel_[grid_.slot(grid_.wrap(dj))]; }

std::vector<Complex> PropagatorMatrix::dense() const {
    const std::int64_t n = grid_.size();
    std::vector<Complex> out(static_cast<std::size_t>(n * n));
    for (std::int64_t a = 0; a < n; ++a) {
        for (std::int64_t b = 0; b < n; ++b) {
            out[static_cast<std::size_t>(a * n + b)] = (*this)(grid_.label(static_cast<std::size_t>(a)),
                                                                grid_.label(static_cast<std::size_t>(b)));
        }
    }
    return out;
}

Wavefunction PropagatorMatrix::apply(const Wavefunction& psi) const {
    if (psi.grid() != grid_) throw InvalidArgument("propagator: wavefunction grid mismatch");
    if (psi.basis() != Basis::position) throw InvalidArgument("propagator: wavefunction must be in position basis");
    auto out = Wavefunction::zeros(grid_);
    const std::int64_t n = grid_.size();
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t a) {
        const std::int64_t j_to = grid_.label(a);
        Complex acc{0.0, 0.0};
        for (std::int64_t b = 0; b < n; ++b) {
            const std::int64_t j_from = grid_.label(static_cast<std::size_t>(b));
            acc += kernel(j_to - j_from) * psi.amps()[static_cast<std::size_t>(b)];
        }
        out.amps()[a] = acc;
    });
    return out;
}

PropagatorMatrix PropagatorMatrix::conj() const {
    std::vector<Complex> k(kernel_.size());
    std::transform(kernel_.begin(), kernel_.end(), k.begin(), [](Complex z) { return std::conj(z); });
    return {grid_, -time_, std::move(k), kind_};
}

double PropagatorMatrix::unitarity_defect() const {
    // <row_a, row_b> = sum_J conj(D(a - J)) D(b - J) depends only on b - a.
    const std::int64_t n = grid_.size();
    double worst = 0.0;
    for (std::int64_t lag = 0; lag < n; ++lag) {
        Complex acc{0.0, 0.0};
        for (std::int64_t j = 0; j < n; ++j) acc += std::conj(kernel(-j)) * kernel(lag - j);
        const double target = lag == 0 ? 1.0 : 0.0;
        worst = std::max(worst, std::abs(acc - target));
    }
    return worst;
}

PropagatorMatrix operator*(const PropagatorMatrix& lhs, const PropagatorMatrix& rhs) {
    if (lhs.grid() != rhs.grid()) throw InvalidArgument("propagator product: grid mismatch");
    const Grid& g = lhs.grid();
    const std::int64_t n = g.size();
    std::vector<Complex> k(static_cast<std::size_t>(n));
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t slot) {
        const std::int64_t dj = g.label(slot);
        Complex acc{0.0, 0.0};
        for (std::int64_t m = g.min_index(); m <= g.max_index(); ++m) acc += lhs.kernel(dj - m) * rhs.kernel(m);
        k[slot] = acc;
    });
    return {g, fold_time(lhs.time() + rhs.time()), std::move(k), PropagatorKind::composed};
}

PropagatorMatrix power(const PropagatorMatrix& d, std::int64_t exponent) {
    if (exponent < 0) return power(d.conj(), -exponent);
    const std::int64_t n = d.grid().size();
    std::vector<Complex> id(static_cast<std::size_t>(n));
    id[d.grid().slot(0)] = 1.0;
    PropagatorMatrix result(d.grid(), 0.0, std::move(id), PropagatorKind::composed);
    PropagatorMatrix base = d;
    while (exponent > 0) {
        if (exponent & 1) result = result * base;
        exponent >>= 1;
        if (exponent) base = base * base;
    }
    return result;
}

PropagatorMatrix direct_propagator(const Grid& grid, double tau) {
    const double t = fold_time(tau);
    std::vector<Complex> c(static_cast<std::size_t>(grid.size()));
    for (std::size_t s = 0; s < c.size(); ++s) {
        const double m = static_cast<double>(grid.label(s));
        const double a = -kPi * std::fmod(m * m * t, 2.0);
        c[s] = {std::cos(a), std::sin(a)};
    }
    return {grid, t, kernel_from_quadratic(grid, c), PropagatorKind::direct};
}

PropagatorMatrix direct_propagator(const Grid& grid, const RationalTime& t) {
    std::vector<Complex> c(static_cast<std::size_t>(grid.size()));
    const __int128 den = 2 * static_cast<__int128>(t.q());
    for (std::size_t s = 0; s < c.size(); ++s) {
        const __int128 m = grid.label(s);
        // exp(-i pi p M^2 / q) = exp(i 2 pi (-p M^2) / (2q))
        c[s] = phase_of_fraction(-static_cast<__int128>(t.p()) * m * m, den);
    }
    return {grid, fold_time(t.value()), kernel_from_quadratic(grid, c), PropagatorKind::direct};
}

namespace detail {

std::vector<Complex> direct_propagator_full(const Grid& grid, double tau) {
    const std::int64_t n = grid.size();
    const double t = fold_time(tau);
    std::vector<Complex> out(static_cast<std::size_t>(n * n));
    for (std::int64_t a = 0; a < n; ++a) {
        const std::int64_t j_to = grid.label(static_cast<std::size_t>(a));
        for (std::int64_t b = 0; b < n; ++b) {
            const std::int64_t j_from = grid.label(static_cast<std::size_t>(b));
            Complex acc{0.0, 0.0};
            for (std::int64_t m = grid.min_index(); m <= grid.max_index(); ++m) {
                const double md = static_cast<double>(m);
                const double arg = -kPi * md * md * t +
                                   2.0 * kPi * md * static_cast<double>(j_to - j_from) / static_cast<double>(n);
                acc += Complex(std::cos(arg), std::sin(arg));
            }
            out[static_cast<std::size_t>(a * n + b)] = acc / static_cast<double>(n);
        }
    }
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------

std::vector<Rational> allowed_displacements(const RationalTime& t) {
    require_reduced(t, "allowed_displacements");
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(2 * t.q()));
    for (std::int64_t n = -t.q(); n < t.q(); ++n) out.emplace_back(n, 2 * t.q());
    return out;
}

DisplacementSet physical_displacements(const RationalTime& t) {
    require_reduced(t, "physical_displacements");
    const std::int64_t q = t.q();
    DisplacementSet set{t, allowed_displacements(t), {}, 1.0 / std::sqrt(static_cast<double>(q)), {}, {}};
    // q even: even numerators; q odd: numerators with the parity of p
    const std::int64_t parity = (q % 2 == 0) ? 0 : ((t.p() % 2 + 2) % 2);
    for (std::int64_t n = -q; n < q; ++n) {
        if (((n % 2) + 2) % 2 == parity) set.physical.emplace_back(n, 2 * q);
    }
    for (const auto& dxi : set.physical) {
        if (std::abs(t.p()) == 1) {
            set.phases.push_back(conjectured_phase(dxi, t));
        } else {
            // no closed form for general p; take the phase of the direct sum
            set.phases.push_back(std::arg(numerics::gauss_sum_general(t.p(), q, dxi)));
        }
    }
    return set;
}

DisplacementSet classify_displacements(const RationalTime& t) {
    require_reduced(t, "classify_displacements");
    const std::int64_t q = t.q();
    DisplacementSet set{t, allowed_displacements(t), {}, 1.0 / std::sqrt(static_cast<double>(q)), {}, {}};
    const double threshold = static_cast<double>(q) * kPhysicalThresholdPerTerm;
    for (const auto& dxi : set.allowed) {
        // exp(-i phi_M) = exp(i 2 pi M dxi - i pi p M^2 / q); phase/(2 pi) over denominator 2 q b
        const __int128 a = dxi.numerator();
        const __int128 b = dxi.denominator();
        const __int128 den = 2 * static_cast<__int128>(q) * b;
        Complex sum{0.0, 0.0};
        for (std::int64_t m = -q; m < q; ++m) {
            const __int128 mm = m;
            sum += phase_of_fraction(2 * static_cast<__int128>(q) * mm * a - static_cast<__int128>(t.p()) * mm * mm * b,
                                     den);
        }
        if (std::abs(sum) > threshold) {
            set.physical.push_back(dxi);
            set.phases.push_back(std::arg(sum));
            set.magnitudes.push_back(std::abs(sum) / (2.0 * static_cast<double>(q)));
        }
    }
    return set;
}

double conjectured_phase(Rational delta_xi, const RationalTime& t) {
    require_reduced(t, "conjectured_phase");
    if (std::abs(t.p()) != 1) {
        throw DomainError("conjectured_phase: only defined for t = +-1/q, got " + describe(t));
    }
    if (boost::abs(delta_xi) > Rational(1, 2)) {
        throw DomainError("conjectured_phase: |delta_xi| must not exceed 1/2");
    }
    const std::int64_t q = t.q();
    // physical iff delta_xi = n/(2q) with n of the right parity
    const Rational scaled = delta_xi * Rational(2 * q);
    const std::int64_t parity = (q % 2 == 0) ? 0 : 1;
    if (scaled.denominator() != 1 || ((scaled.numerator() % 2) + 2) % 2 != parity) {
        throw DomainError("conjectured_phase: displacement is not physical at t = " + describe(t));
    }
    const double dxi = boost::rational_cast<double>(delta_xi);
    return static_cast<double>(sign_of(t.p())) * (kPi * dxi * dxi * static_cast<double>(q) - kPi / 4.0);
}

PropagatorMatrix exact_propagator(const Grid& grid, const RationalTime& t) {
    require_reduced(t, "exact_propagator");
    if (std::abs(t.p()) != 1) {
        throw DomainError("exact_propagator: closed form needs t = +-1/q, got " + describe(t));
    }
    const std::int64_t n = grid.size();
    if (n % t.q() != 0) {
        throw InvalidArgument("exact_propagator: q = " + std::to_string(t.q()) + " does not divide N = " +
                              std::to_string(n));
    }
    const auto set = physical_displacements(t);
    std::vector<Complex> kernel(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < set.physical.size(); ++i) {
        const Rational dj_exact = set.physical[i] * Rational(n);
        // q | N puts every physical displacement on the lattice
        const std::int64_t dj = grid.wrap(dj_exact.numerator());
        kernel[grid.slot(dj)] = std::polar(set.amplitude, set.phases[i]);
    }
    return {grid, t.value(), std::move(kernel), PropagatorKind::exact_rational};
}

std::vector<Complex> mixed_propagator(const Grid& grid, const RationalTime& t, double x_over_L) {
    const std::int64_t n = grid.size();
    const double prefactor = 1.0 / std::sqrt(grid.length() * static_cast<double>(n));
    const __int128 den = 2 * static_cast<__int128>(t.q());
    std::vector<Complex> out(static_cast<std::size_t>(n));
    for (std::size_t a = 0; a < out.size(); ++a) {
        const double xi_to = grid.xi(grid.label(a));
        Complex acc{0.0, 0.0};
        for (std::int64_t m = grid.min_index(); m <= grid.max_index(); ++m) {
            const __int128 mm = m;
            const Complex quad = phase_of_fraction(-static_cast<__int128>(t.p()) * mm * mm, den);
            const double lin = 2.0 * kPi * static_cast<double>(m) * (xi_to - x_over_L);
            acc += quad * Complex(std::cos(lin), std::sin(lin));
        }
        out[a] = acc * prefactor;
    }
    return out;
}

std::vector<PeakScalingRow> peak_scaling_check(std::int64_t q, std::span<const std::int64_t> n_list, double length) {
    if (q < 1) throw InvalidArgument("peak_scaling_check: q must be positive");
    const auto t = RationalTime::make(1, q);
    std::vector<PeakScalingRow> rows;
    for (const std::int64_t n : n_list) {
        if (n % q != 0) {
            throw InvalidArgument("peak_scaling_check: N = " + std::to_string(n) + " is not a multiple of q = " +
                                  std::to_string(q));
        }
        const auto grid = Grid::from_sites(n, length);
        const auto mixed = mixed_propagator(grid, t, 0.0);
        double peak = 0.0;
        for (const auto& z : mixed) peak = std::max(peak, std::abs(z));
        const double expected = std::sqrt(static_cast<double>(n) / (length * static_cast<double>(q)));
        rows.push_back({n, peak, peak / expected});
    }
    return rows;
}

}  // namespace circprop
