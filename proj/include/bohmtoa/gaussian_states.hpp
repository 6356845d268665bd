#pragma once

// Squeezed vacuum in the position representation,
//   Psi(x) = N exp(-S x^2 / 2),
// obtained by letting the metaplectic image of a symplectic matrix act on the
// oscillator ground state.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "bohmtoa/symplectic.hpp"

namespace bohmtoa {

class GaussianState {
public:
    // Throws std::invalid_argument unless Re(width) > 0.
    GaussianState(std::complex<double> amplitude, std::complex<double> width);

    std::complex<double> amplitude() const noexcept { return amplitude_; }
    std::complex<double> width() const noexcept { return width_; }

    // Position variance of |Psi|^2, 1 / (2 Re S).
    double variance() const noexcept { return 0.5 / width_.real(); }

    std::complex<double> operator()(double x) const;

private:
    std::complex<double> amplitude_;
    std::complex<double> width_;
};

GaussianState vacuum_state(const OscillatorConfig& cfg);

// Closed-form image of the vacuum under the metaplectic operator of m. The
// global phase follows the principal branch of the complex square root.
GaussianState state_from_matrix(const Symplectic2& m, const OscillatorConfig& cfg);

// Squeezed state evolved for time t: state_from_matrix(M_H(t) M(xi)).
GaussianState evolved_state(const SqueezeParams& params, double t, const OscillatorConfig& cfg);

// |Psi(x)|^2 = |N|^2 exp(-Re(S) x^2)
double density(const GaussianState& state, double x);

struct IntegralRepCheck {
    double max_abs_error = 0.0;
    // Largest quadrature error estimate among the sampled points.
    double achieved_tolerance = 0.0;
};

// Evaluates the oscillatory kernel integral of the unitary representation
// applied to the vacuum at each x and compares it with the closed form, after
// fitting one global unit-modulus phase at x = 0. Requires B != 0.
IntegralRepCheck verify_against_integral_rep(const Symplectic2& m, const OscillatorConfig& cfg,
                                             std::span<const double> x_samples);

// n thermal-equilibrium draws from |Psi|^2 (a centred normal of variance
// 1 / (2 Re S)); draw k uses counter k of the stream (seed, 0).
std::vector<double> sample_initial_conditions(const GaussianState& state, std::size_t n,
                                              std::uint64_t seed);

}  // namespace bohmtoa
