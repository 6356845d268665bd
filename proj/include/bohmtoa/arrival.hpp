#pragma once

// Arrival of Bohmian particles at a detector placed at L > 0.
//
// Only initial conditions inside I_BSS = [q0_min, q0_max] ever reach L; for
// them the arrival time
//   t_oa = (phi + theta) / (2 omega),  theta in [0, pi],
// inverts the trajectory on its rising leg, so every arrival lies in
// [phi / (2 omega), (phi + pi) / (2 omega)] independently of r and L.
// r = 0 is a singular point of this inverse and is rejected.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "bohmtoa/numerics.hpp"
#include "bohmtoa/symplectic.hpp"

namespace bohmtoa {

class ArrivalSetup {
public:
    ArrivalSetup(double detector, SqueezeParams squeeze, OscillatorConfig cfg);

    double detector() const noexcept { return detector_; }
    const SqueezeParams& squeeze() const noexcept { return squeeze_; }
    const OscillatorConfig& cfg() const noexcept { return cfg_; }

    // Same squeeze and oscillator, detector moved to L.
    ArrivalSetup with_detector(double detector) const { return {detector, squeeze_, cfg_}; }

private:
    double detector_;
    SqueezeParams squeeze_;
    OscillatorConfig cfg_;
};

struct InitialConditionInterval {
    double q0_min = 0.0;
    double q0_max = 0.0;

    bool contains(double q0) const noexcept { return q0 >= q0_min && q0 <= q0_max; }
    double length() const noexcept { return q0_max - q0_min; }
};

InitialConditionInterval initial_condition_interval(const ArrivalSetup& setup);

// cos(phi_c) at which I_BSS is symmetric about L, i.e. q0_max - L = L - q0_min.
double critical_phase_cosine(double r);
// Principal-branch phi_c in (0, pi/2]; the reflected value 2 pi - phi_c
// plays the same role for phi > pi.
double critical_phase(double r);

// Throws DomainError outside I_BSS and SingularLimitError at r = 0.
double time_of_arrival(double q0, const ArrivalSetup& setup);

// std::nullopt: the trajectory never reaches L.
using FirstArrival = std::optional<double>;

FirstArrival first_arrival_piecewise(double q0, const ArrivalSetup& setup);

// Probability that a thermally distributed initial condition lies in I_BSS.
double detection_probability(const ArrivalSetup& setup);

// Time-of-arrival density on [t_min, t_max]. Internally the exponential is
// evaluated relative to its value at the late endpoint so that Z does not
// underflow for L >> l; z() itself may still underflow to 0, log_z() will not.
class ToaDistribution {
public:
    double t_min() const noexcept { return t_min_; }
    double t_max() const noexcept { return t_max_; }
    double z() const;
    double log_z() const noexcept { return log_z_; }

    // Normalized density; zero outside [t_min, t_max].
    double operator()(double tau) const;
    // The closed-form expression without the 1/Z factor.
    double unnormalized(double tau) const;

    // Most probable arrival time.
    double mode() const;
    // <t> = integral tau Pi(tau) dtau
    double mean() const;

    const ArrivalSetup& setup() const noexcept { return setup_; }

private:
    friend ToaDistribution toa_pdf(const ArrivalSetup& setup);
    explicit ToaDistribution(const ArrivalSetup& setup);

    double scaled(double tau) const;

    ArrivalSetup setup_;
    double t_min_ = 0.0;
    double t_max_ = 0.0;
    double shift_ = 0.0;
    double z_scaled_ = 1.0;
    double log_z_ = 0.0;
};

ToaDistribution toa_pdf(const ArrivalSetup& setup);

// Rebuilds Pi(tau) as |Psi(q0(tau))|^2 |dq0/dtau| from the t = 0 state and the
// inverse arrival map, normalizes it over I_BSS by quadrature in q0, and
// returns the largest deviation from toa_pdf over the given times.
double toa_pdf_changeofvar_oracle(const ArrivalSetup& setup, std::span<const double> tau_samples);

struct ToaMonteCarlo {
    numerics::Histogram histogram;
    std::size_t samples = 0;
    std::size_t accepted = 0;
    double accepted_fraction = 0.0;
    double expected_fraction = 0.0;
    double standard_error = 0.0;
};

// Thermal sampling of q0 (draw k from counter k of stream (seed, 0)),
// conditioned on q0 in I_BSS, histogrammed over [t_min, t_max].
ToaMonteCarlo toa_histogram_mc(const ArrivalSetup& setup, std::size_t n, std::uint64_t seed,
                               std::size_t bins = 32);

// Mean arrival time as a weighted average over q0 in I_BSS with weight
// |Psi(q0, 0)|^2.
double mean_toa(const ArrivalSetup& setup);

namespace detail {
// Number of initial_condition_interval evaluations on this thread.
std::uint64_t interval_evaluations() noexcept;
}  // namespace detail

}  // namespace bohmtoa
