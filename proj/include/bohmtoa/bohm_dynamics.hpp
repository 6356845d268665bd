#pragma once

// Bohmian guidance in the evolving squeezed vacuum. With T = tanh(2r) and
// theta = 2 omega t - phi, every trajectory is a rescaling of its initial
// point,
//   q(t) = q0 sqrt(f(theta) / f(-phi)),   f(theta) = 1 - T cos(theta),
// so positions keep their sign and the flow has period pi / omega.

#include <span>
#include <utility>
#include <vector>

#include "bohmtoa/gaussian_states.hpp"
#include "bohmtoa/numerics.hpp"
#include "bohmtoa/symplectic.hpp"

namespace bohmtoa {

// 1 - tanh(2r) cos(theta), evaluated as (1 - T) + 2 T sin^2(theta / 2) so it
// stays accurate when tanh(2r) rounds to 1.
double width_profile(double r, double theta);

// 1 - tanh(2r) without cancellation.
double one_minus_tanh2r(double r);

struct PhasePoint {
    double q = 0.0;
    double qdot = 0.0;
    double t = 0.0;
};

// qdot = omega T sin(theta) / (1 - T cos(theta)) * q
double bohm_velocity(double q, double t, const SqueezeParams& squeeze, const OscillatorConfig& cfg);

// Guidance equation applied to a Gaussian pilot wave: (hbar/m) Im(d_x Psi / Psi)
// = -(hbar/m) Im(S) q.
double velocity_from_state(const GaussianState& state, double q, const OscillatorConfig& cfg);

double trajectory(double q0, double t, const SqueezeParams& squeeze, const OscillatorConfig& cfg);

PhasePoint phase_point(double q0, double t, const SqueezeParams& squeeze, const OscillatorConfig& cfg);

// Numerical integration of bohm_velocity from q(t_grid[0]) = q0. The grid must
// start at 0 and be non-decreasing.
std::vector<double> trajectory_ode_oracle(double q0, std::span<const double> t_grid,
                                          const SqueezeParams& squeeze, const OscillatorConfig& cfg,
                                          numerics::OdeTolerance tol = {});

struct TrajectoryExtrema {
    double q_min = 0.0;
    double q_max = 0.0;
};

// Range of positions visited by the trajectory through q0. For q0 < 0 the
// mirrored values are returned, so q_min <= q0 <= q_max always holds.
TrajectoryExtrema trajectory_extrema(double q0, const SqueezeParams& squeeze);

struct ForbiddenRegion {
    double slope_plus = 0.0;
    double slope_minus = 0.0;
};

// Lines qdot = +/- 2 omega sinh(2r) q bounding the visited phase-space wedge.
ForbiddenRegion forbidden_region_slopes(const SqueezeParams& squeeze, const OscillatorConfig& cfg);

// r -> infinity limit q0 |sin(omega t - phi/2) / sin(phi/2)|; throws
// SingularLimitError at phi = 0.
double limit_trajectory_r_infinity(double q0, double t, double phi, const OscillatorConfig& cfg);

}  // namespace bohmtoa
