#include "bohmtoa/bohm_dynamics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bohmtoa/error.hpp"

namespace bohmtoa {

double one_minus_tanh2r(double r) { return 2.0 / (std::exp(4.0 * r) + 1.0); }

double width_profile(double r, double theta) {
    const double s = std::sin(0.5 * theta);
    return one_minus_tanh2r(r) + 2.0 * std::tanh(2.0 * r) * s * s;
}

namespace {

double phase_angle(double t, const SqueezeParams& squeeze, const OscillatorConfig& cfg) {
    return 2.0 * cfg.omega() * t - squeeze.phi();
}

}  // namespace

double bohm_velocity(double q, double t, const SqueezeParams& squeeze, const OscillatorConfig& cfg) {
    const double theta = phase_angle(t, squeeze, cfg);
    const double tanh2r = std::tanh(2.0 * squeeze.r());
    return cfg.omega() * tanh2r * std::sin(theta) / width_profile(squeeze.r(), theta) * q;
}

double velocity_from_state(const GaussianState& state, double q, const OscillatorConfig& cfg) {
    return -(cfg.hbar() / cfg.mass()) * state.width().imag() * q;
}

double trajectory(double q0, double t, const SqueezeParams& squeeze, const OscillatorConfig& cfg) {
    if (!std::isfinite(q0) || !std::isfinite(t)) throw std::invalid_argument("trajectory: non-finite input");
    const double r = squeeze.r();
    return q0 * std::sqrt(width_profile(r, phase_angle(t, squeeze, cfg)) / width_profile(r, -squeeze.phi()));
}

PhasePoint phase_point(double q0, double t, const SqueezeParams& squeeze, const OscillatorConfig& cfg) {
    const double q = trajectory(q0, t, squeeze, cfg);
    return {q, bohm_velocity(q, t, squeeze, cfg), t};
}

std::vector<double> trajectory_ode_oracle(double q0, std::span<const double> t_grid,
                                          const SqueezeParams& squeeze, const OscillatorConfig& cfg,
                                          numerics::OdeTolerance tol) {
    if (!t_grid.empty() && t_grid.front() != 0.0) {
        throw std::invalid_argument("trajectory_ode_oracle: grid must start at t = 0");
    }
    auto field = [&](double q, double t) { return bohm_velocity(q, t, squeeze, cfg); };
    return numerics::solve_ode(field, q0, t_grid, tol);
}

TrajectoryExtrema trajectory_extrema(double q0, const SqueezeParams& squeeze) {
    const double r = squeeze.r();
    const double tanh2r = std::tanh(2.0 * r);
    const double start = width_profile(r, squeeze.phi());
    const double up = q0 * std::sqrt((1.0 + tanh2r) / start);
    const double down = q0 * std::sqrt(one_minus_tanh2r(r) / start);
    if (q0 >= 0.0) return {down, up};
    return {up, down};
}

ForbiddenRegion forbidden_region_slopes(const SqueezeParams& squeeze, const OscillatorConfig& cfg) {
    const double slope = 2.0 * cfg.omega() * std::sinh(2.0 * squeeze.r());
    return {slope, -slope};
}

double limit_trajectory_r_infinity(double q0, double t, double phi, const OscillatorConfig& cfg) {
    const double reduced = SqueezeParams(0.0, phi).phi();
    const double denom = std::sin(0.5 * reduced);
    if (denom == 0.0) {
        throw SingularLimitError("r -> infinity trajectory limit is singular at phi = 0");
    }
    return q0 * std::abs(std::sin(cfg.omega() * t - 0.5 * reduced) / denom);
}

}  // namespace bohmtoa
