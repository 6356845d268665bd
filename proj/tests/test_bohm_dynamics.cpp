#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "bohmtoa/bohm_dynamics.hpp"
#include "bohmtoa/error.hpp"
#include "bohmtoa/gaussian_states.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace bohmtoa;
using bohmtoa::testing::rel_err;

namespace {

constexpr double kPi = std::numbers::pi;
const OscillatorConfig unit_cfg(1.0, 0.5, 1.0);

std::vector<double> uniform_grid(double span, int steps) {
    std::vector<double> g(steps + 1);
    for (int k = 0; k <= steps; ++k) g[k] = span * k / steps;
    return g;
}

}  // namespace

TEST_CASE("bohm_velocity examples") {
    const SqueezeParams sq(0.8, 1.2);
    CHECK(bohm_velocity(2.5, sq.phi() / (2.0 * unit_cfg.omega()), sq, unit_cfg) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(bohm_velocity(0.0, 1.7, sq, unit_cfg) == 0.0);
    const double v = bohm_velocity(1.0, kPi / 2 / (2.0 * unit_cfg.omega()), SqueezeParams(0.5, 0.0), unit_cfg);
    CHECK(rel_err(v, 0.380797077977882444) <= 1e-14);
    CHECK(bohm_velocity(3.0, 1.1, sq, unit_cfg) == doctest::Approx(3.0 * bohm_velocity(1.0, 1.1, sq, unit_cfg)));
}

TEST_CASE("bohm_velocity agrees with the guidance law applied to the evolved state") {
    numerics::RngStream rng(9100, 0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const OscillatorConfig cfg(0.5 + rng.uniform(), 0.2 + rng.uniform(), 0.5 + rng.uniform());
        const SqueezeParams sq(3.0 * rng.uniform(), 2.0 * kPi * rng.uniform());
        const double t = 4.0 * kPi * rng.uniform() / cfg.omega();
        const double q = 4.0 * rng.uniform() - 2.0;
        const double closed = bohm_velocity(q, t, sq, cfg);
        const double from_state = velocity_from_state(evolved_state(sq, t, cfg), q, cfg);
        const double scale = std::abs(q) * cfg.omega() * std::sinh(2.0 * sq.r()) + 1e-300;
        worst = std::max(worst, std::abs(closed - from_state) / scale);
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("trajectory examples") {
    const SqueezeParams sq(0.9, 2.1);
    CHECK(trajectory(1.3, 0.0, sq, unit_cfg) == doctest::Approx(1.3).epsilon(1e-15));
    for (double t : {0.0, 0.7, 3.0, 11.0}) {
        CHECK(std::abs(trajectory(1.5, t, SqueezeParams(1e-12, 0.4), unit_cfg) - 1.5) <= 1e-11);
    }
    const double q = trajectory(1.0, kPi / (2.0 * unit_cfg.omega()), SqueezeParams(0.5, 0.0), unit_cfg);
    CHECK(rel_err(q, std::numbers::e) <= 1e-14);
    CHECK_THROWS_AS(trajectory(NAN, 1.0, sq, unit_cfg), std::invalid_argument);
}

TEST_CASE("trajectory_ode_oracle examples") {
    const auto grid = uniform_grid(4.0 * kPi, 400);
    const auto zeros = trajectory_ode_oracle(0.0, grid, SqueezeParams(0.5, 1.0), unit_cfg);
    CHECK(std::all_of(zeros.begin(), zeros.end(), [](double v) { return v == 0.0; }));

    const SqueezeParams sq(0.5, 2.0 * kPi / 3.0);
    const auto num = trajectory_ode_oracle(1.0, grid, sq, unit_cfg);
    double worst = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        worst = std::max(worst, rel_err(num[k], trajectory(1.0, grid[k], sq, unit_cfg)));
    }
    CHECK(worst <= 1e-6);

    const SqueezeParams strong(2.0, 0.0);
    const auto neg = trajectory_ode_oracle(-1.0, grid, strong, unit_cfg);
    worst = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        CHECK(neg[k] < 0.0);
        worst = std::max(worst, rel_err(neg[k], trajectory(-1.0, grid[k], strong, unit_cfg)));
    }
    CHECK(worst <= 1e-6);

    CHECK_THROWS_AS(trajectory_ode_oracle(1.0, std::vector<double>{0.5, 1.0}, sq, unit_cfg), std::invalid_argument);
}

TEST_CASE("trajectory_extrema examples") {
    const auto flat = trajectory_extrema(1.7, SqueezeParams(0.0, 1.0));
    CHECK(flat.q_min == 1.7);
    CHECK(flat.q_max == 1.7);
    const auto e = trajectory_extrema(1.0, SqueezeParams(0.5, 0.0));
    // phi = 0 starts the trajectory at its turning point nearest the origin.
    CHECK(rel_err(e.q_min, 1.0) <= 1e-14);
    CHECK(rel_err(e.q_max, std::exp(1.0)) <= 1e-14);
    const auto m = trajectory_extrema(-2.0, SqueezeParams(0.5, 1.0));
    CHECK(m.q_min <= -2.0);
    CHECK(m.q_max >= -2.0);
}

TEST_CASE("trajectory_extrema bound the trajectory and are attained") {
    numerics::RngStream rng(9200, 0);
    for (int i = 0; i < 200; ++i) {
        const SqueezeParams sq(2.5 * rng.uniform(), 2.0 * kPi * rng.uniform());
        const double q0 = 4.0 * rng.uniform() - 2.0;
        const auto ex = trajectory_extrema(q0, sq);
        CHECK(ex.q_min <= q0);
        CHECK(q0 <= ex.q_max);
        double lo = q0;
        double hi = q0;
        for (int k = 0; k <= 2000; ++k) {
            const double q = trajectory(q0, kPi / unit_cfg.omega() * k / 2000.0, sq, unit_cfg);
            lo = std::min(lo, q);
            hi = std::max(hi, q);
        }
        const double tol = 1e-12 * std::max(1.0, std::abs(ex.q_max - ex.q_min)) + 1e-14;
        CHECK(lo >= ex.q_min - tol);
        CHECK(hi <= ex.q_max + tol);
        // |q| is extremal at theta = 0 and theta = pi.
        const double t_in = sq.phi() / (2.0 * unit_cfg.omega());
        const double t_out = t_in + kPi / (2.0 * unit_cfg.omega());
        const double inner = trajectory(q0, t_in, sq, unit_cfg);
        const double outer = trajectory(q0, t_out, sq, unit_cfg);
        CHECK(rel_err(std::min(inner, outer), ex.q_min) <= 1e-12);
        CHECK(rel_err(std::max(inner, outer), ex.q_max) <= 1e-12);
    }
}

TEST_CASE("forbidden_region_slopes examples and property") {
    const auto zero = forbidden_region_slopes(SqueezeParams(0.0, 0.0), unit_cfg);
    CHECK(zero.slope_plus == 0.0);
    CHECK(zero.slope_minus == 0.0);
    const auto half = forbidden_region_slopes(SqueezeParams(0.5, 0.3), unit_cfg);
    CHECK(rel_err(half.slope_plus, 1.1752011936438014569) <= 1e-15);
    CHECK(half.slope_minus == -half.slope_plus);

    const SqueezeParams sq(1.0, 1.4);
    const auto bound = forbidden_region_slopes(sq, unit_cfg);
    const GaussianState st = evolved_state(sq, 0.0, unit_cfg);
    const auto q0s = sample_initial_conditions(st, 10000, 77);
    numerics::RngStream times(77, 1);
    int violations = 0;
    for (double q0 : q0s) {
        const PhasePoint p = phase_point(q0, kPi / unit_cfg.omega() * times.uniform(), sq, unit_cfg);
        if (std::abs(p.qdot) > bound.slope_plus * std::abs(p.q) * (1.0 + 1e-12)) ++violations;
    }
    CHECK(violations == 0);
}

TEST_CASE("limit_trajectory_r_infinity examples") {
    const double phi = 1.1;
    CHECK(limit_trajectory_r_infinity(2.0, phi / (2.0 * unit_cfg.omega()), phi, unit_cfg) ==
          doctest::Approx(0.0).epsilon(1e-15));
    CHECK(limit_trajectory_r_infinity(1.0, kPi / 2 / unit_cfg.omega(), kPi, unit_cfg) <= 1e-15);
    CHECK(rel_err(limit_trajectory_r_infinity(1.0, kPi / 2 / unit_cfg.omega(), kPi / 2, unit_cfg), 1.0) <= 1e-15);
    CHECK_THROWS_AS(limit_trajectory_r_infinity(1.0, 1.0, 0.0, unit_cfg), SingularLimitError);
    CHECK_THROWS_AS(limit_trajectory_r_infinity(1.0, 1.0, 2.0 * kPi, unit_cfg), SingularLimitError);
}

TEST_CASE("trajectory at r = 20 matches the r -> infinity limit away from its zeros") {
    for (double phi : {0.4, kPi / 2, 2.0, 4.5}) {
        const SqueezeParams sq(20.0, phi);
        for (int k = 0; k < 200; ++k) {
            const double t = kPi / unit_cfg.omega() * (k + 0.5) / 200.0;
            const double limit = limit_trajectory_r_infinity(1.0, t, phi, unit_cfg);
            if (limit < 1e-3) continue;
            CHECK(rel_err(trajectory(1.0, t, sq, unit_cfg), limit) <= 1e-6);
        }
    }
}

TEST_CASE("property: period pi/omega over 1000 draws") {
    numerics::RngStream rng(9300, 0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const OscillatorConfig cfg(1.0, 0.2 + rng.uniform(), 1.0);
        const SqueezeParams sq(3.0 * rng.uniform(), 2.0 * kPi * rng.uniform());
        const double q0 = 4.0 * rng.uniform() - 2.0;
        const double t = 2.0 * kPi * rng.uniform() / cfg.omega();
        worst = std::max(worst, rel_err(trajectory(q0, t + kPi / cfg.omega(), sq, cfg), trajectory(q0, t, sq, cfg)));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("property: no crossing, sign preservation, scale equivariance, zero fixed point") {
    numerics::RngStream rng(9400, 0);
    for (int e = 0; e < 5; ++e) {
        const SqueezeParams sq(0.1 + 2.5 * rng.uniform(), 2.0 * kPi * rng.uniform());
        const GaussianState st = evolved_state(sq, 0.0, unit_cfg);
        auto q0s = sample_initial_conditions(st, 200, 300 + e);
        std::sort(q0s.begin(), q0s.end());
        for (int k = 0; k <= 400; ++k) {
            const double t = 2.0 * kPi / unit_cfg.omega() * k / 400.0;
            double prev = -INFINITY;
            for (double q0 : q0s) {
                const double q = trajectory(q0, t, sq, unit_cfg);
                CHECK(q > prev);
                CHECK(std::signbit(q) == std::signbit(q0));
                CHECK(q != 0.0);
                prev = q;
            }
        }
    }
    const SqueezeParams sq(1.3, 0.6);
    for (double lambda : {-2.0, 0.5, 3.0}) {
        for (double t : {0.3, 2.9, 5.0}) {
            CHECK(trajectory(lambda * 0.7, t, sq, unit_cfg) == doctest::Approx(lambda * trajectory(0.7, t, sq, unit_cfg)).epsilon(1e-15));
        }
    }
    for (double t : {0.0, 1.0, 4.0}) CHECK(trajectory(0.0, t, sq, unit_cfg) == 0.0);
}

TEST_CASE("property: closed form vs ODE oracle over two periods, 100 draws") {
    numerics::RngStream rng(9500, 0);
    const auto grid = uniform_grid(2.0 * kPi / unit_cfg.omega(), 200);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const SqueezeParams sq(2.0 * rng.uniform(), 2.0 * kPi * rng.uniform());
        const double q0 = 4.0 * rng.uniform() - 2.0;
        const auto num = trajectory_ode_oracle(q0, grid, sq, unit_cfg);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            worst = std::max(worst, rel_err(num[k], trajectory(q0, grid[k], sq, unit_cfg)));
        }
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("width_profile and one_minus_tanh2r stay accurate for large r") {
    CHECK(rel_err(one_minus_tanh2r(0.3), 1.0 - std::tanh(0.6)) <= 1e-14);
    CHECK(rel_err(one_minus_tanh2r(20.0), 2.0 / (std::exp(80.0) + 1.0)) <= 1e-14);
    CHECK(one_minus_tanh2r(400.0) >= 0.0);
    CHECK(rel_err(width_profile(0.7, 1.1), 1.0 - std::tanh(1.4) * std::cos(1.1)) <= 1e-14);
    CHECK(width_profile(20.0, 0.0) > 0.0);
}
