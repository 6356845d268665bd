#include "bohmtoa/detection.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bohmtoa/arrival.hpp"
#include "bohmtoa/bohm_dynamics.hpp"
#include "bohmtoa/error.hpp"
#include "bohmtoa/gaussian_states.hpp"
#include "bohmtoa/numerics.hpp"

namespace bohmtoa {

DetectionWindow::DetectionWindow(double duration, double bin_width, double detector)
    : duration_(duration), bin_width_(bin_width), detector_(detector) {
    if (!(std::isfinite(duration) && duration > 0.0)) throw std::invalid_argument("window T must be > 0");
    if (!(std::isfinite(bin_width) && bin_width > 0.0)) throw std::invalid_argument("bin width dL must be > 0");
    if (!(std::isfinite(detector) && detector > 0.0)) throw std::invalid_argument("detector L must be > 0");
}

DetectionWindow DetectionWindow::with_default_duration(double bin_width, double detector,
                                                       const SqueezeParams& squeeze,
                                                       const OscillatorConfig& cfg) {
    if (!(squeeze.phi() < std::numbers::pi)) {
        throw std::invalid_argument("default window T = (phi + pi) / (2 omega) requires phi < pi");
    }
    return {(squeeze.phi() + std::numbers::pi) / (2.0 * cfg.omega()), bin_width, detector};
}

double standard_count(const DetectionWindow& window, const SqueezeParams& squeeze,
                      const OscillatorConfig& cfg, const CountOptions& options) {
    const double L = window.detector();
    auto rho_at_detector = [&](double t) { return density(evolved_state(squeeze, t, cfg), L); };
    const double integral = numerics::integrate_or_throw(
        rho_at_detector, {0.0, window.duration(), options.abs_tol, options.rel_tol, 4000}, "standard count");
    return window.bin_width() / window.duration() * integral;
}

double bohmian_count(const DetectionWindow& window, const SqueezeParams& squeeze,
                     const OscillatorConfig& cfg, const CountOptions& options) {
    const double L = window.detector();
    const ArrivalSetup setup(L, squeeze, cfg);
    const double q0_lo = initial_condition_interval(setup).q0_min;
    const double q0_hi = initial_condition_interval(setup.with_detector(L + window.bin_width())).q0_max;

    // Numerator and inner integrand share |N(t)|^2 exp(-Re S(t) q_lo(t)^2),
    // q_lo(t) = q(t; q0_lo), which is divided out of both.
    auto ratio_at = [&](double t) {
        const double re_width = evolved_state(squeeze, t, cfg).width().real();
        const double flow = trajectory(1.0, t, squeeze, cfg);
        const double q_lo = flow * q0_lo;
        const double numerator = std::exp(-re_width * (L * L - q_lo * q_lo));
        auto inner_integrand = [&](double q0) {
            const double q = flow * q0;
            return std::exp(-re_width * (q * q - q_lo * q_lo));
        };
        double inner = numerics::integrate_or_throw(
            inner_integrand, {q0_lo, q0_hi, 0.1 * options.abs_tol, 0.1 * options.rel_tol, 4000},
            "Bohmian count inner integral");
        if (options.measure == InnerMeasure::jacobian_weighted) inner *= flow;
        if (!(inner >= 1e-300)) {
            throw std::overflow_error("Bohmian count: inner integral below 1e-300");
        }
        return numerator / inner;
    };

    const double integral = numerics::integrate_or_throw(
        ratio_at, {0.0, window.duration(), options.abs_tol, options.rel_tol, 4000}, "Bohmian count");
    return window.bin_width() / window.duration() * integral;
}

std::vector<CountRow> count_report(std::span<const double> detectors, const WindowTemplate& window,
                                   const SqueezeParams& squeeze, const OscillatorConfig& cfg,
                                   const CountOptions& options) {
    if (detectors.empty()) throw std::invalid_argument("count_report: empty grid of detector positions");
    std::vector<CountRow> rows;
    rows.reserve(detectors.size());
    for (double L : detectors) {
        const DetectionWindow w = window.duration > 0.0
                                      ? DetectionWindow(window.duration, window.bin_width, L)
                                      : DetectionWindow::with_default_duration(window.bin_width, L, squeeze, cfg);
        CountRow row;
        row.detector = L;
        row.standard = standard_count(w, squeeze, cfg, options);
        row.bohmian = bohmian_count(w, squeeze, cfg, options);
        row.ratio = row.bohmian / row.standard;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace bohmtoa
