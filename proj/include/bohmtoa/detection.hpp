#pragma once

// Windowed click-count predictions for a detector bin (L, L + dL) kept open
// over [0, T]:
//
//   standard:  N_S = (dL/T) int_0^T |Psi(L,t)|^2 dt
//   Bohmian:   N_B = (dL/T) int_0^T |Psi(L,t)|^2 / I(t) dt,
//              I(t) = int_{q0_min(L)}^{q0_max(L+dL)} |Psi(q(t;q0),t)|^2 dq0
//
// I(t) is evaluated as written, without the Jacobian dq/dq0 of the flow; the
// Jacobian-weighted measure is available for sensitivity studies.

#include <span>
#include <vector>

#include "bohmtoa/symplectic.hpp"

namespace bohmtoa {

class DetectionWindow {
public:
    DetectionWindow(double duration, double bin_width, double detector);

    // T = (phi + pi) / (2 omega), the latest possible arrival; requires phi < pi.
    static DetectionWindow with_default_duration(double bin_width, double detector,
                                                 const SqueezeParams& squeeze,
                                                 const OscillatorConfig& cfg);

    double duration() const noexcept { return duration_; }
    double bin_width() const noexcept { return bin_width_; }
    double detector() const noexcept { return detector_; }

private:
    double duration_;
    double bin_width_;
    double detector_;
};

enum class InnerMeasure { as_displayed, jacobian_weighted };

struct CountOptions {
    double abs_tol = 1e-13;
    double rel_tol = 1e-11;
    InnerMeasure measure = InnerMeasure::as_displayed;
};

double standard_count(const DetectionWindow& window, const SqueezeParams& squeeze,
                      const OscillatorConfig& cfg, const CountOptions& options = {});

double bohmian_count(const DetectionWindow& window, const SqueezeParams& squeeze,
                     const OscillatorConfig& cfg, const CountOptions& options = {});

struct CountRow {
    double detector = 0.0;
    double standard = 0.0;
    double bohmian = 0.0;
    double ratio = 0.0;  // bohmian / standard
};

struct WindowTemplate {
    double bin_width = 0.0;
    // <= 0 selects the default (phi + pi) / (2 omega).
    double duration = 0.0;
};

// One row per detector position, in input order.
std::vector<CountRow> count_report(std::span<const double> detectors, const WindowTemplate& window,
                                   const SqueezeParams& squeeze, const OscillatorConfig& cfg,
                                   const CountOptions& options = {});

}  // namespace bohmtoa
