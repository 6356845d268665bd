#include "bohmtoa/gaussian_states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bohmtoa/error.hpp"
#include "bohmtoa/numerics.hpp"

namespace bohmtoa {

using namespace std::complex_literals;

GaussianState::GaussianState(std::complex<double> amplitude, std::complex<double> width)
    : amplitude_(amplitude), width_(width) {
    if (!(std::isfinite(width.real()) && std::isfinite(width.imag()) && width.real() > 0.0)) {
        throw std::invalid_argument("Gaussian width must have a positive finite real part");
    }
    if (!(std::isfinite(amplitude.real()) && std::isfinite(amplitude.imag()))) {
        throw std::invalid_argument("Gaussian amplitude must be finite");
    }
}

std::complex<double> GaussianState::operator()(double x) const {
    return amplitude_ * std::exp(-0.5 * width_ * x * x);
}

GaussianState vacuum_state(const OscillatorConfig& cfg) {
    const double l = cfg.proper_length();
    return {std::pow(1.0 / (std::numbers::pi * l * l), 0.25), 1.0 / (l * l)};
}

GaussianState state_from_matrix(const Symplectic2& m, const OscillatorConfig& cfg) {
    if (!m.is_unimodular(1e-10)) {
        throw std::invalid_argument("state_from_matrix: matrix must have unit determinant");
    }
    const double l2 = cfg.proper_length() * cfg.proper_length();
    const double l4 = l2 * l2;
    const double hbar = cfg.hbar();

    const std::complex<double> denom = l2 * m.a + 1i * hbar * m.b;
    if (std::abs(denom) == 0.0) throw std::invalid_argument("state_from_matrix: degenerate matrix");

    const double norm2 = hbar * hbar * m.b * m.b + m.a * m.a * l4;
    const std::complex<double> amplitude =
        std::pow(1.0 / (std::numbers::pi * l2), 0.25) * std::sqrt(l2 / denom);
    const std::complex<double> width =
        l2 / norm2 - (1i / hbar) * ((l4 * m.a * m.c + hbar * hbar * m.b * m.d) / norm2);
    return {amplitude, width};
}

GaussianState evolved_state(const SqueezeParams& params, double t, const OscillatorConfig& cfg) {
    return state_from_matrix(compose(evolution_matrix(t, cfg), squeeze_matrix(params, cfg)), cfg);
}

double density(const GaussianState& state, double x) {
    return std::norm(state.amplitude()) * std::exp(-state.width().real() * x * x);
}

IntegralRepCheck verify_against_integral_rep(const Symplectic2& m, const OscillatorConfig& cfg,
                                             std::span<const double> x_samples) {
    const double l = cfg.proper_length();
    const double hbar = cfg.hbar();
    if (std::abs(m.b) * hbar / (l * l) < 1e-8) {
        throw std::invalid_argument("integral representation requires B != 0");
    }
    if (x_samples.empty()) return {};

    const GaussianState vacuum = vacuum_state(cfg);
    const GaussianState closed = state_from_matrix(m, cfg);
    const std::complex<double> prefactor = 1.0 / std::sqrt(2.0 * std::numbers::pi * 1i * hbar * m.b);

    IntegralRepCheck check;
    auto kernel_integral = [&](double x) {
        // exp(i/(2 hbar B) (D x^2 - 2 x x' + A x'^2)) Psi0(x'); the x-only
        // phase is pulled out of the integral.
        auto integrand = [&](double xp) {
            const double phase = (-2.0 * x * xp + m.a * xp * xp) / (2.0 * hbar * m.b);
            return std::polar(vacuum(xp).real(), phase);
        };
        const numerics::QuadratureSpec spec{-14.0 * l, 14.0 * l, 1e-13, 1e-12, 20000};
        const auto re = numerics::integrate([&](double xp) { return integrand(xp).real(); }, spec);
        const auto im = numerics::integrate([&](double xp) { return integrand(xp).imag(); }, spec);
        if (!re.converged || !im.converged) {
            throw ConvergenceError("integral representation quadrature did not converge",
                                   std::max(re.error, im.error));
        }
        check.achieved_tolerance = std::max({check.achieved_tolerance, re.error, im.error});
        const std::complex<double> outer = std::polar(1.0, m.d * x * x / (2.0 * hbar * m.b));
        return prefactor * outer * std::complex<double>(re.value, im.value);
    };

    const std::complex<double> at_origin = kernel_integral(0.0);
    if (std::abs(at_origin) == 0.0) throw std::runtime_error("integral representation vanishes at x = 0");
    const std::complex<double> ratio = closed(0.0) / at_origin;
    const std::complex<double> phase = ratio / std::abs(ratio);

    for (double x : x_samples) {
        const std::complex<double> numeric = x == 0.0 ? at_origin : kernel_integral(x);
        check.max_abs_error = std::max(check.max_abs_error, std::abs(phase * numeric - closed(x)));
    }
    return check;
}

std::vector<double> sample_initial_conditions(const GaussianState& state, std::size_t n,
                                              std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("sample count must be >= 1");
    const double sigma = std::sqrt(state.variance());
    numerics::RngStream stream(seed, 0);
    std::vector<double> out(n);
    for (double& q : out) q = numerics::normal_sample(stream, sigma);
    return out;
}

}  // namespace bohmtoa
