#include "bohmtoa/arrival.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/tools/minima.hpp>

#include "bohmtoa/bohm_dynamics.hpp"
#include "bohmtoa/error.hpp"
#include "bohmtoa/gaussian_states.hpp"

namespace bohmtoa {

namespace {

thread_local std::uint64_t interval_calls = 0;

void require_squeezed(const ArrivalSetup& setup, const char* what) {
    if (setup.squeeze().r() == 0.0) {
        throw SingularLimitError(std::string(what) +
                                 ": r = 0 is a singular limit of the arrival-time map "
                                 "(I_BSS collapses to {L} while t_oa(q0_min) != t_oa(q0_max))");
    }
}

// |Psi(q0, 0)|^2 up to the factor exp(-Re(S) q_ref^2).
struct ShiftedDensity {
    double norm2;
    double re_width;
    double q_ref;

    double operator()(double q) const { return norm2 * std::exp(-re_width * (q * q - q_ref * q_ref)); }
};

ShiftedDensity initial_density(const ArrivalSetup& setup, double q_ref) {
    const GaussianState state = state_from_matrix(squeeze_matrix(setup.squeeze(), setup.cfg()), setup.cfg());
    return {std::norm(state.amplitude()), state.width().real(), q_ref};
}

}  // namespace

namespace detail {
std::uint64_t interval_evaluations() noexcept { return interval_calls; }
}  // namespace detail

ArrivalSetup::ArrivalSetup(double detector, SqueezeParams squeeze, OscillatorConfig cfg)
    : detector_(detector), squeeze_(squeeze), cfg_(cfg) {
    if (!(std::isfinite(detector) && detector > 0.0)) {
        throw std::invalid_argument("detector position L must be finite and > 0");
    }
}

InitialConditionInterval initial_condition_interval(const ArrivalSetup& setup) {
    ++interval_calls;
    require_squeezed(setup, "initial_condition_interval");
    const double r = setup.squeeze().r();
    const double start = width_profile(r, setup.squeeze().phi());
    const double lower_tanh = one_minus_tanh2r(r);
    const double upper_tanh = 2.0 - lower_tanh;
    const double L = setup.detector();
    return {L * std::sqrt(start / upper_tanh), L * std::sqrt(start / lower_tanh)};
}

double critical_phase_cosine(double r) {
    if (!(std::isfinite(r) && r > 0.0)) throw SingularLimitError("critical phase requires r > 0");
    // (2 cosh^2 r + 1)(cosh^2 r - 1) / (sinh 2r cosh^2 r)
    const double ch = std::cosh(r);
    const double inv_ch2 = std::isfinite(ch) ? 1.0 / (ch * ch) : 0.0;
    return (1.0 + 0.5 * inv_ch2) * std::tanh(r);
}

double critical_phase(double r) {
    const double c = critical_phase_cosine(r);
    if (!(c >= -1.0 && c <= 1.0)) {
        throw DomainError("critical phase: cosine " + std::to_string(c) + " outside [-1, 1]");
    }
    return std::acos(c);
}

double time_of_arrival(double q0, const ArrivalSetup& setup) {
    require_squeezed(setup, "time_of_arrival");
    const InitialConditionInterval iv = initial_condition_interval(setup);
    if (!iv.contains(q0)) {
        throw DomainError("time_of_arrival: q0 outside the interval of initial conditions reaching L");
    }
    // tan^2(theta/2) = (1 - T)(q0max^2 - q0^2) / ((1 + T)(q0^2 - q0min^2)), the
    // principal-branch arccos written in a form that stays exact at the
    // interval endpoints.
    const double lower_tanh = one_minus_tanh2r(setup.squeeze().r());
    const double upper_tanh = 2.0 - lower_tanh;
    const double rising = std::sqrt(lower_tanh * (iv.q0_max - q0) * (iv.q0_max + q0));
    const double falling = std::sqrt(upper_tanh * (q0 - iv.q0_min) * (q0 + iv.q0_min));
    const double theta = 2.0 * std::atan2(rising, falling);
    return (setup.squeeze().phi() + theta) / (2.0 * setup.cfg().omega());
}

FirstArrival first_arrival_piecewise(double q0, const ArrivalSetup& setup) {
    require_squeezed(setup, "first_arrival_piecewise");
    if (!initial_condition_interval(setup).contains(q0)) return std::nullopt;
    return time_of_arrival(q0, setup);
}

double detection_probability(const ArrivalSetup& setup) {
    const InitialConditionInterval iv = initial_condition_interval(setup);
    const GaussianState state = state_from_matrix(squeeze_matrix(setup.squeeze(), setup.cfg()), setup.cfg());
    // Exact Gaussian mass; erfc keeps the far tail representable.
    const double scale = std::sqrt(state.width().real());
    return 0.5 * (std::erfc(iv.q0_min * scale) - std::erfc(iv.q0_max * scale));
}

// ---------------------------------------------------------------------------

ToaDistribution::ToaDistribution(const ArrivalSetup& setup) : setup_(setup) {
    require_squeezed(setup, "toa_pdf");
    const double w = setup.cfg().omega();
    const double phi = setup.squeeze().phi();
    t_min_ = phi / (2.0 * w);
    t_max_ = (phi + std::numbers::pi) / (2.0 * w);

    const double l = setup.cfg().proper_length();
    const double L = setup.detector();
    shift_ = L * L / (l * l * std::exp(2.0 * setup.squeeze().r()));

    z_scaled_ = numerics::integrate_or_throw([this](double tau) { return scaled(tau); },
                                             {t_min_, t_max_, 0.0, 1e-13, 4000}, "TOA normalization");
    if (!(z_scaled_ > 0.0)) throw std::runtime_error("toa_pdf: normalization vanished");
    log_z_ = std::log(z_scaled_) - shift_;
}

double ToaDistribution::scaled(double tau) const {
    if (tau < t_min_ || tau > t_max_) return 0.0;
    const double r = setup_.squeeze().r();
    const double w = setup_.cfg().omega();
    const double l = setup_.cfg().proper_length();
    const double L = setup_.detector();
    const double theta = 2.0 * w * tau - setup_.squeeze().phi();
    const double sh2 = std::sinh(2.0 * r);
    // cosh 2r - sinh 2r cos(theta) = e^{-2r} + 2 sinh 2r sin^2(theta/2)
    const double s = std::sin(0.5 * theta);
    const double spread = std::exp(-2.0 * r) + 2.0 * sh2 * s * s;
    // Measured from the nearer endpoint so both ends vanish exactly.
    const double sine = theta <= 0.5 * std::numbers::pi ? std::max(0.0, std::sin(theta))
                                                        : std::max(0.0, std::sin(2.0 * w * (t_max_ - tau)));
    return L * w * sh2 * sine * std::exp(shift_ - L * L / (l * l * spread)) /
           (std::sqrt(std::numbers::pi) * l * spread * std::sqrt(spread));
}

double ToaDistribution::z() const { return std::exp(log_z_); }

double ToaDistribution::operator()(double tau) const { return scaled(tau) / z_scaled_; }

double ToaDistribution::unnormalized(double tau) const { return scaled(tau) * std::exp(-shift_); }

double ToaDistribution::mode() const {
    constexpr int grid = 512;
    const double h = (t_max_ - t_min_) / grid;
    int best = 1;
    double best_value = -1.0;
    for (int i = 1; i < grid; ++i) {
        const double v = scaled(t_min_ + h * i);
        if (v > best_value) {
            best_value = v;
            best = i;
        }
    }
    auto negated = [this](double tau) { return -scaled(tau); };
    const auto found = boost::math::tools::brent_find_minima(negated, t_min_ + h * (best - 1),
                                                             t_min_ + h * (best + 1), 52);
    return found.first;
}

double ToaDistribution::mean() const {
    const double first = numerics::integrate_or_throw([this](double tau) { return tau * scaled(tau); },
                                                      {t_min_, t_max_, 0.0, 1e-13, 4000}, "TOA mean");
    return first / z_scaled_;
}

ToaDistribution toa_pdf(const ArrivalSetup& setup) { return ToaDistribution(setup); }

double toa_pdf_changeofvar_oracle(const ArrivalSetup& setup, std::span<const double> tau_samples) {
    const ToaDistribution pdf = toa_pdf(setup);
    const double r = setup.squeeze().r();
    const double phi = setup.squeeze().phi();
    const double w = setup.cfg().omega();
    const double L = setup.detector();
    const double T = std::tanh(2.0 * r);
    const double start = 1.0 - T * std::cos(phi);

    // Inverse of t_oa(q0): cos(theta) = (1 - start L^2 / q0^2) / T.
    auto q0_of_tau = [&](double tau) {
        return L * std::sqrt(start / (1.0 - T * std::cos(2.0 * w * tau - phi)));
    };
    auto dq0_dtau = [&](double tau) {
        const double theta = 2.0 * w * tau - phi;
        return -q0_of_tau(tau) * w * T * std::sin(theta) / (1.0 - T * std::cos(theta));
    };

    const GaussianState state = state_from_matrix(squeeze_matrix(setup.squeeze(), setup.cfg()), setup.cfg());
    const double q_lo = L * std::sqrt(start / (1.0 + T));
    const double q_hi = L * std::sqrt(start / (1.0 - T));
    const ShiftedDensity rho{std::norm(state.amplitude()), state.width().real(), q_lo};
    const double mass = numerics::integrate_or_throw(rho, {q_lo, q_hi, 0.0, 1e-13, 4000}, "I_BSS mass");

    double worst = 0.0;
    for (double tau : tau_samples) {
        if (tau < pdf.t_min() || tau > pdf.t_max()) {
            throw std::invalid_argument("change-of-variables oracle: tau outside [t_min, t_max]");
        }
        const double rebuilt = rho(q0_of_tau(tau)) * std::abs(dq0_dtau(tau)) / mass;
        worst = std::max(worst, std::abs(rebuilt - pdf(tau)));
    }
    return worst;
}

ToaMonteCarlo toa_histogram_mc(const ArrivalSetup& setup, std::size_t n, std::uint64_t seed,
                               std::size_t bins) {
    require_squeezed(setup, "toa_histogram_mc");
    if (n == 0) throw std::invalid_argument("toa_histogram_mc: n must be >= 1");
    const InitialConditionInterval iv = initial_condition_interval(setup);
    const double w = setup.cfg().omega();
    const double phi = setup.squeeze().phi();
    numerics::Histogram hist(phi / (2.0 * w), (phi + std::numbers::pi) / (2.0 * w), bins);

    const GaussianState state = state_from_matrix(squeeze_matrix(setup.squeeze(), setup.cfg()), setup.cfg());
    const double sigma = std::sqrt(state.variance());
    numerics::RngStream stream(seed, 0);
    std::size_t accepted = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const double q0 = numerics::normal_sample(stream, sigma);
        if (!iv.contains(q0)) continue;
        hist.fill(time_of_arrival(q0, setup));
        ++accepted;
    }
    if (accepted == 0) {
        throw std::runtime_error("toa_histogram_mc: no sampled initial condition reaches the detector");
    }
    const double p = detection_probability(setup);
    const auto nn = static_cast<double>(n);
    return {std::move(hist),
            n,
            accepted,
            static_cast<double>(accepted) / nn,
            p,
            std::sqrt(p * (1.0 - p) / nn)};
}

double mean_toa(const ArrivalSetup& setup) {
    require_squeezed(setup, "mean_toa");
    const InitialConditionInterval iv = initial_condition_interval(setup);
    const ShiftedDensity rho = initial_density(setup, iv.q0_min);
    const numerics::QuadratureSpec spec{iv.q0_min, iv.q0_max, 0.0, 1e-13, 4000};
    const double mass = numerics::integrate_or_throw(rho, spec, "mean TOA normalization");
    const double weighted = numerics::integrate_or_throw(
        [&](double q0) { return time_of_arrival(q0, setup) * rho(q0); }, spec, "mean TOA");
    return weighted / mass;
}

}  // namespace bohmtoa
