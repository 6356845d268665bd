#include "bohmtoa/validation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <tuple>
#include <vector>

#include "bohmtoa/arrival.hpp"
#include "bohmtoa/bohm_dynamics.hpp"
#include "bohmtoa/gaussian_states.hpp"
#include "bohmtoa/numerics.hpp"
#include "bohmtoa/symplectic.hpp"

namespace bohmtoa::validation {

namespace {

constexpr double kPi = std::numbers::pi;

double rel_diff(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

double entry_diff(const Symplectic2& x, const Symplectic2& y) {
    return std::max({rel_diff(x.a, y.a), rel_diff(x.b, y.b), rel_diff(x.c, y.c), rel_diff(x.d, y.d)});
}

CheckResult make(std::string name, double measured, double tolerance, std::string detail = {}) {
    return {std::move(name), measured <= tolerance, measured, tolerance, std::move(detail)};
}

CheckResult check_symplectic(numerics::RngStream& rng, double corruption) {
    const OscillatorConfig cfg(1.0, 0.5, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const SqueezeParams sq(3.0 * rng.uniform(), 2.0 * kPi * rng.uniform());
        const double t = 4.0 * kPi * rng.uniform() / cfg.omega();
        const Symplectic2 s = squeeze_matrix(sq, cfg);
        const Symplectic2 h = evolution_matrix(t, cfg);
        const Symplectic2 m = compose(h, s);
        worst = std::max({worst, std::abs(s.det() - 1.0), std::abs(h.det() - 1.0),
                          std::abs(m.det() - 1.0) / std::max(1.0, std::abs(m.a * m.d) + std::abs(m.b * m.c))});
        worst = std::max(worst, entry_diff(exp_generator(squeeze_generator(sq, cfg)), s));
        worst = std::max(worst, entry_diff(exp_generator(hamiltonian_generator(t, cfg)), h));
    }
    return make("symplectic", worst + corruption, 1e-12, "det M = 1 and exp(JL) = closed form, 200 draws");
}

CheckResult check_normalization(numerics::RngStream& rng, double corruption) {
    const OscillatorConfig cfg(1.0, 0.5, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const SqueezeParams sq(3.0 * rng.uniform(), 2.0 * kPi * rng.uniform());
        const double t = 4.0 * kPi * rng.uniform() / cfg.omega();
        const GaussianState st = evolved_state(sq, t, cfg);
        const double half = 10.0 * std::sqrt(st.variance());
        const double mass = numerics::integrate_or_throw([&](double x) { return density(st, x); },
                                                         {-half, half, 1e-13, 1e-12, 2000}, "normalization");
        worst = std::max(worst, std::abs(mass - 1.0));
    }
    return make("normalization", worst + corruption, 1e-8, "quadrature of |Psi(x,t)|^2, 20 draws");
}

CheckResult check_ode(numerics::RngStream& rng, double corruption) {
    const OscillatorConfig cfg(1.0, 0.5, 1.0);
    double worst = 0.0;
    std::vector<double> grid(201);
    const double span = 2.0 * kPi / cfg.omega();
    for (std::size_t k = 0; k < grid.size(); ++k) grid[k] = span * static_cast<double>(k) / 200.0;
    for (int i = 0; i < 10; ++i) {
        const SqueezeParams sq(2.0 * rng.uniform(), 2.0 * kPi * rng.uniform());
        const double q0 = 4.0 * rng.uniform() - 2.0;
        const std::vector<double> numeric = trajectory_ode_oracle(q0, grid, sq, cfg);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const double exact = trajectory(q0, grid[k], sq, cfg);
            worst = std::max(worst, std::abs(numeric[k] - exact) / std::abs(exact));
        }
    }
    return make("ode_vs_closed_form", worst + corruption, 1e-6,
                "adaptive Dormand-Prince vs q(t), two periods, 10 draws");
}

CheckResult check_urep(numerics::RngStream& rng, double corruption) {
    const OscillatorConfig cfg(1.0, 0.5, 1.0);
    const double l = cfg.proper_length();
    const std::vector<double> xs = {0.0, l, -l, 2.0 * l, -2.0 * l};
    double worst = 0.0;
    int done = 0;
    while (done < 3) {
        const SqueezeParams sq(1.5 * rng.uniform(), 2.0 * kPi * rng.uniform());
        const Symplectic2 m = compose(evolution_matrix(kPi * rng.uniform() / cfg.omega(), cfg), squeeze_matrix(sq, cfg));
        if (std::abs(m.b) * cfg.hbar() / (l * l) < 0.05) continue;
        worst = std::max(worst, verify_against_integral_rep(m, cfg, xs).max_abs_error);
        ++done;
    }
    return make("integral_representation", worst + corruption, 1e-6, "kernel quadrature vs N exp(-S x^2/2)");
}

CheckResult check_round_trip(numerics::RngStream& rng, double corruption) {
    const OscillatorConfig cfg(1.0, 0.5, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const SqueezeParams sq(0.05 + 2.0 * rng.uniform(), 2.0 * kPi * rng.uniform());
        const ArrivalSetup setup(0.2 + 3.0 * rng.uniform(), sq, cfg);
        const auto iv = initial_condition_interval(setup);
        const double q0 = iv.q0_min + (iv.q0_max - iv.q0_min) * rng.uniform();
        const double L = setup.detector() * (1.0 + corruption);
        worst = std::max(worst, std::abs(trajectory(q0, time_of_arrival(q0, setup), sq, cfg) - L) / L);
        const double w2 = 2.0 * cfg.omega();
        worst = std::max(worst, std::abs(time_of_arrival(iv.q0_min, setup) - (sq.phi() + kPi) / w2));
        worst = std::max(worst, std::abs(time_of_arrival(iv.q0_max, setup) - sq.phi() / w2));
    }
    return make("toa_round_trip", worst, 1e-9, "q(t_oa) = L and t_oa endpoints, 100 draws");
}

CheckResult check_change_of_variables(double corruption) {
    const OscillatorConfig cfg(1.0, 0.5, 1.0);
    double worst = 0.0;
    for (const auto& [r, phi, L] : {std::tuple{0.5, 0.0, 1.0}, std::tuple{1.0, 2.0 * kPi / 3.0, 2.0}}) {
        const ArrivalSetup setup(L, SqueezeParams(r, phi), cfg);
        const ToaDistribution pdf = toa_pdf(setup);
        std::vector<double> taus;
        for (int k = 1; k < 64; ++k) taus.push_back(pdf.t_min() + (pdf.t_max() - pdf.t_min()) * k / 64.0);
        worst = std::max(worst, toa_pdf_changeofvar_oracle(setup, taus));
    }
    return make("pdf_change_of_variables", worst + corruption, 1e-8, "closed-form Pi vs |Psi|^2 |dq0/dtau|");
}

CheckResult check_monte_carlo(std::uint64_t seed, bool perturb) {
    const OscillatorConfig cfg(1.0, 0.5, 1.0);
    const ArrivalSetup setup(1.0, SqueezeParams(1.0, 0.0), cfg);
    const ToaDistribution pdf = toa_pdf(setup);
    const ToaMonteCarlo mc = toa_histogram_mc(setup, 100000, seed, 32);
    const double shift = perturb ? 0.1 * (pdf.t_max() - pdf.t_min()) : 0.0;
    const auto chi = numerics::chi_square_gof(
        mc.histogram, [&](double tau) { return pdf(std::clamp(tau - shift, pdf.t_min(), pdf.t_max())); }, 0.001);
    const double z_score = std::abs(mc.accepted_fraction - mc.expected_fraction) / mc.standard_error;
    CheckResult res = make("monte_carlo_chi_square", chi.statistic, chi.critical_value,
                           "n = 1e5, 32 bins, alpha = 0.001; acceptance z = " + std::to_string(z_score));
    res.passed = res.passed && z_score <= 3.0;
    return res;
}

}  // namespace

std::vector<CheckResult> run_validation(const ValidationOptions& options) {
    numerics::RngStream rng(options.seed, 1);
    const double corruption = options.perturb ? 1e-3 : 0.0;
    std::vector<CheckResult> results;
    results.push_back(check_symplectic(rng, corruption));
    results.push_back(check_normalization(rng, corruption));
    results.push_back(check_ode(rng, corruption));
    results.push_back(check_urep(rng, corruption));
    results.push_back(check_round_trip(rng, corruption));
    results.push_back(check_change_of_variables(corruption));
    results.push_back(check_monte_carlo(options.seed, options.perturb));
    return results;
}

}  // namespace bohmtoa::validation
