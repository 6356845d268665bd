#include "bohmtoa/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bohmtoa {

namespace {

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be finite");
}

}  // namespace

OscillatorConfig::OscillatorConfig(double mass, double omega, double hbar)
    : mass_(mass), omega_(omega), hbar_(hbar) {
    if (!(std::isfinite(mass) && mass > 0.0)) throw std::invalid_argument("mass must be positive");
    if (!(std::isfinite(omega) && omega > 0.0)) throw std::invalid_argument("omega must be positive");
    if (!(std::isfinite(hbar) && hbar > 0.0)) throw std::invalid_argument("hbar must be positive");
    length_ = std::sqrt(hbar / (mass * omega));
}

SqueezeParams::SqueezeParams(double r, double phi) : r_(r) {
    if (!(std::isfinite(r) && r >= 0.0)) throw std::invalid_argument("r must be finite and >= 0");
    require_finite(phi, "phi");
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double reduced = std::fmod(phi, two_pi);
    if (reduced < 0.0) reduced += two_pi;
    if (reduced >= two_pi) reduced = 0.0;
    phi_ = reduced;
}

double SqueezeParams::xi_x() const { return r_ * std::cos(phi_); }
double SqueezeParams::xi_y() const { return r_ * std::sin(phi_); }

bool Symplectic2::is_unimodular(double rel_tol) const noexcept {
    const double scale = std::max(1.0, std::abs(a * d) + std::abs(b * c));
    return std::abs(det() - 1.0) <= rel_tol * scale;
}

Generator2 squeeze_generator(const SqueezeParams& params, const OscillatorConfig& cfg) {
    const double l2 = cfg.proper_length() * cfg.proper_length();
    const double xx = params.xi_x();
    const double xy = params.xi_y();
    return {cfg.hbar() * xy / l2, -xx, -l2 * xy / cfg.hbar(), GeneratorKind::squeeze};
}

Generator2 hamiltonian_generator(double t, const OscillatorConfig& cfg) {
    require_finite(t, "t");
    const double w = cfg.omega();
    return {cfg.mass() * w * w * t, 0.0, t / cfg.mass(), GeneratorKind::hamiltonian};
}

Symplectic2 exp_generator(const Generator2& gen) {
    require_finite(gen.l11, "generator entry");
    require_finite(gen.l12, "generator entry");
    require_finite(gen.l22, "generator entry");

    // (J L)^2 = -det(L) * 1
    const double jl11 = gen.l12;
    const double jl12 = gen.l22;
    const double jl21 = -gen.l11;
    const double jl22 = -gen.l12;
    const double det = gen.det();

    double even = 0.0;
    double odd = 0.0;
    if (std::abs(det) < 1e-12) {
        even = 1.0 - det / 2.0;
        odd = 1.0 - det / 6.0;
    } else if (det < 0.0) {
        const double s = std::sqrt(-det);
        even = std::cosh(s);
        odd = std::sinh(s) / s;
    } else {
        const double s = std::sqrt(det);
        even = std::cos(s);
        odd = std::sin(s) / s;
    }
    return {even + odd * jl11, odd * jl12, odd * jl21, even + odd * jl22};
}

Symplectic2 squeeze_matrix(const SqueezeParams& params, const OscillatorConfig& cfg) {
    const double l2 = cfg.proper_length() * cfg.proper_length();
    const double ch = std::cosh(params.r());
    const double sh = std::sinh(params.r());
    const double cp = std::cos(params.phi());
    const double sp = std::sin(params.phi());
    return {ch - sh * cp, -l2 * sh * sp / cfg.hbar(), -cfg.hbar() * sh * sp / l2, ch + sh * cp};
}

Symplectic2 evolution_matrix(double t, const OscillatorConfig& cfg) {
    require_finite(t, "t");
    const double l2 = cfg.proper_length() * cfg.proper_length();
    const double wt = cfg.omega() * t;
    const double c = std::cos(wt);
    const double s = std::sin(wt);
    return {c, l2 * s / cfg.hbar(), -cfg.hbar() * s / l2, c};
}

Symplectic2 compose(const Symplectic2& m1, const Symplectic2& m2) {
    if (!m1.is_unimodular() || !m2.is_unimodular()) {
        throw std::invalid_argument("compose: factors must have unit determinant");
    }
    return m1 * m2;
}

}  // namespace bohmtoa
