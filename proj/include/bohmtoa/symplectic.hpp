#pragma once

// Closed-form Sp(2,R) algebra for a single oscillator mode: the squeeze and
// harmonic-evolution generators, their exponentials and products.
//
// Matrices act on phase-space vectors (x, p). Units are tracked in comments
// only: B carries length^2/action, C action/length^2, A and D are pure
// numbers.

namespace bohmtoa {

class OscillatorConfig {
public:
    // Throws std::invalid_argument unless all three are finite and positive.
    OscillatorConfig(double mass, double omega, double hbar);

    double mass() const noexcept { return mass_; }
    double omega() const noexcept { return omega_; }
    double hbar() const noexcept { return hbar_; }

    // l = sqrt(hbar / (m omega))
    double proper_length() const noexcept { return length_; }
    // E0 = hbar omega / 2
    double ground_energy() const noexcept { return 0.5 * hbar_ * omega_; }

private:
    double mass_;
    double omega_;
    double hbar_;
    double length_;
};

// xi = r e^{i phi}; phi is reduced to [0, 2 pi) on construction.
class SqueezeParams {
public:
    SqueezeParams(double r, double phi);

    double r() const noexcept { return r_; }
    double phi() const noexcept { return phi_; }
    double xi_x() const;
    double xi_y() const;

private:
    double r_;
    double phi_;
};

enum class GeneratorKind { squeeze, hamiltonian, generic };

// Symmetric 2x2 matrix L; the Lie-algebra element is J L with J = [[0,1],[-1,0]].
struct Generator2 {
    double l11 = 0.0;
    double l12 = 0.0;  // = l21
    double l22 = 0.0;
    GeneratorKind kind = GeneratorKind::generic;

    double det() const noexcept { return l11 * l22 - l12 * l12; }
};

struct Symplectic2 {
    double a = 1.0;
    double b = 0.0;
    double c = 0.0;
    double d = 1.0;

    static constexpr Symplectic2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    double det() const noexcept { return a * d - b * c; }

    // |AD - BC - 1| <= rel_tol * max(1, |AD| + |BC|)
    bool is_unimodular(double rel_tol = 1e-12) const noexcept;

    friend Symplectic2 operator*(const Symplectic2& lhs, const Symplectic2& rhs) noexcept {
        return {lhs.a * rhs.a + lhs.b * rhs.c, lhs.a * rhs.b + lhs.b * rhs.d,
                lhs.c * rhs.a + lhs.d * rhs.c, lhs.c * rhs.b + lhs.d * rhs.d};
    }
};

// L(xi) = [[hbar xi_y / l^2, -xi_x], [-xi_x, -l^2 xi_y / hbar]], det = -r^2.
Generator2 squeeze_generator(const SqueezeParams& params, const OscillatorConfig& cfg);

// L(H) = [[m omega^2 t, 0], [0, t / m]], det = omega^2 t^2. Negative t is
// backward evolution.
Generator2 hamiltonian_generator(double t, const OscillatorConfig& cfg);

// exp(J L) in closed form: hyperbolic for det L < 0, trigonometric for
// det L > 0 and a series expansion for |det L| < 1e-12.
Symplectic2 exp_generator(const Generator2& gen);

Symplectic2 squeeze_matrix(const SqueezeParams& params, const OscillatorConfig& cfg);

// M_H(t) = [[cos wt, (l^2/hbar) sin wt], [-(hbar/l^2) sin wt, cos wt]]
Symplectic2 evolution_matrix(double t, const OscillatorConfig& cfg);

// Ordinary product m1 * m2; both factors must be unimodular.
Symplectic2 compose(const Symplectic2& m1, const Symplectic2& m2);

}  // namespace bohmtoa
