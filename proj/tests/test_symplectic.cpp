#include <cmath>
#include <limits>
#include <numbers>

#include "bohmtoa/numerics.hpp"
#include "bohmtoa/symplectic.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace bohmtoa;
using bohmtoa::testing::scaled_err;

namespace {

constexpr double kPi = std::numbers::pi;
const OscillatorConfig unit(1.0, 1.0, 1.0);
const OscillatorConfig unit_cfg(1.0, 0.5, 1.0);

double entry_err(const Symplectic2& x, const Symplectic2& y) {
    return std::max({scaled_err(x.a, y.a), scaled_err(x.b, y.b), scaled_err(x.c, y.c), scaled_err(x.d, y.d)});
}

// M J M^T - J, largest entry relative to the size of the products involved.
double symplectic_defect(const Symplectic2& m) {
    const double off = m.a * m.d - m.b * m.c;
    const double scale = std::max(1.0, std::abs(m.a * m.d) + std::abs(m.b * m.c));
    return std::abs(off - 1.0) / scale;
}

}  // namespace

TEST_CASE("OscillatorConfig derived quantities") {
    const OscillatorConfig cfg(2.5, 0.7, 1.3);
    CHECK(scaled_err(cfg.proper_length() * cfg.proper_length() * cfg.mass() * cfg.omega(), cfg.hbar()) <=
          4.0 * std::numeric_limits<double>::epsilon());
    CHECK(cfg.ground_energy() == doctest::Approx(0.5 * 1.3 * 0.7).epsilon(1e-15));
    CHECK_THROWS_AS(OscillatorConfig(0.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(OscillatorConfig(1.0, -1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(OscillatorConfig(1.0, 1.0, NAN), std::invalid_argument);
}

TEST_CASE("SqueezeParams reduces phi and rejects bad input") {
    const SqueezeParams a(1.0, 2.0 * kPi + 0.5);
    CHECK(a.phi() == doctest::Approx(0.5).epsilon(1e-14));
    const SqueezeParams b(1.0, -0.5);
    CHECK(b.phi() == doctest::Approx(2.0 * kPi - 0.5).epsilon(1e-14));
    CHECK(b.phi() >= 0.0);
    CHECK(b.phi() < 2.0 * kPi);
    const SqueezeParams c(1.7, 0.3);
    CHECK(std::abs(c.xi_x() * c.xi_x() + c.xi_y() * c.xi_y() - 1.7 * 1.7) <= 4 * 1.7 * 1.7 * 2.3e-16);
    CHECK_THROWS_AS(SqueezeParams(-0.1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(SqueezeParams(INFINITY, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(SqueezeParams(1.0, NAN), std::invalid_argument);
}

TEST_CASE("squeeze_generator examples") {
    const Generator2 zero = squeeze_generator(SqueezeParams(0.0, 1.2), unit);
    CHECK(zero.l11 == 0.0);
    CHECK(zero.l12 == 0.0);
    CHECK(zero.l22 == 0.0);

    const Generator2 g = squeeze_generator(SqueezeParams(1.0, 0.0), unit);
    CHECK(g.l11 == 0.0);
    CHECK(g.l12 == -1.0);
    CHECK(g.l22 == 0.0);
    CHECK(g.det() == -1.0);
    CHECK(g.kind == GeneratorKind::squeeze);

    const Generator2 h = squeeze_generator(SqueezeParams(0.5, kPi / 2), unit);
    CHECK(h.l11 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(std::abs(h.l12) <= 1e-16);
    CHECK(h.l22 == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(h.det() == doctest::Approx(-0.25).epsilon(1e-15));
}

TEST_CASE("hamiltonian_generator examples") {
    const Generator2 zero = hamiltonian_generator(0.0, unit_cfg);
    CHECK(zero.l11 == 0.0);
    CHECK(zero.l22 == 0.0);

    const Generator2 g = hamiltonian_generator(2.0, unit_cfg);
    CHECK(g.l11 == 0.5);
    CHECK(g.l12 == 0.0);
    CHECK(g.l22 == 2.0);
    CHECK(g.kind == GeneratorKind::hamiltonian);

    const Generator2 h = hamiltonian_generator(1.0, OscillatorConfig(2.0, 1.0, 1.0));
    CHECK(h.l11 == 2.0);
    CHECK(h.l22 == 0.5);
    CHECK(h.det() == 1.0);
    CHECK_THROWS_AS(hamiltonian_generator(NAN, unit_cfg), std::invalid_argument);
}

TEST_CASE("exp_generator examples and branches") {
    const Symplectic2 id = exp_generator(Generator2{});
    CHECK(entry_err(id, Symplectic2::identity()) == 0.0);

    const Symplectic2 s = exp_generator(squeeze_generator(SqueezeParams(1.0, 0.0), unit));
    CHECK(entry_err(s, {std::exp(-1.0), 0.0, 0.0, std::exp(1.0)}) <= 1e-15);

    const Symplectic2 h = exp_generator(hamiltonian_generator(kPi / 2 / unit_cfg.omega(), unit_cfg));
    CHECK(entry_err(h, {0.0, 2.0, -0.5, 0.0}) <= 1e-15);

    // Nilpotent generator: det L = 0 with JL != 0, M = 1 + JL exactly.
    const Symplectic2 n = exp_generator(Generator2{0.0, 0.0, 0.3, GeneratorKind::generic});
    CHECK(entry_err(n, {1.0, 0.3, 0.0, 1.0}) == 0.0);

    // Either side of the series threshold agrees with the closed forms.
    for (double det : {-2e-12, -5e-13, 5e-13, 2e-12}) {
        const double l = std::sqrt(std::abs(det));
        const Generator2 g = det < 0 ? Generator2{0.0, l, 0.0, GeneratorKind::generic}
                                     : Generator2{l, 0.0, l, GeneratorKind::generic};
        const Symplectic2 m = exp_generator(g);
        const Symplectic2 expect = det < 0 ? Symplectic2{std::exp(l), 0.0, 0.0, std::exp(-l)}
                                           : Symplectic2{std::cos(l), std::sin(l), -std::sin(l), std::cos(l)};
        CHECK(entry_err(m, expect) <= 1e-15);
    }
}

TEST_CASE("squeeze_matrix examples") {
    CHECK(entry_err(squeeze_matrix(SqueezeParams(0.0, 2.0), unit), Symplectic2::identity()) == 0.0);
    CHECK(entry_err(squeeze_matrix(SqueezeParams(1.0, 0.0), unit), {std::exp(-1.0), 0.0, 0.0, std::exp(1.0)}) <=
          1e-15);
    const Symplectic2 m = squeeze_matrix(SqueezeParams(0.5, kPi), unit);
    CHECK(entry_err(m, {std::exp(0.5), 0.0, 0.0, std::exp(-0.5)}) <= 1e-15);
}

TEST_CASE("evolution_matrix examples") {
    CHECK(entry_err(evolution_matrix(0.0, unit_cfg), Symplectic2::identity()) == 0.0);
    CHECK(entry_err(evolution_matrix(kPi / unit_cfg.omega(), unit_cfg), {-1.0, 0.0, 0.0, -1.0}) <= 1e-15);
    CHECK(entry_err(evolution_matrix(kPi / 2 / unit_cfg.omega(), unit_cfg), {0.0, 2.0, -0.5, 0.0}) <= 1e-15);
    const Symplectic2 a = evolution_matrix(1.3, unit_cfg);
    const Symplectic2 b = evolution_matrix(1.3 + 2.0 * kPi / unit_cfg.omega(), unit_cfg);
    CHECK(entry_err(a, b) <= 1e-14);
}

TEST_CASE("compose examples") {
    const Symplectic2 m = squeeze_matrix(SqueezeParams(0.8, 1.1), unit_cfg);
    CHECK(entry_err(compose(Symplectic2::identity(), m), m) == 0.0);
    const Symplectic2 neg = compose(evolution_matrix(kPi / unit_cfg.omega(), unit_cfg), m);
    CHECK(entry_err(neg, {-m.a, -m.b, -m.c, -m.d}) <= 1e-15);

    const double t = kPi / 4 / unit_cfg.omega();
    const Symplectic2 p = compose(evolution_matrix(t, unit_cfg), squeeze_matrix(SqueezeParams(0.5, 0.0), unit_cfg));
    const double c = std::cos(kPi / 4);
    CHECK(p.a == doctest::Approx(c * std::exp(-0.5)).epsilon(1e-15));
    CHECK(p.b == doctest::Approx(2.0 * c * std::exp(0.5)).epsilon(1e-15));
    CHECK(p.c == doctest::Approx(-0.5 * c * std::exp(-0.5)).epsilon(1e-15));
    CHECK(p.d == doctest::Approx(c * std::exp(0.5)).epsilon(1e-15));

    CHECK_THROWS_AS(compose(Symplectic2{2.0, 0.0, 0.0, 1.0}, m), std::invalid_argument);
}

TEST_CASE("property: 1000 random draws of the group invariants") {
    numerics::RngStream rng(7001, 0);
    double worst_det = 0.0;
    double worst_exp = 0.0;
    double worst_sub = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const OscillatorConfig cfg(0.5 + 2.0 * rng.uniform(), 0.1 + 2.0 * rng.uniform(), 0.5 + rng.uniform());
        const SqueezeParams sq(3.0 * rng.uniform(), 2.0 * kPi * rng.uniform());
        const double t = 4.0 * kPi * rng.uniform() / cfg.omega();
        const double t2 = 4.0 * kPi * rng.uniform() / cfg.omega();
        const Symplectic2 s = squeeze_matrix(sq, cfg);
        const Symplectic2 h = evolution_matrix(t, cfg);
        const Symplectic2 m = compose(h, s);
        worst_det = std::max({worst_det, symplectic_defect(s), symplectic_defect(h), symplectic_defect(m)});
        worst_exp = std::max(worst_exp, entry_err(exp_generator(squeeze_generator(sq, cfg)), s));
        worst_exp = std::max(worst_exp, entry_err(exp_generator(hamiltonian_generator(t, cfg)), h));
        worst_sub = std::max(worst_sub, entry_err(evolution_matrix(t, cfg) * evolution_matrix(t2, cfg),
                                                  evolution_matrix(t + t2, cfg)));
        CHECK(s.is_unimodular());
        CHECK(m.is_unimodular());
    }
    CHECK(worst_det <= 1e-12);
    CHECK(worst_exp <= 1e-12);
    CHECK(worst_sub <= 1e-12);
}

TEST_CASE("Symplectic2::is_unimodular") {
    CHECK(Symplectic2::identity().is_unimodular());
    CHECK_FALSE(Symplectic2{1.0, 0.0, 0.0, 1.0 + 1e-9}.is_unimodular());
    CHECK(Symplectic2{1.0, 0.0, 0.0, 1.0 + 1e-9}.is_unimodular(1e-8));
}
