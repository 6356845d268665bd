#include "bohmtoa/numerics.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/numeric/odeint.hpp>

namespace bohmtoa::numerics {

void QuadratureSpec::validate() const {
    if (!std::isfinite(lower) || !std::isfinite(upper)) {
        throw std::invalid_argument("quadrature endpoints must be finite");
    }
    if (lower > upper) throw std::invalid_argument("quadrature endpoints must be ordered");
    if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0)) {
        throw std::invalid_argument("quadrature tolerances must be non-negative");
    }
    constexpr double min_rel = 50.0 * std::numeric_limits<double>::epsilon();
    if (abs_tol <= 0.0 && rel_tol < min_rel) {
        throw std::invalid_argument("quadrature tolerance unattainable in double precision");
    }
    if (max_subdivisions < 1) throw std::invalid_argument("max_subdivisions must be >= 1");
}

// ---------------------------------------------------------------------------

std::vector<double> solve_ode(const ScalarField& f, double y0, std::span<const double> t_grid,
                              OdeTolerance tol) {
    namespace odeint = boost::numeric::odeint;
    if (!(tol.rel > 0.0) || !(tol.abs > 0.0)) {
        throw std::invalid_argument("ODE tolerances must be positive");
    }
    if (t_grid.empty()) return {};
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        if (!(t_grid[i] >= t_grid[i - 1])) throw std::invalid_argument("t_grid must be non-decreasing");
    }

    using State = std::array<double, 1>;
    std::vector<double> out;
    out.reserve(t_grid.size());

    const double span = t_grid.back() - t_grid.front();
    if (span == 0.0) {
        out.assign(t_grid.size(), y0);
        return out;
    }

    auto system = [&f](const State& y, State& dydt, double t) { dydt[0] = f(y[0], t); };
    auto observer = [&out](const State& y, double) { out.push_back(y[0]); };

    State y{y0};
    auto stepper = odeint::make_dense_output(tol.abs, tol.rel, odeint::runge_kutta_dopri5<State>());
    const double dt0 = span * 1e-3;
    try {
        odeint::integrate_times(stepper, system, y, t_grid.begin(), t_grid.end(), dt0, observer,
                                odeint::max_step_checker(1000000));
    } catch (const odeint::odeint_error& e) {
        throw ConvergenceError(std::string("ODE step-size control failed: ") + e.what(), tol.rel);
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

inline double to_open_unit(std::uint64_t bits) {
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

PhiloxBlock philox4x32(PhiloxBlock c, std::array<std::uint32_t, 2> k) {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            k[0] += kPhiloxW0;
            k[1] += kPhiloxW1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, c[0], hi0, lo0);
        mulhilo(kPhiloxM1, c[2], hi1, lo1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    }
    return c;
}

PhiloxBlock RngStream::block(std::uint64_t counter) const {
    const PhiloxBlock ctr = {static_cast<std::uint32_t>(counter), static_cast<std::uint32_t>(counter >> 32),
                             static_cast<std::uint32_t>(index_), static_cast<std::uint32_t>(index_ >> 32)};
    const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed_),
                                              static_cast<std::uint32_t>(seed_ >> 32)};
    return philox4x32(ctr, key);
}

double RngStream::uniform() {
    const PhiloxBlock b = block(position_++);
    return to_open_unit((static_cast<std::uint64_t>(b[1]) << 32) | b[0]);
}

double RngStream::normal() {
    const PhiloxBlock b = block(position_++);
    const double u1 = to_open_unit((static_cast<std::uint64_t>(b[1]) << 32) | b[0]);
    const double u2 = to_open_unit((static_cast<std::uint64_t>(b[3]) << 32) | b[2]);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double normal_sample(RngStream& stream, double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("sigma must be positive");
    return sigma * stream.normal();
}

// ---------------------------------------------------------------------------

Histogram::Histogram(double lower, double upper, std::size_t bins)
    : lower_(lower), upper_(upper), counts_(bins, 0) {
    if (bins == 0) throw std::invalid_argument("histogram needs at least one bin");
    if (!std::isfinite(lower) || !std::isfinite(upper) || !(upper > lower)) {
        throw std::invalid_argument("histogram range must be finite and non-empty");
    }
}

void Histogram::fill(double x) {
    if (x < lower_) {
        ++underflow_;
        return;
    }
    if (x > upper_ || std::isnan(x)) {
        ++overflow_;
        return;
    }
    auto i = static_cast<std::size_t>((x - lower_) / bin_width());
    if (i >= bins()) i = bins() - 1;
    ++counts_[i];
    ++in_range_;
}

double Histogram::bin_lower(std::size_t i) const {
    return lower_ + (upper_ - lower_) * static_cast<double>(i) / static_cast<double>(bins());
}

double Histogram::bin_upper(std::size_t i) const {
    return i + 1 == bins() ? upper_ : bin_lower(i + 1);
}

ChiSquareResult chi_square_gof(const Histogram& histogram, const std::function<double(double)>& pdf,
                               double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
    if (histogram.in_range() == 0) throw std::invalid_argument("chi-square test on an empty histogram");

    const std::size_t nbins = histogram.bins();
    std::vector<double> mass(nbins);
    double total_mass = 0.0;
    for (std::size_t i = 0; i < nbins; ++i) {
        mass[i] = integrate_or_throw(pdf, {histogram.bin_lower(i), histogram.bin_upper(i), 1e-13, 1e-11},
                                     "chi-square bin mass");
        total_mass += mass[i];
    }
    if (!(total_mass > 0.0)) throw std::invalid_argument("pdf has no mass over the histogram range");

    const auto n = static_cast<double>(histogram.in_range());
    struct Group {
        double expected = 0.0;
        double observed = 0.0;
    };
    std::vector<Group> groups;
    Group pending;
    for (std::size_t i = 0; i < nbins; ++i) {
        pending.expected += n * mass[i] / total_mass;
        pending.observed += static_cast<double>(histogram.counts()[i]);
        if (pending.expected >= 5.0) {
            groups.push_back(pending);
            pending = {};
        }
    }
    if (pending.expected > 0.0 || pending.observed > 0.0) {
        if (groups.empty()) {
            groups.push_back(pending);
        } else {
            groups.back().expected += pending.expected;
            groups.back().observed += pending.observed;
        }
    }
    if (groups.size() < 2 || groups.front().expected < 5.0) {
        throw std::invalid_argument("too few samples for a chi-square test");
    }

    ChiSquareResult result;
    for (const Group& g : groups) {
        const double d = g.observed - g.expected;
        result.statistic += d * d / g.expected;
    }
    result.merged_bins = groups.size();
    result.degrees_of_freedom = static_cast<int>(groups.size()) - 1;
    const boost::math::chi_squared dist(result.degrees_of_freedom);
    result.critical_value = boost::math::quantile(boost::math::complement(dist, alpha));
    result.p_value = boost::math::cdf(boost::math::complement(dist, result.statistic));
    result.passed = result.statistic <= result.critical_value;
    return result;
}

}  // namespace bohmtoa::numerics
