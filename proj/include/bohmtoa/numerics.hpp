#pragma once

// Shared numerical machinery: adaptive Gauss-Kronrod quadrature, adaptive
// Dormand-Prince ODE stepping with dense output, counter-based random
// streams, histograms and a Pearson chi-square goodness-of-fit test.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bohmtoa/error.hpp"

namespace bohmtoa::numerics {

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

struct QuadratureSpec {
    double lower = 0.0;
    double upper = 1.0;
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 2000;

    void validate() const;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int subdivisions = 0;
    bool converged = false;
};

namespace detail {

// 21-point Kronrod rule with its embedded 10-point Gauss rule (QUADPACK qk21).
inline constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
    double a;
    double b;
    double value;
    double error;

    bool operator<(const Segment& other) const { return error < other.error; }
};

template <class F>
Segment kronrod21(F& f, double a, double b) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr double uflow = std::numeric_limits<double>::min();

    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double abs_half = std::abs(half);

    std::array<double, 10> fv1{};
    std::array<double, 10> fv2{};
    const double fc = static_cast<double>(f(centre));
    double res_gauss = 0.0;
    double res_kronrod = kKronrodWeights[10] * fc;
    double res_abs = std::abs(res_kronrod);

    for (std::size_t j = 0; j < 10; ++j) {
        const double x = half * kKronrodNodes[j];
        const double f1 = static_cast<double>(f(centre - x));
        const double f2 = static_cast<double>(f(centre + x));
        fv1[j] = f1;
        fv2[j] = f2;
        const double sum = f1 + f2;
        res_kronrod += kKronrodWeights[j] * sum;
        res_abs += kKronrodWeights[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) res_gauss += kGaussWeights[j / 2] * sum;
    }

    const double mean = 0.5 * res_kronrod;
    double res_asc = kKronrodWeights[10] * std::abs(fc - mean);
    for (std::size_t j = 0; j < 10; ++j) {
        res_asc += kKronrodWeights[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
    }

    const double value = res_kronrod * half;
    res_abs *= abs_half;
    res_asc *= abs_half;
    double err = std::abs((res_kronrod - res_gauss) * half);
    if (res_asc != 0.0 && err != 0.0) {
        err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
    }
    if (res_abs > uflow / (50.0 * eps)) {
        err = std::max(50.0 * eps * res_abs, err);
    }
    return {a, b, value, err};
}

}  // namespace detail

// Adaptive bisection on the segment with the largest error estimate.
// Stops when the summed error estimate meets max(abs_tol, rel_tol * |value|);
// an exhausted subdivision budget or an unsplittable segment returns the
// partial result with converged = false.
template <class F>
QuadratureResult integrate(F&& f, const QuadratureSpec& spec) {
    spec.validate();
    if (spec.lower == spec.upper) return {0.0, 0.0, 1, true};

    std::priority_queue<detail::Segment> heap;
    heap.push(detail::kronrod21(f, spec.lower, spec.upper));
    double total = heap.top().value;
    double total_err = heap.top().error;
    int segments = 1;

    auto tolerance = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };

    bool stuck = false;
    while (total_err > tolerance() && segments < spec.max_subdivisions) {
        const detail::Segment worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > std::min(worst.a, worst.b) && mid < std::max(worst.a, worst.b))) {
            stuck = true;
            break;
        }
        heap.pop();
        const detail::Segment left = detail::kronrod21(f, worst.a, mid);
        const detail::Segment right = detail::kronrod21(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++segments;
    }

    // Resum to shed the drift of the incremental updates.
    double value = 0.0;
    double error = 0.0;
    auto drained = heap;
    while (!drained.empty()) {
        value += drained.top().value;
        error += drained.top().error;
        drained.pop();
    }
    total = value;
    const bool converged = !stuck && error <= tolerance();
    return {value, error, segments, converged};
}

template <class F>
QuadratureResult integrate(F&& f, double lower, double upper, double abs_tol = 1e-10,
                           double rel_tol = 1e-10, int max_subdivisions = 2000) {
    return integrate(std::forward<F>(f),
                     QuadratureSpec{lower, upper, abs_tol, rel_tol, max_subdivisions});
}

// Integrates and throws ConvergenceError when the tolerance was not met.
template <class F>
double integrate_or_throw(F&& f, const QuadratureSpec& spec, const std::string& what) {
    const QuadratureResult r = integrate(std::forward<F>(f), spec);
    if (!r.converged) {
        throw ConvergenceError("quadrature did not converge: " + what, r.error);
    }
    return r.value;
}

// ---------------------------------------------------------------------------
// ODE
// ---------------------------------------------------------------------------

struct OdeTolerance {
    double rel = 1e-9;
    double abs = 1e-12;
};

// dy/dt = f(y, t)
using ScalarField = std::function<double(double, double)>;

// Dense-output samples y(t_grid[i]); integration starts at t_grid.front()
// with y(t_grid.front()) = y0. The grid must be non-decreasing.
std::vector<double> solve_ode(const ScalarField& f, double y0, std::span<const double> t_grid,
                              OdeTolerance tol = {});

// ---------------------------------------------------------------------------
// Random streams
// ---------------------------------------------------------------------------

using PhiloxBlock = std::array<std::uint32_t, 4>;

// Philox4x32-10 bijection of a 128-bit counter under a 64-bit key.
PhiloxBlock philox4x32(PhiloxBlock counter, std::array<std::uint32_t, 2> key);

// Counter-based stream: draw k of stream (seed, index) is a pure function of
// (seed, index, k), so workers can split a run by seeking.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t index, std::uint64_t position = 0)
        : seed_(seed), index_(index), position_(position) {}

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t index() const noexcept { return index_; }
    std::uint64_t position() const noexcept { return position_; }
    void seek(std::uint64_t position) noexcept { position_ = position; }

    PhiloxBlock block(std::uint64_t counter) const;

    // Uniform on the open interval (0, 1), 53 random bits.
    double uniform();
    // Standard normal by Box-Muller on a single block.
    double normal();

private:
    std::uint64_t seed_;
    std::uint64_t index_;
    std::uint64_t position_;
};

double normal_sample(RngStream& stream, double sigma);

// ---------------------------------------------------------------------------
// Histogram and chi-square goodness of fit
// ---------------------------------------------------------------------------

class Histogram {
public:
    Histogram(double lower, double upper, std::size_t bins);

    // Values equal to the upper edge land in the last bin.
    void fill(double x);

    double lower() const noexcept { return lower_; }
    double upper() const noexcept { return upper_; }
    std::size_t bins() const noexcept { return counts_.size(); }
    double bin_width() const noexcept { return (upper_ - lower_) / static_cast<double>(bins()); }
    double bin_lower(std::size_t i) const;
    double bin_upper(std::size_t i) const;
    double bin_centre(std::size_t i) const { return 0.5 * (bin_lower(i) + bin_upper(i)); }

    const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }
    std::uint64_t in_range() const noexcept { return in_range_; }
    std::uint64_t underflow() const noexcept { return underflow_; }
    std::uint64_t overflow() const noexcept { return overflow_; }

    bool operator==(const Histogram&) const = default;

private:
    double lower_;
    double upper_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t in_range_ = 0;
    std::uint64_t underflow_ = 0;
    std::uint64_t overflow_ = 0;
};

struct ChiSquareResult {
    double statistic = 0.0;
    int degrees_of_freedom = 0;
    double critical_value = 0.0;
    double p_value = 0.0;
    bool passed = false;
    std::size_t merged_bins = 0;
};

// Pearson test of the in-range counts against bin masses of `pdf` obtained by
// quadrature (renormalized over the histogram range). Adjacent bins are
// merged left to right until each expected count reaches 5.
ChiSquareResult chi_square_gof(const Histogram& histogram, const std::function<double(double)>& pdf,
                               double alpha);

}  // namespace bohmtoa::numerics
