#pragma once

// Adaptive Gauss-Kronrod quadrature on finite intervals and on the whole
// real line. Line integrals are cut at |t| = T; the part beyond T is either
// bounded through a declared quadratic envelope or approximated by a
// caller-supplied tail expansion with a remainder bound.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <span>
#include <vector>

#include "zerogap/errors.hpp"

namespace zerogap {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;  // absolute
    long evaluations = 0;
};

/// |g(t)| <= bound / t^2 for |t| >= from.
struct Envelope {
    double bound = 0.0;
    double from = 1.0;
};

/// Approximation of the integral of g over |t| > T, valid for T >= valid_from.
struct TailExpansion {
    std::function<double(double)> integral;
    std::function<double(double)> remainder;  // bound on |true tail - integral(T)|
    double valid_from = 0.0;
};

struct LineOptions {
    double tol = 1e-10;
    Envelope envelope;
    const TailExpansion* tail = nullptr;
    std::span<const double> breakpoints = {};
    double panel_width = 1.0;  // initial partition of [-T, T]
    long max_evaluations = 50'000'000;
};

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// weights of the embedded 7-point Gauss rule (odd Kronrod indices, then centre)
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

template <class F>
Panel gauss_kronrod_15(F&& g, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = g(centre);
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGaussWeights[3];
    double abs_sum = std::abs(kronrod);
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kKronrodNodes[j];
        const double f1 = g(centre - dx);
        const double f2 = g(centre + dx);
        kronrod += kKronrodWeights[j] * (f1 + f2);
        abs_sum += kKronrodWeights[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) gauss += kGaussWeights[j / 2] * (f1 + f2);
    }
    const double value = kronrod * half;
    const double roundoff = 50.0 * std::numeric_limits<double>::epsilon() * abs_sum * std::abs(half);
    const double error = std::max(std::abs((kronrod - gauss) * half), roundoff);
    return {a, b, value, error};
}

}  // namespace detail

/// Globally adaptive G7-K15 over the partition given by `cuts` (sorted,
/// at least two entries). Bisects the worst panel until the summed error
/// estimate is below `tol`.
template <class F>
QuadratureResult integrate_partition(F&& g, std::span<const double> cuts, double tol,
                                     long max_evaluations = 50'000'000) {
    std::priority_queue<detail::Panel> heap;
    double total = 0.0;
    double error = 0.0;
    long evals = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (!(cuts[i + 1] > cuts[i])) continue;
        auto p = detail::gauss_kronrod_15(g, cuts[i], cuts[i + 1]);
        evals += 15;
        total += p.value;
        error += p.error;
        heap.push(p);
    }
    while (error > tol && !heap.empty()) {
        if (evals >= max_evaluations) {
            throw AccuracyError("quadrature: evaluation budget exhausted", total, error);
        }
        const auto worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            throw AccuracyError("quadrature: panel width underflow", total, error);
        }
        auto left = detail::gauss_kronrod_15(g, worst.a, mid);
        auto right = detail::gauss_kronrod_15(g, mid, worst.b);
        evals += 30;
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // re-sum to shed drift from the incremental updates
    total = 0.0;
    error = 0.0;
    for (; !heap.empty(); heap.pop()) {
        total += heap.top().value;
        error += heap.top().error;
    }
    return {total, error, evals};
}

template <class F>
QuadratureResult integrate_interval(F&& g, double a, double b, double tol,
                                    long max_evaluations = 50'000'000) {
    const std::array<double, 2> cuts{a, b};
    return integrate_partition(g, cuts, tol, max_evaluations);
}

namespace detail {

inline std::vector<double> line_partition(double cutoff, double panel_width,
                                          std::span<const double> breakpoints) {
    const double width = panel_width > 0.0 ? panel_width : 1.0;
    const auto panels = static_cast<long>(std::ceil(2.0 * cutoff / width));
    std::vector<double> cuts;
    cuts.reserve(static_cast<std::size_t>(panels) + breakpoints.size() + 1);
    for (long i = 0; i <= panels; ++i) {
        cuts.push_back(-cutoff + 2.0 * cutoff * static_cast<double>(i) / static_cast<double>(panels));
    }
    for (double b : breakpoints) {
        if (b > -cutoff && b < cutoff) cuts.push_back(b);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    return cuts;
}

}  // namespace detail

/// Integral of g over the real line with absolute error estimate <= opts.tol.
///
/// Without a tail expansion the cutoff is T = max(from, 4 bound / tol), so the
/// envelope tail 2 bound / T is at most tol / 2. With one, T starts at
/// max(from, valid_from) and doubles until the remainder is below tol / 2.
template <class F>
QuadratureResult integrate_line(F&& g, const LineOptions& opts) {
    if (!(opts.tol > 0.0)) throw DomainError("integrate_line: tol must be positive");
    const double half_tol = 0.5 * opts.tol;
    double cutoff = std::max(opts.envelope.from, 1e-300);
    double tail_value = 0.0;
    double tail_error = 0.0;
    if (opts.tail != nullptr) {
        cutoff = std::max(cutoff, opts.tail->valid_from);
        tail_error = opts.tail->remainder(cutoff);
        while (tail_error > half_tol) {
            cutoff *= 2.0;
            tail_error = opts.tail->remainder(cutoff);
            if (cutoff > 1e12) {
                throw AccuracyError("integrate_line: tail remainder does not decay", 0.0, tail_error);
            }
        }
        tail_value = opts.tail->integral(cutoff);
    } else {
        cutoff = std::max(cutoff, 4.0 * opts.envelope.bound / opts.tol);
        tail_error = 2.0 * opts.envelope.bound / cutoff;
    }
    const double estimated_evals = 2.0 * cutoff / std::max(opts.panel_width, 1e-12) * 15.0;
    if (estimated_evals > static_cast<double>(opts.max_evaluations)) {
        throw AccuracyError("integrate_line: cutoff too large for evaluation budget", 0.0,
                            2.0 * opts.envelope.bound / std::max(opts.envelope.from, 1e-300));
    }
    const auto cuts = detail::line_partition(cutoff, opts.panel_width, opts.breakpoints);
    auto body = integrate_partition(g, cuts, half_tol, opts.max_evaluations);
    return {body.value + tail_value, body.error_estimate + tail_error, body.evaluations};
}

/// n-point Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

inline GaussLegendreRule gauss_legendre(int n) {
    GaussLegendreRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // recompute the derivative at the converged node
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[static_cast<std::size_t>(i)] = -x;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return rule;
}

}  // namespace zerogap
