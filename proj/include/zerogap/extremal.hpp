#pragma once

// Beurling's majorant of sgn, Selberg's minorant of an interval, and the
// Fejer-type kernels, packaged as TestFunction values.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <vector>

#include "zerogap/errors.hpp"
#include "zerogap/quadrature.hpp"
#include "zerogap/special_math.hpp"
#include "zerogap/test_function.hpp"

namespace zerogap {

/// log 2 / (2 pi): the largest transform support for which the prime sum
/// of the explicit formula is empty.
inline const double kPrimeFreeSupport = std::numbers::ln2 / (2.0 * std::numbers::pi);

namespace detail {

inline double sinc_squared_pi(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - std::numbers::pi * std::numbers::pi * x * x / 3.0;
    const double s = std::sin(std::numbers::pi * x) / (std::numbers::pi * x);
    return s * s;
}

// 1/x - psi'(1 + x) for x > 0. The direct difference cancels badly for large
// x, where the (enveloping) asymptotic series is used instead.
inline double beurling_bracket(double x) {
    if (x < 20.0) return 1.0 / x - trigamma_real(1.0 + x);
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double series = 0.0;
    double power = inv2 * inv;
    for (double b : kBernoulliEven) {
        series += b * power;
        power *= inv2;
    }
    return 0.5 * inv2 - series;
}

}  // namespace detail

/// B(x) - sgn(x), evaluated without the cancellation of forming B first.
///
/// For x > 0 the defining series is sum 1/(n+x)^2 = psi'(1+x). For x < 0 the
/// singular terms are removed with psi'(1-y) + psi'(y) = pi^2 / sin^2(pi y):
///   B(-y) = -1 + 2 [sinc^2(pi y) - (sin(pi y)/pi)^2 (1/y - psi'(1+y))].
inline double beurling_deviation(double x) {
    if (x == 0.0) return 1.0;
    const double y = std::abs(x);
    const double s = std::sin(std::numbers::pi * y) / std::numbers::pi;
    const double bracket = detail::beurling_bracket(y);
    if (x > 0.0) return 2.0 * s * s * bracket;
    return 2.0 * (detail::sinc_squared_pi(y) - s * s * bracket);
}

/// Beurling's entire majorant of sgn(x).
inline double beurling(double x) {
    const double sign = x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
    return sign + beurling_deviation(x);
}

namespace detail {

inline double sign_of(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// sup of t^2 |f(t)| over |t| >= from: dense sampling up to `far`, then the
// tail model's own bound (t^2 / (t - m)^p is decreasing for p >= 2).
inline double declare_envelope(const std::function<double(double)>& f, const OscillatoryTail& tail,
                               double from, double far, double step) {
    double sup = 0.0;
    for (double t = from; t <= far; t += step) {
        sup = std::max(sup, t * t * std::abs(f(t)));
        sup = std::max(sup, t * t * std::abs(f(-t)));
    }
    double shift = tail.remainder_shift;
    for (const auto& term : tail.terms) shift = std::max(shift, std::abs(term.shift));
    double far_bound = 0.0;
    for (const auto& term : tail.terms) {
        far_bound += std::abs(term.coef) * far * far / std::pow(far - shift, term.power);
    }
    far_bound += tail.remainder_coef * far * far / std::pow(far - shift, tail.remainder_power);
    // 2% headroom over the sampled maximum
    return std::max(1.02 * sup, far_bound);
}

// Extent of {t : f(t) > 0} inside [from, to], bracketed on a grid and refined
// by bisection. Returns lo > hi when no positive sample exists.
inline PositivityWindow locate_positivity(const std::function<double(double)>& f, double from,
                                          double to, double step) {
    const auto count = static_cast<long>(std::ceil((to - from) / step));
    long first = -1;
    long last = -1;
    for (long i = 0; i <= count; ++i) {
        const double t = from + step * static_cast<double>(i);
        if (f(t) > 0.0) {
            if (first < 0) first = i;
            last = i;
        }
    }
    if (first < 0) return {1.0, -1.0, false};
    auto refine = [&](double outside, double inside) {
        for (int k = 0; k < 80; ++k) {
            const double mid = 0.5 * (outside + inside);
            if (f(mid) > 0.0) {
                inside = mid;
            } else {
                outside = mid;
            }
        }
        return outside;
    };
    const double lo = first == 0 ? from : refine(from + step * (first - 1), from + step * first);
    const double hi = last == count ? to : refine(from + step * (last + 1), from + step * last);
    return {lo, hi, false};
}

}  // namespace detail

/// Selberg's minorant of the indicator of [alpha, beta] with transform
/// supported in [-delta, delta]:
///   S(z) = -1/2 (B(delta (alpha - z)) + B(delta (z - beta))).
inline TestFunction selberg_minorant(double alpha, double beta, double delta) {
    if (!(alpha < beta)) {
        std::ostringstream os;
        os << "selberg_minorant: requires alpha < beta, got [" << alpha << ", " << beta << "]";
        throw DomainError(os.str());
    }
    if (!(delta > 0.0)) throw DomainError("selberg_minorant: requires delta > 0");

    TestFunction f;
    std::ostringstream name;
    name << "selberg_minorant(" << alpha << ", " << beta << ", " << delta << ")";
    f.name = name.str();
    f.value = [alpha, beta, delta](double t) {
        // the sgn parts combine to the indicator of (alpha, beta)
        const double indicator =
            -0.5 * (detail::sign_of(alpha - t) + detail::sign_of(t - beta));
        return indicator - 0.5 * (beurling_deviation(delta * (alpha - t)) +
                                  beurling_deviation(delta * (t - beta)));
    };
    f.integral = beta - alpha - 1.0 / delta;
    f.support_radius = delta;
    f.even = std::abs(alpha + beta) <= 1e-14 * (beta - alpha);
    f.scale = 1.0 / delta;

    // B(x) - sgn(x) = sinc^2(pi x) + h(x), h odd, h(x) = -s^2/(3x^3) + O(s^2/x^5)
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const double omega = 2.0 * std::numbers::pi * delta;
    const double k2 = 1.0 / (4.0 * pi2 * delta * delta);
    const double k3 = 1.0 / (12.0 * pi2 * delta * delta * delta);
    auto& terms = f.tail.terms;
    for (double c : {alpha, beta}) {
        terms.push_back({-k2, 0.0, 0.0, c, 2});
        terms.push_back({k2, omega, -omega * c, c, 2});
    }
    terms.push_back({-k3, 0.0, 0.0, alpha, 3});
    terms.push_back({k3, omega, -omega * alpha, alpha, 3});
    terms.push_back({k3, 0.0, 0.0, beta, 3});
    terms.push_back({-k3, omega, -omega * beta, beta, 3});
    const double reach = std::max(std::abs(alpha), std::abs(beta));
    f.tail.remainder_coef = 1.0 / (15.0 * pi2 * std::pow(delta, 5));
    f.tail.remainder_shift = reach;
    f.tail.remainder_power = 5;
    f.tail.valid_from = reach + 1.0 / delta;

    const double env_from = 1.25 * reach;
    f.envelope = {detail::declare_envelope(f.value, f.tail, env_from, env_from + 200.0 / delta,
                                           0.01 / delta),
                  env_from};

    const double margin = 10.0 / delta;
    f.positivity = detail::locate_positivity(f.value, alpha - margin, beta + margin, 0.02 / delta);
    return f;
}

/// Fejer kernel sinc^2(pi delta t); transform (1/delta)(1 - |x|/delta)_+.
inline TestFunction fejer(double delta) {
    if (!(delta > 0.0)) throw DomainError("fejer: requires delta > 0");
    TestFunction f;
    std::ostringstream name;
    name << "fejer(" << delta << ")";
    f.name = name.str();
    f.value = [delta](double t) { return detail::sinc_squared_pi(delta * t); };
    f.integral = 1.0 / delta;
    f.support_radius = delta;
    f.positivity = {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
                    true};
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const double coef = 1.0 / (2.0 * pi2 * delta * delta);
    f.tail.terms = {{coef, 0.0, 0.0, 0.0, 2}, {-coef, 2.0 * std::numbers::pi * delta, 0.0, 0.0, 2}};
    f.tail.valid_from = 1.0 / delta;
    f.envelope = {1.0 / (pi2 * delta * delta), 1.0 / delta};
    f.scale = 1.0 / delta;
    f.transform = [delta](double x) {
        return cplx{std::max(0.0, 1.0 - std::abs(x) / delta) / delta, 0.0};
    };
    return f;
}

namespace detail {

inline double cubic_bspline(double x) {
    x = std::abs(x);
    if (x <= 1.0) return 2.0 / 3.0 - x * x + 0.5 * x * x * x;
    if (x <= 2.0) return (2.0 - x) * (2.0 - x) * (2.0 - x) / 6.0;
    return 0.0;
}

inline double cubic_bspline_second(double x) {
    x = std::abs(x);
    if (x <= 1.0) return -2.0 + 3.0 * x;
    if (x <= 2.0) return 2.0 - x;
    return 0.0;
}

}  // namespace detail

/// (t0^2 - t^2) sinc^4(pi delta t / 2): positive exactly on (-t0, t0) apart
/// from isolated zeros, transform supported in [-delta, delta].
///
/// sinc^4 rather than sinc^2 keeps the product integrable (quadratic decay).
inline TestFunction windowed_fejer(double t0, double delta) {
    if (!(t0 > 0.0)) throw DomainError("windowed_fejer: requires t0 > 0");
    if (!(delta > 0.0)) throw DomainError("windowed_fejer: requires delta > 0");
    TestFunction f;
    std::ostringstream name;
    name << "windowed_fejer(" << t0 << ", " << delta << ")";
    f.name = name.str();
    const double half = 0.5 * delta;
    f.value = [t0, half](double t) {
        const double s = detail::sinc_squared_pi(half * t);
        return (t0 * t0 - t * t) * s * s;
    };
    f.support_radius = delta;
    f.positivity = {-t0, t0, false};
    f.scale = 1.0 / delta;

    // sin^4(a t) = (3 - 4 cos 2at + cos 4at) / 8, a = pi delta / 2
    const double a = std::numbers::pi * half;
    const double a4 = a * a * a * a;
    for (auto [c, k] : {std::pair{3.0, 0.0}, std::pair{-4.0, 2.0}, std::pair{1.0, 4.0}}) {
        f.tail.terms.push_back({t0 * t0 * c / (8.0 * a4), k * a, 0.0, 0.0, 4});
        f.tail.terms.push_back({-c / (8.0 * a4), k * a, 0.0, 0.0, 2});
    }
    f.tail.valid_from = std::max(t0, 1.0 / delta);
    const double env_from = 2.0 * std::max(t0, 1.0 / delta);
    f.envelope = {(1.0 + t0 * t0 / (env_from * env_from)) / a4, env_from};

    const double pi2 = std::numbers::pi * std::numbers::pi;
    f.transform = [t0, half, pi2](double x) {
        const double u = x / half;
        return cplx{t0 * t0 * detail::cubic_bspline(u) / half +
                        detail::cubic_bspline_second(u) / (4.0 * pi2 * half * half * half),
                    0.0};
    };
    f.transform_knots = {half};

    const auto tail = f.tail.expansion();
    LineOptions opts;
    opts.tol = 1e-9 * std::max(1.0, t0 * t0 / delta);
    opts.envelope = f.envelope;
    opts.tail = &tail;
    opts.panel_width = 0.5 / delta;
    f.integral = integrate_line(f.value, opts).value;
    return f;
}

/// Numerical transform hat f(x) = int f(u) e^{-2 pi i u x} du.
inline cplx fourier_at(const TestFunction& f, double x, double tol = 1e-10, bool real_only = false) {
    const double kappa = 2.0 * std::numbers::pi * x;
    LineOptions opts;
    opts.tol = tol;
    opts.envelope = f.envelope;
    opts.panel_width = 0.5 * std::min(f.scale, x != 0.0 ? 1.0 / std::abs(x) : f.scale);

    const auto cos_tail = f.tail.modulated(kappa, 0.0).expansion();
    opts.tail = &cos_tail;
    const auto& value = f.value;
    const double re = integrate_line([&](double t) { return value(t) * std::cos(kappa * t); }, opts).value;
    if (real_only || x == 0.0) return {re, 0.0};

    const auto sin_tail = f.tail.modulated(kappa, -0.5 * std::numbers::pi).expansion();
    opts.tail = &sin_tail;
    const double im = integrate_line([&](double t) { return value(t) * std::sin(kappa * t); }, opts).value;
    return {re, -im};
}

}  // namespace zerogap
