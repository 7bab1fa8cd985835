#pragma once

// Complex log-gamma and digamma, real trigamma, and the oscillatory
// tail integrals used by the quadrature layer. Double precision only.

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

#include "zerogap/errors.hpp"

namespace zerogap {

using cplx = std::complex<double>;

namespace detail {

// B_2, B_4, ..., B_16
inline constexpr std::array<double, 8> kBernoulliEven = {
    1.0 / 6.0,   -1.0 / 30.0,     1.0 / 42.0, -1.0 / 30.0,
    5.0 / 66.0,  -691.0 / 2730.0, 7.0 / 6.0,  -3617.0 / 510.0};

// Below this modulus the argument is shifted upward before the asymptotic
// series is used. With eight Bernoulli terms the truncation error at
// |z| = 15 is below 1e-19.
inline constexpr double kAsymptoticRadius = 15.0;

inline bool is_nonpositive_integer(cplx z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

[[noreturn]] inline void throw_pole(const char* fn, cplx z) {
    std::ostringstream os;
    os << fn << ": pole at z = " << z.real();
    throw DomainError(os.str());
}

// cot(pi z), stable for large |Im z|.
inline cplx cot_pi(cplx z) {
    const double a = 2.0 * std::numbers::pi * z.real();
    const double b = 2.0 * std::numbers::pi * z.imag();
    if (std::abs(b) > 40.0) {
        // cosh(b) dominates; correction terms are below 1e-17
        const double inv = 2.0 * std::exp(-std::abs(b));
        return {std::sin(a) * inv, -std::copysign(1.0, b) * (1.0 + std::cos(a) * inv)};
    }
    const double den = std::cosh(b) - std::cos(a);
    return {std::sin(a) / den, -std::sinh(b) / den};
}

}  // namespace detail

/// Principal branch of log Gamma(z): analytic on C minus (-inf, 0], agreeing
/// with Stirling's series as Re z -> +inf.
inline cplx log_gamma(cplx z) {
    if (detail::is_nonpositive_integer(z)) detail::throw_pole("log_gamma", z);
    cplx shift_sum{0.0, 0.0};
    // Summing principal logs of z + k keeps the branch continuous off the
    // negative real axis.
    while (std::abs(z) < detail::kAsymptoticRadius || z.real() < 0.0) {
        shift_sum += std::log(z);
        z += 1.0;
    }
    const cplx inv = 1.0 / z;
    const cplx inv2 = inv * inv;
    cplx series{0.0, 0.0};
    cplx power = inv;
    for (std::size_t k = 0; k < detail::kBernoulliEven.size(); ++k) {
        const double n = 2.0 * static_cast<double>(k + 1);
        series += detail::kBernoulliEven[k] / (n * (n - 1.0)) * power;
        power *= inv2;
    }
    const double half_log_2pi = 0.5 * std::log(2.0 * std::numbers::pi);
    return (z - 0.5) * std::log(z) - z + half_log_2pi + series - shift_sum;
}

inline double log_gamma(double x) { return log_gamma(cplx{x, 0.0}).real(); }

/// Digamma psi = Gamma'/Gamma. Reflection for Re z < 0, upward recurrence
/// psi(z) = psi(z+1) - 1/z until |z| >= 15, then the Bernoulli asymptotic
/// series.
inline cplx digamma(cplx z) {
    if (detail::is_nonpositive_integer(z)) detail::throw_pole("digamma", z);
    if (z.real() < 0.0) {
        return digamma(1.0 - z) - std::numbers::pi * detail::cot_pi(z);
    }
    cplx acc{0.0, 0.0};
    while (std::abs(z) < detail::kAsymptoticRadius) {
        acc -= 1.0 / z;
        z += 1.0;
    }
    const cplx inv = 1.0 / z;
    const cplx inv2 = inv * inv;
    cplx series{0.0, 0.0};
    cplx power = inv2;
    for (std::size_t k = 0; k < detail::kBernoulliEven.size(); ++k) {
        const double n = 2.0 * static_cast<double>(k + 1);
        series += detail::kBernoulliEven[k] / n * power;
        power *= inv2;
    }
    return acc + std::log(z) - 0.5 * inv - series;
}

inline double digamma(double x) { return digamma(cplx{x, 0.0}).real(); }

/// Trigamma psi'(x) for real x > 0.
inline double trigamma_real(double x) {
    if (!(x > 0.0)) {
        std::ostringstream os;
        os << "trigamma_real: requires x > 0, got " << x;
        throw DomainError(os.str());
    }
    double acc = 0.0;
    while (x < detail::kAsymptoticRadius) {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double series = 0.0;
    double power = inv2 * inv;
    for (double b : detail::kBernoulliEven) {
        series += b * power;
        power *= inv2;
    }
    return acc + inv + 0.5 * inv2 + series;
}

/// E1(x) for real x > 0.
inline double exp_integral_e1(double x) {
    if (!(x > 0.0)) throw DomainError("exp_integral_e1: requires x > 0");
    return -std::expint(-x);
}

/// Integral of e^{iv}/v over [z, inf) for z > 0, i.e. -Ci(z) + i(pi/2 - Si(z)).
inline cplx oscillatory_e1(double z) {
    if (!(z > 0.0)) throw DomainError("oscillatory_e1: requires z > 0");
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (z <= 2.0) {
        // power series for Ci and Si
        constexpr double euler_gamma = 0.57721566490153286061;
        double ci_sum = 0.0;
        double si_sum = 0.0;
        double term = 1.0;  // z^k / k!
        for (int k = 1; k < 100; ++k) {
            term *= z / k;
            const double contrib = term / k;
            if (k % 2 == 1) {
                si_sum += ((k / 2) % 2 == 0 ? contrib : -contrib);
            } else {
                ci_sum += ((k / 2) % 2 == 1 ? -contrib : contrib);
            }
            if (contrib < eps * 1e-3) break;
        }
        const double ci = euler_gamma + std::log(z) + ci_sum;
        return {-ci, std::numbers::pi / 2.0 - si_sum};
    }
    // Lentz continued fraction for E1(-iz)
    const cplx w{0.0, -z};
    constexpr double tiny = 1e-300;
    cplx b = w + 1.0;
    cplx c = 1.0 / tiny;
    cplx d = 1.0 / b;
    cplx h = d;
    for (int i = 1; i < 100000; ++i) {
        const double a = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const cplx del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < eps) break;
    }
    return h * cplx{std::cos(z), std::sin(z)};
}

/// Integral of e^{i omega u} u^{-power} over [start, inf), start > 0, power >= 1.
/// omega == 0 requires power >= 2.
inline cplx oscillatory_power_tail(double start, double omega, int power) {
    if (!(start > 0.0) || power < 1) throw DomainError("oscillatory_power_tail: bad arguments");
    if (omega == 0.0) {
        if (power == 1) throw DomainError("oscillatory_power_tail: divergent integral");
        return {std::pow(start, 1 - power) / (power - 1), 0.0};
    }
    if (omega < 0.0) return std::conj(oscillatory_power_tail(start, -omega, power));
    cplx j = oscillatory_e1(omega * start);
    const cplx edge{std::cos(omega * start), std::sin(omega * start)};
    for (int p = 2; p <= power; ++p) {
        j = edge * std::pow(start, 1 - p) / static_cast<double>(p - 1) +
            cplx{0.0, omega / (p - 1)} * j;
    }
    return j;
}

}  // namespace zerogap
