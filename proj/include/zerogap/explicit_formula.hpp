#pragma once

// Both sides of Weil's explicit formula for an L-function with functional
// equation Lambda(s) = Q^s prod Gamma_R(s + mu_j) L(s):
//
//   sum_gamma f(gamma) = hat f(0) log Q / pi + (1/2pi) sum_j ell(mu_j, f)
//                        + (1/2pi) sum_n [c(n) hat f(log n / 2pi) + conj c(n) hat f(-log n / 2pi)] / sqrt n
//
//   ell(mu, f) = Re int psi(1/4 + it/2 + mu') f(t) dt - hat f(0) log pi,
//
// with mu' = mu / 2 (halved, from Gamma_R(s + mu) = pi^{-(s+mu)/2} Gamma((s+mu)/2))
// or mu' = mu (literal printed form).

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "zerogap/errors.hpp"
#include "zerogap/extremal.hpp"
#include "zerogap/lfunction.hpp"
#include "zerogap/parallel.hpp"
#include "zerogap/quadrature.hpp"
#include "zerogap/special_math.hpp"
#include "zerogap/test_function.hpp"

namespace zerogap {

enum class Convention { halved, literal };

inline std::string_view to_string(Convention c) { return c == Convention::halved ? "halved" : "literal"; }

inline Convention parse_convention(std::string_view s) {
    if (s == "halved") return Convention::halved;
    if (s == "literal") return Convention::literal;
    throw DomainError("unknown convention '" + std::string(s) + "' (expected halved or literal)");
}

/// Shift a in psi(a + it/2).
inline cplx digamma_shift(cplx mu, Convention c) {
    return 0.25 + (c == Convention::halved ? 0.5 * mu : mu);
}

/// Archimedean term evaluated on the transform side. From
///   psi(s) = int_0^inf (e^{-x}/x - e^{-sx}/(1 - e^{-x})) dx,  Re s > 0,
/// exchanging the order of integration gives
///   Re int psi(a + it/2) f(t) dt
///     = int_0^X [hat f(0) e^{-x}/x - Re(e^{-ax} hat f(x/4pi)) / (1 - e^{-x})] dx + hat f(0) E1(X),
/// X = 4 pi * support radius. The transform is tabulated once at
/// Gauss-Legendre nodes, so each ell(mu) costs one pass over the nodes.
class ArchimedeanKernel {
 public:
    struct Options {
        int panels = 6;
        int order = 20;
        int grading = 4;  // geometric refinement levels at both ends of [0, X]
        double transform_tol = 1e-11;
        unsigned threads = 0;
    };

    ArchimedeanKernel(const TestFunction& f, Options opts) {
        if (!(f.support_radius > 0.0)) throw DomainError("ArchimedeanKernel: support radius must be positive");
        f0_ = f.transform ? f.transform(0.0).real() : f.integral;
        cutoff_x_ = 4.0 * std::numbers::pi * f.support_radius;

        std::vector<double> cuts{0.0, cutoff_x_};
        for (double k : f.transform_knots) {
            if (k > 0.0 && k < f.support_radius) cuts.push_back(4.0 * std::numbers::pi * k);
        }
        std::sort(cuts.begin(), cuts.end());
        std::vector<double> fine;
        for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
            for (int p = 0; p < opts.panels; ++p) {
                fine.push_back(cuts[s] + (cuts[s + 1] - cuts[s]) * p / opts.panels);
            }
        }
        fine.push_back(cutoff_x_);
        const double first = fine[1];
        const double last = cutoff_x_ - fine[fine.size() - 2];
        for (int j = 1; j <= opts.grading; ++j) {
            fine.push_back(first * std::pow(0.25, j));
            fine.push_back(cutoff_x_ - last * std::pow(0.25, j));
        }
        std::sort(fine.begin(), fine.end());

        const auto rule = gauss_legendre(opts.order);
        std::vector<double> weights;
        for (std::size_t s = 0; s + 1 < fine.size(); ++s) {
            const double mid = 0.5 * (fine[s] + fine[s + 1]);
            const double half = 0.5 * (fine[s + 1] - fine[s]);
            for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
                nodes_.push_back(mid + half * rule.nodes[k]);
                weights.push_back(half * rule.weights[k]);
            }
        }
        const auto transform = parallel_map<cplx>(nodes_.size(), opts.threads, [&](std::size_t k) {
            const double xi = nodes_[k] / (4.0 * std::numbers::pi);
            return f.transform ? f.transform(xi) : fourier_at(f, xi, opts.transform_tol, f.even);
        });

        constant_ = f0_ * exp_integral_e1(cutoff_x_) - f0_ * std::log(std::numbers::pi);
        coefficients_.resize(nodes_.size());
        for (std::size_t k = 0; k < nodes_.size(); ++k) {
            const double x = nodes_[k];
            constant_ += weights[k] * f0_ * std::exp(-x) / x;
            coefficients_[k] = weights[k] * std::exp(-0.25 * x) / (-std::expm1(-x)) * transform[k];
        }
    }

    explicit ArchimedeanKernel(const TestFunction& f) : ArchimedeanKernel(f, Options{}) {}

    double ell(cplx mu, Convention convention) const {
        if (mu.real() < 0.0) throw DomainError("ell: requires Re(mu) >= 0");
        const cplx shift = convention == Convention::halved ? 0.5 * mu : mu;
        double sum = 0.0;
        for (std::size_t k = 0; k < nodes_.size(); ++k) {
            sum += (coefficients_[k] * std::exp(-shift * nodes_[k])).real();
        }
        return constant_ - sum;
    }

    /// ell at start, start + step, ..., (count values). Exponentials are
    /// advanced multiplicatively and reseeded every 64 points.
    void ell_line(cplx start, cplx step, std::size_t count, Convention convention, double* out) const {
        if (start.real() < 0.0 || start.real() + (count - 1.0) * step.real() < 0.0) {
            throw DomainError("ell: requires Re(mu) >= 0");
        }
        const double scale = convention == Convention::halved ? 0.5 : 1.0;
        const std::size_t n = nodes_.size();
        std::vector<cplx> term(n), ratio(n);
        for (std::size_t k = 0; k < n; ++k) ratio[k] = std::exp(-scale * step * nodes_[k]);
        for (std::size_t j = 0; j < count; ++j) {
            if (j % 64 == 0) {
                const cplx mu = start + static_cast<double>(j) * step;
                for (std::size_t k = 0; k < n; ++k) term[k] = coefficients_[k] * std::exp(-scale * mu * nodes_[k]);
            }
            double sum = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                sum += term[k].real();
                term[k] *= ratio[k];
            }
            out[j] = constant_ - sum;
        }
    }

    double transform_at_zero() const { return f0_; }
    std::size_t node_count() const { return nodes_.size(); }

 private:
    double f0_ = 0.0;
    double cutoff_x_ = 0.0;
    double constant_ = 0.0;
    std::vector<double> nodes_;
    std::vector<cplx> coefficients_;
};

/// ell(mu, f) via a freshly built kernel.
inline double ell(cplx mu, const TestFunction& f, Convention convention = Convention::halved) {
    return ArchimedeanKernel(f).ell(mu, convention);
}

/// ell(mu, f) straight from the definition: quadrature of Re psi(a + it/2) f(t)
/// on [-T, T]. Beyond T, the non-oscillating tail terms of f are integrated
/// against psi numerically; oscillating terms and the model remainder enter
/// only through bounds, which are folded into the error estimate.
inline QuadratureResult ell_direct(cplx mu, const TestFunction& f, Convention convention, double tol) {
    if (mu.real() < 0.0) throw DomainError("ell_direct: requires Re(mu) >= 0");
    const cplx a = digamma_shift(mu, convention);
    auto re_psi = [a](double t) { return digamma(a + cplx{0.0, 0.5 * t}).real(); };

    double reach = f.tail.remainder_shift;
    for (const auto& term : f.tail.terms) reach = std::max(reach, std::abs(term.shift));

    // |int_T^inf A(t) cos(omega t + phi) dt| <= 2 A(T) / |omega| for A decreasing
    auto oscillating_bound = [&](double cutoff) {
        double bound = 0.0;
        const double amp = std::max(std::abs(re_psi(cutoff)), std::abs(re_psi(-cutoff)));
        for (const auto& term : f.tail.terms) {
            if (term.omega == 0.0) continue;
            bound += 2.0 * 2.0 * std::abs(term.coef) * amp /
                     (std::abs(term.omega) * std::pow(cutoff - reach, term.power));
        }
        return bound;
    };
    // remainder model bound against |Re psi| <= log|a + it/2| + 1 (|t| >= 2|a| + 4)
    auto remainder_bound = [&](double cutoff) {
        if (f.tail.remainder_coef == 0.0) return 0.0;
        const double q = f.tail.remainder_power;
        const double start = cutoff - reach;
        const double log_part = std::log(std::abs(a) + cutoff) + 1.0;
        return 2.0 * f.tail.remainder_coef * (log_part / (q - 1.0) + 1.0 / ((q - 1.0) * (q - 1.0))) /
               std::pow(start, q - 1.0);
    };

    double cutoff = std::max({f.tail.valid_from, f.envelope.from, 2.0 * std::abs(a) + 4.0, reach + 1.0});
    while (oscillating_bound(cutoff) + remainder_bound(cutoff) > 0.25 * tol) {
        cutoff *= 1.5;
        if (cutoff > 1e8) throw AccuracyError("ell_direct: tail bound does not reach tolerance", 0.0, tol);
    }

    LineOptions opts;
    opts.tol = 0.5 * tol;
    opts.envelope = {0.0, cutoff};
    opts.panel_width = 0.5 * f.scale;
    TailExpansion none{[](double) { return 0.0; }, [](double) { return 0.0; }, cutoff};
    opts.tail = &none;
    const auto& value = f.value;
    auto body = integrate_line([&](double t) { return re_psi(t) * value(t); }, opts);

    // non-oscillating tail terms, t = +-T e^v
    double tail = 0.0;
    double tail_error = 0.0;
    long evals = body.evaluations;
    for (const auto& term : f.tail.terms) {
        if (term.omega != 0.0) continue;
        const double coef = term.coef * std::cos(term.phase);
        const double span_v = 60.0 / (term.power - 1);
        for (double side : {1.0, -1.0}) {
            auto g = [&](double v) {
                const double t = side * cutoff * std::exp(v);
                return re_psi(t) * coef / std::pow(t - term.shift, term.power) * cutoff * std::exp(v);
            };
            auto r = integrate_interval(g, 0.0, span_v, 1e-3 * tol);
            tail += r.value;
            tail_error += r.error_estimate;
            evals += r.evaluations;
        }
    }
    const double error = body.error_estimate + tail_error + oscillating_bound(cutoff) + remainder_bound(cutoff);
    return {body.value + tail - f.integral * std::log(std::numbers::pi), error, evals};
}

struct ZeroSum {
    double value = 0.0;
    double tail_bound = 0.0;
};

namespace detail {

// Surrogate zero density (zeros per unit height):
//   (1/pi)(log Q + (d/2) log((|t| + 10)/(2 pi)))
inline double density_integral(const FunctionalEquation& fe, double a, double b) {
    auto antiderivative = [&](double t) {
        const double u = t + 10.0;
        return (std::log(fe.conductor) * t +
                0.5 * fe.degree * (u * std::log(u / (2.0 * std::numbers::pi)) - u)) /
               std::numbers::pi;
    };
    return antiderivative(b) - antiderivative(a);
}

// integral over [from, inf) of density(t) / t^2
inline double density_over_t2(const FunctionalEquation& fe, double from) {
    const double log_term = std::log(from + 10.0) / from + 0.1 * std::log((from + 10.0) / from) -
                            std::log(2.0 * std::numbers::pi) / from;
    return (std::log(fe.conductor) / from + 0.5 * fe.degree * log_term) / std::numbers::pi;
}

}  // namespace detail

/// Sum of f over the listed ordinates (list order, repetitions respected) and
/// a heuristic bound on the unlisted part |gamma| > t_max from the surrogate
/// zero density. Near t_max the bound uses sampled sup |f| on unit intervals;
/// far out it switches to the declared envelope.
inline ZeroSum zero_sum(const std::vector<double>& ordinates, double t_max, const TestFunction& f,
                        const FunctionalEquation& fe) {
    if (!(t_max >= 0.0)) throw DomainError("zero_sum: t_max must be nonnegative");
    ZeroSum out;
    for (double g : ordinates) out.value += f(g);
    if (std::isinf(t_max)) return out;
    const double far = std::max({f.envelope.from, 4.0 * (t_max + 1.0), t_max + 200.0});
    const double step = std::min(0.05, 0.02 * f.scale);
    for (double a = t_max; a < far; a += 1.0) {
        const double b = std::min(a + 1.0, far);
        double sup = 0.0;
        for (double t = a; t <= b + 0.5 * step; t += step) {
            sup = std::max({sup, std::abs(f(t)), std::abs(f(-t))});
        }
        // sampling headroom
        out.tail_bound += 2.0 * 1.02 * sup * detail::density_integral(fe, a, b);
    }
    out.tail_bound += 2.0 * f.envelope.bound * detail::density_over_t2(fe, far);
    return out;
}

struct ExplicitFormulaReport {
    std::string test_function;
    Convention convention = Convention::halved;
    double zero_side = 0.0;
    double tail_bound = 0.0;
    double rhs_conductor = 0.0;
    std::vector<double> rhs_archimedean;
    double rhs_primes = 0.0;
    double rhs_total = 0.0;
    double residual = 0.0;
    double implied_log_Q = 0.0;
    double tolerance_budget = 0.0;
    double imaginary_leakage = 0.0;
    bool conductor_assumed = false;
    std::optional<double> residual_alternate;  // other convention, when computed

    bool consistent() const { return std::abs(residual) <= tail_bound + tolerance_budget; }
};

/// Declared accuracy of one ell evaluation.
inline constexpr double kEllTolerance = 1e-8;

/// Right-hand side of the explicit formula. Prime data may be absent when
/// the transform support is within log 2 / 2pi.
inline ExplicitFormulaReport rhs(const FunctionalEquation& fe, const TestFunction& f,
                                 const LogDerivativeCoefficients* primes, const ArchimedeanKernel& kernel,
                                 Convention convention = Convention::halved) {
    fe.validate();
    ExplicitFormulaReport report;
    report.test_function = f.name;
    report.convention = convention;
    const double f0 = kernel.transform_at_zero();
    report.rhs_conductor = f0 * std::log(fe.conductor) / std::numbers::pi;
    for (const auto& mu : fe.spectral) {
        report.rhs_archimedean.push_back(kernel.ell(mu, convention) / (2.0 * std::numbers::pi));
    }
    if (f.support_radius > kPrimeFreeSupport * (1.0 + 1e-12)) {
        const auto reach = static_cast<long>(std::floor(std::exp(2.0 * std::numbers::pi * f.support_radius)));
        if (primes == nullptr || primes->bound < reach) {
            throw IncompleteDataError("rhs: prime-power coefficients c(n) needed up to n = " + std::to_string(reach));
        }
        cplx sum{};
        for (long n = 2; n <= reach; ++n) {
            const cplx c = primes->at(n);
            if (c == cplx{}) continue;
            const double x = std::log(static_cast<double>(n)) / (2.0 * std::numbers::pi);
            const cplx plus = f.transform ? f.transform(x) : fourier_at(f, x);
            const cplx minus = f.transform ? f.transform(-x) : fourier_at(f, -x);
            sum += (c * plus + std::conj(c) * minus) / std::sqrt(static_cast<double>(n));
        }
        report.rhs_primes = sum.real() / (2.0 * std::numbers::pi);
        report.imaginary_leakage = std::abs(sum.imag()) / (2.0 * std::numbers::pi);
    }
    double total = report.rhs_conductor + report.rhs_primes;
    for (double v : report.rhs_archimedean) total += v;
    report.rhs_total = total;
    report.tolerance_budget = fe.degree * kEllTolerance / (2.0 * std::numbers::pi);
    report.residual = -report.rhs_total;
    return report;
}

inline ExplicitFormulaReport rhs(const FunctionalEquation& fe, const TestFunction& f,
                                 const LogDerivativeCoefficients* primes = nullptr,
                                 Convention convention = Convention::halved) {
    return rhs(fe, f, primes, ArchimedeanKernel(f), convention);
}

/// Full consistency report for tabulated data.
inline ExplicitFormulaReport verify(const LFunctionData& data, const TestFunction& f,
                                    Convention convention = Convention::halved,
                                    const ArchimedeanKernel* kernel = nullptr) {
    std::optional<ArchimedeanKernel> own;
    if (kernel == nullptr) kernel = &own.emplace(f);
    std::optional<LogDerivativeCoefficients> primes;
    if (f.support_radius > kPrimeFreeSupport * (1.0 + 1e-12)) {
        const auto reach = static_cast<long>(std::floor(std::exp(2.0 * std::numbers::pi * f.support_radius)));
        primes = c_coefficients(data, reach);
    }
    auto report = rhs(data.fe, f, primes ? &*primes : nullptr, *kernel, convention);
    const auto zeros = zero_sum(data.symmetric_zeros(), data.t_max, f, data.fe);
    report.zero_side = zeros.value;
    report.tail_bound = zeros.tail_bound;
    report.residual = report.zero_side - report.rhs_total;
    report.implied_log_Q = std::numbers::pi * report.residual / kernel->transform_at_zero() +
                           std::log(data.fe.conductor);
    report.conductor_assumed = data.conductor_assumed;
    const Convention other = convention == Convention::halved ? Convention::literal : Convention::halved;
    double other_total = report.rhs_conductor + report.rhs_primes;
    for (const auto& mu : data.fe.spectral) other_total += kernel->ell(mu, other) / (2.0 * std::numbers::pi);
    report.residual_alternate = report.zero_side - other_total;
    return report;
}

inline nlohmann::json to_json(const ExplicitFormulaReport& r) {
    nlohmann::json j;
    j["test_function"] = r.test_function;
    j["convention"] = std::string(to_string(r.convention));
    j["zero_side"] = r.zero_side;
    j["tail_bound"] = r.tail_bound;
    j["tail_bound_kind"] = "heuristic (surrogate zero density)";
    j["rhs_conductor"] = r.rhs_conductor;
    j["rhs_archimedean"] = r.rhs_archimedean;
    j["rhs_primes"] = r.rhs_primes;
    j["rhs_total"] = r.rhs_total;
    j["residual"] = r.residual;
    j["implied_log_Q"] = r.implied_log_Q;
    j["tolerance_budget"] = r.tolerance_budget;
    j["imaginary_leakage"] = r.imaginary_leakage;
    j["conductor_assumed"] = r.conductor_assumed;
    j["consistent"] = r.consistent();
    if (r.residual_alternate) {
        j["residual_alternate_convention"] = *r.residual_alternate;
    }
    return j;
}

}  // namespace zerogap
