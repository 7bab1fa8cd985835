#pragma once

// Grid-based evidence that every window of a given length on the critical line
// contains a zero. With S the Selberg minorant of [alpha, beta] and transform
// support delta <= log 2 / 2pi the prime sum vanishes, and if
// ell(mu, S) > 0 for every admissible mu then the right side of the explicit
// formula is positive for every degree and every Q >= 1, while an empty
// window would make the zero side <= 0.

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "zerogap/errors.hpp"
#include "zerogap/explicit_formula.hpp"
#include "zerogap/extremal.hpp"
#include "zerogap/parallel.hpp"

namespace zerogap {

struct SearchParams {
    double re_max = 50.0;
    double im_max = 200.0;
    double step = 0.25;
    Convention convention = Convention::halved;
    bool refine = true;  // local search around the grid minimum
    unsigned threads = 0;
    ArchimedeanKernel::Options kernel;
};

struct MinEllResult {
    double value = 0.0;  // after refinement (<= grid value)
    cplx argmin;
    double grid_value = 0.0;
    cplx grid_argmin;
    double boundary_min = 0.0;  // over the edges Re = re_max and Im = im_max
    bool boundary_ok = false;   // boundary_min exceeds the overall minimum
    std::size_t grid_points = 0;
};

namespace detail {

inline std::size_t grid_count(double extent, double step) {
    return static_cast<std::size_t>(std::floor(extent / step + 1e-9)) + 1;
}

inline void validate(const SearchParams& p) {
    if (!(p.step > 0.0)) throw DomainError("search: step must be positive");
    if (!(p.re_max >= 0.0) || !(p.im_max >= 0.0)) throw DomainError("search: re_max and im_max must be >= 0");
}

// Compass search from `start`, keeping Re mu >= 0.
inline std::pair<double, cplx> refine_minimum(const ArchimedeanKernel& kernel, cplx start, double value,
                                              double step, Convention convention) {
    cplx best = start;
    double h = 0.5 * step;
    const cplx directions[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    while (h > 1e-7) {
        bool moved = false;
        for (const cplx& d : directions) {
            cplx trial = best + h * d;
            if (trial.real() < 0.0) trial.real(0.0);
            if (trial == best) continue;
            const double v = kernel.ell(trial, convention);
            // ignore roundoff-level gains
            if (v < value - 1e-13 * (1.0 + std::abs(value))) {
                value = v;
                best = trial;
                moved = true;
            }
        }
        if (!moved) h *= 0.5;
    }
    return {value, best};
}

}  // namespace detail

/// Minimum of ell(mu) over Re mu in [0, re_max], Im mu in [0, im_max]. Rows
/// of constant Re mu are evaluated in parallel; ties keep the smallest Re mu,
/// then the smallest Im mu.
inline MinEllResult min_ell_over_mu(const ArchimedeanKernel& kernel, const SearchParams& params) {
    detail::validate(params);
    const std::size_t rows = detail::grid_count(params.re_max, params.step);
    const std::size_t cols = detail::grid_count(params.im_max, params.step);

    struct Row {
        double min = std::numeric_limits<double>::infinity();
        std::size_t at = 0;
        double edge = std::numeric_limits<double>::infinity();  // last column
        double full = std::numeric_limits<double>::infinity();  // whole row, used for the last row
    };
    const auto summary = parallel_map<Row>(rows, params.threads, [&](std::size_t i) {
        std::vector<double> values(cols);
        kernel.ell_line({static_cast<double>(i) * params.step, 0.0}, {0.0, params.step}, cols,
                        params.convention, values.data());
        Row r;
        for (std::size_t j = 0; j < cols; ++j) {
            if (values[j] < r.min) {
                r.min = values[j];
                r.at = j;
            }
        }
        r.edge = values[cols - 1];
        r.full = r.min;
        return r;
    });

    MinEllResult out;
    out.grid_points = rows * cols;
    out.grid_value = std::numeric_limits<double>::infinity();
    out.boundary_min = summary.back().full;
    for (std::size_t i = 0; i < rows; ++i) {
        if (summary[i].min < out.grid_value) {
            out.grid_value = summary[i].min;
            out.grid_argmin = {static_cast<double>(i) * params.step, static_cast<double>(summary[i].at) * params.step};
        }
        out.boundary_min = std::min(out.boundary_min, summary[i].edge);
    }
    out.value = out.grid_value;
    out.argmin = out.grid_argmin;
    if (params.refine) {
        auto [v, mu] = detail::refine_minimum(kernel, out.grid_argmin, out.grid_value, params.step, params.convention);
        out.value = v;
        out.argmin = mu;
    }
    out.boundary_ok = out.boundary_min > out.value;
    return out;
}

inline MinEllResult min_ell_over_mu(const TestFunction& f, const SearchParams& params) {
    if (!f.even) throw DomainError("min_ell_over_mu: the search uses Im mu -> -Im mu symmetry and needs an even f");
    return min_ell_over_mu(ArchimedeanKernel(f, params.kernel), params);
}

inline constexpr const char* kCertificateLabel = "numerical evidence, grid-based";

struct GapCertificate {
    int degree = 0;
    double alpha = 0.0;
    double beta = 0.0;
    double delta = 0.0;
    double window_length = 0.0;
    double min_ell = 0.0;
    cplx argmin;
    double margin = 0.0;  // degree * min_ell / 2pi
    double transform_at_zero = 0.0;
    bool positivity_ok = false;
    PositivityWindow positivity;
    bool boundary_ok = false;
    double boundary_min = 0.0;
    SearchParams search;
    std::size_t grid_points = 0;
    bool certified = false;
};

namespace detail {

inline void validate_gap(int degree, double window_length, double delta) {
    if (degree < 1) throw DomainError("certify_gap: degree must be >= 1");
    if (!(delta > 0.0) || delta > kPrimeFreeSupport * (1.0 + 1e-12)) {
        throw DomainError("certify_gap: delta must lie in (0, log 2 / 2pi] so the prime sum vanishes");
    }
    if (!(window_length > 1.0 / delta)) {
        std::ostringstream os;
        os << "certify_gap: window length " << window_length << " must exceed 1/delta = " << 1.0 / delta;
        throw DomainError(os.str());
    }
}

inline GapCertificate certify_with(const TestFunction& s, const ArchimedeanKernel& kernel, int degree,
                                   double window_length, double delta, const SearchParams& params) {
    GapCertificate c;
    c.degree = degree;
    c.alpha = -0.5 * window_length;
    c.beta = 0.5 * window_length;
    c.delta = delta;
    c.window_length = window_length;
    c.search = params;
    c.transform_at_zero = kernel.transform_at_zero();
    c.positivity = s.positivity;
    // S <= 0 off [alpha, beta]; the located window must sit inside it
    const double slack = 1e-9 * window_length;
    c.positivity_ok = s.positivity.lo > s.positivity.hi ||
                      (s.positivity.lo >= c.alpha - slack && s.positivity.hi <= c.beta + slack);
    const auto m = min_ell_over_mu(kernel, params);
    c.min_ell = m.value;
    c.argmin = m.argmin;
    c.boundary_min = m.boundary_min;
    c.boundary_ok = m.boundary_ok;
    c.grid_points = m.grid_points;
    c.margin = degree * m.value / (2.0 * std::numbers::pi);
    c.certified = c.margin > 0.0 && c.positivity_ok && c.boundary_ok;
    return c;
}

}  // namespace detail

/// Certificate for windows [-L/2, L/2] (every window by translation) and all
/// degrees up to `degree`, assuming Q >= 1.
inline GapCertificate certify_gap(int degree, double window_length, double delta, const SearchParams& params = {}) {
    detail::validate_gap(degree, window_length, delta);
    detail::validate(params);
    const auto s = selberg_minorant(-0.5 * window_length, 0.5 * window_length, delta);
    return detail::certify_with(s, ArchimedeanKernel(s, params.kernel), degree, window_length, delta, params);
}

struct MinimalLength {
    double length = 0.0;       // smallest length found certified
    double uncertified = 0.0;  // largest length found not certified
    int steps = 0;
    GapCertificate certificate;  // at `length`
};

/// Bisection for the smallest certified window length, to within `precision`.
/// The upper end starts at 5/delta and doubles until certified.
inline MinimalLength minimal_certified_length(int degree, double delta, double precision,
                                              const SearchParams& params = {}) {
    if (!(precision > 0.0)) throw DomainError("minimal_certified_length: precision must be positive");
    auto attempt = [&](double length) {
        const auto s = selberg_minorant(-0.5 * length, 0.5 * length, delta);
        return detail::certify_with(s, ArchimedeanKernel(s, params.kernel), degree, length, delta, params);
    };
    detail::validate_gap(degree, 5.0 / delta, delta);
    detail::validate(params);
    MinimalLength out;
    double lo = 1.0 / delta;
    double hi = 5.0 / delta;
    auto cert = attempt(hi);
    while (!cert.certified) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e4 / delta) throw AccuracyError("minimal_certified_length: no certified length found", hi, hi);
        cert = attempt(hi);
        ++out.steps;
    }
    while (hi - lo > precision) {
        const double mid = 0.5 * (lo + hi);
        auto trial = attempt(mid);
        ++out.steps;
        if (trial.certified) {
            hi = mid;
            cert = std::move(trial);
        } else {
            lo = mid;
        }
    }
    out.length = hi;
    out.uncertified = lo;
    out.certificate = std::move(cert);
    return out;
}

inline nlohmann::json to_json(const SearchParams& p) {
    return {{"re_range", {0.0, p.re_max}},
            {"im_range", {0.0, p.im_max}},
            {"step", p.step},
            {"convention", std::string(to_string(p.convention))},
            {"local_refinement", p.refine},
            {"symmetry", "Im mu -> -Im mu (even test function)"},
            {"boundary_check",
             "minimum over the edges Re mu = re_max and Im mu = im_max must exceed the overall minimum; "
             "beyond the grid ell grows like hat S(0) log|mu|"},
            {"kernel", {{"panels", p.kernel.panels}, {"order", p.kernel.order}, {"grading", p.kernel.grading}}}};
}

inline nlohmann::json to_json(const GapCertificate& c) {
    nlohmann::json j;
    j["label"] = kCertificateLabel;
    j["degree"] = c.degree;
    j["applies_to"] = "all degrees <= degree, conductor Q >= 1";
    j["interval"] = {c.alpha, c.beta};
    j["window_length"] = c.window_length;
    j["delta"] = c.delta;
    j["transform_at_zero"] = c.transform_at_zero;
    j["min_ell"] = c.min_ell;
    j["argmin_mu"] = {c.argmin.real(), c.argmin.imag()};
    j["margin"] = c.margin;
    j["positivity_ok"] = c.positivity_ok;
    if (c.positivity.lo <= c.positivity.hi) j["positivity_window"] = {c.positivity.lo, c.positivity.hi};
    j["boundary_ok"] = c.boundary_ok;
    j["boundary_min"] = c.boundary_min;
    j["grid_points"] = c.grid_points;
    j["search_domain"] = to_json(c.search);
    j["certified"] = c.certified;
    return j;
}

}  // namespace zerogap
