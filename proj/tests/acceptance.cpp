// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "zerogap/certification.hpp"
#include "zerogap/explicit_formula.hpp"
#include "zerogap/extremal.hpp"
#include "zerogap/lfunction.hpp"
#include "zerogap/region_scan.hpp"
#include "zerogap/special_math.hpp"

using namespace zerogap;

namespace {

const double kDelta0 = std::numbers::ln2 / (2.0 * std::numbers::pi);
const double kTheoremLength = 10.0 * std::numbers::pi / std::numbers::ln2;
const std::string kBundled = std::string(ZEROGAP_DATA_DIR) + "/fkl_degree4.json";

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

Outcome theorem_reproduction() {
    const auto c = certify_gap(4, kTheoremLength, kDelta0);
    return {c.certified && c.margin > 0.0,
            fmt("L=%.9f margin=%.6g min_ell=%.6g", c.window_length, c.margin, c.min_ell) +
                (c.boundary_ok ? " boundary ok" : " boundary FLAGGED") + " grid=" + std::to_string(c.grid_points)};
}

Outcome selberg_identities() {
    const double alpha = -2.5 / kDelta0, beta = 2.5 / kDelta0;
    const auto s = selberg_minorant(alpha, beta, kDelta0);
    bool ok = true;

    const auto tail = s.tail.expansion();
    LineOptions opts;
    opts.tol = 1e-9;
    opts.envelope = s.envelope;
    opts.tail = &tail;
    opts.panel_width = 0.5 * s.scale;
    const double integral = integrate_line(s.value, opts).value;
    const double integral_err = std::abs(integral - (beta - alpha - 1.0 / kDelta0));
    ok = ok && integral_err <= 1e-6;

    double worst_excess = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 100000; ++i) {
        const double x = -300.0 + 600.0 * i / 99999.0;
        const double chi = (x >= alpha && x <= beta) ? 1.0 : 0.0;
        worst_excess = std::max(worst_excess, s(x) - chi);
    }
    ok = ok && worst_excess <= 1e-12;

    double worst_transform = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double mag = kDelta0 * (1.01 + (3.0 - 1.01) * i / 19.0);
        const double x = i % 2 == 0 ? mag : -mag;
        worst_transform = std::max(worst_transform, std::abs(fourier_at(s, x, 1e-9, true)));
    }
    ok = ok && worst_transform <= 1e-6;

    const double at_zero = fourier_at(s, 0.0, 1e-9).real();
    const double zero_err = std::abs(at_zero - 4.0 / kDelta0);
    ok = ok && zero_err <= 1e-6;
    return {ok, fmt("|int-(b-a-1/d)|=%.2g max(S-chi)=%.2g max|S^|=%.2g", integral_err, worst_excess,
                    worst_transform) +
                    fmt(" |S^(0)-4/d|=%.2g", zero_err)};
}

Outcome beurling_extremality() {
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 100000; ++i) {
        const double x = -50.0 + 100.0 * i / 99999.0;
        worst = std::min(worst, beurling(x) - (x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0)));
    }
    // int_{-T}^{T} (B - sgn) plus the tail of the even part sinc^2 beyond T
    const double T = 50.0;
    std::vector<double> cuts;
    for (int k = -50; k <= 50; ++k) cuts.push_back(k);
    const auto body = integrate_partition([](double x) { return beurling_deviation(x); }, cuts, 1e-11);
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const double tail = (1.0 / T - oscillatory_power_tail(T, 2.0 * std::numbers::pi, 2).real()) / pi2;
    const double total = body.value + tail;
    return {worst >= -1e-12 && std::abs(total - 1.0) <= 1e-6,
            fmt("min(B-sgn)=%.3g integral=%.12f (body %.9f", worst, total, body.value) +
                fmt(" + tail %.9f)", tail)};
}

Outcome figure_classification() {
    const RegionScanner base{RegionConfig{}};
    RegionConfig fine_cfg;
    fine_cfg.kernel.panels = 12;
    fine_cfg.kernel.order = 30;
    fine_cfg.kernel.transform_tol = 5e-12;
    const RegionScanner fine{fine_cfg};
    struct Point {
        double nu1, nu2;
        Verdict expected;
    };
    const Point points[] = {{4.7209, 12.4687, Verdict::Unconstrained},
                            {0.0, 0.0, Verdict::Impossible},
                            {50.0, 50.0, Verdict::ForcedLowZero}};
    bool ok = true;
    std::string detail;
    for (const auto& p : points) {
        const auto a = base.classify_point(p.nu1, p.nu2);
        const auto b = fine.classify_point(p.nu1, p.nu2);
        ok = ok && a.verdict == p.expected && b.verdict == a.verdict;
        detail += fmt("(%g,%g)->", p.nu1, p.nu2) + std::string(to_string(a.verdict)) +
                  fmt("[%.6g,%.6g] ", a.fejer_rhs, a.windowed_rhs);
    }
    return {ok, detail + "stable under refined quadrature"};
}

Outcome dataset_integrity() {
    const auto d = load_lfunction_file(kBundled);
    bool ok = d.zeros.size() == 11;
    for (double g : d.zeros) ok = ok && g > 0.0 && g < 30.0;
    const double gap = 2.0 * d.zeros.front();
    ok = ok && std::abs(gap - 28.9921230182) <= 5e-11;
    const auto all = d.symmetric_zeros();
    const double length = 45.3236;
    for (double a = -30.0; a + length <= 30.0; a += 0.001) {
        bool hit = false;
        for (double g : all) hit = hit || (g >= a && g <= a + length);
        ok = ok && hit;
    }
    return {ok, fmt("gap=%.10f zeros=%g windows of length 45.3236 in [-30,30] all hit", gap, d.zeros.size())};
}

Outcome explicit_formula_consistency() {
    const auto d = load_lfunction_file(kBundled);
    const auto s = selberg_minorant(-2.5 / kDelta0, 2.5 / kDelta0, kDelta0);
    const auto r = verify(d, s, Convention::halved);
    const bool ok = std::abs(r.residual) <= r.tail_bound + r.tolerance_budget && std::isfinite(r.implied_log_Q);
    return {ok, fmt("zero_side=%.9f rhs_total=%.9f residual=%.6g", r.zero_side, r.rhs_total, r.residual) +
                    fmt(" tail_bound=%.6g budget=%.2g implied_log_Q=%.6g", r.tail_bound, r.tolerance_budget,
                        r.implied_log_Q)};
}

Outcome special_functions() {
    bool ok = true;
    double worst = 0.0;
    auto check = [&](double got, double want) {
        worst = std::max(worst, std::abs(got - want));
        ok = ok && std::abs(got - want) <= 1e-10;
    };
    check(digamma(1.0), -0.577215664901532860606512090082);
    check(digamma(2.0), 0.422784335098467139393487909918);
    check(digamma(0.5), -1.963510026021423479440976333);
    check(trigamma_real(1.0), 1.64493406684822643647241516665);
    check(trigamma_real(2.0), 0.644934066848226436472415166646);
    check(trigamma_real(0.5), 4.93480220054467930941724549994);

    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> re(-20.0, 20.0), im(-60.0, 60.0), pos(1e-3, 100.0);
    int failures = 0;
    for (int i = 0; i < 1000; ++i) {
        cplx z{re(rng), im(rng)};
        if (std::abs(z.imag()) < 0.05) z.imag(0.05);
        const cplx psi = digamma(z);
        const bool recurrence = std::abs(digamma(z + 1.0) - psi - 1.0 / z) <= 1e-11 * std::max(1.0, std::abs(psi));
        const bool conjugate = std::abs(digamma(std::conj(z)) - std::conj(psi)) <= 1e-12 * std::max(1.0, std::abs(psi));
        const double x = pos(rng);
        const bool trigamma = std::abs(trigamma_real(x + 1.0) - trigamma_real(x) + 1.0 / (x * x)) <=
                              1e-12 * trigamma_real(x);
        if (!(recurrence && conjugate && trigamma)) ++failures;
    }
    ok = ok && failures == 0;
    return {ok, fmt("max oracle error=%.2g random failures=%g/1000", worst, failures)};
}

Outcome convention_invariance() {
    SearchParams halved, literal;
    literal.convention = Convention::literal;
    const bool v1 = certify_gap(4, kTheoremLength, kDelta0, halved).certified;
    const bool v2 = certify_gap(4, kTheoremLength, kDelta0, literal).certified;
    const auto m1 = minimal_certified_length(4, kDelta0, 1e-4, halved);
    const auto m2 = minimal_certified_length(4, kDelta0, 1e-4, literal);
    const bool ok = v1 == v2 && std::abs(m1.length - m2.length) <= 1e-3;
    return {ok, std::string("verdicts ") + (v1 ? "true" : "false") + "/" + (v2 ? "true" : "false") +
                    fmt(" minimal lengths %.6f / %.6f", m1.length, m2.length)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"AC1 theorem reproduction (certify-gap at 10 pi / log 2)", theorem_reproduction},
        {"AC2 Selberg minorant identities", selberg_identities},
        {"AC3 Beurling extremality", beurling_extremality},
        {"AC4 spectral-region classification", figure_classification},
        {"AC5 bundled dataset integrity", dataset_integrity},
        {"AC6 explicit-formula consistency", explicit_formula_consistency},
        {"AC7 special-function oracles", special_functions},
        {"AC8 convention invariance", convention_invariance},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s: %s -- %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), seconds);
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    return failed == 0 ? 0 : 1;
}
