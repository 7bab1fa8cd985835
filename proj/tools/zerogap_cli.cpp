// Command-line front end. Exit codes: 0 ok, 1 invalid input, 2 accuracy
// failure, 3 missing data.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zerogap/certification.hpp"
#include "zerogap/errors.hpp"
#include "zerogap/explicit_formula.hpp"
#include "zerogap/extremal.hpp"
#include "zerogap/lfunction.hpp"
#include "zerogap/region_scan.hpp"

#ifndef ZEROGAP_DATA_DIR
#define ZEROGAP_DATA_DIR "data"
#endif

namespace {

using namespace zerogap;

constexpr int kExitDomain = 1;
constexpr int kExitAccuracy = 2;
constexpr int kExitIncomplete = 3;

const double kDelta0 = kPrimeFreeSupport;

std::string default_data_path() { return std::string(ZEROGAP_DATA_DIR) + "/fkl_degree4.json"; }

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

struct FunctionFlags {
    std::string kind = "selberg";
    std::optional<double> alpha, beta, length;
    double delta = kDelta0;
    double t0 = 14.13;

    void add(CLI::App* cmd, const std::vector<std::string>& kinds) {
        cmd->add_option("--kind", kind, "test function")->check(CLI::IsMember(kinds));
        cmd->add_option("--alpha", alpha, "left end of the Selberg window (default -2.5/delta)");
        cmd->add_option("--beta", beta, "right end of the Selberg window (default 2.5/delta)");
        cmd->add_option("--length", length, "symmetric Selberg window length (overrides --alpha/--beta)");
        cmd->add_option("--delta", delta, "transform support radius (default log 2 / 2pi)");
        cmd->add_option("--t0", t0, "window half-width of the windowed Fejer kernel");
    }

    TestFunction build() const {
        if (kind == "fejer") return fejer(delta);
        if (kind == "windowed-fejer") return windowed_fejer(t0, delta);
        double a = alpha.value_or(-2.5 / delta);
        double b = beta.value_or(2.5 / delta);
        if (length) {
            a = -0.5 * *length;
            b = 0.5 * *length;
        }
        return selberg_minorant(a, b, delta);
    }
};

struct SearchFlags {
    SearchParams params;
    std::string convention = "halved";
    bool no_refine = false;

    void add(CLI::App* cmd) {
        cmd->add_option("--re-max", params.re_max, "largest Re mu on the search grid");
        cmd->add_option("--im-max", params.im_max, "largest Im mu on the search grid");
        cmd->add_option("--step", params.step, "grid step in both directions");
        cmd->add_option("--kernel-panels", params.kernel.panels, "quadrature panels per transform segment");
        cmd->add_flag("--no-refine", no_refine, "skip local refinement of the grid minimum");
    }

    SearchParams resolve(unsigned threads) const {
        SearchParams p = params;
        p.convention = parse_convention(convention);
        p.refine = !no_refine;
        p.threads = threads;
        p.kernel.threads = threads;
        return p;
    }
};

int run_eval_extremal(const FunctionFlags& ff, const std::string& kind, double from, double to, int samples,
                      bool fourier) {
    if (samples < 1) throw DomainError("--samples must be >= 1");
    if (samples > 1 && !(to > from)) throw DomainError("--to must exceed --from");
    auto grid = [&](int i, double a, double b) { return samples == 1 ? a : a + (b - a) * i / (samples - 1); };
    if (kind == "beurling") {
        if (fourier) throw DomainError("--fourier: the Beurling function is not integrable");
        std::cout << "t,f(t)\n";
        for (int i = 0; i < samples; ++i) {
            const double t = grid(i, from, to);
            std::cout << fmt(t) << ',' << fmt(beurling(t)) << '\n';
        }
        return 0;
    }
    FunctionFlags copy = ff;
    copy.kind = kind;
    const auto f = copy.build();
    std::cout << "t,f(t)\n";
    for (int i = 0; i < samples; ++i) {
        const double t = grid(i, from, to);
        std::cout << fmt(t) << ',' << fmt(f(t)) << '\n';
    }
    if (fourier) {
        const double r = 1.25 * f.support_radius;
        std::cout << "x,fhat(x)\n";
        for (int i = 0; i < samples; ++i) {
            const double x = grid(i, -r, r);
            const cplx v = f.transform ? f.transform(x) : fourier_at(f, x, 1e-10, f.even);
            std::cout << fmt(x) << ',' << fmt(v.real()) << '\n';
        }
    }
    return 0;
}

int run_coefficients(const std::string& path, long bound) {
    if (bound < 1) throw DomainError("--bound must be >= 1");
    const auto data = load_lfunction_file(path);
    for (const auto& w : data.warnings) std::cerr << "warning: " << w << '\n';
    const auto extended = extend_multiplicatively(data, bound);
    const auto c = c_coefficients(data, bound);
    std::cout << "n,a_re,a_im,a_source,c_re,c_im\n";
    for (long n = 1; n <= bound; ++n) {
        const auto it = extended.coefficients.find(n);
        const bool listed = data.coefficients.count(n) > 0;
        const cplx a = it == extended.coefficients.end() ? cplx{} : it->second;
        const char* source = listed ? "data" : (it == extended.coefficients.end() ? "absent" : "derived");
        const cplx cn = c.at(n);
        std::cout << n << ',' << fmt(a.real()) << ',' << fmt(a.imag()) << ',' << source << ',' << fmt(cn.real())
                  << ',' << fmt(cn.imag()) << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Zero gaps of L-functions via the explicit formula and Beurling-Selberg functions"};
    app.require_subcommand(1);

    // eval-extremal
    auto* eval = app.add_subcommand("eval-extremal", "sample an extremal function as CSV t,f(t)");
    FunctionFlags eval_fn;
    std::string eval_kind;
    double eval_from = -10.0, eval_to = 10.0;
    int eval_samples = 201;
    bool eval_fourier = false;
    eval->add_option("--kind", eval_kind, "beurling, selberg, fejer or windowed-fejer")
        ->required()
        ->check(CLI::IsMember({"beurling", "selberg", "fejer", "windowed-fejer"}));
    eval->add_option("--alpha", eval_fn.alpha, "left end of the Selberg window (default -2.5/delta)");
    eval->add_option("--beta", eval_fn.beta, "right end of the Selberg window (default 2.5/delta)");
    eval->add_option("--length", eval_fn.length, "symmetric Selberg window length (overrides --alpha/--beta)");
    eval->add_option("--delta", eval_fn.delta, "transform support radius (default log 2 / 2pi)");
    eval->add_option("--t0", eval_fn.t0, "window half-width of the windowed Fejer kernel");
    eval->add_option("--from", eval_from, "first sample point");
    eval->add_option("--to", eval_to, "last sample point");
    eval->add_option("--samples", eval_samples, "number of equally spaced samples");
    eval->add_flag("--fourier", eval_fourier, "append x,fhat(x) samples over 1.25 x the transform support");

    // certify-gap
    auto* cert = app.add_subcommand("certify-gap", "grid-based zero-gap certificate (JSON)");
    int cert_degree = 4;
    double cert_length = 10.0 * std::numbers::pi / std::numbers::ln2;
    double cert_delta = kDelta0;
    SearchFlags cert_search;
    bool cert_minimal = false;
    double cert_precision = 1e-4;
    unsigned cert_threads = 0;
    cert->add_option("--degree", cert_degree, "number of Gamma factors");
    cert->add_option("--length", cert_length, "window length (default 10 pi / log 2)");
    cert->add_option("--delta", cert_delta, "transform support radius, at most log 2 / 2pi");
    cert_search.add(cert);
    cert->add_option("--convention", cert_search.convention, "digamma argument convention: halved or literal");
    cert->add_flag("--minimal-length", cert_minimal, "bisect for the smallest certified length instead");
    cert->add_option("--precision", cert_precision, "bisection width for --minimal-length");
    cert->add_option("--threads", cert_threads, "worker threads (0 = all cores)");

    // min-ell
    auto* minell = app.add_subcommand("min-ell", "minimum of ell(mu, f) over the mu grid (JSON)");
    FunctionFlags minell_fn;
    SearchFlags minell_search;
    unsigned minell_threads = 0;
    minell_fn.add(minell, {"selberg", "fejer", "windowed-fejer"});
    minell_search.add(minell);
    minell->add_option("--convention", minell_search.convention, "digamma argument convention: halved or literal");
    minell->add_option("--threads", minell_threads, "worker threads (0 = all cores)");

    // scan-region
    auto* scan = app.add_subcommand("scan-region", "classify degree-4 spectral pairs (nu1, nu2) as CSV");
    RegionConfig scan_cfg;
    double scan_nu_max = 20.0, scan_step = 0.25;
    std::string scan_out, scan_convention = "halved";
    std::vector<double> scan_points;
    unsigned scan_threads = 0;
    scan->add_option("--nu-max", scan_nu_max, "grid covers [0, nu-max]^2");
    scan->add_option("--step", scan_step, "grid step");
    scan->add_option("--t0", scan_cfg.t0, "height below which a zero is forced");
    scan->add_option("--delta", scan_cfg.delta, "transform support radius, at most log 2 / 2pi");
    scan->add_option("--Q", scan_cfg.conductor, "conductor (>= 1)");
    scan->add_option("--convention", scan_convention, "digamma argument convention: halved or literal");
    scan->add_option("--point", scan_points, "classify only these pairs: --point NU1 NU2 (repeatable)")
        ->expected(2)
        ->take_all()
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    scan->add_option("--out", scan_out, "output CSV path (default: standard output)");
    scan->add_option("--threads", scan_threads, "worker threads (0 = all cores)");

    // verify-example
    auto* verify_cmd = app.add_subcommand("verify-example", "explicit-formula consistency report (JSON)");
    std::string verify_data = default_data_path(), verify_convention = "halved";
    FunctionFlags verify_fn;
    unsigned verify_threads = 0;
    verify_cmd->add_option("--data", verify_data, "L-function JSON file (default: bundled degree-4 example)");
    verify_cmd->add_option("--convention", verify_convention, "digamma argument convention: halved or literal");
    verify_fn.add(verify_cmd, {"selberg", "fejer", "windowed-fejer"});
    verify_cmd->add_option("--threads", verify_threads, "worker threads (0 = all cores)");

    // coefficients
    auto* coef = app.add_subcommand("coefficients", "derived a(n) and c(n) of a data file as CSV");
    std::string coef_data = default_data_path();
    long coef_bound = 7;
    coef->add_option("--data", coef_data, "L-function JSON file (default: bundled degree-4 example)");
    coef->add_option("--bound", coef_bound, "largest n");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitDomain;
    }

    try {
        if (*eval) {
            return run_eval_extremal(eval_fn, eval_kind, eval_from, eval_to, eval_samples, eval_fourier);
        }
        if (*cert) {
            const auto params = cert_search.resolve(cert_threads);
            if (cert_minimal) {
                const auto m = minimal_certified_length(cert_degree, cert_delta, cert_precision, params);
                nlohmann::json j{{"minimal_certified_length", m.length},
                                 {"largest_uncertified_length", m.uncertified},
                                 {"precision", cert_precision},
                                 {"bisection_steps", m.steps},
                                 {"certificate", to_json(m.certificate)}};
                std::cout << j.dump(2) << '\n';
            } else {
                std::cout << to_json(certify_gap(cert_degree, cert_length, cert_delta, params)).dump(2) << '\n';
            }
            return 0;
        }
        if (*minell) {
            const auto f = minell_fn.build();
            const auto params = minell_search.resolve(minell_threads);
            const auto m = min_ell_over_mu(f, params);
            nlohmann::json j{{"test_function", f.name},
                             {"transform_at_zero", f.integral},
                             {"min_ell", m.value},
                             {"argmin_mu", {m.argmin.real(), m.argmin.imag()}},
                             {"grid_min_ell", m.grid_value},
                             {"grid_argmin_mu", {m.grid_argmin.real(), m.grid_argmin.imag()}},
                             {"boundary_min", m.boundary_min},
                             {"boundary_ok", m.boundary_ok},
                             {"grid_points", m.grid_points},
                             {"search_domain", to_json(params)}};
            std::cout << j.dump(2) << '\n';
            return 0;
        }
        if (*scan) {
            scan_cfg.convention = parse_convention(scan_convention);
            scan_cfg.kernel.threads = scan_threads;
            const RegionScanner scanner(scan_cfg);
            std::vector<RegionClassification> rows;
            if (!scan_points.empty()) {
                for (std::size_t i = 0; i + 1 < scan_points.size(); i += 2) {
                    rows.push_back(scanner.classify_point(scan_points[i], scan_points[i + 1]));
                }
            } else {
                rows = scan_region(scanner, scan_nu_max, scan_step, scan_threads);
            }
            if (scan_out.empty()) {
                write_region_csv(std::cout, rows, scan_cfg, scan_nu_max, scan_step);
            } else {
                std::ofstream out(scan_out);
                if (!out) throw DomainError("cannot write " + scan_out);
                write_region_csv(out, rows, scan_cfg, scan_nu_max, scan_step);
            }
            return 0;
        }
        if (*verify_cmd) {
            const auto data = load_lfunction_file(verify_data);
            for (const auto& w : data.warnings) std::cerr << "warning: " << w << '\n';
            const auto f = verify_fn.build();
            ArchimedeanKernel::Options opts;
            opts.threads = verify_threads;
            const ArchimedeanKernel kernel(f, opts);
            const auto report = verify(data, f, parse_convention(verify_convention), &kernel);
            std::cout << to_json(report).dump(2) << '\n';
            return 0;
        }
        if (*coef) return run_coefficients(coef_data, coef_bound);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const AccuracyError& e) {
        std::cerr << "accuracy error: " << e.what() << " (best estimate " << e.best_estimate() << ", error "
                  << e.error_estimate() << ")\n";
        return kExitAccuracy;
    } catch (const IncompleteDataError& e) {
        std::cerr << "incomplete data: " << e.what() << '\n';
        return kExitIncomplete;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    }
    return 0;
}
