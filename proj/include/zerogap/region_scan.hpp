#pragma once

// Degree-4 spectral parameters mu = (i nu1, -i nu1, i nu2, -i nu2).
// Both test functions below have transform support inside log 2 / 2pi, so
// the explicit formula reduces to the conductor and archimedean terms:
//  - fejer(delta) >= 0, so a negative right side rules the L-function out;
//  - windowed_fejer(t0, delta) <= 0 for |t| >= t0, so a positive right side
//    forces a zero with |gamma| < t0.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "zerogap/errors.hpp"
#include "zerogap/explicit_formula.hpp"
#include "zerogap/extremal.hpp"
#include "zerogap/parallel.hpp"

namespace zerogap {

enum class Verdict { Impossible, ForcedLowZero, Unconstrained };

inline std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Impossible: return "Impossible";
        case Verdict::ForcedLowZero: return "ForcedLowZero";
        case Verdict::Unconstrained: return "Unconstrained";
    }
    return "?";
}

inline Verdict classify(double fejer_rhs, double windowed_rhs) {
    if (fejer_rhs < 0.0) return Verdict::Impossible;
    if (windowed_rhs > 0.0) return Verdict::ForcedLowZero;
    return Verdict::Unconstrained;
}

struct RegionClassification {
    double nu1 = 0.0;
    double nu2 = 0.0;
    double fejer_rhs = 0.0;
    double windowed_rhs = 0.0;
    Verdict verdict = Verdict::Unconstrained;
    double t0 = 0.0;
    double delta = 0.0;
};

struct RegionConfig {
    double t0 = 14.13;
    double delta = kPrimeFreeSupport;
    double conductor = 1.0;
    Convention convention = Convention::halved;
    ArchimedeanKernel::Options kernel;
};

/// Holds the two kernels so that many points can be classified cheaply.
class RegionScanner {
 public:
    explicit RegionScanner(const RegionConfig& config)
        : config_(validated(config)),
          fejer_(fejer(config.delta), config.kernel),
          windowed_(windowed_fejer(config.t0, config.delta), config.kernel) {}

    const RegionConfig& config() const { return config_; }

    /// Right side of the explicit formula for a general spectral multiset.
    double rhs_total(const ArchimedeanKernel& kernel, const std::vector<cplx>& spectral) const {
        double total = kernel.transform_at_zero() * std::log(config_.conductor) / std::numbers::pi;
        for (const auto& mu : spectral) total += kernel.ell(mu, config_.convention) / (2.0 * std::numbers::pi);
        return total;
    }

    RegionClassification classify_spectral(const std::vector<cplx>& spectral) const {
        RegionClassification r;
        r.fejer_rhs = rhs_total(fejer_, spectral);
        r.windowed_rhs = rhs_total(windowed_, spectral);
        r.verdict = classify(r.fejer_rhs, r.windowed_rhs);
        r.t0 = config_.t0;
        r.delta = config_.delta;
        return r;
    }

    RegionClassification classify_point(double nu1, double nu2) const {
        if (!(nu1 >= 0.0) || !(nu2 >= 0.0)) throw DomainError("classify_point: nu1 and nu2 must be >= 0");
        // ell(conj mu) = ell(mu) for even f, so pairs are summed in a fixed order
        auto r = classify_spectral({{0.0, nu1}, {0.0, -nu1}, {0.0, nu2}, {0.0, -nu2}});
        r.nu1 = nu1;
        r.nu2 = nu2;
        return r;
    }

 private:
    static const RegionConfig& validated(const RegionConfig& c) {
        if (!(c.t0 > 0.0)) throw DomainError("region scan: t0 must be positive");
        if (!(c.delta > 0.0) || c.delta > kPrimeFreeSupport * (1.0 + 1e-12)) {
            throw DomainError("region scan: delta must lie in (0, log 2 / 2pi]");
        }
        if (!(c.conductor >= 1.0)) throw DomainError("region scan: conductor must be >= 1");
        return c;
    }

    RegionConfig config_;
    ArchimedeanKernel fejer_;
    ArchimedeanKernel windowed_;
};

inline RegionClassification classify_point(double nu1, double nu2, const RegionConfig& config = {}) {
    return RegionScanner(config).classify_point(nu1, nu2);
}

/// Row-major grid over [0, nu_max]^2 (nu1 outer, nu2 inner).
inline std::vector<RegionClassification> scan_region(const RegionScanner& scanner, double nu_max, double step,
                                                     unsigned threads = 0) {
    if (!(step > 0.0)) throw DomainError("scan_region: step must be positive");
    if (!(nu_max >= 0.0)) throw DomainError("scan_region: nu_max must be >= 0");
    const auto n = static_cast<std::size_t>(std::floor(nu_max / step + 1e-9)) + 1;
    return parallel_map<RegionClassification>(n * n, threads, [&](std::size_t k) {
        return scanner.classify_point(static_cast<double>(k / n) * step, static_cast<double>(k % n) * step);
    });
}

inline std::vector<RegionClassification> scan_region(double nu_max, double step, const RegionConfig& config = {},
                                                     unsigned threads = 0) {
    return scan_region(RegionScanner(config), nu_max, step, threads);
}

inline std::string format_g10(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

inline void write_region_csv(std::ostream& out, const std::vector<RegionClassification>& rows,
                             const RegionConfig& config, double nu_max, double step) {
    out << "# t0=" << format_g10(config.t0) << '\n'
        << "# delta=" << format_g10(config.delta) << '\n'
        << "# Q=" << format_g10(config.conductor) << " (Q = 1 gives the widest Impossible region)\n"
        << "# nu_max=" << format_g10(nu_max) << '\n'
        << "# step=" << format_g10(step) << '\n'
        << "# convention=" << to_string(config.convention) << '\n'
        << "nu1,nu2,fejer_rhs,windowed_rhs,verdict\n";
    for (const auto& r : rows) {
        out << format_g10(r.nu1) << ',' << format_g10(r.nu2) << ',' << format_g10(r.fejer_rhs) << ','
            << format_g10(r.windowed_rhs) << ',' << to_string(r.verdict) << '\n';
    }
}

}  // namespace zerogap
