#pragma once

// Functional-equation data, Dirichlet coefficients and zero lists; JSON
// ingestion and the multiplicative / log-derivative coefficient algebra.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "zerogap/errors.hpp"
#include "zerogap/special_math.hpp"

namespace zerogap {

struct FunctionalEquation {
    int degree = 1;
    double conductor = 1.0;
    std::vector<cplx> spectral;
    cplx root_number{1.0, 0.0};

    /// Throws DomainError naming the violated invariant.
    void validate() const {
        if (degree < 1) throw DomainError("invariant violated: degree must be a positive integer");
        if (static_cast<int>(spectral.size()) != degree) {
            throw DomainError("invariant violated: spectral parameter count must equal degree");
        }
        if (!(conductor >= 1.0)) throw DomainError("invariant violated: conductor Q >= 1");
        for (const auto& mu : spectral) {
            if (!(mu.real() >= 0.0)) throw DomainError("invariant violated: Re(mu_j) >= 0");
        }
        if (!(std::abs(std::abs(root_number) - 1.0) <= 1e-12)) {
            throw DomainError("invariant violated: |root_number| = 1");
        }
    }
};

/// Degree-4 shape (i nu1, -i nu1, i nu2, -i nu2).
inline FunctionalEquation imaginary_pair_equation(double nu1, double nu2, double conductor = 1.0) {
    FunctionalEquation fe;
    fe.degree = 4;
    fe.conductor = conductor;
    fe.spectral = {{0.0, nu1}, {0.0, -nu1}, {0.0, nu2}, {0.0, -nu2}};
    return fe;
}

struct LFunctionData {
    std::string name;
    std::string comment;
    FunctionalEquation fe;
    bool conductor_assumed = false;
    bool root_number_assumed = false;
    std::map<long, cplx> coefficients;
    /// Ordinates; for self-dual data only the nonnegative half is stored.
    std::vector<double> zeros;
    double t_max = 0.0;
    bool self_dual = false;
    std::vector<std::string> warnings;

    /// Every ordinate, with the symmetric half restored for self-dual data.
    std::vector<double> symmetric_zeros() const {
        if (!self_dual) return zeros;
        std::vector<double> out;
        out.reserve(2 * zeros.size());
        for (auto it = zeros.rbegin(); it != zeros.rend(); ++it) {
            if (*it != 0.0) out.push_back(-*it);
        }
        out.insert(out.end(), zeros.begin(), zeros.end());
        return out;
    }
};

struct LogDerivativeCoefficients {
    long bound = 0;
    std::map<long, cplx> values;  // prime powers only

    cplx at(long n) const {
        auto it = values.find(n);
        return it == values.end() ? cplx{} : it->second;
    }
};

// ---------------------------------------------------------------- arithmetic

/// p and k with n = p^k, or {0, 0} when n is not a prime power.
inline std::pair<long, int> prime_power(long n) {
    if (n < 2) return {0, 0};
    long p = 0;
    for (long q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            p = q;
            break;
        }
    }
    if (p == 0) return {n, 1};
    int k = 0;
    while (n % p == 0) {
        n /= p;
        ++k;
    }
    return n == 1 ? std::pair{p, k} : std::pair{0L, 0};
}

/// Prime-power factors of n, e.g. 12 -> {4, 3}.
inline std::vector<long> prime_power_factors(long n) {
    std::vector<long> out;
    for (long q = 2; q * q <= n; ++q) {
        if (n % q != 0) continue;
        long part = 1;
        while (n % q == 0) {
            n /= q;
            part *= q;
        }
        out.push_back(part);
    }
    if (n > 1) out.push_back(n);
    return out;
}

namespace detail {

inline std::string join_numbers(const std::vector<long>& values) {
    std::ostringstream os;
    for (std::size_t i = 0; i < values.size(); ++i) os << (i ? ", " : "") << values[i];
    return os.str();
}

}  // namespace detail

/// Fills a_n for composite n <= bound from its prime-power parts. Existing
/// entries are kept; prime powers themselves are data and are never derived.
inline LFunctionData extend_multiplicatively(const LFunctionData& data, long bound) {
    LFunctionData out = data;
    std::vector<long> gaps;
    for (long n = 2; n <= bound; ++n) {
        if (out.coefficients.count(n) || prime_power(n).first != 0) continue;
        cplx product{1.0, 0.0};
        bool complete = true;
        for (long part : prime_power_factors(n)) {
            auto it = data.coefficients.find(part);
            if (it == data.coefficients.end()) {
                complete = false;
                if (std::find(gaps.begin(), gaps.end(), part) == gaps.end()) gaps.push_back(part);
            } else {
                product *= it->second;
            }
        }
        if (complete) out.coefficients[n] = product;
    }
    if (!gaps.empty()) {
        std::sort(gaps.begin(), gaps.end());
        throw IncompleteDataError("extend_multiplicatively: missing prime-power coefficients a_n for n = " +
                                  detail::join_numbers(gaps));
    }
    return out;
}

/// c(n) with L'/L(s) = sum c(n) n^{-s}: c(p^k) = -log p * (sum_i alpha_i^k),
/// the power sums recovered from a_{p^j} (complete homogeneous sums of the
/// local roots) by Newton's identities.
inline LogDerivativeCoefficients c_coefficients(const LFunctionData& data, long bound) {
    LogDerivativeCoefficients out;
    out.bound = bound;
    std::vector<long> gaps;
    for (long n = 2; n <= bound; ++n) {
        if (prime_power(n).first != 0 && !data.coefficients.count(n)) gaps.push_back(n);
    }
    if (!gaps.empty()) {
        throw IncompleteDataError("c_coefficients: missing local coefficients a_n for n = " +
                                  detail::join_numbers(gaps));
    }
    for (long p = 2; p <= bound; ++p) {
        if (prime_power(p) != std::pair{p, 1}) continue;
        std::vector<cplx> complete{cplx{1.0, 0.0}};
        std::vector<cplx> power_sums{cplx{}};
        const double log_p = std::log(static_cast<double>(p));
        for (long q = p, k = 1; q <= bound; ++k) {
            complete.push_back(data.coefficients.at(q));
            cplx pk = static_cast<double>(k) * complete[k];
            for (long i = 1; i < k; ++i) pk -= power_sums[i] * complete[k - i];
            power_sums.push_back(pk);
            out.values[q] = -log_p * pk;
            if (q > bound / p) break;
            q *= p;
        }
    }
    return out;
}

// ----------------------------------------------------------------------- I/O

namespace detail {

using nlohmann::json;

inline double read_real(const json& node, const std::string& field) {
    if (node.is_number()) return node.get<double>();
    if (node.is_string()) {
        const auto& s = node.get_ref<const std::string&>();
        double value = 0.0;
        const auto* end = s.data() + s.size();
        auto [ptr, ec] = std::from_chars(s.data(), end, value);
        if (ec != std::errc{} || ptr != end) throw ParseError(field, "not a decimal number: \"" + s + "\"");
        return value;
    }
    throw ParseError(field, "expected number or decimal string");
}

inline const json& require(const json& node, const char* key, const std::string& path) {
    if (!node.is_object()) throw ParseError(path, "expected object");
    auto it = node.find(key);
    if (it == node.end()) throw ParseError(path + "." + key, "missing field");
    return *it;
}

inline bool read_bool(const json& node, const char* key, const std::string& path, bool fallback) {
    auto it = node.find(key);
    if (it == node.end()) return fallback;
    if (!it->is_boolean()) throw ParseError(path + "." + key, "expected boolean");
    return it->get<bool>();
}

inline std::string shortest(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

inline long line_of(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<long>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
}

}  // namespace detail

/// Parses and validates an L-function document.
inline LFunctionData load_lfunction(std::string_view text) {
    using detail::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("line " + std::to_string(detail::line_of(text, e.byte)), e.what());
    }
    LFunctionData out;
    if (!doc.is_object()) throw ParseError("$", "expected object");
    if (auto it = doc.find("name"); it != doc.end() && it->is_string()) out.name = it->get<std::string>();
    if (auto it = doc.find("comment"); it != doc.end() && it->is_string()) out.comment = it->get<std::string>();

    const auto& degree = detail::require(doc, "degree", "$");
    if (!degree.is_number_integer()) throw ParseError("$.degree", "expected integer");
    out.fe.degree = degree.get<int>();

    const auto& conductor = detail::require(doc, "conductor", "$");
    out.fe.conductor = detail::read_real(detail::require(conductor, "value", "$.conductor"), "$.conductor.value");
    out.conductor_assumed = detail::read_bool(conductor, "assumed", "$.conductor", false);

    const auto& root = detail::require(doc, "root_number", "$");
    out.fe.root_number = {detail::read_real(detail::require(root, "re", "$.root_number"), "$.root_number.re"),
                          detail::read_real(detail::require(root, "im", "$.root_number"), "$.root_number.im")};
    out.root_number_assumed = detail::read_bool(root, "assumed", "$.root_number", false);

    const auto& spectral = detail::require(doc, "spectral", "$");
    if (!spectral.is_array()) throw ParseError("$.spectral", "expected array");
    for (std::size_t i = 0; i < spectral.size(); ++i) {
        const std::string path = "$.spectral[" + std::to_string(i) + "]";
        out.fe.spectral.emplace_back(detail::read_real(detail::require(spectral[i], "re", path), path + ".re"),
                                     detail::read_real(detail::require(spectral[i], "im", path), path + ".im"));
    }

    const auto& coefficients = detail::require(doc, "coefficients", "$");
    if (!coefficients.is_array()) throw ParseError("$.coefficients", "expected array");
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
        const std::string path = "$.coefficients[" + std::to_string(i) + "]";
        const auto& n_node = detail::require(coefficients[i], "n", path);
        if (!n_node.is_number_integer() || n_node.get<long>() < 1) {
            throw ParseError(path + ".n", "expected positive integer");
        }
        const long n = n_node.get<long>();
        const cplx a{detail::read_real(detail::require(coefficients[i], "re", path), path + ".re"),
                     detail::read_real(detail::require(coefficients[i], "im", path), path + ".im")};
        if (!out.coefficients.emplace(n, a).second) throw ParseError(path + ".n", "duplicate index");
    }

    const auto& zeros = detail::require(doc, "zeros", "$");
    const auto& values = detail::require(zeros, "values", "$.zeros");
    if (!values.is_array()) throw ParseError("$.zeros.values", "expected array");
    for (std::size_t i = 0; i < values.size(); ++i) {
        out.zeros.push_back(detail::read_real(values[i], "$.zeros.values[" + std::to_string(i) + "]"));
    }
    const auto& t_max = detail::require(zeros, "t_max", "$.zeros");
    out.t_max = t_max.is_string() && t_max.get<std::string>() == "inf"
                    ? std::numeric_limits<double>::infinity()
                    : detail::read_real(t_max, "$.zeros.t_max");
    out.self_dual = detail::read_bool(zeros, "self_dual", "$.zeros", false);

    // invariants
    out.fe.validate();
    if (auto it = out.coefficients.find(1); it == out.coefficients.end()) {
        out.coefficients[1] = 1.0;
    } else if (std::abs(it->second - 1.0) > 1e-12) {
        throw DomainError("invariant violated: a_1 = 1");
    }
    for (std::size_t i = 1; i < out.zeros.size(); ++i) {
        if (!(out.zeros[i] > out.zeros[i - 1])) throw DomainError("invariant violated: zeros strictly increasing");
    }
    if (out.self_dual && !out.zeros.empty() && out.zeros.front() < 0.0) {
        throw DomainError("invariant violated: self-dual zero lists hold nonnegative ordinates only");
    }
    for (double g : out.zeros) {
        if (std::abs(g) > out.t_max) throw DomainError("invariant violated: listed zeros lie within t_max");
    }
    for (const auto& [n, a] : out.coefficients) {
        if (prime_power(n) == std::pair{n, 1} && std::abs(a) > out.fe.degree) {
            out.warnings.push_back("|a_" + std::to_string(n) + "| exceeds the degree");
        }
    }
    return out;
}

inline LFunctionData load_lfunction_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open L-function file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return load_lfunction(buffer.str());
}

/// Inverse of load_lfunction; numbers are written as shortest round-trip
/// decimal strings.
inline std::string serialize(const LFunctionData& data) {
    using detail::json;
    using detail::shortest;
    json doc;
    if (!data.name.empty()) doc["name"] = data.name;
    if (!data.comment.empty()) doc["comment"] = data.comment;
    doc["degree"] = data.fe.degree;
    doc["conductor"] = {{"value", shortest(data.fe.conductor)}, {"assumed", data.conductor_assumed}};
    doc["root_number"] = {{"re", shortest(data.fe.root_number.real())},
                          {"im", shortest(data.fe.root_number.imag())},
                          {"assumed", data.root_number_assumed}};
    doc["spectral"] = json::array();
    for (const auto& mu : data.fe.spectral) {
        doc["spectral"].push_back({{"re", shortest(mu.real())}, {"im", shortest(mu.imag())}});
    }
    doc["coefficients"] = json::array();
    for (const auto& [n, a] : data.coefficients) {
        doc["coefficients"].push_back({{"n", n}, {"re", shortest(a.real())}, {"im", shortest(a.imag())}});
    }
    json values = json::array();
    for (double g : data.zeros) values.push_back(shortest(g));
    doc["zeros"] = {{"values", values},
                    {"t_max", std::isinf(data.t_max) ? json("inf") : json(shortest(data.t_max))},
                    {"self_dual", data.self_dual}};
    return doc.dump(2) + "\n";
}

}  // namespace zerogap
