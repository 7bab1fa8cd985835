#pragma once

#include <stdexcept>
#include <string>

namespace zerogap {

/// Invalid argument, pole, or violated data invariant.
class DomainError : public std::invalid_argument {
 public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed input document. Carries the offending field path.
class ParseError : public DomainError {
 public:
    ParseError(const std::string& field, const std::string& what)
        : DomainError("parse error at '" + field + "': " + what), field_(field) {}
    const std::string& field() const noexcept { return field_; }

 private:
    std::string field_;
};

/// Numerical procedure could not reach the requested accuracy.
class AccuracyError : public std::runtime_error {
 public:
    AccuracyError(const std::string& what, double best_estimate, double error_estimate)
        : std::runtime_error(what), best_(best_estimate), error_(error_estimate) {}
    double best_estimate() const noexcept { return best_; }
    double error_estimate() const noexcept { return error_; }

 private:
    double best_;
    double error_;
};

/// Required coefficient data is missing.
class IncompleteDataError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

}  // namespace zerogap
