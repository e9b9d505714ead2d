#pragma once

#include <stdexcept>
#include <string>

namespace spinnet {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad call arguments (out-of-range site, non-positive coupling scale, ...).
class InvalidArgumentError : public Error {
public:
    explicit InvalidArgumentError(const std::string& msg) : Error(msg) {}
};

// Structurally invalid input (disconnected graph, duplicate edge, bad scenario).
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// Malformed document; `locus` names the offending field or byte position.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, const std::string& locus)
        : Error(locus.empty() ? msg : msg + " (at " + locus + ")"), locus_(locus) {}
    const std::string& locus() const noexcept { return locus_; }

private:
    std::string locus_;
};

// A numeric contract was broken (eigensolver residual, norm drift, range check).
class NumericalError : public Error {
public:
    NumericalError(const std::string& msg, double residual)
        : Error(msg + " [residual " + std::to_string(residual) + "]"), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_ = 0.0;
};

// Request exceeds a hard resource cap (dense oracle size).
class BudgetError : public Error {
public:
    explicit BudgetError(const std::string& msg) : Error(msg) {}
};

}  // namespace spinnet

