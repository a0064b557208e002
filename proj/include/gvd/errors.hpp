#pragma once

#include <stdexcept>
#include <string>

namespace gvd {

// Domain violations: pole hit, unsupported argument, convention mismatch.
// Carries enough text to identify the offending input without a debugger.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure that is diagnosable, not silent: divergent integral,
// ill-conditioned solve, overflow guard tripped.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed user-facing input (CLI grammar, JSON tables).
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace gvd
