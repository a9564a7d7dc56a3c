#pragma once

#include <stdexcept>
#include <string>

namespace zetabound {

// Thrown when an oracle declines a request (length cap, evaluation range).
// Suites record these as skipped checks, never as failures.
struct OracleRefusal : std::runtime_error {
    explicit OracleRefusal(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a bound's analytic hypothesis cannot hold for the given inputs
// (as opposed to a plain argument-domain violation).
struct HypothesisError : std::domain_error {
    explicit HypothesisError(const std::string& what) : std::domain_error(what) {}
};

} // namespace zetabound
