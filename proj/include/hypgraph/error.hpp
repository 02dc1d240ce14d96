#pragma once

#include <stdexcept>
#include <string>

namespace hypgraph {

/// Precondition or domain violation in a library call.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Iterative method failed to reach its tolerance; carries the last residual.
class NumericalFailure : public std::runtime_error {
public:
    NumericalFailure(const std::string& what, double last_residual, int iterations)
        : std::runtime_error(what), last_residual_(last_residual), iterations_(iterations) {}

    double last_residual() const { return last_residual_; }
    int iterations() const { return iterations_; }

private:
    double last_residual_;
    int iterations_;
};

/// Finite and ideal boundary data disagree at a shared ideal endpoint.
class DiscontinuousData : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// Config ingestion error; `locator` names the offending field or line.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& locator, const std::string& what)
        : std::runtime_error(locator + ": " + what), locator_(locator) {}

    const std::string& locator() const { return locator_; }

private:
    std::string locator_;
};

}  // namespace hypgraph
