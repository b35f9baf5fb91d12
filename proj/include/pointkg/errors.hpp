#pragma once

#include <stdexcept>
#include <string>

namespace pointkg {

// Argument outside the mathematical domain of a function (poles, |omega| >= m, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Caller supplied data that cannot be used (off-grid times, too-short windows, ...).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Invalid run configuration or model parameters.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numerical procedure failed to deliver (non-convergence, non-finite values).
class NumericalFault : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace pointkg
