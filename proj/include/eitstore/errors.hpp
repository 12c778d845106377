#pragma once

#include <stdexcept>
#include <string>

namespace eitstore {

// Exit codes form a stable CLI contract.
enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,   // bad arguments or config
    exit_regime = 2,  // scenario violates validity conditions
    exit_numeric = 3, // solver or integrator failure
};

// Config file problem; line is 1-based, 0 when not tied to a line.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_ = 0;
};

// Scenario fails the validity-regime checks and the run was not forced.
class RegimeError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical failure: CFL violation, non-finite values, unstable integration.
class NumericalError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace eitstore
