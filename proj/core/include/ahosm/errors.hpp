#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ahosm {

/// Invalid configuration values (chain parameters, adaptive gains, model bounds).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Scenario text errors with source position.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string origin, int line, int col, const std::string& message)
        : std::runtime_error(origin + ":" + std::to_string(line) + ":" + std::to_string(col) +
                             ": " + message),
          origin_(std::move(origin)), line_(line), col_(col) {}

    const std::string& origin() const { return origin_; }
    int line() const { return line_; }
    int col() const { return col_; }

private:
    std::string origin_;
    int line_ = 0;
    int col_ = 0;
};

/// Numerical failure during integration (blow-up, non-finite state).
class SimulationError : public std::runtime_error {
public:
    SimulationError(const std::string& message, double t, std::vector<double> last_state)
        : std::runtime_error(message), t_(t), last_state_(std::move(last_state)) {}

    double time() const { return t_; }
    const std::vector<double>& last_state() const { return last_state_; }

private:
    double t_ = 0.0;
    std::vector<double> last_state_;
};

/// Failure of an analysis-level contract (decrease certificate, sentinel bounds).
class AnalysisError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ahosm
