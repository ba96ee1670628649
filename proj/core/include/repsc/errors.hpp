#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace repsc {

/// Invalid run configuration. Carries every violation found so a bad config
/// is rejected atomically with the full list.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg)
        : std::runtime_error(msg), violations_{msg} {}
    explicit ConfigError(std::vector<std::string> violations)
        : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

    const std::vector<std::string>& violations() const { return violations_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string out = "config rejected:";
        for (const auto& s : v) out += "\n  - " + s;
        return out;
    }
    std::vector<std::string> violations_;
};

/// Spectral mass escaped the resolvable band (grid too small / state too hot).
class AliasingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// State (or its comoving image) no longer fits the lattice box.
class GridOverflowError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Iterative limit not reached; carries the best tail estimate.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& msg, double tail_estimate)
        : std::runtime_error(msg), tail_estimate_(tail_estimate) {}
    double tail_estimate() const { return tail_estimate_; }

private:
    double tail_estimate_ = 0.0;
};

} // namespace repsc
