#pragma once
#include <stdexcept>
#include <string>

namespace becpol {

// invalid physical or CLI input; the CLI maps this to exit code 1
struct InputError : std::runtime_error {
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// an adaptive or iterative routine missed its accuracy target; carries the
// best estimate so callers can salvage partial results (CLI exit code 2)
struct ConvergenceError : std::runtime_error {
    double best_estimate;
    double error_estimate;
    ConvergenceError(const std::string& msg, double best, double err)
        : std::runtime_error(msg), best_estimate(best), error_estimate(err) {}
};

} // namespace becpol
