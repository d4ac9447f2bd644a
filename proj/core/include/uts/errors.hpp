#ifndef UTS_ERRORS_HPP
#define UTS_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace uts {

// Invalid configuration or precondition violation (CLI exit code 2).
class ConfigError : public std::invalid_argument {
  public:
    explicit ConfigError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Numerical failure: rank deficiency, overflow, infeasible selection
// (CLI exit code 3).
class NumericalError : public std::runtime_error {
  public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

class OverflowError : public NumericalError {
  public:
    explicit OverflowError(const std::string& msg) : NumericalError(msg) {}
};

// Selection could not be extended to the requested pair count.
class InfeasibleError : public NumericalError {
  public:
    InfeasibleError(const std::string& msg, std::int64_t failing_k)
        : NumericalError(msg), failing_k(failing_k) {}
    std::int64_t failing_k;
};

// A supplied partial sum violates the circle-norm normalization required by
// the decay-chain verifier.
class NormalizationError : public NumericalError {
  public:
    NormalizationError(const std::string& msg, std::int64_t offending_k)
        : NumericalError(msg), offending_k(offending_k) {}
    std::int64_t offending_k;
};

}  // namespace uts

#endif
