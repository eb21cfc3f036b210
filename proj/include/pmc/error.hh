#ifndef PMC_ERROR_HH
#define PMC_ERROR_HH

#include <stdexcept>
#include <string>

namespace pmc {

// Raised for malformed inputs: parse errors, invalid models, unsupported
// features. The CLI maps these to exit code 2.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a numeric solver fails to converge within its iteration budget.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}

    double residual() const { return residual_; }

private:
    double residual_;
};

}  // namespace pmc

#endif
