#pragma once

#include <stdexcept>
#include <string>

namespace oscillnet {

// Raised when a numerical procedure cannot proceed: eigensolver
// non-convergence, NaN/Inf in an integration, step-size rejection, or a
// phase-recovery guard trip. The CLI maps this to exit code 2.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace oscillnet
