#pragma once

#include <stdexcept>
#include <string>

namespace delaywave {

/// A stepper was invoked outside the time window it is defined on.
class PhaseError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Initial data violate a boundary condition of the problem.
class IncompatibleData : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace delaywave
