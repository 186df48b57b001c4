#pragma once

#include <stdexcept>
#include <string>

namespace filtlab {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A scenario space violates its structural invariants (weights, refinement, ...).
struct InvalidSpaceError : Error {
    using Error::Error;
};

// A process is not measurable with respect to the filtration it claims.
struct MeasurabilityError : Error {
    using Error::Error;
};

// Z_{t_{k-1}} vanishes on a reachable pre-default event.
struct DegenerateHazardError : Error {
    using Error::Error;
};

// A Radon-Nikodym candidate is nonpositive, non-normalizable or otherwise
// fails equivalence.
struct InvalidDensityError : Error {
    using Error::Error;
};

// A stated operation precondition does not hold on the supplied model.
struct PreconditionError : Error {
    using Error::Error;
};

// The two provably-equal routes of a check disagree beyond tolerance.  This is
// a defect of the library, not of user input.
struct InternalInconsistencyError : Error {
    using Error::Error;
};

// Conditional-covariance projection requested on a degenerate block.
struct IllPosedProjectionError : Error {
    using Error::Error;
};

// Malformed configuration or command line usage.
struct ConfigError : Error {
    using Error::Error;
};

// Numerical blow-up during path simulation; message carries coordinates.
struct SimulationError : Error {
    using Error::Error;
};

// Regression basis is rank deficient or otherwise unusable.
struct BasisError : Error {
    using Error::Error;
};

namespace detail {
[[noreturn]] inline void fail_require(const char* expr, const std::string& msg) {
    throw Error(std::string("requirement failed: ") + expr + (msg.empty() ? "" : ": " + msg));
}
}  // namespace detail

}  // namespace filtlab

#define FILTLAB_REQUIRE(cond, ExceptionType, message)      \
    do {                                                   \
        if (!(cond)) throw ExceptionType(message);         \
    } while (0)
