#pragma once

#include <stdexcept>
#include <string>

namespace nhvqe {

/// Operands act on mismatched or invalid numbers of sites.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A request exceeds a configured resource bound (e.g. dense realization size).
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A config or input value violates a documented precondition; the message
/// names the offending field.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An argument breaks an operation contract (e.g. a non-unitary Hadamard-test
/// operator, coincident Richardson nodes).
struct ContractViolation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// The optimizer produced a non-finite cost or gradient; the message names the
/// offending iterate.
struct NumericalDivergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// |<psi_l|psi_r>| is numerically zero, so the biorthogonal expectation is
/// undefined (c_n -> 0 near exceptional points).
struct DegenerateOverlap : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Left/right eigenpair matching failed within tolerance (expected near
/// exceptional points).
struct PairingAmbiguity : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace nhvqe
