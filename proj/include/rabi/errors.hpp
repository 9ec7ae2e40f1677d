// errors.hpp — Exception hierarchy for solver, truncation, and domain failures

#pragma once

#include <stdexcept>
#include <string>

namespace rabi {

struct RabiError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input violates a documented precondition (domain of a formula, invalid range).
struct DomainError : RabiError {
    using RabiError::RabiError;
};

// Caller passed structurally inconsistent data (dimension mismatch, asymmetry).
struct ContractError : RabiError {
    using RabiError::RabiError;
};

// Eigensolver failed to converge; carries the index that stalled.
struct SolverError : RabiError {
    int index;
    SolverError(int idx, const std::string& msg) : RabiError(msg), index(idx) {}
};

// Photon-number cutoff insufficient (tail probability above tolerance, or cap hit).
struct TruncationError : RabiError {
    using RabiError::RabiError;
};

// The transcendental boundary equation has no root beyond the last extremum.
struct ThresholdError : RabiError {
    int n;
    ThresholdError(int n_, const std::string& msg) : RabiError(msg), n(n_) {}
};

// Least-squares design matrix is rank deficient.
struct FitError : RabiError {
    using RabiError::RabiError;
};

// Vanishing denominator in the root-sensitivity formula.
struct SensitivityError : RabiError {
    using RabiError::RabiError;
};

// Mutually exclusive classification conditions held simultaneously.
struct ConsistencyError : RabiError {
    using RabiError::RabiError;
};

} // namespace rabi
