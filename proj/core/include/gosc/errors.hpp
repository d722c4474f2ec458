#pragma once

#include <stdexcept>
#include <string>

namespace gosc {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

// Base for numerical solver failures (CLI exit code 3).
class SolverError : public Error {
public:
    using Error::Error;
};

class DivergentMoment : public SolverError {
public:
    DivergentMoment(int order, const std::string& msg) : SolverError(msg), order_(order) {}
    int order() const { return order_; }

private:
    int order_;
};

class QuadratureError : public SolverError {
public:
    using SolverError::SolverError;
};

class NonpositivePivot : public SolverError {
public:
    NonpositivePivot(int order, const std::string& msg) : SolverError(msg), order_(order) {}
    // first recurrence index n whose pivot b_n^2 was not positive
    int order() const { return order_; }

private:
    int order_;
};

class PrecisionExhausted : public SolverError {
public:
    PrecisionExhausted(long required_bits, double estimate, const std::string& msg)
        : SolverError(msg), required_bits_(required_bits), estimate_(estimate) {}
    long required_bits() const { return required_bits_; }
    double estimated_error() const { return estimate_; }

private:
    long required_bits_;
    double estimate_;
};

class SymmetryMismatch : public SolverError {
public:
    using SolverError::SolverError;
};

class SignViolation : public InvalidArgument {
public:
    SignViolation(int index, const std::string& msg) : InvalidArgument(msg), index_(index) {}
    int index() const { return index_; }

private:
    int index_;
};

}  // namespace gosc
