#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cpb {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid code/field parameters (bad group count, reducible polynomial, ...).
class ParamError : public Error {
public:
    using Error::Error;
};

/// Malformed or mismatched input data (dimensions, stages, file contents).
class DataError : public Error {
public:
    using Error::Error;
};

/// Arithmetic failure: singular systems, undecodable patterns, division by zero.
class MathError : public Error {
public:
    using Error::Error;
};

class SingularMatrixError : public MathError {
public:
    SingularMatrixError(const std::string& what, int rank_found)
        : MathError(what), rank(rank_found) {}
    int rank;
};

/// A node set from which the data cannot be reconstructed.
class NotDecodableError : public MathError {
public:
    NotDecodableError(const std::string& what, std::vector<int> node_set)
        : MathError(what), nodes(std::move(node_set)) {}
    std::vector<int> nodes;
};

/// Structured decoding hit a singular column system; possible when the
/// field order is at or below k*r^2.
class FieldTooSmallError : public MathError {
public:
    FieldTooSmallError(const std::string& what, int col)
        : MathError(what), column(col) {}
    int column;
};

}  // namespace cpb
