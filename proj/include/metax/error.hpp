#pragma once

#include <stdexcept>
#include <string>

namespace metax {

// Base class for all pipeline errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input violates a declared schema (bad header, inconsistent blocks, ...).
class SchemaError : public Error {
public:
    using Error::Error;
};

// A numeric cell or token could not be parsed; message carries row/column.
class ParseError : public Error {
public:
    using Error::Error;
};

// Tables disagree on keys (missing dataset ids, unknown config ids, ...).
class JoinError : public Error {
public:
    using Error::Error;
};

// Argument outside its contract (empty range, bad bounds, NaN feature, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

// A block or quantity is too degenerate to compute (n=1 rank block,
// zero baseline rating, fold with a single row).
class DegenerateError : public Error {
public:
    using Error::Error;
};

// Vector/matrix arity does not match the model.
class DimensionError : public Error {
public:
    using Error::Error;
};

} // namespace metax
