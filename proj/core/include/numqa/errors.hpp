#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace numqa {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// --- lexing / parsing ---

class TokenizeError : public Error {
public:
    TokenizeError(const std::string& what, std::size_t position)
        : Error(what + " (at position " + std::to_string(position) + ")"), position(position) {}
    std::size_t position;
};

class UnterminatedReference : public TokenizeError {
public:
    using TokenizeError::TokenizeError;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position, std::string expected = {})
        : Error(what + " (at token position " + std::to_string(position) +
                (expected.empty() ? "" : ", expected " + expected) + ")"),
          position(position),
          expected(std::move(expected)) {}
    std::size_t position;
    std::string expected;
};

class UnknownOperator : public ParseError {
public:
    UnknownOperator(const std::string& name, std::size_t position)
        : ParseError("unknown operator '" + name + "'", position), name(name) {}
    std::string name;
};

class DanglingStepReference : public ParseError {
public:
    DanglingStepReference(int step, std::size_t position)
        : ParseError("step reference #" + std::to_string(step) + " has no prior step", position),
          step(step) {}
    int step;
};

class ArityMismatch : public ParseError {
public:
    using ParseError::ParseError;
};

// --- evaluation ---

class EvalError : public Error {
public:
    using Error::Error;
};

class DivisionByZero : public EvalError {
public:
    DivisionByZero() : EvalError("division by zero") {}
};

class UnresolvedReference : public EvalError {
public:
    using EvalError::EvalError;
};

class MissingTable : public EvalError {
public:
    MissingTable() : EvalError("aggregation requires a table") {}
};

class NonNumericAggregationTarget : public EvalError {
public:
    using EvalError::EvalError;
};

// --- tables ---

class OutOfBounds : public Error {
public:
    OutOfBounds(int col, int row, int n_cols, int n_rows)
        : Error("cell reference {Col" + std::to_string(col) + ", Row" + std::to_string(row) +
                "} outside " + std::to_string(n_cols) + "x" + std::to_string(n_rows) + " table") {}
};

class NonNumericCell : public Error {
public:
    using Error::Error;
};

// --- decompose / codec ---

class PlaceholderMismatch : public Error {
public:
    using Error::Error;
};

class SlotMismatch : public Error {
public:
    using Error::Error;
};

class UnprintableNode : public Error {
public:
    using Error::Error;
};

class EmptyDemonstrations : public Error {
public:
    EmptyDemonstrations() : Error("prompt needs at least one demonstration") {}
};

// --- synthesis ---

class NoNumericCells : public Error {
public:
    using Error::Error;
};

class NonNumericColumn : public Error {
public:
    using Error::Error;
};

class FlatTable : public Error {
public:
    using Error::Error;
};

// --- pipeline ---

class FileNotFound : public Error {
public:
    explicit FileNotFound(const std::string& path) : Error("cannot open file: " + path) {}
};

class SchemaViolation : public Error {
public:
    SchemaViolation(int line, const std::string& field, const std::string& what)
        : Error("line " + std::to_string(line) + ", field '" + field + "': " + what),
          line(line),
          field(field) {}
    int line;
    std::string field;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace numqa
