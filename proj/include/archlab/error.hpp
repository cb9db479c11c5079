#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace archlab {

// Stable error taxonomy. The string form of each code is part of the CLI
// contract and must not change.
enum class ErrorCode {
    CycleBudgetExceeded,
    BidirectionalGraph,
    NoInputOutputPath,
    WindowTooLarge,
    NotStabilized,
    InvalidFixtureParams,
    DimensionMismatch,
    MissingInput,
    InvalidConfig,
    ParseError,
    DuplicateNode,
    DuplicateEdge,
    UnknownNodeReference,
    InvalidGraph,
    ArithmeticOverflow,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }
    std::string_view code_name() const { return error_code_name(code_); }

private:
    ErrorCode code_;
};

// Errors that carry a position in an architecture file.
class ParseError : public Error {
public:
    ParseError(ErrorCode code, const std::string& message, int line, int column)
        : Error(code, format(message, line, column)), line_(line), column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    static std::string format(const std::string& message, int line, int column) {
        return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
    }

    int line_;
    int column_;
};

} // namespace archlab
