#include "archlab/error.hpp"

namespace archlab {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::CycleBudgetExceeded: return "CYCLE_BUDGET_EXCEEDED";
    case ErrorCode::BidirectionalGraph: return "BIDIRECTIONAL";
    case ErrorCode::NoInputOutputPath: return "NO_IO_PATH";
    case ErrorCode::WindowTooLarge: return "WINDOW_TOO_LARGE";
    case ErrorCode::NotStabilized: return "NOT_STABILIZED";
    case ErrorCode::InvalidFixtureParams: return "INVALID_FIXTURE_PARAMS";
    case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::MissingInput: return "MISSING_INPUT";
    case ErrorCode::InvalidConfig: return "INVALID_CONFIG";
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::DuplicateNode: return "DUPLICATE_NODE";
    case ErrorCode::DuplicateEdge: return "DUPLICATE_EDGE";
    case ErrorCode::UnknownNodeReference: return "UNKNOWN_NODE_REFERENCE";
    case ErrorCode::InvalidGraph: return "INVALID_GRAPH";
    case ErrorCode::ArithmeticOverflow: return "ARITHMETIC_OVERFLOW";
    }
    return "UNKNOWN";
}

} // namespace archlab
