#include "wanderer/error.hpp"

namespace wanderer {

const char* error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonMonotone: return "NonMonotone";
        case ErrorCode::Negative: return "Negative";
        case ErrorCode::InvalidParams: return "InvalidParams";
        case ErrorCode::CapTooLarge: return "CapTooLarge";
        case ErrorCode::PoleProximity: return "PoleProximity";
        case ErrorCode::Inadmissible: return "Inadmissible";
        case ErrorCode::DegenerateParams: return "DegenerateParams";
        case ErrorCode::SeriesNotConverged: return "SeriesNotConverged";
        case ErrorCode::RejectionBudgetExceeded: return "RejectionBudgetExceeded";
        case ErrorCode::GridTooShort: return "GridTooShort";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::HypothesisViolated: return "HypothesisViolated";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

}  // namespace wanderer
