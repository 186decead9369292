#ifndef WANDERER_ERROR_HPP
#define WANDERER_ERROR_HPP

#include <stdexcept>
#include <string>

namespace wanderer {

enum class ErrorCode {
    NonMonotone,
    Negative,
    InvalidParams,
    CapTooLarge,
    PoleProximity,
    Inadmissible,
    DegenerateParams,
    SeriesNotConverged,
    RejectionBudgetExceeded,
    GridTooShort,
    IndexOutOfRange,
    HypothesisViolated,
    InvalidConfig,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what);
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace wanderer

#endif
