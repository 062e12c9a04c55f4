#pragma once

#include <stdexcept>
#include <string>

namespace bergman {

enum class ErrorCode {
    invalid_parameter,
    unsupported_family,
    unsupported_weight,
    quadrature_failure,
    bracket_failure,
    solver_failure,
    solver_inconsistency,
    degenerate_range,
    degenerate_block,
    insufficient_blocks,
    condition_b_violation,
    invalid_multiplier,
    malformed_input,
};

inline const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::invalid_parameter: return "invalid-parameter";
        case ErrorCode::unsupported_family: return "unsupported-family";
        case ErrorCode::unsupported_weight: return "unsupported-weight";
        case ErrorCode::quadrature_failure: return "quadrature-failure";
        case ErrorCode::bracket_failure: return "bracket-failure";
        case ErrorCode::solver_failure: return "solver-failure";
        case ErrorCode::solver_inconsistency: return "solver-inconsistency";
        case ErrorCode::degenerate_range: return "degenerate-range";
        case ErrorCode::degenerate_block: return "degenerate-block";
        case ErrorCode::insufficient_blocks: return "insufficient-blocks";
        case ErrorCode::condition_b_violation: return "condition-b-violation";
        case ErrorCode::invalid_multiplier: return "invalid-multiplier";
        case ErrorCode::malformed_input: return "malformed-input";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class QuadratureFailure : public Error {
public:
    QuadratureFailure(const std::string& what, double achieved_tolerance)
        : Error(ErrorCode::quadrature_failure,
                what + " (achieved relative tolerance " + std::to_string(achieved_tolerance) + ")"),
          achieved_(achieved_tolerance) {}

    double achieved_tolerance() const noexcept { return achieved_; }

private:
    double achieved_;
};

class ConditionBViolation : public Error {
public:
    ConditionBViolation(std::size_t index, double upper_ratio, double K)
        : Error(ErrorCode::condition_b_violation,
                "upper ratio " + std::to_string(upper_ratio) + " exceeds K=" + std::to_string(K) +
                    " at n=" + std::to_string(index)),
          index_(index), upper_ratio_(upper_ratio) {}

    std::size_t index() const noexcept { return index_; }
    double upper_ratio() const noexcept { return upper_ratio_; }

private:
    std::size_t index_;
    double upper_ratio_;
};

}  // namespace bergman
