#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dualfit {

enum class ErrorKind {
    InvalidInput,
    ParseError,
    DegenerateData,
    ZeroCorrelation,
    NonPositiveCorrelation,
    SingularSlope,
    SolverFailure,
    NoAdmissibleRoot,
    BracketFailure,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidInput: return "InvalidInput";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::DegenerateData: return "DegenerateData";
        case ErrorKind::ZeroCorrelation: return "ZeroCorrelation";
        case ErrorKind::NonPositiveCorrelation: return "NonPositiveCorrelation";
        case ErrorKind::SingularSlope: return "SingularSlope";
        case ErrorKind::SolverFailure: return "SolverFailure";
        case ErrorKind::NoAdmissibleRoot: return "NoAdmissibleRoot";
        case ErrorKind::BracketFailure: return "BracketFailure";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the ErrorKind tags.
/// what() is formatted as "<Kind>: <detail>".
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& detail)
        : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

/// Input-side failures (bad file, bad flag values) as opposed to numerical ones.
constexpr bool is_input_error(ErrorKind kind) noexcept {
    return kind == ErrorKind::InvalidInput || kind == ErrorKind::ParseError;
}

}  // namespace dualfit
