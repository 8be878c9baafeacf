#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace disctrace {

enum class ErrorKind {
    InvalidArgument,
    OutsideBall,
    CoincidentPoints,
    CollinearPoints,
    LineMissesBall,
    ZeroDirection,
    NoSolution,
    PoleAtAxis,
    SingularAtCenter,
    SingularAtReflectedPole,
    BoundaryParameterOffCircle,
    DegenerateComplement,
    CurveThroughOrigin,
    ChartEvaluationFailure,
    OffSphere,
    DegreeOverflow,
    NonFiniteSample,
    NotExtendible,
    NotInFamily,
    DegenerateSample,
    MalformedInput,
};

constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::OutsideBall: return "OutsideBall";
    case ErrorKind::CoincidentPoints: return "CoincidentPoints";
    case ErrorKind::CollinearPoints: return "CollinearPoints";
    case ErrorKind::LineMissesBall: return "LineMissesBall";
    case ErrorKind::ZeroDirection: return "ZeroDirection";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::PoleAtAxis: return "PoleAtAxis";
    case ErrorKind::SingularAtCenter: return "SingularAtCenter";
    case ErrorKind::SingularAtReflectedPole: return "SingularAtReflectedPole";
    case ErrorKind::BoundaryParameterOffCircle: return "BoundaryParameterOffCircle";
    case ErrorKind::DegenerateComplement: return "DegenerateComplement";
    case ErrorKind::CurveThroughOrigin: return "CurveThroughOrigin";
    case ErrorKind::ChartEvaluationFailure: return "ChartEvaluationFailure";
    case ErrorKind::OffSphere: return "OffSphere";
    case ErrorKind::DegreeOverflow: return "DegreeOverflow";
    case ErrorKind::NonFiniteSample: return "NonFiniteSample";
    case ErrorKind::NotExtendible: return "NotExtendible";
    case ErrorKind::NotInFamily: return "NotInFamily";
    case ErrorKind::DegenerateSample: return "DegenerateSample";
    case ErrorKind::MalformedInput: return "MalformedInput";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace disctrace
