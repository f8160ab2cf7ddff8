#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace heckeproj {

enum class ErrorKind {
    NotHermitian,
    NotIdempotent,
    NoConvergence,
    DimensionMismatch,
    DimensionOverflow,
    BadDimension,
    BadRank,
    SiteOutOfRange,
    OddRank,
    NonRealTrace,
    CommutingProjections,
    InconsistentEstimators,
    DefectMismatch,
    NotOrthonormal,
    RankDeficientFamily,
    BadParameters,
    DegenerateParameters,
    NotTLWeights,
    NonRealQ,
    SingularR,
    NotIsometry,
    RankDrift,
    BadConfig,
    GradientMismatch,
    NotASolution,
    MalformedInput,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::NotHermitian: return "NotHermitian";
        case ErrorKind::NotIdempotent: return "NotIdempotent";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::DimensionOverflow: return "DimensionOverflow";
        case ErrorKind::BadDimension: return "BadDimension";
        case ErrorKind::BadRank: return "BadRank";
        case ErrorKind::SiteOutOfRange: return "SiteOutOfRange";
        case ErrorKind::OddRank: return "OddRank";
        case ErrorKind::NonRealTrace: return "NonRealTrace";
        case ErrorKind::CommutingProjections: return "CommutingProjections";
        case ErrorKind::InconsistentEstimators: return "InconsistentEstimators";
        case ErrorKind::DefectMismatch: return "DefectMismatch";
        case ErrorKind::NotOrthonormal: return "NotOrthonormal";
        case ErrorKind::RankDeficientFamily: return "RankDeficientFamily";
        case ErrorKind::BadParameters: return "BadParameters";
        case ErrorKind::DegenerateParameters: return "DegenerateParameters";
        case ErrorKind::NotTLWeights: return "NotTLWeights";
        case ErrorKind::NonRealQ: return "NonRealQ";
        case ErrorKind::SingularR: return "SingularR";
        case ErrorKind::NotIsometry: return "NotIsometry";
        case ErrorKind::RankDrift: return "RankDrift";
        case ErrorKind::BadConfig: return "BadConfig";
        case ErrorKind::GradientMismatch: return "GradientMismatch";
        case ErrorKind::NotASolution: return "NotASolution";
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

}  // namespace heckeproj
