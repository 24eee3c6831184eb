#pragma once

#include <stdexcept>
#include <string>

namespace cuspjet {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// jets
struct NonvanishingConstantTerm : Error { using Error::Error; };
struct ZeroConstantTerm : Error { using Error::Error; };
struct NegativeConstantTerm : Error { using Error::Error; };
struct NotDivisible : Error { using Error::Error; };

// germs
struct InvariantViolation : Error { using Error::Error; };
struct NotReducedC1 : Error { using Error::Error; };
struct UnknownName : Error { using Error::Error; };
struct WrongTwoJet : Error { using Error::Error; };
struct OrderTooLow : Error { using Error::Error; };
struct NormalizationObstruction : Error { using Error::Error; };

// frontal
struct NotFrontal : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };

// classify / geometry
struct DegenerateD2 : Error { using Error::Error; };
struct BranchSingular : Error { using Error::Error; };
struct FlatCurve : Error { using Error::Error; };
struct DegenerateBranch : Error { using Error::Error; };
struct NoRealBranch : Error { using Error::Error; };
struct NotInS2 : Error { using Error::Error; };
struct DegenerateFrame : Error { using Error::Error; };
struct DegenerateCurvature : Error { using Error::Error; };
struct ZeroCurvature : Error { using Error::Error; };

// io
struct ParseError : Error { using Error::Error; };

} // namespace cuspjet
