#pragma once

#include <stdexcept>
#include <string>

namespace halfint {

/** Base class for all library errors; what() carries the diagnostic. */
struct HalfintError : std::runtime_error {
  explicit HalfintError(const std::string& msg) : std::runtime_error(msg) {}
};

// padic_core
struct NotAUnit : HalfintError { using HalfintError::HalfintError; };
struct DomainError : HalfintError { using HalfintError::HalfintError; };
struct PrecisionError : HalfintError { using HalfintError::HalfintError; };

// qseries
struct NonUnitConstantTerm : HalfintError { using HalfintError::HalfintError; };
struct DomainLacksRoot : HalfintError { using HalfintError::HalfintError; };
struct NonIntegralExponentResidue : HalfintError { using HalfintError::HalfintError; };
struct NonRationalResidue : HalfintError { using HalfintError::HalfintError; };

// weight_space
struct EvalError : HalfintError { using HalfintError::HalfintError; };
struct WeightNotInNbhd : HalfintError { using HalfintError::HalfintError; };
struct PrecisionTooLow : HalfintError { using HalfintError::HalfintError; };
struct InterpolationInsufficient : HalfintError { using HalfintError::HalfintError; };

// eis_theta
struct ZetaValueUnavailable : HalfintError { using HalfintError::HalfintError; };
struct ZetaZero : HalfintError { using HalfintError::HalfintError; };

// oc_basis
struct EchelonDegenerate : HalfintError { using HalfintError::HalfintError; };
struct InsufficientPrecision : HalfintError { using HalfintError::HalfintError; };
struct NotInSpan : HalfintError { using HalfintError::HalfintError; };

// spectral_core
struct IndeterminateVertex : HalfintError { using HalfintError::HalfintError; };
struct NoSlopeGap : HalfintError { using HalfintError::HalfintError; };
struct NonConvergence : HalfintError { using HalfintError::HalfintError; };
struct BezoutFailure : HalfintError { using HalfintError::HalfintError; };
struct PrecisionExhausted : HalfintError { using HalfintError::HalfintError; };
struct NonCommuting : HalfintError { using HalfintError::HalfintError; };

}  // namespace halfint
