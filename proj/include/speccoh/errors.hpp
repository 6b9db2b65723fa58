#pragma once

#include <stdexcept>
#include <string>

namespace speccoh {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NonSquare : Error { using Error::Error; };
struct TooAsymmetric : Error { using Error::Error; };
struct NotPositiveDefinite : Error { using Error::Error; };
struct NotOrthonormal : Error { using Error::Error; };
struct BadCount : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct FrequencyOutOfRange : Error { using Error::Error; };
struct DegenerateTraces : Error { using Error::Error; };
struct NonPositiveDenominator : Error { using Error::Error; };
struct InsufficientTapers : Error { using Error::Error; };
struct NonPositiveDiagonal : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct ZeroBaseline : Error { using Error::Error; };
struct EmptyGrid : Error { using Error::Error; };
struct ScenarioError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace speccoh
