#ifndef ORBITSCALE_ERRORS_HPP
#define ORBITSCALE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace orbitscale {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a certified decision is still open at the precision cap.
struct PrecisionCapExceeded : Error {
  using Error::Error;
};

struct InvalidInput : Error {
  using Error::Error;
};
struct NonPositiveInput : InvalidInput {
  using InvalidInput::InvalidInput;
};
struct NotNonIncreasing : InvalidInput {
  using InvalidInput::InvalidInput;
};
struct InvalidShape : InvalidInput {
  using InvalidInput::InvalidInput;
};
struct DimensionMismatch : InvalidInput {
  using InvalidInput::InvalidInput;
};
struct NonPositiveMatrix : InvalidInput {
  using InvalidInput::InvalidInput;
};
struct RankDropped : Error {
  using Error::Error;
};
struct RelationDetected : InvalidInput {
  using InvalidInput::InvalidInput;
};

struct LevelOutOfRange : InvalidInput {
  using InvalidInput::InvalidInput;
};
struct NoStateVectors : InvalidInput {
  using InvalidInput::InvalidInput;
};
struct Undecidable : Error {
  using Error::Error;
};

struct NotBasicPair : InvalidInput {
  using InvalidInput::InvalidInput;
};
struct SearchExhausted : Error {
  using Error::Error;
};
struct PreconditionFailed : InvalidInput {
  using InvalidInput::InvalidInput;
};
struct QualificationTimeout : Error {
  using Error::Error;
};

struct MalformedSequence : InvalidInput {
  using InvalidInput::InvalidInput;
};
struct DepthExceeded : InvalidInput {
  using InvalidInput::InvalidInput;
};
struct InvalidMultiplier : InvalidInput {
  using InvalidInput::InvalidInput;
};
struct InvalidKneadingMap : InvalidInput {
  using InvalidInput::InvalidInput;
};

struct UndecidableMembership : Error {
  using Error::Error;
};
struct NoMatchingIndex : Error {
  using Error::Error;
};
struct VerificationFailed : Error {
  using Error::Error;
};

}  // namespace orbitscale

#endif
