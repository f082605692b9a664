#pragma once

#include <stdexcept>
#include <string>

namespace pmfde {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SubcriticalExponent : Error {
  using Error::Error;
};
struct InvalidGrid : Error {
  using Error::Error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};
struct NormalizationFailed : Error {
  using Error::Error;
};
struct EmptyTrajectory : Error {
  using Error::Error;
};
struct LengthMismatch : Error {
  using Error::Error;
};
struct NewtonDiverged : Error {
  using Error::Error;
};
struct NegativeOvershoot : Error {
  using Error::Error;
};
struct TruncationViolation : Error {
  using Error::Error;
};
struct ZeroData : Error {
  using Error::Error;
};
struct CylinderOutOfRange : Error {
  using Error::Error;
};
struct ExponentOutOfRange : Error {
  using Error::Error;
};
struct InsufficientData : Error {
  using Error::Error;
};
struct ConfigInvalid : Error {
  using Error::Error;
};
struct IoError : Error {
  using Error::Error;
};

}  // namespace pmfde
