#pragma once

#include <stdexcept>
#include <string>

namespace ratsys {

enum class ErrorCode {
  kNotSymmetric,
  kNonFinite,
  kNotPositive,
  kNotConverged,
  kDimensionMismatch,
  kSpectralRadius,  // spectral radius outside what the operation accepts
  kNotGeneric,      // vector has no component along some eigenvector
  kInvalidArgument,
  kInvalidSpec,
  kInvalidInitialConditions,
  kNoNonnegativeEigenvector,
  kExcludedSeed,  // period-2k seed with a == gamma * b
  kWrongMatrixForm,
  kNoGenericCandidate,
  kBoundaryAmbiguous,
  kConfig,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ratsys
