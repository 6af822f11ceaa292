#pragma once

#include <stdexcept>
#include <string>

namespace lehmer {

enum class errc {
  enumeration_bound,
  wrong_type,
  length_mismatch,
  zero_polynomial,
  decomposition_failure,
  condition_failure,
  structure_failure,
  certificate_failure,
  shape_mismatch,
  bad_word,
  io_error,
  time_budget_exceeded,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::enumeration_bound: return "EnumerationBound";
    case errc::wrong_type: return "WrongType";
    case errc::length_mismatch: return "LengthMismatch";
    case errc::zero_polynomial: return "ZeroPolynomial";
    case errc::decomposition_failure: return "DecompositionFailure";
    case errc::condition_failure: return "ConditionFailure";
    case errc::structure_failure: return "StructureFailure";
    case errc::certificate_failure: return "CertificateFailure";
    case errc::shape_mismatch: return "ShapeMismatch";
    case errc::bad_word: return "BadWord";
    case errc::io_error: return "IoError";
    case errc::time_budget_exceeded: return "TimeBudgetExceeded";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

  errc code() const { return code_; }

private:
  errc code_;
};

}  // namespace lehmer
