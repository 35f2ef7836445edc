#pragma once

#include <stdexcept>
#include <string>

namespace linf {

enum class ErrorKind {
  MalformedPermutation,
  ShapeMismatch,
  InvalidStructure,
  TruncationMismatch,
  DegreeMismatch,
  NotAMorphism,
  NonNilpotent,
  UnsupportedStructure,
  InvalidContraction,
  NotAnEmbedding,
  NotQuasiIso,
  BadContraction,
  SingularLinearPart,
  CertificateNotFound,
  TDegreeTooSmall,
  InvalidCoalgebra,
  ParseError,
  InvalidCertificate,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace linf
