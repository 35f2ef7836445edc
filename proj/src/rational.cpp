#include "linf/rational.hpp"

#include "linf/error.hpp"

#include <boost/multiprecision/gmp.hpp>

#include <cctype>

namespace linf {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw Error(ErrorKind::ParseError, "malformed rational '" + std::string(text) + "'");
  }
  const boost::multiprecision::mpz_int n{std::string(num)};
  const boost::multiprecision::mpz_int d{std::string(den)};
  if (d == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
  Rational r(n);
  r /= Rational(d);
  return negative ? Rational(-r) : r;
}

std::string format_rational(const Rational& value) {
  const auto n = boost::multiprecision::numerator(value);
  const auto d = boost::multiprecision::denominator(value);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedPermutation: return "MalformedPermutation";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::InvalidStructure: return "InvalidStructure";
    case ErrorKind::TruncationMismatch: return "TruncationMismatch";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::NotAMorphism: return "NotAMorphism";
    case ErrorKind::NonNilpotent: return "NonNilpotent";
    case ErrorKind::UnsupportedStructure: return "UnsupportedStructure";
    case ErrorKind::InvalidContraction: return "InvalidContraction";
    case ErrorKind::NotAnEmbedding: return "NotAnEmbedding";
    case ErrorKind::NotQuasiIso: return "NotQuasiIso";
    case ErrorKind::BadContraction: return "BadContraction";
    case ErrorKind::SingularLinearPart: return "SingularLinearPart";
    case ErrorKind::CertificateNotFound: return "CertificateNotFound";
    case ErrorKind::TDegreeTooSmall: return "TDegreeTooSmall";
    case ErrorKind::InvalidCoalgebra: return "InvalidCoalgebra";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidCertificate: return "InvalidCertificate";
  }
  return "Error";
}

}  // namespace linf
