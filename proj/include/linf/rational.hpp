#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <string>
#include <string_view>

namespace linf {

// Exact rationals, always kept in lowest terms by GMP.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using QMatrix = Mat<Rational>;
using QVector = Vec<Rational>;

// Accepts "p" or "p/q" with optional sign; throws linf::Error(ParseError).
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& value);

inline bool is_zero(const Rational& value) { return value.is_zero(); }

inline QMatrix zero_matrix(Eigen::Index rows, Eigen::Index cols) {
  return QMatrix::Zero(rows, cols);
}

}  // namespace linf
